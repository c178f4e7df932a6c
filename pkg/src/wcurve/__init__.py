"""wcurve: exact trace duality and differentials for curves with one place at infinity."""

__version__ = "0.1.0"

from .exactalg import Poly, PolyMatrix, Rat, RatF, rat
from .semigroup import NumericalSemigroup

__all__ = [
    "Poly",
    "PolyMatrix",
    "Rat",
    "RatF",
    "rat",
    "NumericalSemigroup",
    "CurveAlgebra",
    "fixture",
    "fixture_names",
]

# The curve stack is heavier than the arithmetic substrate; load it on demand.
_LAZY = {
    "CurveAlgebra": "curve",
    "fixture": "fixtures",
    "fixture_names": "fixtures",
}


def __getattr__(name):
    if name in _LAZY:
        import importlib

        mod = importlib.import_module(f".{_LAZY[name]}", __name__)
        return getattr(mod, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
