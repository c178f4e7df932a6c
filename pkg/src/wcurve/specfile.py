"""Curve-spec files: a small TOML grammar naming an algebra and run options.

Three kinds of curve are expressible::

    [curve]
    kind = "fixture"
    name = "pentagonal"

    [curve.params]
    b = ["1", "2", "3", "4", "5"]

    [options]
    dh_override = 25

    ----

    [curve]
    kind = "plane"
    r = 2
    s = 3
    A = [["0"], ["0", "0", "0", "-1"]]

    ----

    [curve]
    kind = "table"
    generators = [3, 7, 8]
    table = [ ... ]   # table[i][j][k] = coefficient list of a polynomial

Rational numbers are written as integers or as strings "p/q"; polynomial
coefficient lists run in ascending degree.  Floating-point literals are
rejected everywhere except [options].tolerance, so a spec file can never
silently lose exactness.  The [options] table provides dh_override
(force a specific trace degree), series_order (expansion order at
infinity), tolerance and seed (numerical verification).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - 3.10 fallback
    import tomli as tomllib

from .curve import CurveAlgebra
from .exactalg import Poly
from .fixtures import default_params, fixture, fixture_names
from .semigroup import NumericalSemigroup


class SpecError(ValueError):
    """A spec file that does not fit the grammar."""


def rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{where}: bad rational {value!r}: {exc}") from None
    if isinstance(value, float):
        raise SpecError(
            f"{where}: floating-point literal {value!r}; write it as an "
            'integer or a string "p/q" to keep the arithmetic exact'
        )
    raise SpecError(f"{where}: expected a rational, got {type(value).__name__}")


def _poly_coeffs(value, where: str) -> tuple:
    if not isinstance(value, list):
        raise SpecError(f"{where}: expected a coefficient list")
    return tuple(rational(v, f"{where}[{k}]") for k, v in enumerate(value))


def _only_keys(mapping: dict, allowed: set, where: str):
    extra = set(mapping) - allowed
    if extra:
        raise SpecError(
            f"{where}: unknown key(s) {', '.join(sorted(map(repr, extra)))}"
        )


@dataclass(frozen=True)
class RunOptions:
    dh_override: int | None = None
    series_order: int | None = None
    tolerance: float = 1e-8
    seed: int = 0


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    name: str | None = None
    params: tuple = ()
    r: int | None = None
    s: int | None = None
    coeffs: tuple = ()
    generators: tuple = ()
    table: tuple = ()
    options: RunOptions = field(default_factory=RunOptions)


def _parse_options(raw) -> RunOptions:
    if raw is None:
        return RunOptions()
    if not isinstance(raw, dict):
        raise SpecError("[options] must be a table")
    _only_keys(
        raw, {"dh_override", "series_order", "tolerance", "seed"}, "[options]"
    )
    kwargs = {}
    for key in ("dh_override", "series_order", "seed"):
        if key in raw:
            val = raw[key]
            if isinstance(val, bool) or not isinstance(val, int):
                raise SpecError(f"[options].{key} must be an integer")
            kwargs[key] = val
    if "tolerance" in raw:
        val = raw["tolerance"]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise SpecError("[options].tolerance must be a number")
        if val <= 0:
            raise SpecError("[options].tolerance must be positive")
        kwargs["tolerance"] = float(val)
    return RunOptions(**kwargs)


def _parse_fixture(curve: dict, options: RunOptions) -> CurveSpec:
    _only_keys(curve, {"kind", "name", "params"}, "[curve]")
    name = curve.get("name")
    if not isinstance(name, str):
        raise SpecError("[curve].name is required for kind = \"fixture\"")
    if name not in fixture_names():
        raise SpecError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        )
    raw = curve.get("params", {})
    if not isinstance(raw, dict):
        raise SpecError("[curve.params] must be a table")
    params = []
    for key in sorted(raw):
        vals = raw[key]
        if not isinstance(vals, list):
            raise SpecError(f"[curve.params].{key} must be a list")
        params.append(
            (
                key,
                tuple(
                    rational(v, f"[curve.params].{key}[{k}]")
                    for k, v in enumerate(vals)
                ),
            )
        )
    return CurveSpec(
        kind="fixture", name=name, params=tuple(params), options=options
    )


def _parse_plane(curve: dict, options: RunOptions) -> CurveSpec:
    _only_keys(curve, {"kind", "r", "s", "A"}, "[curve]")
    for key in ("r", "s"):
        val = curve.get(key)
        if isinstance(val, bool) or not isinstance(val, int):
            raise SpecError(f"[curve].{key} must be an integer")
    coeffs = curve.get("A")
    if not isinstance(coeffs, list):
        raise SpecError("[curve].A must be a list of coefficient lists")
    parsed = tuple(
        _poly_coeffs(a, f"[curve].A[{i}]") for i, a in enumerate(coeffs)
    )
    return CurveSpec(
        kind="plane",
        r=curve["r"],
        s=curve["s"],
        coeffs=parsed,
        options=options,
    )


def _parse_table(curve: dict, options: RunOptions) -> CurveSpec:
    _only_keys(curve, {"kind", "generators", "table"}, "[curve]")
    gens = curve.get("generators")
    if not isinstance(gens, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in gens
    ):
        raise SpecError("[curve].generators must be a list of integers")
    raw = curve.get("table")
    if not isinstance(raw, list):
        raise SpecError("[curve].table must be a nested list")
    table = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise SpecError(f"[curve].table[{i}] must be a list")
        cells = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list):
                raise SpecError(f"[curve].table[{i}][{j}] must be a list")
            cells.append(
                tuple(
                    _poly_coeffs(p, f"[curve].table[{i}][{j}][{k}]")
                    for k, p in enumerate(cell)
                )
            )
        table.append(tuple(cells))
    return CurveSpec(
        kind="table",
        generators=tuple(gens),
        table=tuple(table),
        options=options,
    )


def parse(text: str) -> CurveSpec:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"TOML syntax error: {exc}") from None
    _only_keys(doc, {"curve", "options"}, "top level")
    curve = doc.get("curve")
    if not isinstance(curve, dict):
        raise SpecError("missing [curve] table")
    options = _parse_options(doc.get("options"))
    kind = curve.get("kind")
    if kind == "fixture":
        return _parse_fixture(curve, options)
    if kind == "plane":
        return _parse_plane(curve, options)
    if kind == "table":
        return _parse_table(curve, options)
    raise SpecError(
        f"[curve].kind must be \"plane\", \"table\" or \"fixture\", got {kind!r}"
    )


def load(path: str) -> CurveSpec:
    try:
        with open(path, "rb") as fh:
            text = fh.read().decode("utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


# -- serialization ---------------------------------------------------------


def _toml_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return _toml_scalar(str(v))
    if isinstance(v, str):
        if any(ch in v for ch in '"\\\n'):
            raise SpecError(f"cannot serialize string {v!r}")
        return f'"{v}"'
    raise SpecError(f"cannot serialize {type(v).__name__}")


def _toml_list(vals) -> str:
    inner = ", ".join(
        _toml_list(v) if isinstance(v, (list, tuple)) else _toml_scalar(v)
        for v in vals
    )
    return f"[{inner}]"


def dumps(spec: CurveSpec) -> str:
    lines = ["[curve]", f'kind = "{spec.kind}"']
    if spec.kind == "fixture":
        lines.append(f'name = "{spec.name}"')
        if spec.params:
            lines.append("")
            lines.append("[curve.params]")
            for key, vals in spec.params:
                lines.append(f"{key} = {_toml_list(vals)}")
    elif spec.kind == "plane":
        lines.append(f"r = {spec.r}")
        lines.append(f"s = {spec.s}")
        lines.append(f"A = {_toml_list(spec.coeffs)}")
    elif spec.kind == "table":
        lines.append(f"generators = {_toml_list(list(spec.generators))}")
        lines.append(f"table = {_toml_list(spec.table)}")
    else:
        raise SpecError(f"cannot serialize kind {spec.kind!r}")
    opt = spec.options
    opt_lines = []
    if opt.dh_override is not None:
        opt_lines.append(f"dh_override = {opt.dh_override}")
    if opt.series_order is not None:
        opt_lines.append(f"series_order = {opt.series_order}")
    if opt.tolerance != RunOptions().tolerance:
        opt_lines.append(f"tolerance = {opt.tolerance!r}")
    if opt.seed != RunOptions().seed:
        opt_lines.append(f"seed = {opt.seed}")
    if opt_lines:
        lines.extend(["", "[options]"])
        lines.extend(opt_lines)
    return "\n".join(lines) + "\n"


def fixture_spec(name: str) -> CurveSpec:
    """The spec a `fixtures emit` command produces: named fixture with
    its default parameters spelled out so they are editable in place."""
    if name not in fixture_names():
        raise SpecError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        )
    defaults = default_params(name)
    params = tuple((key, tuple(defaults[key])) for key in sorted(defaults))
    return CurveSpec(kind="fixture", name=name, params=params)


def build(spec: CurveSpec) -> CurveAlgebra:
    """Construct the algebra a spec describes (validating on the way)."""
    if spec.kind == "fixture":
        return fixture(spec.name, dict(spec.params) or None)
    if spec.kind == "plane":
        if len(spec.coeffs) != spec.r:
            raise SpecError(
                f"plane curve needs exactly r = {spec.r} coefficient lists, "
                f"got {len(spec.coeffs)}"
            )
        return CurveAlgebra.from_plane(
            spec.r, spec.s, [Poly(list(c)) for c in spec.coeffs]
        )
    if spec.kind == "table":
        H = NumericalSemigroup(list(spec.generators))
        table = [
            [tuple(Poly(list(p)) for p in cell) for cell in row]
            for row in spec.table
        ]
        return CurveAlgebra.from_table(H, table)
    raise SpecError(f"cannot build kind {spec.kind!r}")
