"""Truncated Laurent series over Fraction and an order-by-order Newton solver.

A Series keeps exact coefficients for exponents in [lead, prec) and is
silent about everything at prec and beyond.  Arithmetic tracks the
correct joint precision window, and reading a coefficient at or past
prec raises PrecisionExceeded instead of guessing zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exactalg import InconsistentSystem, Rat, RatLike, rat, solve_linear


class PrecisionExceeded(ValueError):
    """A coefficient past the known precision window was requested."""


class SingularJet(ValueError):
    """The linearized system at the chosen leading terms is singular."""


class Series:
    """Laurent series with exact coefficients known on [lead, prec).

    Canonical form: coeffs has no leading or trailing zeros (the zero
    series stores an empty tuple and lead == prec).  Trailing known
    zeros up to prec are implicit.
    """

    __slots__ = ("lead", "coeffs", "prec")

    def __init__(self, coeffs: Sequence[RatLike], lead: int, prec: int):
        cs = [rat(c) for c in coeffs]
        if lead + len(cs) > prec:
            raise ValueError("coefficients extend past the precision bound")
        while cs and cs[0] == 0:
            cs.pop(0)
            lead += 1
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            lead = prec
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, prec: int) -> "Series":
        return cls((), prec, prec)

    @classmethod
    def constant(cls, c: RatLike, prec: int) -> "Series":
        if prec <= 0:
            # The window ends before exponent 0: the constant is not
            # representable and truncates away.
            return cls.zero(prec)
        return cls((rat(c),), 0, prec)

    @classmethod
    def t_power(cls, n: int, prec: int, c: RatLike = 1) -> "Series":
        return cls((rat(c),), n, prec)

    @classmethod
    def from_dict(cls, terms: Mapping[int, RatLike], prec: int) -> "Series":
        if not terms:
            return cls.zero(prec)
        lo = min(terms)
        hi = max(terms)
        if hi >= prec:
            raise ValueError("term exponent at or past the precision bound")
        cs = [Fraction(0)] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] += rat(c)
        return cls(cs, lo, prec)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes (zero to precision)."""
        return not self.coeffs

    def valuation(self) -> int | None:
        """Order of the lowest nonzero term, or None for zero-to-precision."""
        return self.lead if self.coeffs else None

    def coeff(self, n: int) -> Rat:
        if n >= self.prec:
            raise PrecisionExceeded(
                f"coefficient of t^{n} requested, known only below t^{self.prec}"
            )
        if self.lead <= n < self.lead + len(self.coeffs):
            return self.coeffs[n - self.lead]
        return Fraction(0)

    def terms(self) -> list[tuple[int, Rat]]:
        return [
            (self.lead + i, c) for i, c in enumerate(self.coeffs) if c != 0
        ]

    def _known_from(self) -> int:
        # Lowest exponent this series carries information about.
        return self.lead if self.coeffs else self.prec

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        terms: dict[int, Rat] = {}
        for e, c in self.terms():
            if e < prec:
                terms[e] = terms.get(e, Fraction(0)) + c
        for e, c in other.terms():
            if e < prec:
                terms[e] = terms.get(e, Fraction(0)) + c
        return Series.from_dict(terms, prec)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs), self.lead, self.prec)

    def __sub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Series.zero(self.prec)
            return Series(
                tuple(c * other for c in self.coeffs), self.lead, self.prec
            )
        if not isinstance(other, Series):
            return NotImplemented
        la = self._known_from()
        lb = other._known_from()
        prec = min(self.prec + lb, other.prec + la)
        terms: dict[int, Rat] = {}
        for ea, ca in self.terms():
            for eb, cb in other.terms():
                e = ea + eb
                if e < prec:
                    terms[e] = terms.get(e, Fraction(0)) + ca * cb
        return Series.from_dict(terms, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return self * (Fraction(1) / rat(other))
        if not isinstance(other, Series):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> "Series":
        if not isinstance(n, int):
            raise TypeError("series power must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        # Relative precision is what survives a power, so anchor on it.
        if n == 0:
            rel = self.prec - self._known_from()
            return Series.constant(1, rel)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "Series":
        """Multiplicative inverse; requires a nonzero lowest term."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("cannot invert a series that is zero to precision")
        rel = self.prec - v
        c0 = self.coeffs[0]
        inv0 = Fraction(1) / c0
        out = [inv0]
        for k in range(1, rel):
            acc = Fraction(0)
            for j in range(1, k + 1):
                aj = self.coeff(v + j) if v + j < self.prec else Fraction(0)
                if aj:
                    acc += aj * out[k - j]
            out.append(-inv0 * acc)
        return Series(out, -v, -v + rel)

    def shift(self, k: int) -> "Series":
        """Multiply by t^k."""
        return Series(self.coeffs, self.lead + k, self.prec + k)

    def truncate(self, prec: int) -> "Series":
        if prec >= self.prec:
            return self
        return Series(
            tuple(c for i, c in enumerate(self.coeffs) if self.lead + i < prec),
            self.lead,
            prec,
        )

    def derivative(self) -> "Series":
        terms = {e - 1: c * e for e, c in self.terms() if e != 0}
        return Series.from_dict(terms, self.prec - 1)

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self.prec)
        return NotImplemented

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        """Agreement of all known coefficients below the smaller precision."""
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        for e, c in self.terms():
            if e < prec and other.coeff(e) != c:
                return False
        for e, c in other.terms():
            if e < prec and self.coeff(e) != c:
                return False
        return True

    def __hash__(self):
        raise TypeError("Series equality is precision-relative; not hashable")

    def __repr__(self):
        if not self.coeffs:
            return f"Series(0 + O(t^{self.prec}))"
        parts = []
        shown = self.terms()[:8]
        for e, c in shown:
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
        if len(self.terms()) > 8:
            parts.append("...")
        return f"Series({' + '.join(parts)} + O(t^{self.prec}))"


def series_newton_solve(
    residuals: Sequence[Callable],
    jacobians: Sequence[Sequence[Callable]],
    leading: Sequence[tuple[int, RatLike]],
    order: int,
) -> list[Series]:
    """Solve a system of series equations order by order from leading terms.

    residuals: callables taking the list of unknown Series, returning a
        Series that must vanish.
    jacobians: jacobians[e][k] is the partial of residuals[e] in unknown
        k, again as a callable on the current unknowns.
    leading: per unknown, a pair (exponent, coefficient) of its lowest
        term.  These must already satisfy the equations to lowest order.
    order: number of correction coefficients to compute per unknown; the
        returned Series for unknown k has precision leading[k][0] + order + 1.

    The linearization at the leading jet must have full column rank, and
    each step's linear system must be solvable; otherwise SingularJet is
    raised.  The solver re-evaluates the residuals at each step, trading
    speed for not having to trust any incremental bookkeeping.
    """
    nunk = len(leading)
    if len(jacobians) != len(residuals) or any(
        len(row) != nunk for row in jacobians
    ):
        raise ValueError("jacobian shape does not match residuals x unknowns")
    if order < 0:
        raise ValueError("order must be nonnegative")

    lead_exp = [int(m) for m, _ in leading]
    for k, (_, c) in enumerate(leading):
        if rat(c) == 0:
            raise ValueError(f"leading coefficient of unknown {k} is zero")
    u = [
        Series.t_power(lead_exp[k], lead_exp[k] + order + 1, rat(c))
        for k, (_, c) in enumerate(leading)
    ]

    # Weight of residual e: the lowest exponent a unit correction of any
    # unknown can move, read off the jacobian at the leading jet.
    j0_series = [[jacobians[e][k](u) for k in range(nunk)] for e in range(len(residuals))]
    weights = []
    for e in range(len(residuals)):
        w = None
        for k in range(nunk):
            v = j0_series[e][k].valuation()
            if v is None:
                continue
            cand = v + lead_exp[k]
            w = cand if w is None else min(w, cand)
        if w is None:
            raise SingularJet(f"residual {e} does not depend on any unknown at first order")
        weights.append(w)

    j0 = [
        [j0_series[e][k].coeff(weights[e] - lead_exp[k]) for k in range(nunk)]
        for e in range(len(residuals))
    ]
    probe = solve_linear(j0)
    if probe.rank < nunk:
        raise SingularJet("leading-order jacobian does not have full column rank")

    for step in range(0, order + 1):
        res = [r(u) for r in residuals]
        if step == 0:
            for e, r in enumerate(res):
                v = r.valuation()
                if v is not None and v <= weights[e]:
                    raise SingularJet(
                        f"leading terms do not satisfy residual {e} at its own order"
                    )
            continue
        rhs = [-r.coeff(weights[e] + step) for e, r in enumerate(res)]
        try:
            sol = solve_linear(j0, rhs)
        except InconsistentSystem as exc:
            raise SingularJet(f"no series correction at step {step}") from exc
        u = [
            uk + Series.t_power(lead_exp[k] + step, uk.prec, sol.particular[k])
            if sol.particular[k] != 0
            else uk
            for k, uk in enumerate(u)
        ]
    return u
