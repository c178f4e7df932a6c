"""Exact scalar, polynomial and linear algebra over the rationals.

Everything in this module is exact: scalars are `fractions.Fraction`,
polynomials are dense coefficient tuples over Fraction, and the matrix
routines (Bareiss determinants, Gaussian elimination, Krylov minimal
polynomials) never leave rational arithmetic.  Floating point lives in
`wcurve.numverify` and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Rat = Fraction

NEG_INF = float("-inf")


class DivisionByZeroPoly(ZeroDivisionError):
    """Polynomial division with a zero divisor."""


class InconsistentSystem(ValueError):
    """A linear system A x = b with no solution.

    `row` is an index of an unsatisfiable equation after elimination,
    useful when the caller assembled the system from structured data.
    """

    def __init__(self, row: int | None = None):
        self.row = row
        msg = "linear system is inconsistent"
        if row is not None:
            msg += f" (first unsatisfiable equation: row {row})"
        super().__init__(msg)


def rat(value: Union[int, str, Rat]) -> Rat:
    """Coerce an int, an exact decimal/fraction string, or a Fraction to Rat.

    Floats are rejected on purpose: binary rounding must not leak into
    exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


RatLike = Union[int, str, Rat]


class Poly:
    """Dense univariate polynomial over Fraction, low degree first.

    Immutable.  The zero polynomial has an empty coefficient tuple and
    degree() returns -inf for it so that degree comparisons against
    integers behave.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: RatLike) -> "Poly":
        return cls((rat(c),))

    @classmethod
    def x_power(cls, n: int, c: RatLike = 1) -> "Poly":
        if n < 0:
            raise ValueError("x_power needs n >= 0")
        return cls((0,) * n + (rat(c),))

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "Poly":
        p = cls.one()
        for root in roots:
            p = p * cls((-rat(root), 1))
        return p

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Rat:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, n: int) -> Rat:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero()
            return Poly(tuple(c * other for c in self.coeffs))
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZeroPoly("division by zero scalar")
            inv = Fraction(1) / rat(other)
            return Poly(tuple(c * inv for c in self.coeffs))
        q, r = poly_divmod(self, _as_poly(other))
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, x0):
        """Evaluate by Horner.  Works for Fraction, complex, and series
        arguments; the accumulator starts as the scalar top coefficient
        so windowed arithmetic is not degraded by a zero seed."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x0 + c
        if acc is None:
            return 0 * x0 if not isinstance(x0, (int, Fraction)) else Fraction(0)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading
        if lead == 1:
            return self
        return self / lead

    def derivative(self) -> "Poly":
        return Poly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(v) -> Union[Poly, type(NotImplemented)]:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly.constant(v)
    return NotImplemented


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            xo = var if i == 1 else f"{var}^{i}"
            if c == 1:
                term = xo
            elif c == -1:
                term = f"-{xo}"
            else:
                term = f"{c}*{xo}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of f by g with deg(rem) < deg(g)."""
    if g.is_zero():
        raise DivisionByZeroPoly("polynomial division by zero")
    if f.is_zero() or len(f.coeffs) < len(g.coeffs):
        return Poly.zero(), f
    rem = list(f.coeffs)
    gc = g.coeffs
    dg = len(gc) - 1
    inv_lead = Fraction(1) / gc[-1]
    quot = [Fraction(0)] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg] * inv_lead
        if c == 0:
            continue
        quot[i] = c
        for j, gcj in enumerate(gc):
            rem[i + j] -= c * gcj
    return Poly(quot), Poly(rem[:dg])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (Euclid)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic() if not a.is_zero() else Poly.zero()


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly.zero()
    return ((f * g) / poly_gcd(f, g)).monic()


def square_free_decomposition(f: Poly) -> list:
    """Yun decomposition: monic pairwise-coprime square-free factors
    with their multiplicities, so f = lead * prod p_i^{m_i}."""
    if f.is_zero():
        raise DivisionByZeroPoly("square-free decomposition of zero")
    f = f.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f / a
    c = df / a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        p = poly_gcd(b, d)
        if p.degree > 0:
            out.append((p, i))
        b = b / p
        c = d / p
        d = c - b.derivative()
        i += 1
    return out


class RatF:
    """Rational function num/den over Q[x], reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, _reduced: bool = False):
        if den is None:
            den = Poly.one()
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one()
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num / g
                    den = den / g
                lead = den.leading
                if lead != 1:
                    num = num / lead
                    den = den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatF is immutable")

    @classmethod
    def zero(cls) -> "RatF":
        return cls(Poly.zero(), Poly.one(), _reduced=True)

    @classmethod
    def one(cls) -> "RatF":
        return cls(Poly.one(), Poly.one(), _reduced=True)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatF":
        return cls(p, Poly.one(), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: denominator {self.den}")
        return self.num

    def __add__(self, other) -> "RatF":
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return RatF(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatF":
        return RatF(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatF":
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return RatF(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatF":
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatF(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatF":
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other) -> bool:
        other = _as_ratf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatF", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        if self.is_polynomial():
            return f"RatF({self.num})"
        return f"RatF(({self.num}) / ({self.den}))"


def _as_ratf(v):
    if isinstance(v, RatF):
        return v
    if isinstance(v, Poly):
        return RatF.from_poly(v)
    if isinstance(v, (int, Fraction)):
        return RatF.from_poly(Poly.constant(v))
    return NotImplemented


class PolyMatrix:
    """Rectangular matrix of Poly entries with exact determinant support."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Poly]]):
        rows = [tuple(_coerce_entry(e) for e in row) for row in rows]
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> "PolyMatrix":
        n, m = self.shape
        return PolyMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, m = self.shape
        m2, p = other.shape
        if m != m2:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = Poly.zero()
                for k in range(m):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[e * c for e in row] for row in self.rows])

    def trace(self) -> Poly:
        n, m = self.shape
        if n != m:
            raise ValueError("trace of a non-square matrix")
        acc = Poly.zero()
        for i in range(n):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def det(self) -> Poly:
        """Determinant by fraction-free Bareiss elimination.

        All intermediate divisions are exact in Q[x]; a nonzero remainder
        would mean a programming error, so it is asserted away.
        """
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return Poly.one()
        mat = [list(row) for row in self.rows]
        sign = 1
        prev = Poly.one()
        for k in range(n - 1):
            pivot_row = None
            for i in range(k, n):
                if not mat[i][k].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return Poly.zero()
            if pivot_row != k:
                mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
                sign = -sign
            pk = mat[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = mat[i][j] * pk - mat[i][k] * mat[k][j]
                    q, r = poly_divmod(num, prev)
                    assert r.is_zero(), "Bareiss division was not exact"
                    mat[i][j] = q
                mat[i][k] = Poly.zero()
            prev = pk
        d = mat[n - 1][n - 1]
        return d if sign == 1 else -d

    def minor(self, drop_row: int, drop_col: int) -> "PolyMatrix":
        return PolyMatrix(
            [
                [e for j, e in enumerate(row) if j != drop_col]
                for i, row in enumerate(self.rows)
                if i != drop_row
            ]
        )

    def adjugate(self) -> "PolyMatrix":
        """Adjugate matrix: adj(M) @ M = det(M) * I."""
        n, m = self.shape
        if n != m:
            raise ValueError("adjugate of a non-square matrix")
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                d = self.minor(i, j).det()
                row.append(d if (i + j) % 2 == 0 else -d)
            cof.append(row)
        return PolyMatrix(cof).transpose()

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(
            [[Poly.one() if i == j else Poly.zero() for j in range(n)] for i in range(n)]
        )

    def __repr__(self):
        n, m = self.shape
        return f"PolyMatrix({n}x{m})"


def _coerce_entry(e) -> Poly:
    p = _as_poly(e)
    if p is NotImplemented:
        raise TypeError(f"matrix entry must be Poly-like, got {type(e).__name__}")
    return p


def resultant_y(f: Sequence[Poly], g: Sequence[Poly]) -> Poly:
    """Resultant in y of two polynomials with Poly coefficients in x.

    `f` and `g` are coefficient lists in y, low degree first, entries in
    Q[x].  Computed as the Sylvester determinant via Bareiss, so the
    result is exact.  The resultant vanishes at x0 exactly when f(x0, y)
    and g(x0, y) share a root (or a leading coefficient dies there).
    """
    fc = [_coerce_entry(c) for c in f]
    gc = [_coerce_entry(c) for c in g]
    while fc and fc[-1].is_zero():
        fc.pop()
    while gc and gc[-1].is_zero():
        gc.pop()
    if not fc or not gc:
        return Poly.zero()
    n = len(fc) - 1
    m = len(gc) - 1
    if n == 0 and m == 0:
        return Poly.one()
    size = n + m
    rows = []
    for i in range(m):
        row = [Poly.zero()] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [Poly.zero()] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return PolyMatrix(rows).det()


@dataclass
class LinearSolution:
    """Solution set of an exact linear system A x = b.

    `particular` is one solution, `nullspace` a basis of the homogeneous
    solutions; the affine solution set is particular + span(nullspace).
    """

    particular: list
    nullspace: list
    rank: int
    pivot_columns: list = field(default_factory=list)

    @property
    def is_unique(self) -> bool:
        return not self.nullspace


def solve_linear(A: Sequence[Sequence], b: Sequence | None = None) -> LinearSolution:
    """Exact Gaussian elimination over Fraction or RatF entries.

    Raises InconsistentSystem when b is outside the column span.  With
    b = None the homogeneous system is solved (particular = 0 vector).
    """
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    sample = None
    for r in rows:
        for e in r:
            sample = e
            break
        if sample is not None:
            break
    zero, one = _field_consts(sample)
    rhs = [zero] * nrows if b is None else [e for e in b]
    if len(rhs) != nrows:
        raise ValueError("right-hand side length mismatch")

    pivot_cols = []
    prow = 0
    for col in range(ncols):
        piv = None
        for i in range(prow, nrows):
            if rows[i][col] != zero:
                piv = i
                break
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        rhs[prow], rhs[piv] = rhs[piv], rhs[prow]
        inv = one / rows[prow][col]
        rows[prow] = [e * inv for e in rows[prow]]
        rhs[prow] = rhs[prow] * inv
        for i in range(nrows):
            if i == prow:
                continue
            factor = rows[i][col]
            if factor == zero:
                continue
            rows[i] = [e - factor * p for e, p in zip(rows[i], rows[prow])]
            rhs[i] = rhs[i] - factor * rhs[prow]
        pivot_cols.append(col)
        prow += 1
        if prow == nrows:
            break
    for i in range(prow, nrows):
        if rhs[i] != zero:
            raise InconsistentSystem(row=i)

    particular = [zero] * ncols
    for r, col in enumerate(pivot_cols):
        particular[col] = rhs[r]
    free_cols = [c for c in range(ncols) if c not in set(pivot_cols)]
    nullspace = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for r, col in enumerate(pivot_cols):
            vec[col] = -rows[r][fc]
        nullspace.append(vec)
    return LinearSolution(
        particular=particular,
        nullspace=nullspace,
        rank=len(pivot_cols),
        pivot_columns=pivot_cols,
    )


def _field_consts(sample):
    if sample is None or isinstance(sample, (int, Fraction)):
        return Fraction(0), Fraction(1)
    if isinstance(sample, RatF):
        return RatF.zero(), RatF.one()
    raise TypeError(f"unsupported field element {type(sample).__name__}")


# -- minimal polynomials by Krylov iteration -------------------------------


def matrix_minimal_poly(M: PolyMatrix) -> list[Poly]:
    """Monic minimal polynomial of a matrix over Q(x), coefficients in Q[x].

    Krylov iteration with content clearing: start vectors are cycled (and
    their minimal polynomials lcm'ed) until p(M) = 0 holds identically.
    The matrices this package feeds in are multiplication matrices of
    integral ring elements, so the cleared coefficients must come out
    polynomial; a denominator that survives clearing raises ValueError.
    """
    n, m = M.shape
    if n != m:
        raise ValueError("minimal polynomial of a non-square matrix")
    if n == 0:
        return [Poly.one()]
    p: list[RatF] | None = None
    for start in range(n):
        v0 = [RatF.zero()] * n
        v0[start] = RatF.one()
        q = _krylov_min_poly(M, v0)
        p = q if p is None else _t_lcm(p, q)
        if len(p) == n + 1:
            break
        if _t_poly_of_matrix_is_zero(p, M):
            break
    assert p is not None
    if not _t_poly_of_matrix_is_zero(p, M):
        raise ValueError("Krylov start vectors did not span a cyclic subspace")
    out = []
    for c in p:
        if not c.is_polynomial():
            raise ValueError(
                f"minimal polynomial has a non-polynomial coefficient {c}"
            )
        out.append(c.as_poly())
    return out


def _krylov_min_poly(M: PolyMatrix, v0: list[RatF]) -> list[RatF]:
    """Minimal monic dependence of the Krylov sequence v0, Mv0, M^2 v0, ...

    The stored iterates are content-cleared to keep entries small, so the
    true vectors are scales[k] * vecs[k]; a dependence among the cleared
    vectors converts back through those scales.
    """
    n = len(v0)
    vecs = [v0]
    scales = [RatF.one()]
    v = v0
    s = RatF.one()
    for _ in range(n):
        raw = _apply_poly_matrix(M, v)
        v, factor = _clear_content(raw)
        s = s / factor
        vecs.append(v)
        scales.append(s)
        cols = list(zip(*vecs))
        sol = solve_linear([list(c) for c in cols])
        if sol.nullspace:
            combo = sol.nullspace[0]
            true_coeffs = [c / sk for c, sk in zip(combo, scales)]
            lead = true_coeffs[-1]
            assert lead != RatF.zero()
            return [c / lead for c in true_coeffs]
    raise AssertionError("dependence must appear by dimension count")


def _apply_poly_matrix(M: PolyMatrix, v: list[RatF]) -> list[RatF]:
    n, m = M.shape
    out = []
    for i in range(n):
        acc = RatF.zero()
        for j in range(m):
            e = M.rows[i][j]
            if e.is_zero():
                continue
            acc = acc + RatF.from_poly(e) * v[j]
        out.append(acc)
    return out


def _clear_content(v: list[RatF]) -> tuple[list[RatF], RatF]:
    """Multiply a vector by lcm(denominators)/gcd(numerators).

    Returns (cleared, scale) with cleared = scale * v.  Keeps Krylov
    iterates from growing without losing track of the true vectors.
    """
    num_gcd = Poly.zero()
    den_lcm = Poly.one()
    for e in v:
        if e.is_zero():
            continue
        num_gcd = poly_gcd(num_gcd, e.num)
        den_lcm = poly_lcm(den_lcm, e.den)
    if num_gcd.is_zero():
        return v, RatF.one()
    scale = RatF(den_lcm, num_gcd)
    return [e * scale for e in v], scale


def _t_divmod(a: list[RatF], b: list[RatF]) -> tuple[list[RatF], list[RatF]]:
    """Division in Q(x)[T] for coefficient lists, low T-degree first."""
    b = list(b)
    while b and b[-1].is_zero():
        b.pop()
    if not b:
        raise ZeroDivisionError("T-polynomial division by zero")
    rem = list(a)
    quot = [RatF.zero()] * max(0, len(rem) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b) and any(not e.is_zero() for e in rem):
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quot[shift] = c
        for i, bc in enumerate(b):
            rem[shift + i] = rem[shift + i] - c * bc
        rem.pop()
    return quot, rem


def _t_gcd(a: list[RatF], b: list[RatF]) -> list[RatF]:
    a, b = list(a), list(b)
    while any(not e.is_zero() for e in b):
        _, r = _t_divmod(a, b)
        while r and r[-1].is_zero():
            r.pop()
        a, b = b, r
    while a and a[-1].is_zero():
        a.pop()
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _t_mul(a: list[RatF], b: list[RatF]) -> list[RatF]:
    if not a or not b:
        return []
    out = [RatF.zero()] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return out


def _t_lcm(a: list[RatF], b: list[RatF]) -> list[RatF]:
    g = _t_gcd(a, b)
    q, r = _t_divmod(_t_mul(a, b), g)
    assert all(e.is_zero() for e in r)
    lead = q[-1]
    return [c / lead for c in q]


def _t_poly_of_matrix_is_zero(p: list[RatF], M: PolyMatrix) -> bool:
    """Check p(M) = 0 by applying powers of M to basis vectors."""
    n, _ = M.shape
    for start in range(n):
        v = [RatF.zero()] * n
        v[start] = RatF.one()
        acc = [p[0] * e for e in v]
        for c in p[1:]:
            v = _apply_poly_matrix(M, v)
            acc = [a + c * e for a, e in zip(acc, v)]
        if any(not e.is_zero() for e in acc):
            return False
    return True


# Truncated Laurent series live in wcurve.series; re-exported lazily so the
# exact-arithmetic toolbox presents one surface without an import cycle.
_SERIES_NAMES = ("Series", "series_newton_solve", "PrecisionExceeded", "SingularJet")


def __getattr__(name):
    if name in _SERIES_NAMES:
        from . import series as _series_mod

        return getattr(_series_mod, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
