import random
from fractions import Fraction

import pytest

from wcurve.exactalg import (
    DivisionByZeroPoly,
    InconsistentSystem,
    Poly,
    PolyMatrix,
    RatF,
    matrix_minimal_poly,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    rat,
    resultant_y,
    solve_linear,
    square_free_decomposition,
)

X = Poly.x()


def test_rat_accepts_int_string_fraction_and_rejects_float():
    assert rat(3) == Fraction(3)
    assert rat("3/4") == Fraction(3, 4)
    assert rat(Fraction(5, 7)) == Fraction(5, 7)
    with pytest.raises(TypeError):
        rat(0.5)


def test_poly_normalizes_trailing_zeros_and_degree_sentinel():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([]).degree == float("-inf")
    assert Poly([0, 0]).is_zero()
    assert Poly([7]).degree == 0
    assert (X**5).degree == 5


def test_poly_arithmetic_small_identities():
    p = X**2 - 1
    q = X - 1
    assert p - q * (X + 1) == Poly.zero()
    assert (q * q)(Fraction(3)) == 4
    assert p.derivative() == 2 * X
    assert Poly.from_roots([1, 2]) == X**2 - 3 * X + 2
    assert (X + 1) ** 3 == X**3 + 3 * X**2 + 3 * X + 1


def test_poly_divmod_examples():
    q, r = poly_divmod(X**2 - 1, X - 1)
    assert (q, r) == (X + 1, Poly.zero())
    q, r = poly_divmod(X**3, X**2)
    assert (q, r) == (X, Poly.zero())
    q, r = poly_divmod(X**2 + 1, X)
    assert (q, r) == (X, Poly.one())
    with pytest.raises(DivisionByZeroPoly):
        poly_divmod(X, Poly.zero())


def test_poly_divmod_roundtrip_random():
    rng = random.Random(11)
    for _ in range(40):
        a = Poly([rng.randint(-4, 4) for _ in range(rng.randint(0, 6))])
        b = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 5))])
        if b.is_zero():
            continue
        q, r = poly_divmod(a * b, b)
        assert q == a and r.is_zero()
        q, r = poly_divmod(a, b)
        assert a == q * b + r
        assert r.is_zero() or r.degree < b.degree


def test_poly_gcd_examples():
    assert poly_gcd(X**2 - 1, X - 1) == X - 1
    assert poly_gcd(X, Poly.zero()) == X
    a = (X - 2) ** 2 * (X - 3)
    b = (X - 2) * (X - 5)
    assert poly_gcd(a, b) == X - 2
    assert poly_lcm(X - 1, (X - 1) * (X + 1)) == X**2 - 1


def test_resultant_examples():
    # res_y(y^2 - x, 2y) = 4x up to the sign fixed by the Sylvester layout.
    r = resultant_y([-X, Poly.zero(), Poly.one()], [Poly.zero(), Poly.constant(2)])
    assert r == 4 * X or r == -4 * X
    assert resultant_y([Poly.constant(-1), Poly.one()], [Poly.one(), Poly.one()]) == 2
    # disc_y(y^2 - k) ~ -4k for a sample k.
    k = X**3 - 2 * X
    r = resultant_y([-k, Poly.zero(), Poly.one()], [Poly.zero(), Poly.constant(2)])
    assert r == 4 * k or r == -4 * k


def test_resultant_detects_common_root():
    f = [Poly.from_roots([1]) * Poly.from_roots([2]), Poly.zero(), Poly.one()]
    # f = y^2 + (x-1)(x-2): shares a root with y - y0 only where it vanishes;
    # against its y-derivative the resultant vanishes exactly at double roots.
    disc = resultant_y(f, [Poly.zero(), Poly.constant(2)])
    assert disc(Fraction(1)) == 0
    assert disc(Fraction(2)) == 0
    assert disc(Fraction(3)) != 0


def test_polymatrix_det_matches_cofactor_on_random_rationals():
    rng = random.Random(23)
    for n in (1, 2, 3, 4):
        rows = [
            [Poly.constant(Fraction(rng.randint(-5, 5))) for _ in range(n)]
            for _ in range(n)
        ]
        m = PolyMatrix(rows)
        assert m.det() == _cofactor_det(rows)


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = Poly.zero()
    for j in range(n):
        sub = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = rows[0][j] * _cofactor_det(sub)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def test_polymatrix_det_polynomial_entries():
    m = PolyMatrix([[X, Poly.one()], [Poly.one(), X]])
    assert m.det() == X**2 - 1
    v = PolyMatrix([[Poly.one(), X, X**2], [Poly.one(), 2 * X, 4 * X**2], [Poly.one(), 3 * X, 9 * X**2]])
    # Vandermonde in (1, 2, 3) scaled by powers of x.
    assert v.det() == 2 * X**3


def test_polymatrix_adjugate_identity():
    m = PolyMatrix([[X, Poly.one()], [X**2, X + 1]])
    d = m.det()
    prod = m.adjugate() * m
    n, _ = m.shape
    for i in range(n):
        for j in range(n):
            assert prod[i, j] == (d if i == j else Poly.zero())


def test_solve_linear_identity_and_free_variables():
    sol = solve_linear(
        [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]],
        [Fraction(2), Fraction(3)],
    )
    assert sol.particular == [2, 3]
    assert sol.is_unique

    sol = solve_linear([[Fraction(0)]], [Fraction(0)])
    assert sol.rank == 0
    assert len(sol.nullspace) == 1

    with pytest.raises(InconsistentSystem):
        solve_linear([[Fraction(0)]], [Fraction(1)])


def test_solve_linear_rank2_parametric_family():
    # x + y + z = 3, x - y = 1, 2x + z = 4: rank 2 in 3 unknowns after the
    # third row, which is the sum of the first two.
    a = [
        [Fraction(1), Fraction(1), Fraction(1)],
        [Fraction(1), Fraction(-1), Fraction(0)],
        [Fraction(2), Fraction(0), Fraction(1)],
    ]
    b = [Fraction(3), Fraction(1), Fraction(4)]
    sol = solve_linear(a, b)
    assert sol.rank == 2
    assert len(sol.nullspace) == 1
    for vec in [sol.particular] + [
        [p + n for p, n in zip(sol.particular, sol.nullspace[0])]
    ]:
        assert vec[0] + vec[1] + vec[2] == 3
        assert vec[0] - vec[1] == 1
        assert 2 * vec[0] + vec[2] == 4


def test_solve_linear_over_rational_functions():
    x = RatF.from_poly(X)
    sol = solve_linear([[x, RatF.one()], [RatF.one(), x]], [RatF.zero(), RatF.one()])
    # Solution of the 2x2 system: u = -1/(x^2-1)... checked by substitution.
    u, v = sol.particular
    assert x * u + v == RatF.zero()
    assert u + x * v == RatF.one()


def test_ratf_reduction_and_polynomial_detection():
    f = RatF(X**2 - 1, X - 1)
    assert f.is_polynomial()
    assert f.as_poly() == X + 1
    g = RatF(Poly.one(), 2 * X)
    assert g.den == X  # monic denominator, factor pushed to numerator
    assert g.num == Poly.constant(Fraction(1, 2))
    assert (g * RatF.from_poly(2 * X)).as_poly() == Poly.one()


def test_matrix_minimal_poly_diagonal_and_scalar():
    m = PolyMatrix([[X, Poly.zero()], [Poly.zero(), X]])
    assert matrix_minimal_poly(m) == [-X, Poly.one()]
    assert matrix_minimal_poly(PolyMatrix([[X**2 + 1]])) == [-(X**2) - 1, Poly.one()]


def test_matrix_minimal_poly_companion_cubic():
    # Companion matrix of T^3 - x.
    z = Poly.zero()
    m = PolyMatrix([[z, z, X], [Poly.one(), z, z], [z, Poly.one(), z]])
    assert matrix_minimal_poly(m) == [-X, z, z, Poly.one()]


def test_matrix_minimal_poly_derogatory_matrix_needs_lcm():
    # Block diagonal with blocks x and companion(T^2 - x): minimal poly is
    # (T - x)(T^2 - x), which no single Krylov vector of a block sees alone.
    z = Poly.zero()
    m = PolyMatrix([[X, z, z], [z, z, X], [z, Poly.one(), z]])
    p = matrix_minimal_poly(m)
    expect = [X * X, -X, -X, Poly.one()]  # (T - x)(T^2 - x) = T^3 - xT^2 - xT + x^2
    assert p == expect


def test_square_free_decomposition_recovers_multiplicities():
    a = Poly([-1, 1])
    b = Poly([-2, 1])
    c = Poly([1, 1, 1])
    f = a * a * a * b * c * c * Fraction(7)
    parts = square_free_decomposition(f)
    by_mult = {m: p for p, m in parts}
    assert by_mult[3] == a
    assert by_mult[1] == b
    assert by_mult[2] == c
    rebuilt = Poly.one()
    for p, m in parts:
        for _ in range(m):
            rebuilt = rebuilt * p
    assert rebuilt == f.monic()


def test_square_free_decomposition_square_free_input():
    f = Poly([-6, 11, -6, 1])  # (x-1)(x-2)(x-3)
    parts = square_free_decomposition(f)
    assert parts == [(f, 1)]


def test_square_free_decomposition_edge_cases():
    assert square_free_decomposition(Poly([Fraction(5)])) == []
    with pytest.raises(DivisionByZeroPoly):
        square_free_decomposition(Poly.zero())
