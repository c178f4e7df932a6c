from fractions import Fraction
from functools import lru_cache

import pytest

from wcurve.curve import CurveAlgebra
from wcurve.exactalg import Poly
from wcurve.fixtures import fixture, fixture_names
from wcurve.numverify import (
    NearBranchPoint,
    ToleranceExceeded,
    branch_report,
    fiber,
    indicator_test,
    random_sample_points,
    trace_consistency,
    verification_suite,
)


@lru_cache(maxsize=None)
def kit_for(name):
    return fixture(name).annihilator_solve()


def cusp():
    return CurveAlgebra.from_plane(2, 3, [Poly.zero(), Poly([0, 0, 0, -1])])


def test_fiber_of_the_cusp_is_the_two_square_roots():
    alg = cusp()
    pts = fiber(alg, 4)
    ys = sorted(P.generator_values[0].real for P in pts)
    assert ys == pytest.approx([-8.0, 8.0])
    for P in pts:
        assert P.coordinate_tuple[0] == 4
        assert abs(P.basis_values[0] - 1) < 1e-12


def test_fiber_points_satisfy_the_table():
    for name in fixture_names():
        alg = fixture(name)
        pts = fiber(alg, Fraction(31, 100))
        assert len(pts) == alg.r
        for P in pts:
            for i in range(alg.r):
                for j in range(alg.r):
                    lhs = P.basis_values[i] * P.basis_values[j]
                    rhs = P.value(alg.table[i][j])
                    assert abs(lhs - rhs) < 1e-6 * max(1.0, abs(rhs))


def test_fiber_at_branch_point_is_refused():
    alg = fixture("pentagonal")
    with pytest.raises(NearBranchPoint):
        fiber(alg, 1)
    # a short distance away the sheets already separate like the fifth
    # root of the offset, so the fiber is legitimately resolvable
    pts = fiber(alg, Fraction(100001, 100000))
    assert len(pts) == 5


def test_indicator_matrix_is_near_identity():
    for name in fixture_names():
        rep = indicator_test(kit_for(name), Fraction(31, 100))
        assert rep.max_error < 1e-8
        r = len(rep.matrix)
        for a in range(r):
            for b in range(r):
                want = 1.0 if a == b else 0.0
                assert abs(rep.matrix[a][b] - want) < 1e-8


def test_indicator_rejects_hopeless_tolerance():
    with pytest.raises(ToleranceExceeded):
        indicator_test(kit_for("trigonal378"), Fraction(31, 100), tol=1e-18)


def test_trace_consistency_on_basis_elements():
    for name in fixture_names():
        alg = fixture(name)
        for j in range(alg.r):
            rep = trace_consistency(alg, Fraction(17, 7), alg.basis_vector(j))
            assert rep.error < 1e-8


def test_trace_consistency_constant_sums_to_r():
    alg = cusp()
    rep = trace_consistency(alg, 5, alg.basis_vector(0))
    assert rep.fiber_sum == pytest.approx(2.0)
    assert rep.exact_value == pytest.approx(2.0)


def test_trace_of_y_on_plane_curve_is_minus_a1():
    # Vieta: the y-coordinates over x0 sum to -A_1(x0)
    alg = CurveAlgebra.from_plane(
        3, 4, [Poly([1, 1]), Poly([2]), Poly([3, 0, 0, 0, -1])]
    )
    x0 = Fraction(9, 4)
    rep = trace_consistency(alg, x0, alg.basis_vector(1))
    assert rep.exact_value == pytest.approx(complex(-(1 + x0)))


def test_branch_report_fixture_multiplicities():
    rep = branch_report(fixture("pentagonal"))
    assert rep.degree == 20
    assert rep.total == 20 == rep.expected_total
    got = sorted(
        (round(z.real), m) for z, m in rep.values if abs(z.imag) < 1e-8
    )
    assert got == [(1, 4), (2, 4), (3, 4), (4, 4), (5, 4)]

    rep = branch_report(fixture("sextic"))
    assert rep.total == 29 == rep.expected_total
    got = sorted(
        (round(z.real), m) for z, m in rep.values if abs(z.imag) < 1e-8
    )
    assert got == [(1, 5), (2, 5), (3, 5), (4, 4), (5, 4), (6, 3), (7, 3)]


def test_branch_report_trigonal_total():
    rep = branch_report(fixture("trigonal378"))
    assert rep.degree == 10
    assert rep.total == 10 == rep.expected_total
    # branching is simple here: ten distinct branch values
    assert all(m == 1 for _, m in rep.values)


def test_branch_report_hyperelliptic():
    # y^2 = (x-1)(x-2)(x-3): three branch values
    alg = CurveAlgebra.from_plane(2, 3, [Poly.zero(), Poly([6, -11, 6, -1])])
    rep = branch_report(alg)
    assert rep.total == 3 == rep.expected_total


def test_random_sample_points_are_generic():
    alg = fixture("trigonal378")
    xs = random_sample_points(alg, 5, seed=11)
    assert len(xs) == 5
    for x0 in xs:
        fiber(alg, x0)


def test_verification_suite_shape_and_tolerances():
    suite = verification_suite(kit_for("trigonal378"), samples=4, seed=2)
    assert suite["max_indicator_error"] < 1e-8
    assert suite["max_trace_error"] < 1e-8
    assert suite["branch_degree_matches"]
    assert len(suite["samples"]) == 4
    assert suite["branch_total"] == suite["branch_expected"] == 10
