"""Floating-point checks of the exact results.

Fibers of the degree-r covering x: curve -> line are computed by joint
eigen-decomposition of the multiplication matrices evaluated at a sample
point x0; on them the Dirac property of the trace tensor, the fiber-sum
form of the standard trace, and the branch locus read off the trace form
determinant are all verified numerically.

Everything here is report-style: exact identities live in the curve
module, this one samples them in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

import numpy as np

from .curve import CurveAlgebra, TraceKit
from .exactalg import Poly, square_free_decomposition

NEAR_TOL = 1e-4
CROSS_TOL = 1e-6
DEFAULT_TOL = 1e-8


class NearBranchPoint(ValueError):
    """Sample point too close to the branch locus for stable numerics."""


class ToleranceExceeded(AssertionError):
    """A numeric check came out worse than the requested tolerance."""


@dataclass(frozen=True)
class FiberPoint:
    """One preimage of x0: all basis values, generator values first.

    coordinate_tuple lists (x0, y_{r_2}, ..., y_{r_m}) in generator
    order; basis_values holds every basis element's value at the point.
    """

    x0: complex
    basis_values: tuple
    generator_values: tuple

    @property
    def coordinate_tuple(self) -> tuple:
        return (self.x0,) + self.generator_values

    def value(self, element) -> complex:
        acc = 0j
        for c, val in zip(element, self.basis_values):
            if not c.is_zero():
                acc += complex(c(self.x0)) * val
        return acc


@dataclass(frozen=True)
class IndicatorReport:
    x0: complex
    max_error: float
    matrix: list
    tol: float


@dataclass(frozen=True)
class TraceReport:
    x0: complex
    fiber_sum: complex
    exact_value: complex
    error: float
    tol: float


@dataclass(frozen=True)
class BranchReport:
    values: list  # (approximate x, multiplicity), multiplicity-clustered
    degree: int
    expected_total: int

    @property
    def total(self) -> int:
        return sum(m for _, m in self.values)


def _cx(p: Poly, x0: complex) -> complex:
    return complex(p(complex(x0)))


def fiber(alg: CurveAlgebra, x0, near_tol: float = NEAR_TOL) -> list:
    """The r points over x0, via a shared eigenvector basis.

    The multiplication matrices of the generators commute, so the left
    eigenvectors of the first one (normalized to unit first component)
    are exactly the evaluation vectors (y_i(P))_i.  Eigenvalues of the
    remaining generators are read off the same vectors, and the first
    generator's values are cross-checked against direct polynomial root
    finding of its minimal polynomial.
    """
    x0 = complex(x0)
    r = alg.r
    gens = alg.H.generators[1:]
    mats = []
    for rj in gens:
        M = alg.mult_matrix(alg.generator_element(rj))
        mats.append(
            np.array([[_cx(M[i, j], x0) for j in range(r)] for i in range(r)])
        )
    eigvals, eigvecs = np.linalg.eig(mats[0].T)
    scale = max(1.0, float(np.max(np.abs(eigvals))))
    for a in range(r):
        for b in range(a + 1, r):
            if abs(eigvals[a] - eigvals[b]) < near_tol * scale:
                raise NearBranchPoint(
                    f"fiber values over x0 = {x0} collide within "
                    f"{near_tol * scale:.2e}"
                )
    points = []
    for idx in range(r):
        vec = eigvecs[:, idx]
        if abs(vec[0]) < 1e-12:
            raise NearBranchPoint(
                f"degenerate eigenvector over x0 = {x0}"
            )
        vec = vec / vec[0]
        # the normalized left eigenvector IS the evaluation vector, so
        # generator values are plain components; the other generator
        # matrices must share the eigenvector
        vscale = max(1.0, float(np.max(np.abs(vec))))
        for M, rj in zip(mats[1:], gens[1:]):
            val = vec[alg.gen_index[rj]]
            residual = float(np.max(np.abs(vec @ M - val * vec)))
            if residual > 1e-7 * vscale * max(1.0, abs(val)):
                raise ToleranceExceeded(
                    f"generator {rj} does not share the fiber "
                    f"eigenvector at x0 = {x0} (residual {residual:.2e})"
                )
        points.append(
            FiberPoint(
                x0=x0,
                basis_values=tuple(complex(v) for v in vec),
                generator_values=tuple(
                    complex(vec[alg.gen_index[rj]]) for rj in gens
                ),
            )
        )
    points.sort(key=lambda P: (P.generator_values[0].real, P.generator_values[0].imag))

    fs = alg.minimal_poly_of_generator(2)
    roots = [complex(z) for z in np.roots([complex(c(x0)) for c in reversed(fs)])]
    # greedy nearest-root matching: ordering conjugate pairs by (real,
    # imag) is unstable when real parts agree only to rounding noise
    for P in points:
        a = complex(P.generator_values[0])
        best = min(range(len(roots)), key=lambda k: abs(a - roots[k]))
        rel = abs(a - roots[best]) / max(1.0, abs(a))
        if rel > CROSS_TOL:
            raise ToleranceExceeded(
                f"eigenvalue {a} vs polynomial root {roots[best]}: "
                f"relative error {rel:.2e}"
            )
        roots.pop(best)
    return points


def indicator_test(
    kit: TraceKit, x0, tol: float = DEFAULT_TOL
) -> IndicatorReport:
    """h-tensor over diagonal must evaluate to the identity matrix on
    the fiber: 1 on (P, P), 0 on distinct pairs."""
    alg = kit.algebra
    r = alg.r
    points = fiber(alg, x0)
    C = [[_cx(kit.htilde[i, j], x0) for j in range(r)] for i in range(r)]
    hx = [P.value(kit.hX) for P in points]
    matrix = []
    max_err = 0.0
    for a, P in enumerate(points):
        row = []
        for b, Q in enumerate(points):
            pairing = 0j
            for i in range(r):
                for j in range(r):
                    if C[i][j]:
                        pairing += P.basis_values[i] * C[i][j] * Q.basis_values[j]
            val = pairing / hx[a]
            row.append(val)
            err = abs(val - (1.0 if a == b else 0.0))
            max_err = max(max_err, err)
        matrix.append(row)
    if max_err >= tol:
        raise ToleranceExceeded(
            f"indicator matrix off by {max_err:.2e} at x0 = {x0}"
        )
    return IndicatorReport(x0=complex(x0), max_error=max_err, matrix=matrix, tol=tol)


def trace_consistency(
    alg: CurveAlgebra, x0, v, tol: float = DEFAULT_TOL
) -> TraceReport:
    """Standard trace = sum over the fiber, sampled at x0."""
    points = fiber(alg, x0)
    terms = [P.value(v) for P in points]
    fiber_sum = sum(terms)
    exact = _cx(alg.std_trace(v), x0)
    # backward-error scale: the summands may be large and nearly
    # canceling, so measure against the biggest operand
    scale = max(1.0, abs(exact), max(abs(t) for t in terms))
    err = abs(fiber_sum - exact) / scale
    if err >= tol:
        raise ToleranceExceeded(
            f"fiber sum {fiber_sum} vs trace value {exact}: relative "
            f"error {err:.2e}"
        )
    return TraceReport(
        x0=complex(x0),
        fiber_sum=complex(fiber_sum),
        exact_value=complex(exact),
        error=err,
        tol=tol,
    )


def branch_report(alg: CurveAlgebra) -> BranchReport:
    """Branch x-values with multiplicities from the trace form.

    det of the pairing matrix is an exact polynomial whose roots are the
    finite branch values, counted with the local fiber deficiency, and
    its degree is 2g + r - 1.  Multiplicities come from the exact
    square-free decomposition; only the simple roots of each square-free
    factor are found in floating point, which keeps them well
    conditioned.
    """
    det = alg.trace_form().det()
    degree = det.degree
    expected = 2 * alg.H.genus + alg.r - 1
    values = []
    for factor, mult in square_free_decomposition(det):
        roots = np.roots([complex(c) for c in reversed(factor.coeffs)])
        for z in roots:
            values.append((complex(z), mult))
    values.sort(key=lambda item: (item[0].real, item[0].imag))
    return BranchReport(values=values, degree=degree, expected_total=expected)


def random_sample_points(
    alg: CurveAlgebra, count: int, seed: int = 0, max_tries: int = 200
) -> list:
    """Random rational x0 values with well-separated fibers."""
    rng = Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise NearBranchPoint(
                f"could not find {count} generic sample points"
            )
        x0 = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        try:
            fiber(alg, x0)
        except (NearBranchPoint, ToleranceExceeded):
            continue
        out.append(x0)
    return out


def verification_suite(
    kit: TraceKit,
    samples: int = 10,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Indicator + trace consistency at random sample points, plus the
    branch report, as one JSON-ready dictionary."""
    alg = kit.algebra
    xs = random_sample_points(alg, samples, seed=seed)
    max_indicator = 0.0
    max_trace = 0.0
    rng = Random(seed + 1)
    for x0 in xs:
        rep = indicator_test(kit, x0, tol=tol)
        max_indicator = max(max_indicator, rep.max_error)
        v = tuple(
            Poly([rng.randint(-3, 3) for _ in range(2)]) for _ in range(alg.r)
        )
        trep = trace_consistency(alg, x0, v, tol=tol)
        max_trace = max(max_trace, trep.error)
    branches = branch_report(alg)
    return {
        "samples": [str(x) for x in xs],
        "max_indicator_error": max_indicator,
        "max_trace_error": max_trace,
        "tolerance": tol,
        "branch_values": [
            {"x": [z.real, z.imag], "multiplicity": m}
            for z, m in branches.values
        ],
        "branch_total": branches.total,
        "branch_expected": branches.expected_total,
        "branch_degree_matches": branches.degree == branches.expected_total
        and branches.total == branches.degree,
    }
