"""The monomial ring attached to a numerical semigroup.

Monomials Z_{r_1}^{m_1} ... Z_{r_m}^{m_m} of weight sum m_j r_j, the
distinguished representative of each standard-basis element, structure
constants, binomial (toric) relations, and the degree-d trace monomials
with their diagonal.  This is the degenerate model every curve algebra
collapses onto when the lower-filtration terms are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .semigroup import IndexOutOfRange, NotInSemigroup, NumericalSemigroup


class InvalidTraceDegree(ValueError):
    """d - e_i must lie in H for every class i."""


def _zeta_order(m: "MonomialElement") -> tuple:
    # Sort key for the distinguished representative: minimal total degree,
    # then lexicographically greatest reading the largest generator first.
    return (m.total_degree, tuple(-x for x in reversed(m.exponents)))


@dataclass(frozen=True)
class MonomialElement:
    """Exponent vector over the generators; weight = sum of exp * generator."""

    generators: tuple
    exponents: tuple

    def __post_init__(self):
        if len(self.generators) != len(self.exponents):
            raise ValueError("exponent vector length must match generator count")
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @property
    def weight(self) -> int:
        return sum(m * g for m, g in zip(self.exponents, self.generators))

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        if self.generators != other.generators:
            raise ValueError("mismatched generator tuples")
        return MonomialElement(
            self.generators,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def label(self) -> str:
        """ASCII rendering like Z5^2*Z7; the empty product renders as 1."""
        parts = []
        for g, m in zip(self.generators, self.exponents):
            if m == 0:
                continue
            parts.append(f"Z{g}" if m == 1 else f"Z{g}^{m}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"MonomialElement({self.label()})"


@dataclass(frozen=True)
class MonomialTraceData:
    """The r monomials of the degree-d trace element and its bookkeeping.

    monomials[i] is a pair (left, i): the left tensor factor of weight
    ehat[i] paired with the basis index i on the right.  The left factor
    is stored in structural form Z_r^{delta_i} * (representative of
    e_star(ell, i)), which is what the weight decomposition dictates.
    """

    d_h: int
    ell: int
    ehat: tuple
    delta: tuple
    monomials: tuple
    h_diagonal: tuple  # (r, MonomialElement): the diagonal r * Z_r^delta0 * rep(e_ell)
    symmetric: bool
    minimal: bool

    def to_record(self) -> dict:
        return {
            "d_h": self.d_h,
            "ell": self.ell,
            "ehat": list(self.ehat),
            "delta": list(self.delta),
            "monomials": [
                {"left": left.label(), "right_index": i, "weight": left.weight}
                for left, i in self.monomials
            ],
            "h_diagonal": f"{self.h_diagonal[0]}*{self.h_diagonal[1].label()}",
            "symmetric": self.symmetric,
            "minimal_degree": self.minimal,
        }


class MonomialRing:
    """Monomial model of the semigroup algebra, free over powers of Z_r."""

    def __init__(self, H: NumericalSemigroup):
        self.H = H
        self.basis = H.standard_basis()

    # -- representatives ---------------------------------------------------

    def representations(self, value: int) -> list:
        """All exponent vectors of the given weight, unordered."""
        gens = self.H.generators
        out = []

        def rec(idx, remaining, acc):
            if idx == len(gens) - 1:
                g = gens[idx]
                if remaining % g == 0:
                    out.append(tuple(acc + [remaining // g]))
                return
            g = gens[idx]
            for m in range(remaining // g + 1):
                rec(idx + 1, remaining - m * g, acc + [m])

        if value >= 0:
            rec(0, value, [])
        return [MonomialElement(gens, e) for e in out]

    def zeta_repr(self, value: int) -> MonomialElement:
        """The distinguished monomial of the given weight.

        Tie-break: minimal total degree first, then lexicographically
        greatest reading exponents from the largest generator down, which
        favors the few-large-generator spellings.
        """
        reps = self.representations(value)
        if not reps:
            raise NotInSemigroup(f"{value} is not in {self.H!r}")
        return min(reps, key=_zeta_order)

    def unit(self) -> MonomialElement:
        return MonomialElement(self.H.generators, (0,) * self.H.m)

    def z_r_power(self, p: int) -> MonomialElement:
        return MonomialElement(
            self.H.generators, (p,) + (0,) * (self.H.m - 1)
        )

    # -- structure constants ----------------------------------------------

    def structure_b(self, i: int, j: int) -> tuple:
        """Product of basis elements i and j: the unique (k, p) with
        e_i + e_j = e_k + p*r."""
        e = self.basis.e
        r = self.H.r
        if not (0 <= i < r and 0 <= j < r):
            raise IndexOutOfRange(f"indices ({i}, {j}) outside 0..{r - 1}")
        total = e[i] + e[j]
        k = self.basis.class_of[total % r]
        p = (total - e[k]) // r
        return (k, p)

    def binomial_exponents(self, j: int) -> tuple:
        """For generator index j (1-based, j >= 2): the exponent pair
        (rj, rj_bar) of the defining binomial Z_{r_j}^{rj} - Z_r^{rj_bar},
        with rj = r/gcd(r, r_j) and rj_bar = r_j/gcd(r, r_j)."""
        if not 2 <= j <= self.H.m:
            raise IndexOutOfRange(f"generator index {j} outside 2..{self.H.m}")
        r = self.H.r
        rj = self.H.generators[j - 1]
        g = gcd(r, rj)
        return (r // g, rj // g)

    # -- toric relations ---------------------------------------------------

    def toric_relations(self, weight_cap: int) -> list:
        """A generating set of equal-weight monomial identities up to the cap.

        Walks weights in ascending order; within a weight class, vectors
        already identified through a lower-weight relation shifted by a
        monomial are merged, and one new pair per leftover component is
        emitted.  The emitted pair puts the side with the fewest Z_r
        factors first, matching how the relations are usually written.
        """
        if weight_cap < 2 * self.H.generators[-1]:
            raise ValueError(
                f"weight cap {weight_cap} below 2*max generator "
                f"{2 * self.H.generators[-1]}"
            )
        accepted = []
        for w in range(1, weight_cap + 1):
            vectors = self.representations(w)
            if len(vectors) < 2:
                continue
            index = {v.exponents: n for n, v in enumerate(vectors)}
            parent = list(range(len(vectors)))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            def union(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra

            for left, right in accepted:
                shift_weight = w - left.weight
                if shift_weight < 0:
                    continue
                for shift in self.representations(shift_weight):
                    a = (left * shift).exponents
                    b = (right * shift).exponents
                    if a in index and b in index:
                        union(index[a], index[b])
            components = {}
            for n, v in enumerate(vectors):
                components.setdefault(find(n), []).append(v)
            if len(components) < 2:
                continue
            reps = [min(group, key=_zeta_order) for group in components.values()]
            # Z_r-heavy representative last; ties broken by the zeta order.
            reps.sort(key=lambda m: (m.exponents[0],) + _zeta_order(m))
            anchor = reps[-1]
            for other in reps[:-1]:
                accepted.append((other, anchor))
        return accepted

    # -- trace monomials ---------------------------------------------------

    def trace_monomials(self, d: int) -> MonomialTraceData:
        H = self.H
        if not H.is_valid_trace_degree(d):
            missing = [
                ei for ei in self.basis.e if not H.contains(d - ei)
            ]
            raise InvalidTraceDegree(
                f"degree {d}: d - e not in the semigroup for e in {missing}"
            )
        e = self.basis.e
        r = H.r
        ell = self.basis.class_of[d % r]
        ehat = tuple(d - ei for ei in e)
        delta = []
        lefts = []
        for i in range(r):
            estar = H.e_star(ell, i)
            di = (ehat[i] - estar) // r
            assert di >= 0 and ehat[i] == estar + di * r
            delta.append(di)
            lefts.append(self.z_r_power(di) * self.zeta_repr(estar))
        delta = tuple(delta)
        assert ehat[ell] == delta[0] * r
        assert delta[ell] == delta[0]
        for i in range(r):
            assert lefts[i].weight == ehat[i]
        minimal = d == H.minimal_trace_degree()
        if minimal:
            # delta_0 vanishes at the minimal degree exactly in the
            # symmetric case, where d equals the top basis element.
            assert (delta[0] == 0) == (d == e[-1]) == H.is_symmetric()
        h_diag = (r, self.z_r_power(delta[0]) * self.zeta_repr(e[ell]))
        return MonomialTraceData(
            d_h=d,
            ell=ell,
            ehat=ehat,
            delta=delta,
            monomials=tuple((left, i) for i, left in enumerate(lefts)),
            h_diagonal=h_diag,
            symmetric=H.is_symmetric(),
            minimal=minimal,
        )

    # -- verification ------------------------------------------------------

    def cyclic_action_check(self, weight_cap: int | None = None, trace_degree: int | None = None) -> dict:
        """Under Z_a -> zeta^a Z_a each stored relation must go to a scalar
        multiple of itself, which for binomials means both sides carry the
        same weight.  Returns the (expected-empty) list of violations."""
        if weight_cap is None:
            weight_cap = 2 * self.H.generators[-1]
        if trace_degree is None:
            trace_degree = self.H.minimal_trace_degree()
        violations = []
        checked = 0
        for left, right in self.toric_relations(weight_cap):
            checked += 1
            if left.weight != right.weight:
                violations.append(("toric", left.label(), right.label()))
        data = self.trace_monomials(trace_degree)
        for left, i in data.monomials:
            checked += 1
            if left.weight + self.basis.e[i] != data.d_h:
                violations.append(("trace", left.label(), i))
        return {"checked": checked, "violations": violations}

    def annihilator_reduction_check(self, d: int) -> bool:
        """Multiplying the trace monomials by z^{r_j} on either tensor leg
        must give the same normal form.  The tensor product is taken over
        the base ring of Z_r powers, so a factor Z_r^p slides freely across
        the tensor sign; the invariant datum of a term is therefore
        (total Z_r power, left class, right class), compared as multisets
        per generator."""
        data = self.trace_monomials(d)
        e = self.basis.e
        r = self.H.r

        def normal_form(value):
            k = self.basis.class_of[value % r]
            return ((value - e[k]) // r, k)

        for rj in self.H.generators[1:]:
            lhs = []
            rhs = []
            for i in range(r):
                pl, cl = normal_form(data.ehat[i] + rj)
                lhs.append((pl, cl, i))
                pr, cr = normal_form(e[i] + rj)
                pe, ce = normal_form(data.ehat[i])
                rhs.append((pe + pr, ce, cr))
            if sorted(lhs) != sorted(rhs):
                return False
        return True
