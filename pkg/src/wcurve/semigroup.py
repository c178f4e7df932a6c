"""Numerical semigroups H = <r_1, ..., r_m>: membership, gaps, standard bases.

All combinatorics live here: gap sequences, Apery sets, Schubert indices
and Young diagrams, symmetry, the bezout pair (i_s, i_r), and the degrees
at which a trace element can exist.  Everything is computed by sieve up
to a proven Frobenius bound (the product of the two smallest generators)
and cached; instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class EmptyGenerators(ValueError):
    """No generators given."""


class GcdNotOne(ValueError):
    """gcd of the generators exceeds 1, so the complement is infinite."""


class RedundantGenerators(ValueError):
    """The generating set is not minimal.

    `redundant` lists the members expressible through the others; the
    caller should drop them and retry rather than have them silently
    removed.
    """

    def __init__(self, redundant: Sequence[int]):
        self.redundant = tuple(sorted(redundant))
        super().__init__(
            f"generators are not a minimal set; redundant: {list(self.redundant)}"
        )


class NotCoprime(ValueError):
    """bezout_pair needs an argument coprime to the multiplicity r."""


class IndexOutOfRange(IndexError):
    """A residue-class index outside 0..r-1."""


class NotInSemigroup(ValueError):
    """An element of H was required."""


@dataclass(frozen=True)
class StandardBasis:
    """The Apery set of H with respect to r, in two indexings.

    e: sorted ascending with e[0] = 0; e[i] is the minimal element of H
       in its residue class mod r.
    class_of: residue mod r -> index into e.
    tilde: residue i -> minimal element of H congruent to i (so
       tilde[e[i] % r] == e[i]).
    """

    r: int
    e: tuple
    class_of: dict
    tilde: tuple

    def index_of_residue(self, residue: int) -> int:
        return self.class_of[residue % self.r]


class NumericalSemigroup:
    """An additive submonoid of the non-negative integers with finite complement."""

    def __init__(self, generators: Iterable[int]):
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise EmptyGenerators("at least one generator is required")
        if gens[0] <= 0:
            raise ValueError(f"generators must be positive, got {gens[0]}")
        g = 0
        for v in gens:
            g = gcd(g, v)
        if g != 1:
            raise GcdNotOne(f"gcd of generators is {g}; the gap set would be infinite")

        redundant = [v for v in gens if _representable(v, [w for w in gens if w != v])]
        if redundant:
            raise RedundantGenerators(redundant)

        self.generators = tuple(gens)
        self.r = gens[0]
        self.m = len(gens)

        # Sieve bound: the Frobenius number of <r1, r2> is r1*r2 - r1 - r2,
        # and H contains <r1, r2>, so everything from r1*r2 on is in H.
        bound = gens[0] * gens[1] if self.m >= 2 else 1
        limit = bound + gens[-1] + 3 * self.r + 1
        member = [False] * (limit + 1)
        member[0] = True
        for n in range(1, limit + 1):
            member[n] = any(n >= v and member[n - v] for v in gens)
        self.elements_cache = tuple(member)

        gaps = tuple(n for n in range(1, bound) if not member[n])
        self.gaps = gaps
        self.genus = len(gaps)
        self.conductor = gaps[-1] + 1 if gaps else 0
        self._basis = None

    # -- membership and enumeration ---------------------------------------

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self.conductor:
            return True
        return self.elements_cache[n]

    def frobenius(self) -> int:
        """Largest gap, or -1 for the full monoid."""
        return self.conductor - 1

    def nth_element(self, n: int) -> int:
        """The n-th smallest element of H, starting at nth_element(0) = 0."""
        if n < 0:
            raise IndexError("element index must be non-negative")
        count = -1
        v = 0
        while True:
            if self.contains(v):
                count += 1
                if count == n:
                    return v
            v += 1

    def nth_gap(self, n: int) -> int:
        """The n-th smallest gap, 0-indexed."""
        return self.gaps[n]

    def elements_up_to(self, bound: int) -> list:
        return [n for n in range(bound + 1) if self.contains(n)]

    # -- Apery / standard basis -------------------------------------------

    def apery(self, n: int) -> tuple:
        """Ap(H, n) = {s in H : s - n not in H}, sorted."""
        if n < 1:
            raise ValueError("apery needs n >= 1")
        out = [
            s
            for s in range(self.conductor + n)
            if self.contains(s) and not self.contains(s - n)
        ]
        return tuple(out)

    def standard_basis(self) -> StandardBasis:
        if self._basis is not None:
            return self._basis
        tilde = []
        for residue in range(self.r):
            v = residue
            while not self.contains(v):
                v += self.r
            tilde.append(v)
        e = tuple(sorted(tilde))
        class_of = {ei % self.r: i for i, ei in enumerate(e)}
        self._basis = StandardBasis(r=self.r, e=e, class_of=class_of, tilde=tuple(tilde))
        return self._basis

    def e_star(self, ell: int, i: int) -> int:
        """The standard-basis element congruent to e[ell] - e[i] mod r."""
        basis = self.standard_basis()
        if not (0 <= ell < self.r) or not (0 <= i < self.r):
            raise IndexOutOfRange(f"indices ({ell}, {i}) outside 0..{self.r - 1}")
        return basis.tilde[(basis.e[ell] - basis.e[i]) % self.r]

    def gap_from_basis(self, i: int, k: int) -> int:
        """e[i] - k*r.  Over all i and k >= 1 the positive values are
        exactly the gaps, each hit once; allowing every k enumerates the
        extended complement down through the negatives."""
        if not 0 <= i < self.r:
            raise IndexOutOfRange(f"index {i} outside 0..{self.r - 1}")
        if k < 1:
            raise ValueError("gap_from_basis needs k >= 1")
        return self.standard_basis().e[i] - k * self.r

    # -- classical invariants ---------------------------------------------

    def schubert_index(self) -> tuple:
        """alpha_i = (i-th gap) - i - 1, a non-decreasing list of length g."""
        return tuple(gap - i - 1 for i, gap in enumerate(self.gaps))

    def young_diagram(self) -> tuple:
        """Row lengths alpha_i + 1, weakly increasing; empty for genus 0."""
        return tuple(a + 1 for a in self.schubert_index())

    def is_symmetric(self) -> bool:
        """True iff 2g-1 is a gap, equivalently conductor = 2g.

        Genus 0 counts as symmetric: the conductor is 0 = 2g and there is
        no gap sequence to consult.
        """
        return self.conductor == 2 * self.genus

    def bezout_pair(self, s: int) -> tuple:
        """Minimal positive i_s with i_s*s - i_r*r = 1, plus that i_r."""
        if gcd(self.r, s) != 1:
            raise NotCoprime(f"{s} is not coprime to r = {self.r}")
        if self.r == 1:
            return (1, s - 1)
        i_s = pow(s % self.r, -1, self.r)
        if i_s == 0:
            i_s = self.r
        i_r = (i_s * s - 1) // self.r
        return (i_s, i_r)

    # -- trace degrees -----------------------------------------------------

    def is_valid_trace_degree(self, d: int) -> bool:
        """d works as a trace degree iff d - e[i] lies in H for every i."""
        return all(self.contains(d - ei) for ei in self.standard_basis().e)

    def minimal_trace_degree(self) -> int:
        e_top = self.standard_basis().e[-1]
        d = e_top
        # d >= e_top + conductor makes every d - e[i] >= conductor, so the
        # scan below always terminates with a hit.
        while not self.is_valid_trace_degree(d):
            d += 1
        return d

    def valid_trace_degrees(self, limit: int) -> list:
        if limit < 0:
            raise ValueError("limit must be non-negative")
        return [d for d in range(limit + 1) if self.is_valid_trace_degree(d)]

    # -- reporting ---------------------------------------------------------

    def to_record(self) -> dict:
        basis = self.standard_basis()
        return {
            "generators": list(self.generators),
            "gaps": list(self.gaps),
            "genus": self.genus,
            "conductor": self.conductor,
            "standard_basis": list(basis.e),
            "schubert": list(self.schubert_index()),
            "young": list(self.young_diagram()),
            "symmetric": self.is_symmetric(),
        }

    def __eq__(self, other):
        return (
            isinstance(other, NumericalSemigroup)
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"NumericalSemigroup({list(self.generators)})"


def _representable(target: int, gens: list) -> bool:
    # Membership of `target` in the monoid generated by `gens` alone.
    if not gens:
        return target == 0
    reach = [False] * (target + 1)
    reach[0] = True
    for n in range(1, target + 1):
        reach[n] = any(n >= v and reach[n - v] for v in gens)
    return reach[target]
