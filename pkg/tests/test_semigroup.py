import random

import pytest

from wcurve.semigroup import (
    EmptyGenerators,
    GcdNotOne,
    IndexOutOfRange,
    NotCoprime,
    NumericalSemigroup,
    RedundantGenerators,
)

TRIGONAL = (3, 7, 8)
PENTAGONAL = (5, 7, 11)
SEXTIC = (6, 13, 14, 15, 16)


def test_gap_sequences_of_the_three_reference_semigroups():
    assert NumericalSemigroup(TRIGONAL).gaps == (1, 2, 4, 5)
    assert NumericalSemigroup(PENTAGONAL).gaps == (1, 2, 3, 4, 6, 8, 9, 13)
    assert NumericalSemigroup(SEXTIC).gaps == (1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 17, 23)


def test_genus_conductor_and_frobenius():
    h = NumericalSemigroup(TRIGONAL)
    assert (h.genus, h.conductor, h.frobenius()) == (4, 6, 5)
    h = NumericalSemigroup(PENTAGONAL)
    assert (h.genus, h.conductor) == (8, 14)
    h = NumericalSemigroup(SEXTIC)
    assert (h.genus, h.conductor) == (12, 24)
    full = NumericalSemigroup([1])
    assert (full.genus, full.conductor, full.gaps) == (0, 0, ())


def test_four_six_seven_nine_gaps():
    assert NumericalSemigroup((4, 6, 7, 9)).gaps == (1, 2, 3, 5)


def test_membership():
    h = NumericalSemigroup(PENTAGONAL)
    assert not h.contains(13)
    assert h.contains(0)
    assert not h.contains(-5)
    assert h.contains(1000)
    assert not NumericalSemigroup((4, 6, 7, 9)).contains(5)


def test_constructor_rejections():
    with pytest.raises(EmptyGenerators):
        NumericalSemigroup([])
    with pytest.raises(GcdNotOne):
        NumericalSemigroup([4, 6])
    with pytest.raises(ValueError):
        NumericalSemigroup([0, 3])
    with pytest.raises(RedundantGenerators) as info:
        NumericalSemigroup([3, 7, 8, 10])
    assert info.value.redundant == (10,)


def test_apery_sets():
    assert NumericalSemigroup(TRIGONAL).apery(3) == (0, 7, 8)
    assert NumericalSemigroup([1]).apery(1) == (0,)
    assert NumericalSemigroup(SEXTIC).apery(6) == (0, 13, 14, 15, 16, 29)


def test_apery_equals_standard_basis_at_r():
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC, (4, 6, 7, 9), (2, 3)):
        h = NumericalSemigroup(gens)
        assert set(h.apery(h.r)) == set(h.standard_basis().e)


def test_standard_basis_values():
    assert NumericalSemigroup((4, 6, 7, 9)).standard_basis().e == (0, 6, 7, 9)
    assert NumericalSemigroup(PENTAGONAL).standard_basis().e == (0, 7, 11, 14, 18)
    assert NumericalSemigroup((2, 3)).standard_basis().e == (0, 3)


def test_standard_basis_residue_maps():
    h = NumericalSemigroup(PENTAGONAL)
    sb = h.standard_basis()
    assert sb.e[0] == 0
    for i, ei in enumerate(sb.e):
        assert sb.class_of[ei % h.r] == i
        assert sb.tilde[ei % h.r] == ei
    assert sorted(sb.tilde) == list(sb.e)


def test_e_star():
    h = NumericalSemigroup(PENTAGONAL)
    assert h.e_star(0, 1) == 18
    for i in range(h.r):
        assert h.e_star(i, i) == 0
        assert h.e_star(i, 0) == h.standard_basis().e[i]
    assert NumericalSemigroup(TRIGONAL).e_star(0, 2) == 7
    with pytest.raises(IndexOutOfRange):
        h.e_star(5, 0)


def test_schubert_index():
    assert NumericalSemigroup(TRIGONAL).schubert_index() == (0, 0, 1, 1)
    assert NumericalSemigroup(SEXTIC).schubert_index() == (
        0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 6, 11,
    )
    assert NumericalSemigroup([1]).schubert_index() == ()


def test_young_diagram_rows():
    assert NumericalSemigroup(TRIGONAL).young_diagram() == (1, 1, 2, 2)
    assert NumericalSemigroup(PENTAGONAL).young_diagram() == (1, 1, 1, 1, 2, 3, 3, 6)
    assert NumericalSemigroup([1]).young_diagram() == ()


def test_symmetry_verdicts():
    assert NumericalSemigroup(SEXTIC).is_symmetric()
    assert not NumericalSemigroup((4, 6, 7, 9)).is_symmetric()
    assert NumericalSemigroup((2, 3)).is_symmetric()
    assert not NumericalSemigroup(TRIGONAL).is_symmetric()
    assert NumericalSemigroup([1]).is_symmetric()


def test_symmetry_triple_equivalence():
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC, (2, 3), (4, 6, 7, 9), (2, 5), (3, 4)):
        h = NumericalSemigroup(gens)
        a = h.is_symmetric()
        b = h.conductor == 2 * h.genus
        c = h.genus > 0 and (2 * h.genus - 1) in h.gaps
        assert a == b
        if h.genus > 0:
            assert a == c


def test_bezout_pairs():
    assert NumericalSemigroup(TRIGONAL).bezout_pair(7) == (1, 2)
    assert NumericalSemigroup((2, 3)).bezout_pair(3) == (1, 1)
    assert NumericalSemigroup(PENTAGONAL).bezout_pair(7) == (3, 4)
    with pytest.raises(NotCoprime):
        NumericalSemigroup((4, 6, 7, 9)).bezout_pair(6)


def test_bezout_identity_holds():
    rng = random.Random(5)
    for _ in range(30):
        r = rng.randint(2, 12)
        s = rng.randint(r + 1, 40)
        h = NumericalSemigroup([r, s]) if _coprime(r, s) else None
        if h is None:
            continue
        i_s, i_r = h.bezout_pair(s)
        assert i_s * s - i_r * r == 1
        assert 1 <= i_s <= r


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def test_gap_from_basis():
    h = NumericalSemigroup(TRIGONAL)
    assert h.gap_from_basis(1, 1) == 4  # e=7 minus one copy of r
    assert h.gap_from_basis(0, 1) == -h.r
    h2 = NumericalSemigroup(PENTAGONAL)
    assert h2.gap_from_basis(4, 1) == 13


def test_gap_from_basis_enumerates_gaps_exactly_once():
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC):
        h = NumericalSemigroup(gens)
        seen = []
        for i in range(h.r):
            k = 1
            while True:
                v = h.gap_from_basis(i, k)
                if v <= 0:
                    break
                seen.append(v)
                k += 1
        assert sorted(seen) == list(h.gaps)


def test_valid_trace_degrees():
    assert NumericalSemigroup((4, 6, 7, 9)).minimal_trace_degree() == 13
    assert NumericalSemigroup(SEXTIC).minimal_trace_degree() == 29
    h = NumericalSemigroup((5, 7, 11, 13))
    assert h.minimal_trace_degree() == 24
    degrees = h.valid_trace_degrees(25)
    assert 24 in degrees and 25 in degrees
    assert NumericalSemigroup(TRIGONAL).minimal_trace_degree() == 14
    assert NumericalSemigroup(PENTAGONAL).minimal_trace_degree() == 25


def test_valid_trace_degree_criterion_direct():
    h = NumericalSemigroup(PENTAGONAL)
    e = h.standard_basis().e
    for d in range(30):
        expect = all(h.contains(d - ei) for ei in e)
        assert h.is_valid_trace_degree(d) == expect


def test_counting_function_inequality():
    # The n-th element is at most n + g, with equality past the conductor.
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC, (2, 3)):
        h = NumericalSemigroup(gens)
        for n in range(40):
            nth = h.nth_element(n)
            assert nth - n <= h.genus
            assert (nth - n == h.genus) == (nth >= h.conductor)


def test_gap_count_duality():
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC):
        h = NumericalSemigroup(gens)
        g = h.genus
        lhs = sum(1 for n in range(g) if h.nth_gap(n) >= g)
        rhs = sum(1 for n in range(g + 1) if h.nth_element(n) < g)
        assert lhs == rhs


def test_symmetric_gap_element_pairing():
    h = NumericalSemigroup(SEXTIC)
    g, c = h.genus, h.conductor
    for i in range(g):
        assert c - h.nth_element(i) - 1 == h.nth_gap(g - i - 1)


def test_residue_class_decomposition_covers_semigroup():
    for gens in (TRIGONAL, PENTAGONAL, SEXTIC, (4, 6, 7, 9)):
        h = NumericalSemigroup(gens)
        e = h.standard_basis().e
        for n in range(h.conductor + 3 * h.r):
            hits = [i for i, ei in enumerate(e) if n >= ei and (n - ei) % h.r == 0]
            if h.contains(n):
                assert len(hits) == 1
            else:
                assert not hits


def test_symmetric_top_basis_element_value():
    for gens in (SEXTIC, (2, 3), (2, 5), (3, 4), (3, 5)):
        h = NumericalSemigroup(gens)
        if h.is_symmetric() and h.genus > 0:
            assert h.standard_basis().e[-1] == 2 * h.genus + h.r - 1


def test_to_record_round_trips_key_invariants():
    h = NumericalSemigroup(SEXTIC)
    rec = h.to_record()
    assert rec["generators"] == [6, 13, 14, 15, 16]
    assert rec["genus"] == 12
    assert rec["symmetric"] is True
    assert rec["standard_basis"] == [0, 13, 14, 15, 16, 29]
