from itertools import combinations_with_replacement, product

import pytest

from largeabel.algebra import AbelianGroup, enumerate_abelian_groups, subgroup_generated
from largeabel.classifier import (
    GeneratingVector,
    admissible_orders,
    canonical_vector,
    classify_abelian,
    find_generating_vectors,
    first_generating_vector,
    nakajima_holds,
    order_bounds,
)
from largeabel.errors import CapacityError, DomainError, StructuralError
from largeabel.signatures import Signature, genus_from_order

Z = AbelianGroup.cyclic


def brute_vectors(G, sig):
    """Every tuple of elements with the right orders, zero sum, generating G."""
    from tests.test_algebra import brute_order

    out = []
    for xs in product(list(G.elements()), repeat=sig.s):
        if [brute_order(G, x) if x != G.zero else 1 for x in xs] != list(sig.indices):
            continue
        if G.sum(xs) != G.zero or subgroup_generated(G, xs) != G.order:
            continue
        out.append(xs)
    return out


def test_order_bounds():
    assert order_bounds(Signature.of(2, 2, 3, 3)) == (6, 6)
    assert order_bounds(Signature.of(2, 2, 3, 4)) == (12, 4)
    assert admissible_orders(Signature.of(2, 2, 3, 4)) == []
    assert order_bounds(Signature.of(3, 6, 6)) == (6, 18)
    assert admissible_orders(Signature.of(3, 6, 6)) == [6, 18]
    with pytest.raises(DomainError):
        order_bounds(Signature.of(2, 3))


def test_vector_examples():
    vecs = find_generating_vectors(Z(9), Signature.of(3, 9, 9))
    assert ((3,), (1,), (5,)) in [v.elements for v in vecs]
    assert find_generating_vectors(Z(9), Signature.of(3, 3, 9)) == []
    G = AbelianGroup((4, 4))
    assert ((1, 0), (0, 1), (3, 3)) in [v.elements for v in find_generating_vectors(G, Signature.of(4, 4, 4))]


@pytest.mark.parametrize(
    "factors, indices",
    [((9,), (3, 9, 9)), ((9,), (3, 3, 9)), ((6,), (2, 2, 3, 3)), ((2, 6), (2, 6, 6)), ((4, 4), (4, 4, 4)), ((2, 4), (4, 4, 4))],
)
def test_search_matches_brute_force(factors, indices):
    G, sig = AbelianGroup(factors), Signature(0, indices)
    assert [v.elements for v in find_generating_vectors(G, sig)] == sorted(brute_vectors(G, sig))


def test_first_vector_is_lexicographic_minimum():
    G, sig = AbelianGroup((2, 6)), Signature.of(2, 6, 6)
    allv = find_generating_vectors(G, sig)
    assert first_generating_vector(G, sig) == allv[0]
    assert canonical_vector(allv[0]) == allv[0]


def test_canonical_only_orbits():
    G, sig = Z(9), Signature.of(3, 9, 9)
    canon = find_generating_vectors(G, sig, canonical_only=True)
    everything = find_generating_vectors(G, sig)
    assert {canonical_vector(v) for v in everything} == set(canon)
    # orbit sizes add up to the full count
    from largeabel.algebra import apply_hom, automorphisms

    orbit_total = 0
    for c in canon:
        orbit = {
            tuple(apply_hom(G, a, c.elements[p]) for p in perm)
            for a in automorphisms(G)
            for perm in ((0, 1, 2), (0, 2, 1))
        }
        orbit_total += len(orbit)
    assert orbit_total == len(everything)


def test_generating_vector_validation():
    G = Z(10)
    GeneratingVector(G, ((5,), (2,), (3,)), (2, 5, 10)).validate()
    with pytest.raises(StructuralError):
        GeneratingVector(G, ((5,), (2,), (4,)), (2, 5, 10)).validate()
    with pytest.raises(StructuralError):
        GeneratingVector(G, ((5,), (5,)), (2, 2)).validate()


def test_capacity():
    with pytest.raises(CapacityError):
        find_generating_vectors(Z(500), Signature.of(2, 5, 10), bound=100)


def test_classify_genus_two():
    got = {(e.group.invariant_factors, e.signature.indices) for e in classify_abelian(2)}
    assert got == {
        ((6,), (2, 2, 3, 3)), ((10,), (2, 5, 10)), ((8,), (2, 8, 8)),
        ((2, 6), (2, 6, 6)), ((6,), (3, 6, 6)), ((5,), (5, 5, 5)),
    }


def test_classify_rejects_small_genus():
    with pytest.raises(DomainError):
        classify_abelian(1)


def test_two_two_two_n_never_occurs():
    for e in classify_abelian(15):
        assert e.signature.indices[:3] != (2, 2, 2)


def test_workers_do_not_change_output():
    assert classify_abelian(12, workers=2) == classify_abelian(12)


def oracle_classification(max_genus):
    """Large abelian actions found without the order-divisibility filter.

    Orders run over the whole large range 4(g-1) < |G| <= 84(g-1); indices
    are divisors of the exponent (stabilizers are cyclic subgroups).
    """
    out = set()
    for g in range(2, max_genus + 1):
        for k in range(4 * (g - 1) + 1, 84 * (g - 1) + 1):
            for G in enumerate_abelian_groups(k):
                divs = [d for d in range(2, G.exponent + 1) if G.exponent % d == 0]
                for s in (3, 4):
                    for idx in combinations_with_replacement(divs, s):
                        sig = Signature(0, idx)
                        if genus_from_order(sig, k) != g:
                            continue
                        if first_generating_vector(G, sig) is not None:
                            out.add((g, G.invariant_factors, idx))
    return out


@pytest.mark.slow
def test_classification_matches_unfiltered_oracle():
    got = {(e.genus, e.group.invariant_factors, e.signature.indices) for e in classify_abelian(4)}
    assert got == oracle_classification(4)


def test_nakajima_on_all_vectors():
    for e in classify_abelian(6):
        for v in find_generating_vectors(e.group, e.signature):
            assert nakajima_holds(v)
            for j in range(e.signature.s):
                rest = v.elements[:j] + v.elements[j + 1:]
                assert subgroup_generated(e.group, rest) == e.group.order
