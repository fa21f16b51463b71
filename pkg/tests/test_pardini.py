from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from largeabel.algebra import AbelianGroup
from largeabel.classifier import GeneratingVector, find_generating_vectors, first_generating_vector
from largeabel.errors import DomainError, StructuralError
from largeabel.pardini import (
    CyclicSolution,
    apply_unit,
    canonical_cyclic_solutions,
    cyclic_building_data,
    normalize_solution,
    solve_cyclic,
    solve_rank2,
    splitting_basis,
    vector_from_building_data,
)
from largeabel.signatures import Signature


def brute_alphas(n, e):
    return [
        a
        for a in product(*(range(v) for v in e))
        if all(gcd(x, v) == 1 for x, v in zip(a, e)) and sum(x * (n // v) for x, v in zip(a, e)) % n == 0
    ]


def orbits(n, e):
    """Unit-action orbits of the brute-force solution set."""
    sols = set(brute_alphas(n, e))
    out = []
    while sols:
        a = min(sols)
        orbit = {tuple(u * x % v for x, v in zip(a, e)) for u in range(1, n) if gcd(u, n) == 1}
        out.append(orbit)
        sols -= orbit
    return out


def test_row_one_at_genus_two():
    (sol,) = canonical_cyclic_solutions(10, [2, 5, 10])
    assert sol.alphas == (1, 1, 3) and sol.degree == 1


def test_four_branch_case():
    (sol,) = canonical_cyclic_solutions(6, [2, 2, 3, 3])
    assert sol.alphas == (1, 1, 1, 2)
    assert sol.exponents == (3, 3, 2, 4)
    assert sol.degree == 2
    assert len(orbits(6, (2, 2, 3, 3))) == 1
    assert min(orbits(6, (2, 2, 3, 3))[0]) == (1, 1, 1, 2)


def test_no_solution_for_4_4_4_in_z4():
    assert brute_alphas(4, (4, 4, 4)) == []
    assert solve_cyclic(4, [4, 4, 4]) == []


def test_domain_errors():
    with pytest.raises(DomainError):
        solve_cyclic(10, [2, 3, 10])
    with pytest.raises(DomainError):
        solve_cyclic(10, [2, 10])


def test_normalization_examples():
    sol = CyclicSolution(10, (2, 5, 10), (1, 1, 3), 1)
    assert apply_unit(sol, 1) == sol
    twisted = apply_unit(sol, 7)
    assert twisted.alphas == (1, 2, 1)
    assert normalize_solution(twisted) == normalize_solution(sol) == sol
    assert normalize_solution(normalize_solution(twisted)) == normalize_solution(twisted)


def test_normalization_prefers_low_degree():
    # {3,6,6} in Z6 has one orbit containing (1,5,5) of degree 2 and (2,1,1) of degree 1
    assert len(orbits(6, (3, 6, 6))) == 1
    (sol,) = canonical_cyclic_solutions(6, [3, 6, 6])
    assert sol.alphas == (2, 1, 1) and sol.degree == 1


cases = st.sampled_from(
    [
        (n, e)
        for n in range(2, 41)
        for e in product([d for d in range(2, n + 1) if n % d == 0], repeat=3)
        if list(e) == sorted(e)
    ]
)


@settings(max_examples=80, deadline=None)
@given(cases)
def test_cyclic_solution_properties(case):
    n, e = case
    sols = solve_cyclic(n, e)
    assert sorted(s.alphas for s in sols) == brute_alphas(n, e)
    canon = canonical_cyclic_solutions(n, e)
    assert len(canon) == len(orbits(n, e))
    for s in sols:
        assert s.degree >= 1
        assert normalize_solution(normalize_solution(s)) == normalize_solution(s)
        for c, v in zip(s.exponents, e):
            assert n // gcd(c, n) == v
        assert sum(s.exponents) % n == 0
    for s in canon:
        data = cyclic_building_data(Signature(0, e), s)
        assert data.coefficients() == tuple((c,) for c in s.exponents)


def test_vector_from_building_data():
    sig = Signature.of(2, 5, 10)
    data = cyclic_building_data(sig, CyclicSolution(10, (2, 5, 10), (1, 1, 3), 1))
    assert vector_from_building_data(data).elements == ((5,), (2,), (3,))
    sig = Signature.of(2, 2, 3, 3)
    data = cyclic_building_data(sig, CyclicSolution(6, (2, 2, 3, 3), (1, 1, 1, 2), 2))
    assert vector_from_building_data(data).elements == ((3,), (3,), (2,), (4,))


def test_building_data_validation():
    sig = Signature.of(2, 5, 10)
    good = cyclic_building_data(sig, CyclicSolution(10, (2, 5, 10), (1, 1, 3), 1))
    from dataclasses import replace

    with pytest.raises(StructuralError):
        replace(good, degrees=(2,)).validate()
    with pytest.raises(StructuralError):
        replace(good, exponent_matrix=((1,), (1,), (2,))).validate()


def test_rank2_two_by_six():
    G, sig = AbelianGroup((2, 6)), Signature.of(2, 6, 6)
    vec = GeneratingVector(G, ((1, 0), (0, 1), (1, 5)), (2, 6, 6))
    (data,) = solve_rank2(G, sig, vec)
    g = 2
    assert data.degrees == (1, 1)
    assert data.exponent_matrix[2] == (g + 1, 2 * g + 1)
    assert vector_from_building_data(data) == vec


@pytest.mark.parametrize(
    "factors, indices, columns",
    [((5, 5), (5, 5, 5), ((1, 0, 4), (0, 1, 4))), ((4, 4), (4, 4, 4), ((1, 0, 3), (0, 1, 3)))],
)
def test_rank2_table_rows(factors, indices, columns):
    G, sig = AbelianGroup(factors), Signature(0, indices)
    vec = first_generating_vector(G, sig)
    (data,) = solve_rank2(G, sig, vec)
    coeffs = data.coefficients()
    assert tuple(tuple(row[j] for row in coeffs) for j in range(2)) == columns


def test_rank2_requires_rank_two():
    G, sig = AbelianGroup((10,)), Signature.of(2, 5, 10)
    with pytest.raises(DomainError):
        solve_rank2(G, sig, first_generating_vector(G, sig))


def test_rank2_without_splitting_pair():
    G, sig = AbelianGroup((2, 6)), Signature.of(2, 2, 6, 6)
    vec = first_generating_vector(G, sig)
    assert splitting_basis(vec) is None
    sols = solve_rank2(G, sig, vec)
    assert sols
    allvecs = set(find_generating_vectors(G, sig))
    for data in sols:
        assert vector_from_building_data(data) in allvecs
