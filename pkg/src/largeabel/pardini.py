"""Reduced building data for abelian covers of the projective line.

Over P^1 two divisors are linearly equivalent exactly when they have the
same degree, so each building-data equivalence

    d_j L_j = sum_i (d_j r_ij / e_i) Q_i

collapses to an integrality condition on the right-hand degree.  The
coefficient d_j r_ij / e_i is also the exponent of the i-th branch factor
in the j-th equation of the curve model, and the residue of the local
monodromy at Q_i along the j-th basis element of G.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from math import gcd, lcm, prod

from .algebra import AbelianGroup, GroupElement, element_order, generates
from .classifier import ClassificationEntry, GeneratingVector, find_generating_vectors
from .errors import DomainError, StateError, StructuralError
from .signatures import Signature


@dataclass(frozen=True, order=True)
class CyclicSolution:
    """Exponents alpha_i with sum (n/e_i) alpha_i = n * degree."""

    n: int
    indices: tuple[int, ...]
    alphas: tuple[int, ...]
    degree: int

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a * (self.n // e) for a, e in zip(self.alphas, self.indices))

    def key(self) -> tuple:
        return (self.degree, self.alphas)


@dataclass(frozen=True)
class ReducedBuildingData:
    group: AbelianGroup
    signature: Signature
    character_orders: tuple[int, ...]
    exponent_matrix: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    # basis[j] is the element of G on which chi_j is a primitive d_j-th root
    # of unity and every other chi_k is trivial
    basis: tuple[GroupElement, ...]

    def coefficient(self, i: int, j: int) -> int:
        return self.character_orders[j] * self.exponent_matrix[i][j] // self.signature.indices[i]

    def coefficients(self) -> tuple[tuple[int, ...], ...]:
        """Rows per branch point, columns per character: the divisor coefficients."""
        return tuple(
            tuple(self.coefficient(i, j) for j in range(len(self.character_orders)))
            for i in range(self.signature.s)
        )

    def validate(self) -> None:
        e = self.signature.indices
        d = self.character_orders
        G = self.group
        if len(self.exponent_matrix) != len(e) or any(len(row) != len(d) for row in self.exponent_matrix):
            raise StructuralError("exponent matrix has the wrong shape")
        if len(self.basis) != len(d) or len(self.degrees) != len(d):
            raise StructuralError("one basis element and one degree per character")
        if prod(d) != G.order:
            raise StructuralError("character orders do not multiply to |G|")
        for h, dj in zip(self.basis, d):
            if element_order(G, h) != dj:
                raise StructuralError(f"basis element {h} does not have order {dj}")
        if not generates(G, self.basis):
            raise StructuralError("basis does not generate the group")
        for i, (row, ei) in enumerate(zip(self.exponent_matrix, e)):
            for r, dj in zip(row, d):
                if not 0 <= r < ei:
                    raise StructuralError(f"r = {r} out of range for e = {ei}")
                if (dj * r) % ei:
                    raise StructuralError(f"coefficient {dj}*{r}/{ei} is not integral")
            if gcd(ei, *row) != 1:
                raise StructuralError(f"row {i} does not restrict to a generator of H_{i}^*")
        for j, dj in enumerate(d):
            total = sum(self.coefficient(i, j) for i in range(len(e)))
            if total != dj * self.degrees[j]:
                raise StructuralError(f"degree equation {j} fails: {total} != {dj}*{self.degrees[j]}")


# --- cyclic groups ----------------------------------------------------------


def _units(n: int) -> list[int]:
    return [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [1]


def solve_cyclic(n: int, e: list[int] | tuple[int, ...]) -> list[CyclicSolution]:
    """All alpha with 1 <= alpha_i < e_i, gcd(alpha_i, e_i) = 1 and zero degree residue mod n."""
    e = tuple(e)
    if len(e) < 3:
        raise DomainError("at least three branch points are required")
    if any(v < 2 or n % v for v in e):
        raise DomainError(f"every index must divide {n}: {e}")
    weights = [n // v for v in e]
    out = []
    for alphas in product(*([a for a in range(1, v) if gcd(a, v) == 1] for v in e)):
        total = sum(w * a for w, a in zip(weights, alphas))
        if total % n == 0:
            out.append(CyclicSolution(n, e, alphas, total // n))
    return out


def apply_unit(sol: CyclicSolution, u: int) -> CyclicSolution:
    """Re-express a solution after replacing the character by its u-th power."""
    alphas = tuple(u * a % v for a, v in zip(sol.alphas, sol.indices))
    total = sum(a * (sol.n // v) for a, v in zip(alphas, sol.indices))
    return CyclicSolution(sol.n, sol.indices, alphas, total // sol.n)


def normalize_solution(sol: CyclicSolution) -> CyclicSolution:
    """Orbit representative under all character changes: least degree, then least alpha."""
    return min((apply_unit(sol, u) for u in _units(sol.n)), key=CyclicSolution.key)


def canonical_cyclic_solutions(n: int, e: list[int] | tuple[int, ...]) -> list[CyclicSolution]:
    return sorted({normalize_solution(s) for s in solve_cyclic(n, e)}, key=CyclicSolution.key)


def cyclic_building_data(sig: Signature, sol: CyclicSolution) -> ReducedBuildingData:
    G = AbelianGroup.cyclic(sol.n)
    if tuple(sig.indices) != sol.indices:
        raise StructuralError("solution and signature disagree")
    # chi(1) = exp(2 pi i / n) and psi_i is normalized on the image of alpha_i * n/e_i
    data = ReducedBuildingData(
        group=G,
        signature=sig,
        character_orders=(sol.n,),
        exponent_matrix=tuple((a,) for a in sol.alphas),
        degrees=(sol.degree,),
        basis=((1 % sol.n,),),
    )
    data.validate()
    return data


# --- rank two ---------------------------------------------------------------


def _scaled(data: ReducedBuildingData, units: tuple[int, ...], fixed_rows: int) -> ReducedBuildingData:
    e = data.signature.indices
    rows = []
    for i, row in enumerate(data.exponent_matrix):
        if i < fixed_rows:
            rows.append(row)
        else:
            rows.append(tuple(u * r % e[i] for u, r in zip(units, row)))
    d = data.character_orders
    degrees = tuple(sum(dj * rows[i][j] // e[i] for i in range(len(e))) // dj for j, dj in enumerate(d))
    return replace(data, exponent_matrix=tuple(rows), degrees=degrees)


def _normal_key(data: ReducedBuildingData) -> tuple:
    return (data.degrees, data.exponent_matrix)


def _normalize_rank2(data: ReducedBuildingData, fixed_rows: int) -> ReducedBuildingData:
    # rescaling chi_j by a unit (and psi_1, psi_2 with it) preserves the cover
    options = [_scaled(data, units, fixed_rows) for units in product(*(_units(d) for d in data.character_orders))]
    valid = [o for o in options if _is_valid(o)]
    return min(valid, key=_normal_key)


def _is_valid(data: ReducedBuildingData) -> bool:
    try:
        data.validate()
    except StructuralError:
        return False
    return True


def splitting_basis(vector: GeneratingVector) -> tuple[GroupElement, GroupElement] | None:
    """(g_1, g_2) when G is the internal direct product of the first two stabilizers."""
    G = vector.group
    g1, g2 = vector.elements[:2]
    e1, e2 = vector.target_orders[:2]
    if e1 * e2 == G.order and generates(G, (g1, g2)):
        return g1, g2
    return None


def solve_rank2(G: AbelianGroup, sig: Signature, stabilizer_assignment: GeneratingVector) -> list[ReducedBuildingData]:
    """All normalized building data for a rank-two group.

    When the first two stabilizers split G the characters are taken dual to
    that splitting, which pins the first two rows of r; the remaining rows
    are solved for.  Otherwise the dual of the invariant-factor basis is used
    and every generating vector is translated into building data.
    """
    if G.rank != 2:
        raise DomainError(f"{G.label} does not have exactly two invariant factors")
    if stabilizer_assignment.group != G or stabilizer_assignment.target_orders != sig.indices:
        raise DomainError("stabilizer assignment does not match the group and signature")
    stabilizer_assignment.validate()
    e = sig.indices
    split = splitting_basis(stabilizer_assignment)
    found: set[ReducedBuildingData] = set()
    if split is not None:
        d = (e[0], e[1])
        choices = []
        for ei in e[2:]:
            # r_ij must make d_j r_ij / e_i an integer
            choices.append([(r1, r2) for r1 in range(0, ei, ei // gcd(ei, d[0])) for r2 in range(0, ei, ei // gcd(ei, d[1]))])
        for rest in product(*choices):
            rows = ((1, 0), (0, 1)) + tuple(rest)
            totals = [sum(d[j] * rows[i][j] // e[i] for i in range(len(e))) for j in range(2)]
            if any(t % dj for t, dj in zip(totals, d)):
                continue
            data = ReducedBuildingData(G, sig, d, rows, tuple(t // dj for t, dj in zip(totals, d)), split)
            if _is_valid(data):
                found.add(_normalize_rank2(data, fixed_rows=2))
    else:
        d = G.invariant_factors
        basis = ((1, 0), (0, 1))
        for vec in find_generating_vectors(G, sig):
            rows = tuple(tuple(x[j] * e[i] // d[j] for j in range(2)) for i, x in enumerate(vec.elements))
            totals = [sum(x[j] for x in vec.elements) for j in range(2)]
            data = ReducedBuildingData(G, sig, d, rows, tuple(t // dj for t, dj in zip(totals, d)), basis)
            if _is_valid(data):
                found.add(_normalize_rank2(data, fixed_rows=0))
    return sorted(found, key=_normal_key)


def vector_from_building_data(data: ReducedBuildingData) -> GeneratingVector:
    """Local monodromy elements: the coefficient row of Q_i read in the basis."""
    data.validate()
    G = data.group
    elements = []
    for coeffs in data.coefficients():
        x = G.zero
        for c, h in zip(coeffs, data.basis):
            x = G.add(x, G.scale(c, h))
        elements.append(x)
    vec = GeneratingVector(G, tuple(elements), data.signature.indices)
    vec.validate()
    return vec


def building_data_for(entry: ClassificationEntry) -> ReducedBuildingData:
    """The preferred normalized building data for a classified entry."""
    G, sig = entry.group, entry.signature
    if G.is_cyclic:
        sols = canonical_cyclic_solutions(G.order, sig.indices)
        if not sols:
            raise StateError(f"no building data for {G.label} {sig}")
        return cyclic_building_data(sig, sols[0])
    if G.rank == 2:
        sols = solve_rank2(G, sig, entry.vector)
        if not sols:
            raise StateError(f"no building data for {G.label} {sig}")
        return sols[0]
    raise DomainError(f"building data for rank {G.rank} groups is not supported")


def attach_building_data(entry: ClassificationEntry) -> ClassificationEntry:
    data = building_data_for(entry)
    return replace(entry, building_data=data, vector=vector_from_building_data(data))


def cyclic_lcm_holds(indices: tuple[int, ...], n: int) -> bool:
    """lcm of every choice of all but one index equals n."""
    return all(lcm(*(indices[:j] + indices[j + 1:])) == n for j in range(len(indices)))
