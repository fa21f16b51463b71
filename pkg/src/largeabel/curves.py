"""Explicit curve models, their independent verification, and hyperellipticity."""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from math import gcd, lcm

from .algebra import GroupElement, involutions, subgroup
from .classifier import ClassificationEntry
from .errors import ConsistencyError, DomainError, StateError, VerificationError
from .signatures import Signature, genus_from_order, reduced_euler

# (x : z) coordinates of the branch points, in building-data order
BRANCH_POINTS: tuple[tuple[str, str], ...] = (("0", "1"), ("1", "1"), ("1", "0"), ("lambda", "1"))
LAMBDA_EXCLUDED = ("0", "1")
VARIABLES = ("y", "w")


class Ambient(str, Enum):
    PLANE = "PLANE"
    WEIGHTED_PLANE = "WEIGHTED_PLANE"
    PAIR = "PAIR"


def _factor(point: tuple[str, str]) -> str:
    a, b = point
    if b == "0":
        return "z"
    if a == "0":
        return "x"
    if a == "1":
        return "(x-z)"
    return f"(x-{a}*z)"


@dataclass(frozen=True)
class Equation:
    """variable^left_exponent = prod over branch points of factor^exponent."""

    variable: str
    left_exponent: int
    weight: int
    exponents: tuple[int, ...]

    def is_homogeneous(self) -> bool:
        return self.left_exponent * self.weight == sum(self.exponents)

    def render(self, points: tuple[tuple[str, str], ...]) -> str:
        terms = []
        for p, c in zip(points, self.exponents):
            if c:
                f = _factor(p)
                terms.append(f if c == 1 else f"{f}^{c}")
        rhs = "*".join(terms) if terms else "1"
        return f"{self.variable}^{self.left_exponent} = {rhs}"


@dataclass(frozen=True)
class CurveModel:
    ambient: Ambient
    equations: tuple[Equation, ...]
    points: tuple[tuple[str, str], ...]
    parameter: str | None = None
    lambda_excluded: tuple[str, ...] = ()

    def render(self) -> str:
        return "; ".join(eq.render(self.points) for eq in self.equations)

    @property
    def natural_order(self) -> int:
        out = 1
        for eq in self.equations:
            out *= eq.left_exponent
        return out


def emit_model(entry: ClassificationEntry) -> CurveModel:
    """Equations read off the building data: one per basis character."""
    data = entry.building_data
    if data is None:
        raise StateError("entry has no building data")
    s = entry.signature.s
    if s > len(BRANCH_POINTS):
        raise DomainError(f"no coordinates for {s} branch points")
    points = BRANCH_POINTS[:s]
    coeffs = data.coefficients()
    equations = tuple(
        Equation(VARIABLES[j], dj, data.degrees[j], tuple(coeffs[i][j] for i in range(s)))
        for j, dj in enumerate(data.character_orders)
    )
    if len(equations) == 1:
        ambient = Ambient.PLANE if equations[0].weight == 1 else Ambient.WEIGHTED_PLANE
    elif len(equations) == 2:
        ambient = Ambient.PAIR
    else:
        raise DomainError("models with more than two equations are not supported")
    has_param = s == 4
    return CurveModel(
        ambient,
        equations,
        points,
        parameter="lambda" if has_param else None,
        lambda_excluded=LAMBDA_EXCLUDED if has_param else (),
    )


def branch_indices_of_model(model: CurveModel) -> list[int]:
    """Ramification index over each branch point, recovered from the exponents alone.

    The local monodromy at a point has residue c_j in Z_{n_j} for the j-th
    equation, so its order is the lcm of n_j / gcd(c_j, n_j).
    """
    out = []
    for i in range(len(model.points)):
        out.append(lcm(*(eq.left_exponent // gcd(eq.exponents[i], eq.left_exponent) for eq in model.equations)))
    return sorted(out)


def genus_of_model(model: CurveModel, group_order: int) -> int:
    if group_order != model.natural_order:
        raise ConsistencyError(f"model has group order {model.natural_order}, not {group_order}")
    indices = [v for v in branch_indices_of_model(model) if v > 1]
    sig = Signature(0, tuple(indices))
    twice = group_order * reduced_euler(sig) + 2
    if twice.denominator != 1 or twice.numerator % 2:
        raise ConsistencyError(f"non-integral genus from {sig} and order {group_order}")
    return twice.numerator // 2


def verify_model(entry: ClassificationEntry, model: CurveModel) -> list[str]:
    """Failures of the round-trip, homogeneity and genus checks (empty when sound)."""
    problems = []
    for eq in model.equations:
        if not eq.is_homogeneous():
            problems.append(f"equation {eq.render(model.points)} is not weighted-homogeneous")
    recovered = branch_indices_of_model(model)
    if tuple(recovered) != entry.signature.indices:
        problems.append(f"recovered indices {recovered} differ from {list(entry.signature.indices)}")
    try:
        g = genus_of_model(model, entry.group.order)
    except ConsistencyError as exc:
        problems.append(str(exc))
    else:
        if g != entry.genus:
            problems.append(f"model genus {g} differs from entry genus {entry.genus}")
    return problems


def attach_model(entry: ClassificationEntry) -> ClassificationEntry:
    model = emit_model(entry)
    problems = verify_model(entry, model)
    if problems:
        raise VerificationError(f"{entry.group.label} {entry.signature}: " + "; ".join(problems))
    return replace(entry, model=model)


def fixed_point_count(entry: ClassificationEntry, sigma: GroupElement) -> int:
    """Points of the curve fixed by sigma: |G|/e_i for each stabilizer containing it."""
    G = entry.group
    sigma = G.check(sigma)
    if sigma == G.zero:
        raise DomainError("the identity fixes every point")
    total = 0
    for x, e in zip(entry.vector.elements, entry.vector.target_orders):
        if sigma in subgroup(G, [x]):
            total += G.order // e
    return total


def hyperelliptic_involutions(entry: ClassificationEntry) -> list[GroupElement]:
    target = 2 * entry.genus + 2
    return [t for t in involutions(entry.group) if fixed_point_count(entry, t) == target]


def is_hyperelliptic(entry: ClassificationEntry) -> bool:
    """Genus 2, or an involution of G with 2g + 2 fixed points.

    A hyperelliptic involution is central in the full automorphism group;
    outside G it would generate with G an abelian group of order 2|G|, which
    exceeds 4g + 4 once |G| > 2g + 2.
    """
    if entry.genus == 2:
        return True
    if entry.group.order <= 2 * entry.genus + 2:
        raise DomainError("centrality argument needs |G| > 2g + 2")
    return bool(hyperelliptic_involutions(entry))


def total_ramification(entry: ClassificationEntry) -> tuple[int, int]:
    """(sum of fixed points over all non-identity elements, sum of |G|/e_i (e_i - 1))."""
    G = entry.group
    lhs = sum(fixed_point_count(entry, x) for x in G.elements() if x != G.zero)
    rhs = sum(G.order // e * (e - 1) for e in entry.signature.indices)
    return lhs, rhs


def genus_check(entry: ClassificationEntry) -> bool:
    return genus_from_order(entry.signature, entry.group.order) == entry.genus
