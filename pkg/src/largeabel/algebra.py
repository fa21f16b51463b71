"""Exact rational arithmetic and finite abelian groups in invariant-factor form.

Groups are small (order at most a few hundred in every sweep), so all
subgroup and automorphism computations are done by brute-force closure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache, reduce
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, StructuralError

Rational = Fraction
GroupElement = tuple[int, ...]

DEFAULT_BRUTE_BOUND = 4096


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z_{d1} x ... x Z_{dk} with d1 | d2 | ... | dk and every di >= 2."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if any(d < 2 for d in factors):
            raise StructuralError(f"invariant factors must be >= 2: {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise StructuralError(f"invariant factors must form a divisor chain: {factors}")

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        return cls(() if n == 1 else (n,))

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        """Parse labels such as ``Z6``, ``Z2xZ6``, ``2x6`` or ``1``."""
        text = text.strip().replace(" ", "").replace("*", "x").replace("X", "x")
        if text in ("", "1", "Z1", "trivial"):
            return cls(())
        parts = [p.lstrip("Zz") for p in text.split("x")]
        try:
            factors = [int(p) for p in parts]
        except ValueError:
            raise StructuralError(f"cannot parse group label {text!r}") from None
        return cls(tuple(f for f in factors if f != 1))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.rank

    @property
    def label(self) -> str:
        if not self.invariant_factors:
            return "1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)

    def __str__(self) -> str:
        return self.label

    def check(self, x: Sequence[int]) -> GroupElement:
        x = tuple(x)
        if len(x) != self.rank:
            raise StructuralError(f"element {x} has wrong arity for {self.label}")
        for r, d in zip(x, self.invariant_factors):
            if not 0 <= r < d:
                raise StructuralError(f"residue {r} out of range for Z{d}")
        return x

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x: GroupElement) -> GroupElement:
        return tuple(-a % d for a, d in zip(x, self.invariant_factors))

    def scale(self, k: int, x: GroupElement) -> GroupElement:
        return tuple(k * a % d for a, d in zip(x, self.invariant_factors))

    def sum(self, xs: Iterable[GroupElement]) -> GroupElement:
        return reduce(self.add, xs, self.zero)

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order of residues."""
        return product(*(range(d) for d in self.invariant_factors))


def _order_unchecked(G: AbelianGroup, x: GroupElement) -> int:
    return lcm(*(d // gcd(r, d) for r, d in zip(x, G.invariant_factors))) if x else 1


def element_order(G: AbelianGroup, x: Sequence[int]) -> int:
    """Least m >= 1 with m*x = 0."""
    return _order_unchecked(G, G.check(x))


def _require_bound(G: AbelianGroup, bound: int | None) -> None:
    limit = DEFAULT_BRUTE_BOUND if bound is None else bound
    if G.order > limit:
        raise CapacityError(f"|{G.label}| = {G.order} exceeds brute-force bound {limit}")


def subgroup(G: AbelianGroup, xs: Iterable[Sequence[int]], bound: int | None = None) -> frozenset[GroupElement]:
    """The subgroup generated by ``xs``, as a set of elements."""
    _require_bound(G, bound)
    gens = [G.check(x) for x in xs]
    members = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = G.add(h, g)
                if k not in members:
                    members.add(k)
                    nxt.append(k)
        frontier = nxt
    return frozenset(members)


def subgroup_generated(G: AbelianGroup, xs: Iterable[Sequence[int]], bound: int | None = None) -> int:
    """Order of the subgroup generated by ``xs`` (1 for the empty list)."""
    return len(subgroup(G, xs, bound))


def generates(G: AbelianGroup, xs: Sequence[GroupElement]) -> bool:
    """Whether ``xs`` generates G, by closure without the bound check."""
    members = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for h in frontier:
            for g in xs:
                k = G.add(h, g)
                if k not in members:
                    members.add(k)
                    nxt.append(k)
        frontier = nxt
    return len(members) == G.order


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)


@cache
def enumerate_abelian_groups(order: int) -> tuple[AbelianGroup, ...]:
    """Every abelian group of the given order once, sorted by factor list."""
    if order < 1:
        raise ValueError("order must be >= 1")
    per_prime = [[(p, lam) for lam in partitions(a)] for p, a in sorted(factorize(order).items())]
    groups = []
    for choice in product(*per_prime):
        length = max((len(lam) for _, lam in choice), default=0)
        # the k-th largest invariant factor collects the k-th part at every prime
        factors = [prod(p ** lam[k] for p, lam in choice if k < len(lam)) for k in range(length)]
        groups.append(AbelianGroup(tuple(reversed(factors))))
    return tuple(sorted(groups, key=lambda g: g.invariant_factors))


def elements_of_order(G: AbelianGroup, m: int) -> list[GroupElement]:
    return [x for x in G.elements() if _order_unchecked(G, x) == m]


def involutions(G: AbelianGroup) -> list[GroupElement]:
    """All elements of order exactly 2."""
    halves = [(0, d // 2) if d % 2 == 0 else (0,) for d in G.invariant_factors]
    return [x for x in product(*halves) if any(x)]


def apply_hom(G: AbelianGroup, images: Sequence[GroupElement], x: GroupElement) -> GroupElement:
    """Image of x under the endomorphism sending the j-th standard generator to images[j]."""
    out = G.zero
    for coeff, img in zip(x, images):
        if coeff:
            out = G.add(out, G.scale(coeff, img))
    return out


@cache
def automorphisms(G: AbelianGroup) -> tuple[tuple[GroupElement, ...], ...]:
    """Every automorphism of G, as images of the standard generators."""
    _require_bound(G, None)
    if G.is_cyclic:
        n = G.order
        return tuple(((u,),) for u in range(1, n) if gcd(u, n) == 1) if n > 1 else ((),)
    # the j-th generator must go to an element killed by d_j
    candidates = [[x for x in G.elements() if G.scale(d, x) == G.zero] for d in G.invariant_factors]
    return tuple(imgs for imgs in product(*candidates) if generates(G, list(imgs)))
