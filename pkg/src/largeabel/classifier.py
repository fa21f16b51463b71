"""Large abelian groups realizing each admissible signature.

For every candidate signature the group order is squeezed between the
lcm of the indices and the gcd of the partial products that omit one
index (stabilizers minus any one of them still generate the group).  Each
abelian group of an admissible order is then searched exhaustively for a
generating vector.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache
from itertools import permutations, product
from math import gcd, lcm, prod
from typing import Any, Iterator

from .algebra import (
    AbelianGroup,
    GroupElement,
    _order_unchecked,
    _require_bound,
    apply_hom,
    automorphisms,
    element_order,
    enumerate_abelian_groups,
    generates,
)
from .errors import DomainError, StructuralError
from .kulkarni import TwoParameterFamily, enumerate_large_signatures
from .signatures import Signature, SignatureFamily, genus_from_order, is_large, reduced_euler

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GeneratingVector:
    group: AbelianGroup
    elements: tuple[GroupElement, ...]
    target_orders: tuple[int, ...]

    def validate(self) -> None:
        G = self.group
        if len(self.elements) != len(self.target_orders):
            raise StructuralError("one element per branch point is required")
        for x, e in zip(self.elements, self.target_orders):
            if element_order(G, x) != e:
                raise StructuralError(f"element {x} does not have order {e}")
        if G.sum(self.elements) != G.zero:
            raise StructuralError("elements do not sum to zero")
        if not generates(G, self.elements):
            raise StructuralError("elements do not generate the group")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except StructuralError:
            return False
        return True


@dataclass(frozen=True)
class ClassificationEntry:
    group: AbelianGroup
    signature: Signature
    genus: int
    vector: GeneratingVector
    building_data: Any = None
    model: Any = None
    hyperelliptic: bool | None = None
    flags: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return self.group.order

    def sort_key(self) -> tuple:
        return (self.genus, self.group.order, self.signature, self.group.invariant_factors)


def order_bounds(sig: Signature) -> tuple[int, int]:
    """(lower, upper): any admissible |G| is a multiple of lower and divides upper."""
    if sig.quotient_genus != 0 or sig.s < 3:
        raise DomainError("order bounds need a genus-0 quotient and at least 3 branch points")
    e = sig.indices
    lower = lcm(*e)
    upper = 0
    for j in range(len(e)):
        upper = gcd(upper, prod(e[:j] + e[j + 1:]))
    return lower, upper


def admissible_orders(sig: Signature) -> list[int]:
    lower, upper = order_bounds(sig)
    if upper % lower:
        return []
    return [k for k in range(lower, upper + 1, lower) if upper % k == 0]


@cache
def _pool(G: AbelianGroup, m: int) -> tuple[GroupElement, ...]:
    return tuple(x for x in G.elements() if _order_unchecked(G, x) == m)


def _search(G: AbelianGroup, sig: Signature, bound: int | None) -> Iterator[GeneratingVector]:
    if sig.s < 3:
        raise DomainError("generating-vector search needs at least 3 branch points")
    _require_bound(G, bound)
    e = sig.indices
    if any(G.exponent % v for v in e):
        return
    pools = [_pool(G, v) for v in e[:-1]]
    last = e[-1]
    for head in product(*pools):
        tail = G.neg(G.sum(head))
        if _order_unchecked(G, tail) != last:
            continue
        elems = head + (tail,)
        if generates(G, elems):
            yield GeneratingVector(G, elems, e)


@cache
def _block_permutations(indices: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Permutations of positions that only exchange equal indices."""
    blocks: dict[int, list[int]] = {}
    for pos, v in enumerate(indices):
        blocks.setdefault(v, []).append(pos)
    out = []
    for choice in product(*(permutations(b) for b in blocks.values())):
        perm = list(range(len(indices)))
        for block, image in zip(blocks.values(), choice):
            for src, dst in zip(block, image):
                perm[src] = dst
        out.append(tuple(perm))
    return tuple(out)


def canonical_vector(vec: GeneratingVector) -> GeneratingVector:
    """Lexicographic minimum over group automorphisms and equal-index relabelings."""
    G = vec.group
    best = None
    perms = _block_permutations(vec.target_orders)
    for images in automorphisms(G):
        moved = [apply_hom(G, images, x) for x in vec.elements]
        for perm in perms:
            cand = tuple(moved[p] for p in perm)
            if best is None or cand < best:
                best = cand
    return GeneratingVector(G, best, vec.target_orders)


def find_generating_vectors(
    G: AbelianGroup, sig: Signature, canonical_only: bool = False, bound: int | None = None
) -> list[GeneratingVector]:
    """All generating vectors of G for the signature, lexicographically sorted.

    With ``canonical_only`` one representative per orbit of automorphisms
    and equal-index relabelings is kept.
    """
    found = list(_search(G, sig, bound))
    if not canonical_only:
        return found
    return sorted({canonical_vector(v) for v in found})


def first_generating_vector(G: AbelianGroup, sig: Signature, bound: int | None = None) -> GeneratingVector | None:
    """The lexicographically least generating vector (canonical in its orbit), if any."""
    return next(_search(G, sig, bound), None)


def nakajima_holds(vec: GeneratingVector) -> bool:
    """Every choice of all but one element still generates the group."""
    els = vec.elements
    return all(generates(vec.group, els[:j] + els[j + 1:]) for j in range(len(els)))


# --- sweep -----------------------------------------------------------------


def _genus_floor(sig: Signature) -> Any:
    """A lower bound for 2g - 2 over all admissible orders: |G| >= max index."""
    return max(sig.indices) * reduced_euler(sig)


def candidate_signatures(max_genus: int) -> Iterator[Signature]:
    """Every large signature that could carry a cover of genus <= max_genus.

    Along a family both the largest index and mu grow with the parameter,
    so the bound (largest index) * mu <= 2 * max_genus - 2 ends each sweep.
    """
    limit = 2 * max_genus - 2
    found = enumerate_large_signatures()
    for fam in found.families:
        if isinstance(fam, TwoParameterFamily):
            thresholds = dict(fam.thresholds())
            m = fam.first_lower
            while True:
                n = fam.min_last(m)
                first = Signature(0, fam.fixed_indices + (m, n))
                if _genus_floor(first) > limit and m not in thresholds:
                    break
                while _genus_floor(sig := Signature(0, fam.fixed_indices + (m, n))) <= limit:
                    yield sig
                    n += 1
                m += 1
        else:
            assert isinstance(fam, SignatureFamily)
            t = fam.lower
            while fam.upper is None or t <= fam.upper:
                sig = fam.instantiate(t)
                if _genus_floor(sig) > limit:
                    break
                yield sig
                t += 1
    yield from found.exceptional


@dataclass(frozen=True)
class _Task:
    group: AbelianGroup
    signature: Signature
    genus: int
    bound: int | None


def _run_task(task: _Task) -> ClassificationEntry | None:
    vec = first_generating_vector(task.group, task.signature, task.bound)
    if vec is None:
        return None
    return ClassificationEntry(task.group, task.signature, task.genus, vec)


def candidate_tasks(max_genus: int, bound: int | None = None) -> list[_Task]:
    tasks = []
    for sig in candidate_signatures(max_genus):
        for k in admissible_orders(sig):
            g = genus_from_order(sig, k)
            if g is None or g > max_genus:
                continue
            assert is_large(k, g), (sig, k)
            for G in enumerate_abelian_groups(k):
                if all(G.exponent % v == 0 for v in sig.indices):
                    tasks.append(_Task(G, sig, g, bound))
    return tasks


def classify_abelian(max_genus: int, workers: int = 1, bound: int | None = None) -> list[ClassificationEntry]:
    """Every (group, signature) with a large abelian action of genus 2..max_genus."""
    if max_genus < 2:
        raise DomainError("max_genus must be >= 2")
    tasks = candidate_tasks(max_genus, bound)
    logger.info("searching %d (group, signature) candidates", len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=8))
    else:
        results = [_run_task(t) for t in tasks]
    return sorted((r for r in results if r is not None), key=ClassificationEntry.sort_key)
