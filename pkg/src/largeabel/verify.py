"""The invariant suite run by ``largeabel verify``."""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

from .classifier import ClassificationEntry, find_generating_vectors, nakajima_holds
from .curves import branch_indices_of_model, genus_of_model, total_ramification
from .catalog import FLAGS, build_catalog
from .errors import ConsistencyError
from .kulkarni import check_completeness, enumerate_large_signatures, verify_exclusion_bounds
from .pardini import cyclic_lcm_holds, solve_cyclic, vector_from_building_data
from .signatures import genus_from_order, is_large


@dataclass
class CheckResult:
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, what: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(what)


@dataclass
class VerifyReport:
    max_genus: int
    checks: OrderedDict[str, CheckResult]
    flags: list[str]

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.checks.values())

    def lines(self) -> list[str]:
        out = []
        for name, c in self.checks.items():
            status = "PASS" if c.failed == 0 else "FAIL"
            out.append(f"{status} {name}: {c.passed} passed, {c.failed} failed")
            out.extend(f"     {f}" for f in c.failures[:10])
        out.extend(f"FLAG {f}: {FLAGS[f]}" for f in self.flags)
        return out


def _label(e: ClassificationEntry) -> str:
    return f"g={e.genus} {e.group.label} {e.signature}"


def run_verify(max_genus: int, workers: int = 1, bound: int | None = None) -> VerifyReport:
    entries = build_catalog(max_genus, workers=workers, bound=bound)
    names = [
        "kulkarni_counts", "kulkarni_completeness", "exclusion_bounds", "genus_and_largeness",
        "generating_vector", "nakajima_subsets", "cyclic_lcm", "cyclic_cross_route",
        "building_data", "vector_round_trip", "model_homogeneity", "model_branch_indices",
        "model_genus", "total_ramification", "hyperelliptic_genus_8",
    ]
    checks: OrderedDict[str, CheckResult] = OrderedDict((n, CheckResult()) for n in names)

    found = enumerate_large_signatures()
    checks["kulkarni_counts"].record(
        len(found.families) == 7 and len(found.exceptional) == 102,
        f"{len(found.families)} families, {len(found.exceptional)} exceptional",
    )
    comp = check_completeness(found=found)
    checks["kulkarni_completeness"].record(comp.ok, f"missing {comp.missing[:5]} extra {comp.extra[:5]}")
    excl = verify_exclusion_bounds()
    for case in excl.cases:
        checks["exclusion_bounds"].record(case.excluded, case.description)
    checks["exclusion_bounds"].record(not excl.scan_violations, f"scan violations {excl.scan_violations[:5]}")

    for e in entries:
        name = _label(e)
        G = e.group
        checks["genus_and_largeness"].record(
            genus_from_order(e.signature, G.order) == e.genus and is_large(G.order, e.genus), name
        )
        checks["generating_vector"].record(e.vector.is_valid(), name)
        checks["nakajima_subsets"].record(nakajima_holds(e.vector), name)
        if G.is_cyclic:
            checks["cyclic_lcm"].record(cyclic_lcm_holds(e.signature.indices, G.order), name)
            checks["cyclic_cross_route"].record(bool(solve_cyclic(G.order, e.signature.indices)), name)
        data = e.building_data
        try:
            data.validate()
            checks["building_data"].record(True, name)
        except Exception as exc:  # noqa: BLE001
            checks["building_data"].record(False, f"{name}: {exc}")
            continue
        vec = vector_from_building_data(data)
        checks["vector_round_trip"].record(vec in set(find_generating_vectors(G, e.signature)), name)
        model = e.model
        checks["model_homogeneity"].record(all(eq.is_homogeneous() for eq in model.equations), name)
        checks["model_branch_indices"].record(tuple(branch_indices_of_model(model)) == e.signature.indices, name)
        try:
            g = genus_of_model(model, G.order)
        except ConsistencyError:
            g = None
        checks["model_genus"].record(g == e.genus, name)
        lhs, rhs = total_ramification(e)
        checks["total_ramification"].record(lhs == rhs, f"{name}: {lhs} != {rhs}")
        if e.genus >= 8:
            checks["hyperelliptic_genus_8"].record(bool(e.hyperelliptic), name)

    flags = sorted({f for e in entries for f in e.flags})
    return VerifyReport(max_genus, checks, flags)
