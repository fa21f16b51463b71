import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

CRITERIA = {
    1: "Kulkarni reproduction",
    2: "abelian classification up to genus 40",
    3: "Pardini solutions",
    4: "table reproduction",
    5: "hyperellipticity",
    6: "property suites",
    7: "determinism",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    results: dict[int, list[bool]] = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and (rep.when == "call" or outcome != "passed"):
                results.setdefault(props["criterion"], []).append(outcome == "passed")
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        got = results.get(n)
        if got is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(got) else "FAIL"
        passed = sum(got or ())
        terminalreporter.write_line(f"criterion {n} {status}: {title} ({passed}/{len(got or ())} tests)")
