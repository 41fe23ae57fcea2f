import re
from collections import defaultdict

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA = {
    1: "group orders",
    2: "oracle equivalence with brute-force stabilizers",
    3: "generating set for SO2+",
    4: "generating set for O2+ and relative Reynolds surjectivity",
    5: "generating set for O2-",
    6: "free basis over the product-group invariants",
    7: "Hilbert series of the product group",
    8: "s-invariant and rank",
    9: "Jacobian determinant nonvanishing",
    10: "p = 3 relations",
    11: "O2- generators at p = 5, 7 fixed by every element",
    12: "vector invariants",
    13: "operator property suites",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)
_CRIT = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRIT.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[int(m.group(1))].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        results = _outcomes.get(number)
        if not results:
            continue
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {title}  ({sum(results)}/{len(results)} cases)")
