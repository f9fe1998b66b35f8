from collections import defaultdict

CRITERIA = {
    1: "Table 1 reproduction",
    2: "Table 2 reproduction",
    3: "Table 3 reproduction and ordering",
    4: "classical-limit degeneracy",
    5: "error dominance",
    6: "quadrature properties",
    7: "Wright function suite",
    8: "network oracle equivalence",
    9: "tridiagonal solver",
    10: "calibration oracle equivalence",
}

_outcomes = defaultdict(list)


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.failed:
        _outcomes[crit].append((report.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        results = _outcomes[crit]
        ok = sum(passed for _, passed in results)
        status = "PASS" if ok == len(results) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {crit:2d}  {CRITERIA[crit]}  ({ok}/{len(results)} checks)")
