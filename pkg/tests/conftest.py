"""Collects acceptance-criterion outcomes and prints one line per criterion at the end of the run."""

import pytest

_RESULTS = {}
_TITLES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n = mark.args[0]
    _TITLES.setdefault(n, mark.args[1] if len(mark.args) > 1 else "")
    state = _RESULTS.setdefault(n, {"passed": 0, "failed": 0, "xfailed": 0, "skipped": 0})
    if rep.when == "call":
        if hasattr(rep, "wasxfail"):
            if rep.skipped:
                state["xfailed"] += 1
                state.setdefault("notes", []).append(rep.wasxfail.removeprefix("reason: "))
            else:
                state["failed"] += 1
        elif rep.passed:
            state["passed"] += 1
        elif rep.failed:
            state["failed"] += 1
        elif rep.skipped:
            state["skipped"] += 1
    elif rep.failed:
        state["failed"] += 1
    elif rep.skipped and rep.when == "setup":
        state["skipped"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        s = _RESULTS[n]
        if s["failed"]:
            verdict = "FAIL"
        elif s["passed"]:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        extra = "".join(f"; expectation not met: {note}" for note in s.get("notes", []))
        tr.write_line(f"criterion {n}: {verdict}  {_TITLES[n]}{extra}")
