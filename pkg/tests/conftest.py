"""Shared pytest plumbing.

test_acceptance.py records one line per acceptance check; the hook below
prints the collected lines as a summary block at the end of every run so
the overall pass/fail picture is visible without scrolling through
tracebacks.
"""

ACCEPTANCE_RESULTS: list[tuple[str, bool | None, str]] = []


def record_acceptance(criterion: str, passed: bool | None, detail: str = "") -> None:
    """Register one acceptance outcome; ``passed=None`` marks a skip."""
    ACCEPTANCE_RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance summary")
    for criterion, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else ("SKIP" if passed is None else "FAIL")
        line = f"{status}  {criterion}"
        if detail:
            line += f"  [{detail}]"
        tr.write_line(line)
