"""Shared test plumbing: acceptance-criterion verdict lines.

Each acceptance test registers exactly one pass/fail line; the lines are
echoed in a dedicated terminal section so they survive output capture.
"""

ACCEPTANCE_RESULTS = []


def record(number, name, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    line = f"criterion {number} ({name}): {verdict}"
    if detail:
        line += f" [{detail}]"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
