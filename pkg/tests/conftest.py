"""Shared reporting for the acceptance gate: every acceptance criterion
registers a PASS/FAIL line which is echoed in the terminal summary, so the
one-line-per-criterion report survives pytest's output capturing."""

CRITERION_LINES = []


def record_criterion(ok: bool, label: str, detail: str):
    line = ("PASS" if ok else "FAIL") + f" {label}: {detail}"
    CRITERION_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in CRITERION_LINES:
        terminalreporter.write_line(line)
