import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary is printed after the run."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} | {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} | {detail}")
