import pytest


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for a criterion, then assert it."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        status = "pass" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail else ""
        request.config._acceptance_lines.append(f"{status}  {name}{suffix}")
        assert ok, f"{name}: {detail or 'failed'}"

    return record
