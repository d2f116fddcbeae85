import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def record(number: int, title: str, checks: list[tuple[str, bool, str]]):
        failed = [(name, detail) for name, ok, detail in checks if not ok]
        status = "FAIL" if failed else "PASS"
        shown = "; ".join(f"{name}: {detail}" for name, detail in failed) if failed else \
            "; ".join(f"{name} {detail}".strip() for name, _, detail in checks)
        line = f"criterion {number:2d} {status}  {title}  [{shown}]"
        _ACCEPTANCE.append(line)
        print(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
