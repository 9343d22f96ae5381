import pytest

from jackfactor import cache

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    """Tests never touch a user cache directory unless they configure one."""
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    previous = cache._default
    cache._default = None
    yield
    cache._default = previous


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
