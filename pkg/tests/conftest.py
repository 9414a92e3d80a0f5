import os

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    path = tmp_path_factory.mktemp("kl-cache")
    old = os.environ.get("KL_CACHE_DIR")
    os.environ["KL_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("KL_CACHE_DIR", None)
    else:
        os.environ["KL_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
