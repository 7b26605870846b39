from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from graphcat.corpus import extended_corpus, plain_corpus, trees

settings.register_profile(
    "graphcat", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("graphcat")


@pytest.fixture(scope="session")
def plain():
    return plain_corpus()


@pytest.fixture(scope="session")
def extended():
    return extended_corpus()


@pytest.fixture(scope="session")
def tree_corpus():
    return trees()


@pytest.fixture(scope="session")
def catalogs():
    from graphcat.segal import standard_catalogs
    return standard_catalogs(plain_corpus(), extended_corpus(), trees())


@pytest.fixture(scope="session")
def functors(catalogs):
    from graphcat.segal import standard_functors
    return standard_functors(catalogs)


ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line and fail the test when the check failed."""
    def record(n: int, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}" + (f": {detail}" if detail else "")
        ACCEPTANCE.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
