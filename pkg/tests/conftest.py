import numpy as np
import pytest

from dtnlab import fixtures

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(log):
        ok, detail = log[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def acceptance_log(request):
    """``record(number, ok, detail)`` for the end-of-run summary."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def record(number, ok, detail=""):
        log[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")

    return record


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    monkeypatch.setenv("DTNLAB_NUMBA", "1" if request.param == "numba" else "0")
    return request.param


@pytest.fixture(scope="session")
def p3_pair():
    return fixtures.assembled(fixtures.p3())


@pytest.fixture(scope="session")
def triangle_pair():
    return fixtures.assembled(fixtures.p3_triangle())


@pytest.fixture(scope="session")
def standard_pairs():
    return {name: fixtures.assembled(dom) for name, dom in fixtures.standard_set().items()}


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
