import numpy as np
import pytest

from ddtool.linalg import spd_check, spd_diagonal, spd_identity
from ddtool.triplet import make_triplet

_acceptance_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.fspath.basename == "test_acceptance.py":
        _acceptance_results.append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, ok in _acceptance_results:
            terminalreporter.write_line(("PASS " if ok else "FAIL ") + name)


def random_spd(rng, dim, spread=1.0):
    """A well-conditioned random SPD matrix (eigenvalues in about [0.5, 3])."""
    a = rng.normal(size=(dim, dim))
    m = a @ a.T / dim + 0.5 * np.eye(dim)
    return spd_check(0.5 * spread * (m + m.T))


def random_triplet(rng, n, p, identity_metrics=False):
    x = rng.normal(size=(n, p))
    if identity_metrics:
        return make_triplet(x, spd_identity(p), spd_identity(n))
    return make_triplet(x, random_spd(rng, p), random_spd(rng, n))


def uniform_weights(n):
    return np.full(n, 1.0 / n)


def diag_weights_triplet(rng, n, p):
    """Centered triplet with identity Q and uniform diagonal D, like plain PCA."""
    x = rng.normal(size=(n, p))
    x = x - x.mean(axis=0)
    return make_triplet(x, spd_identity(p), spd_diagonal(uniform_weights(n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)
