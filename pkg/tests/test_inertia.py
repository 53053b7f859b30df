import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dtnlab import fixtures
from dtnlab.errors import InvalidArgument
from dtnlab.eigensolve import problem_spectrum
from dtnlab.inertia import InertiaTriple, count_below, inertia, inertia_sweep, ldlt

from conftest import random_symmetric


def test_triple():
    t = InertiaTriple.from_values([-2.0, 0.0, 1e-20, 3.0], 1e-12)
    assert tuple(t) == (1, 2, 1)
    assert t.dimension == 4


def test_ldlt_reconstruction(backend, rng):
    a = random_symmetric(rng, 25)
    fac = ldlt(a)
    assert fac.reconstruction_residual(a) <= 1e-12 * np.linalg.norm(a)


def test_inertia_known():
    assert tuple(inertia(np.diag([1.0, -2.0, 0.0]))) == (1, 1, 1)
    assert tuple(inertia(np.array([[0.0, 1.0], [1.0, 0.0]]))) == (1, 0, 1)
    # rank-one PSD matrix
    v = np.arange(1.0, 5.0)
    assert tuple(inertia(np.outer(v, v))) == (0, 3, 1)


def test_ldlt_rejects_nonsquare():
    with pytest.raises(InvalidArgument):
        ldlt(np.zeros((2, 3)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 20), st.integers(0, 2 ** 32 - 1), st.floats(-3, 3))
def test_inertia_matches_eigenvalues(n, seed, shift):
    rng = np.random.default_rng(seed)
    a = random_symmetric(rng, n) - shift * np.eye(n)
    w = np.linalg.eigvalsh(a)
    gap = np.abs(w).min()
    if gap < 1e-8 * np.abs(w).max():
        return
    assert inertia(a).n_minus == int(np.count_nonzero(w < 0))


def test_inertia_of_singular_laplacian():
    form, _ = fixtures.assembled(fixtures.square_grid(6), shift=1.0)
    # K - M is the Laplacian of a connected grid: one zero eigenvalue
    assert tuple(inertia(form.K - form.M, zero_pivot_tol=1e-10)) == (0, 1, 35)


@pytest.mark.parametrize("name", ["p3", "interval10", "grid8", "lshape10", "p3_triangle"])
def test_count_below_matches_spectrum(standard_pairs, name):
    f, s = standard_pairs[name]
    for problem in ("neumann", "dirichlet"):
        vals = problem_spectrum(f, s, problem).values
        for mu, mult in problem_spectrum(f, s, problem).clusters():
            below, at = count_below(f, s, problem, mu)
            assert below == int(np.count_nonzero(vals < mu - 1e-6 * max(1, mu)))
            assert at == mult
        mid = 0.5 * (vals[0] + vals[-1]) + 1e-3
        assert count_below(f, s, problem, mid)[0] == int(np.count_nonzero(vals < mid))


def test_count_below_p3(p3_pair):
    f, s = p3_pair
    assert count_below(f, s, "neumann", 2.0) == (1, 1)
    assert count_below(f, s, "neumann", 2.5) == (2, 0)
    assert count_below(f, s, "dirichlet", 0.5) == (0, 0)
    with pytest.raises(InvalidArgument):
        count_below(f, s, "robin", 1.0)


def test_sweep_order_and_jobs(p3_pair):
    f, s = p3_pair
    lams = [4.5, 0.5, 2.0, 1.5, 3.0]
    serial = inertia_sweep(f, s, "neumann", lams)
    threaded = inertia_sweep(f, s, "neumann", lams, jobs=3)
    assert serial == threaded
    assert [x for x, _, _ in serial] == lams
    assert [c for _, c, _ in serial] == [3, 0, 1, 1, 2]
    with pytest.raises(InvalidArgument):
        inertia_sweep(f, s, "neumann", [np.nan])
