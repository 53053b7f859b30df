import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dtnlab import kernels

from conftest import random_symmetric


def _reconstruct(a, use_numba):
    low, d, perm, blocks, growth = kernels.bk_factor(a, use_numba=use_numba)
    return a[np.ix_(perm, perm)], low @ d @ low.T, blocks, growth


@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_jacobi_matches_lapack(backend, rng, n):
    a = random_symmetric(rng, n)
    w, v, sweeps = kernels.jacobi_eigh(a, 1e-13 * np.linalg.norm(a), 40)
    assert sweeps >= 0
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-11 * np.abs(a).max())
    np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-10 * np.abs(a).max())


def test_jacobi_backends_agree(rng):
    a = random_symmetric(rng, 23)
    tol = 1e-13 * np.linalg.norm(a)
    w1 = kernels.jacobi_eigh(a, tol, 40, use_numba=True)[0]
    w2 = kernels.jacobi_eigh(a, tol, 40, use_numba=False)[0]
    np.testing.assert_allclose(w1, w2, atol=1e-12 * np.abs(a).max())


def test_jacobi_reports_nonconvergence(backend, rng):
    a = random_symmetric(rng, 12)
    assert kernels.jacobi_eigh(a, 0.0, 1)[2] == -1


def test_jacobi_diagonal_needs_no_sweep(backend):
    w, v, sweeps = kernels.jacobi_eigh(np.diag([3.0, -1.0, 2.0]), 1e-14, 40)
    assert sweeps == 0
    assert w.tolist() == [-1.0, 2.0, 3.0]


@pytest.mark.parametrize("n", [1, 3, 8, 31])
def test_bk_reconstructs(backend, rng, n):
    a = random_symmetric(rng, n)
    pa, ldl, blocks, growth = _reconstruct(a, None)
    np.testing.assert_allclose(pa, ldl, atol=1e-12 * n * np.abs(a).max())
    assert growth >= 1.0 or n == 1
    # block markers: every 2 is followed by a 0
    idx = np.flatnonzero(blocks == 2)
    assert np.all(blocks[idx + 1] == 0)


def test_bk_two_by_two_pivot(backend):
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    pa, ldl, blocks, _ = _reconstruct(a, None)
    assert blocks.tolist() == [2, 0]
    np.testing.assert_allclose(pa, ldl)


def test_bk_zero_matrix(backend):
    pa, ldl, blocks, _ = _reconstruct(np.zeros((4, 4)), None)
    assert blocks.tolist() == [1, 1, 1, 1]
    assert np.all(ldl == 0)


def test_bk_backends_identical(rng):
    a = random_symmetric(rng, 19)
    r1 = kernels.bk_factor(a, use_numba=True)
    r2 = kernels.bk_factor(a, use_numba=False)
    assert np.array_equal(r1[2], r2[2]) and np.array_equal(r1[3], r2[3])
    np.testing.assert_allclose(r1[0], r2[0], atol=1e-12)
    np.testing.assert_allclose(r1[1], r2[1], atol=1e-12 * np.abs(a).max())


def test_env_flag(monkeypatch):
    monkeypatch.setenv("DTNLAB_NUMBA", "off")
    assert not kernels.numba_enabled()
    monkeypatch.setenv("DTNLAB_NUMBA", "1")
    assert kernels.numba_enabled()


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 9), st.integers(1, 9)),
              elements=st.floats(-10, 10, allow_nan=False, allow_infinity=False)))
def test_bk_property(raw):
    n = min(raw.shape)
    a = raw[:n, :n] + raw[:n, :n].T
    for use_numba in (True, False):
        pa, ldl, _, _ = _reconstruct(a, use_numba)
        np.testing.assert_allclose(pa, ldl, atol=1e-10 * max(1.0, np.abs(a).max()))


def test_bk_subnormal_offdiagonal(backend):
    # colmax**2 underflows; the scaled pivot test must still pick a 2x2 block
    a = np.array([[0.0, 1.11253693e-308], [1.11253693e-308, 0.0]])
    pa, ldl, blocks, _ = _reconstruct(a, None)
    assert blocks.tolist() == [2, 0]
    np.testing.assert_array_equal(pa, ldl)
