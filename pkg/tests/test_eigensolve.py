import numpy as np
import pytest

from dtnlab import fixtures
from dtnlab.eigensolve import (JACOBI_MAX_N, common_eigenspace, counting, eigenspace_basis, eigh,
                               eigh_gen, multiplicities, problem_spectrum)
from dtnlab.errors import InvalidArgument, InvalidMass
from dtnlab.tolerances import DEFAULT

from conftest import random_symmetric

SQ5 = np.sqrt(5.0)


def test_p3_spectra(p3_pair):
    f, s = p3_pair
    np.testing.assert_allclose(problem_spectrum(f, s, "neumann").values, [1, 2, 4], atol=1e-13)
    np.testing.assert_allclose(problem_spectrum(f, s, "dirichlet").values,
                               [(5 - SQ5) / 2, (5 + SQ5) / 2], atol=1e-13)


def test_interval_closed_form():
    n = 10
    f, s = fixtures.assembled(fixtures.interval(n))
    w = (n - 1) ** 2
    k = np.arange(n)
    neu = 4 * w * np.sin(k * np.pi / (2 * n)) ** 2 + 1
    k = np.arange(1, n - 1)
    dir_ = 4 * w * np.sin(k * np.pi / (2 * (n - 1))) ** 2 + 1
    np.testing.assert_allclose(problem_spectrum(f, s, "neumann").values, np.sort(neu), rtol=1e-12)
    np.testing.assert_allclose(problem_spectrum(f, s, "dirichlet").values, np.sort(dir_), rtol=1e-12)


def test_grid_closed_form():
    m = 8
    f, s = fixtures.assembled(fixtures.square_grid(m))
    w = (m - 1) ** 2
    mu = 2 - 2 * np.cos(np.arange(m) * np.pi / m)
    neu = np.sort((w * (mu[:, None] + mu[None, :])).ravel()) + 1
    i = np.arange(1, m - 1)
    s1 = 4 * np.sin(i * np.pi / (2 * (m - 1))) ** 2
    dir_ = np.sort((w * (s1[:, None] + s1[None, :])).ravel()) + 1
    np.testing.assert_allclose(problem_spectrum(f, s, "neumann").values, neu, rtol=1e-11)
    np.testing.assert_allclose(problem_spectrum(f, s, "dirichlet").values, dir_, rtol=1e-11)


def test_eigh_backends_agree(rng):
    a = random_symmetric(rng, 30)
    jac = eigh(a, backend="jacobi")
    lap = eigh(a, backend="lapack")
    np.testing.assert_allclose(jac.values, lap.values, atol=1e-11 * np.abs(a).max())
    assert eigh(a, backend="jacobi", subset=4).values.size == 4
    assert eigh(a, backend="lapack", subset=4, vectors=False).vectors is None


def test_eigh_auto_uses_lapack_above_limit(rng):
    a = random_symmetric(rng, JACOBI_MAX_N + 1)
    np.testing.assert_allclose(eigh(a, vectors=False).values, np.linalg.eigvalsh(a),
                               atol=1e-10 * np.abs(a).max())


def test_eigh_gen_m_orthonormal(rng):
    k = random_symmetric(rng, 12)
    b = rng.standard_normal((12, 12))
    m = b @ b.T + 12 * np.eye(12)
    sp = eigh_gen(k, m)
    x = sp.vectors
    np.testing.assert_allclose(x.T @ m @ x, np.eye(12), atol=1e-11)
    np.testing.assert_allclose(k @ x, m @ x * sp.values, atol=1e-9)


def test_eigh_gen_rejects_indefinite_mass():
    with pytest.raises(InvalidMass):
        eigh_gen(np.eye(2), np.diag([1.0, -1.0]))


def test_eigh_rejects_nonsquare():
    with pytest.raises(InvalidArgument):
        eigh(np.zeros((2, 3)))
    with pytest.raises(InvalidArgument):
        eigh(np.eye(2), backend="bogus")


def test_counting_left_continuous():
    sp = eigh(np.diag([1.0, 2.0, 2.0, 3.0]))
    assert [counting(sp, x) for x in (1.0, 1.5, 2.0, 2.0 + 1e-12, 2.5, 10)] == [0, 1, 1, 1, 3, 4]
    assert sp.multiplicity(2.0) == 2
    assert sp.clusters() == [(1.0, 1), (2.0, 2), (3.0, 1)]


def test_eigenspace_basis(p3_pair):
    f, s = p3_pair
    eb = eigenspace_basis(f, s, "neumann", 2.0)
    assert eb.dimension == 1
    assert eigenspace_basis(f, s, "neumann", 2.5).dimension == 0
    with pytest.raises(InvalidArgument):
        eigenspace_basis(f, s, "neumann", 2.0, tol=0.0)


def test_common_eigenspace_triangle(triangle_pair):
    f, s = triangle_pair
    # unit triangle: Laplacian 0, 3, 3 shifted to 1, 4, 4; both lie in the Neumann
    # spectrum of P3 as well, so E_N(4) has dimension 3
    dim, basis = common_eigenspace(f, s, 4.0)
    assert dim == 2
    assert np.allclose(basis[:3], 0.0, atol=1e-12)
    mult = multiplicities(f, s, 4.0)
    assert (mult.total_neumann, mult.total_dirichlet, mult.common) == (3, 2, 2)
    assert (mult.neumann, mult.dirichlet) == (1, 0)
    mult = multiplicities(f, s, 1.0)
    assert (mult.total_neumann, mult.total_dirichlet, mult.common) == (2, 1, 1)


def test_no_common_eigenvectors_on_p3(p3_pair):
    f, s = p3_pair
    assert multiplicities(f, s, (5 - SQ5) / 2).common == 0


def test_problem_spectrum_cached(p3_pair):
    f, s = p3_pair
    assert problem_spectrum(f, s, "neumann") is problem_spectrum(f, s, "neumann")
    head = problem_spectrum(f, s, "neumann", subset=2)
    assert head.values.size == 2
    with pytest.raises(InvalidArgument):
        problem_spectrum(f, s, "robin")


def test_deterministic(rng):
    a = random_symmetric(rng, 20)
    x, y = eigh(a), eigh(a)
    assert x.values.tobytes() == y.values.tobytes()
    assert DEFAULT.cluster_width(0.5) == DEFAULT.cluster
