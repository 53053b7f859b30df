"""Dense symmetric and symmetric-definite eigensolvers, counting functions and
eigenspaces of the Neumann and Dirichlet problems."""

import weakref
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import kernels
from .errors import InvalidArgument, InvalidMass, SolverFailure
from .tolerances import DEFAULT

# above this size the LAPACK driver replaces Jacobi
JACOBI_MAX_N = 256

PROBLEMS = ("neumann", "dirichlet")


@dataclass(frozen=True, eq=False)
class Spectrum:
    values: np.ndarray
    vectors: np.ndarray = None
    problem: str = "plain"
    cluster_tol: float = DEFAULT.cluster

    def __len__(self):
        return len(self.values)

    def multiplicity(self, lam):
        width = self.cluster_tol * max(1.0, abs(lam))
        return int(np.count_nonzero(np.abs(self.values - lam) <= width))

    def clusters(self):
        """Group ascending values into ``(representative, multiplicity)`` runs."""
        out = []
        for v in self.values:
            if out and abs(v - out[-1][0]) <= self.cluster_tol * max(1.0, abs(out[-1][0])):
                out[-1][1] += 1
            else:
                out.append([float(v), 1])
        return [(v, m) for v, m in out]


@dataclass(frozen=True, eq=False)
class EigenBasis:
    eigenvalue: float
    basis: np.ndarray
    problem: str

    @property
    def dimension(self):
        return self.basis.shape[1]


def _symmetrize(s):
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidArgument("expected a square matrix")
    return 0.5 * (s + s.T)


def _solve_standard(c, want_vectors, tol, backend, subset):
    n = c.shape[0]
    if backend == "auto":
        backend = "jacobi" if n <= JACOBI_MAX_N else "lapack"
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    if backend == "jacobi":
        fro = np.linalg.norm(c)
        w, v, sweeps = kernels.jacobi_eigh(c, tol.jacobi_off * fro, tol.jacobi_max_sweeps)
        if sweeps < 0:
            raise SolverFailure(f"Jacobi did not converge in {tol.jacobi_max_sweeps} sweeps")
        if subset is not None:
            w, v = w[:subset], v[:, :subset]
    elif backend == "lapack":
        idx = None if subset is None else [0, min(subset, n) - 1]
        if want_vectors:
            w, v = sla.eigh(c, subset_by_index=idx)
        else:
            w, v = sla.eigh(c, eigvals_only=True, subset_by_index=idx), None
    else:
        raise InvalidArgument(f"unknown backend {backend!r}")
    return w, (v if want_vectors else None)


def eigh(s, vectors=True, tol=DEFAULT, backend="auto", subset=None, problem="plain"):
    """All eigenvalues (ascending) of a symmetric matrix."""
    c = _symmetrize(s)
    w, v = _solve_standard(c, vectors, tol, backend, subset)
    return Spectrum(values=w, vectors=v, problem=problem, cluster_tol=tol.cluster)


def eigh_gen(k, m, vectors=True, tol=DEFAULT, backend="auto", subset=None, problem="pencil"):
    """Generalized problem ``K x = lam M x`` with ``M`` SPD, by Cholesky reduction.

    Vectors come back M-orthonormal.
    """
    k = _symmetrize(k)
    m = _symmetrize(m)
    if k.shape != m.shape:
        raise InvalidArgument("K and M must have the same shape")
    if m.shape[0] == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)) if vectors else None, problem, tol.cluster)
    try:
        low = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise InvalidMass("mass matrix is not positive definite") from None
    if np.min(np.diag(low)) <= 0:
        raise InvalidMass("mass matrix is not positive definite")
    tmp = sla.solve_triangular(low, k, lower=True)
    c = sla.solve_triangular(low, tmp.T, lower=True)
    c = 0.5 * (c + c.T)
    w, y = _solve_standard(c, vectors, tol, backend, subset)
    x = None
    if vectors:
        x = sla.solve_triangular(low.T, y, lower=False)
        gram = x.T @ m @ x
        r = np.linalg.cholesky(0.5 * (gram + gram.T))
        x = sla.solve_triangular(r, x.T, lower=True).T
    return Spectrum(values=w, vectors=x, problem=problem, cluster_tol=tol.cluster)


def counting(spec, lam):
    """Left-continuous counting function: values strictly below ``lam``.

    Values within the cluster tolerance of ``lam`` count as equal to it.
    """
    width = spec.cluster_tol * max(1.0, abs(lam))
    return int(np.count_nonzero(spec.values < lam - width))


# ---------------------------------------------------------------------------
# Neumann / Dirichlet spectra of an assembled pair
# ---------------------------------------------------------------------------

_CACHE = weakref.WeakKeyDictionary()


def problem_spectrum(form, split, problem, tol=DEFAULT, vectors=True, backend="auto", subset=None):
    """Spectrum of the Neumann pencil ``(K, M)`` or the Dirichlet pencil
    ``(K_II, M_II)``; Dirichlet vectors are zero-extended to all nodes.

    ``subset`` keeps only the lowest values. Results are memoised per
    ``(form, split)``.
    """
    if problem not in PROBLEMS:
        raise InvalidArgument(f"problem must be one of {PROBLEMS}")
    per_form = _CACHE.setdefault(form, weakref.WeakKeyDictionary())
    per_split = per_form.setdefault(split, {})
    key = (problem, tol, backend)
    for sub_key in (None, subset):
        hit = per_split.get(key + (sub_key,))
        if hit is not None and (hit.vectors is not None or not vectors):
            return hit if subset is None else _head(hit, subset)
    if problem == "neumann":
        spec = eigh_gen(form.K, form.M, vectors=vectors, tol=tol, backend=backend,
                        subset=subset, problem=problem)
    else:
        kii, _, _, _ = split.blocks(form.K)
        mii, _, _, _ = split.blocks(form.M)
        sub = eigh_gen(kii, mii, vectors=vectors, tol=tol, backend=backend, subset=subset,
                       problem=problem)
        vecs = None
        if vectors:
            vecs = np.zeros((form.n, len(sub)))
            vecs[split.interior, :] = sub.vectors
        spec = Spectrum(sub.values, vecs, problem, tol.cluster)
    per_split[key + (subset,)] = spec
    return spec


def _head(spec, count):
    vecs = None if spec.vectors is None else spec.vectors[:, :count]
    return Spectrum(spec.values[:count], vecs, spec.problem, spec.cluster_tol)


def eigenspace_basis(form, split, problem, lam, tol=None, tolerances=DEFAULT):
    """M-orthonormal basis of the eigenspace at ``lam`` (empty when ``lam`` is
    not an eigenvalue). ``tol`` is relative: ``|mu - lam| <= tol * max(1, |lam|)``."""
    if tol is None:
        tol = tolerances.cluster
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    spec = problem_spectrum(form, split, problem, tolerances)
    sel = np.abs(spec.values - lam) <= tol * max(1.0, abs(lam))
    return EigenBasis(eigenvalue=float(lam), basis=spec.vectors[:, sel], problem=problem)


def common_eigenspace(form, split, lam, tol=None, tolerances=DEFAULT):
    """Dimension and basis of the common Neumann/Dirichlet eigenvectors at ``lam``.

    Computed from the principal angles (in the M inner product) between the
    Neumann eigenspace and the zero-extended Dirichlet eigenspace.
    """
    en = eigenspace_basis(form, split, "neumann", lam, tol, tolerances)
    ed = eigenspace_basis(form, split, "dirichlet", lam, tol, tolerances)
    if en.dimension == 0 or ed.dimension == 0:
        return 0, np.zeros((form.n, 0))
    cross = en.basis.T @ form.M @ ed.basis
    u, cosines, _ = np.linalg.svd(cross)
    dim = int(np.count_nonzero(cosines >= 1.0 - tolerances.angle))
    return dim, en.basis @ u[:, :dim]


@dataclass(frozen=True)
class Multiplicities:
    """Eigenvalue multiplicities at one point, split into the common part and
    the parts orthogonal to it."""

    total_neumann: int
    total_dirichlet: int
    common: int

    @property
    def neumann(self):
        return self.total_neumann - self.common

    @property
    def dirichlet(self):
        return self.total_dirichlet - self.common


def multiplicities(form, split, lam, tolerances=DEFAULT):
    """``n_N``, ``n_D`` and ``n_{N,D}`` at ``lam`` from eigensolves."""
    spn = problem_spectrum(form, split, "neumann", tolerances)
    spd = problem_spectrum(form, split, "dirichlet", tolerances)
    mn, md = spn.multiplicity(lam), spd.multiplicity(lam)
    common = common_eigenspace(form, split, lam, tolerances=tolerances)[0] if mn and md else 0
    return Multiplicities(mn, md, common)
