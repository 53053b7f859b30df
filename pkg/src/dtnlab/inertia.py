"""Symmetric-indefinite LDL^T factorization and inertia-based eigenvalue counting.

By Sylvester's law of inertia, the number of eigenvalues of the pencil
``(K, M)`` below ``lam`` equals the number of negative pivots of
``K - lam M``, so counting needs no eigensolve.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgument
from .tolerances import DEFAULT, EPS


@dataclass(frozen=True)
class InertiaTriple:
    n_minus: int
    n_zero: int
    n_plus: int

    def __iter__(self):
        return iter((self.n_minus, self.n_zero, self.n_plus))

    @property
    def dimension(self):
        return self.n_minus + self.n_zero + self.n_plus

    @classmethod
    def from_values(cls, values, atol):
        values = np.asarray(values)
        neg = int(np.count_nonzero(values < -atol))
        pos = int(np.count_nonzero(values > atol))
        return cls(neg, len(values) - neg - pos, pos)


@dataclass(frozen=True, eq=False)
class LdltFactorization:
    perm: np.ndarray
    L: np.ndarray
    D: np.ndarray
    blocks: np.ndarray
    inertia: InertiaTriple
    growth: float
    zero_threshold: float

    def reconstruction_residual(self, a):
        """``||P A P^T - L D L^T||_F``."""
        pa = np.asarray(a)[np.ix_(self.perm, self.perm)]
        return float(np.linalg.norm(pa - self.L @ self.D @ self.L.T))


def _block_values(dmat, blocks):
    vals = []
    k = 0
    n = len(blocks)
    while k < n:
        if blocks[k] == 2:
            a, b, d = dmat[k, k], dmat[k + 1, k], dmat[k + 1, k + 1]
            mid = 0.5 * (a + d)
            rad = np.hypot(0.5 * (a - d), b)
            vals.extend((mid - rad, mid + rad))
            k += 2
        else:
            vals.append(dmat[k, k])
            k += 1
    return np.array(vals)


def ldlt(a, zero_pivot_tol=None, atol=None):
    """Bunch-Kaufman ``P A P^T = L D L^T`` with its inertia.

    Pivot-block eigenvalues with magnitude at most ``zero_pivot_tol *
    max|A|`` (default ``n * eps``) count as zero; ``atol`` overrides the
    threshold with an absolute value.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument("ldlt needs a square matrix")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    if atol is None:
        if zero_pivot_tol is None:
            zero_pivot_tol = n * EPS
        atol = zero_pivot_tol * (np.abs(a).max() if n else 0.0)
    low, dmat, perm, blocks, growth = kernels.bk_factor(a)
    inertia = InertiaTriple.from_values(_block_values(dmat, blocks), atol)
    return LdltFactorization(perm, low, dmat, blocks, inertia, growth, float(atol))


def inertia(a, zero_pivot_tol=None, atol=None):
    return ldlt(a, zero_pivot_tol, atol).inertia


def _pencil(form, split, problem):
    if problem == "neumann":
        return form.K, form.M
    if problem == "dirichlet":
        return split.blocks(form.K)[0], split.blocks(form.M)[0]
    raise InvalidArgument(f"unknown problem {problem!r}")


def count_below(form, split, problem, lam, tol=DEFAULT):
    """``(N_B(lam), n_at)`` from two factorizations bracketing ``lam``.

    The count is the number of negative pivots of ``K - (lam - w) M`` and the
    multiplicity is the jump to ``lam + w``, with ``w`` the cluster width.
    """
    k, m = _pencil(form, split, problem)
    width = tol.cluster_width(lam)
    below = ldlt(k - (lam - width) * m).inertia.n_minus
    above = ldlt(k - (lam + width) * m).inertia.n_minus
    return below, above - below


def inertia_sweep(form, split, problem, lams, tol=DEFAULT, jobs=1):
    """``count_below`` over a list of shifts; output order follows input."""
    lams = [float(x) for x in lams]
    if any(not np.isfinite(x) for x in lams):
        raise InvalidArgument("shifts must be finite")

    def one(x):
        c, at = count_below(form, split, problem, x, tol)
        return x, c, at

    if jobs > 1 and len(lams) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, lams))
    return [one(x) for x in lams]
