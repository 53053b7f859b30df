"""Dirichlet-to-Neumann Schur complement, the lambda-harmonic frame G_lam and
the pole-free pencil B_lam on it, branch tracing, and the resolvent difference.

Conventions: with ``T = K - lam M``, a vector ``u`` is lambda-harmonic when
the interior rows of ``T u`` vanish. On that subspace the form
``b[u, v] = v^T T u`` is represented against the Gram matrix ``a[u, v] =
v^T K u``; the eigenvalues of that pencil are the spectrum of B_lam.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from .eigensolve import eigh_gen
from .errors import DirichletEigenvalue, InvalidArgument, SpectralPoint
from .inertia import InertiaTriple, count_below, ldlt
from .tolerances import DEFAULT, EPS

TRACE_HEADER = ("mu", "branch", "nu", "flag")


@dataclass(frozen=True, eq=False)
class DtnMap:
    lam: float
    S: np.ndarray
    condition: float


@dataclass(frozen=True, eq=False)
class GLambdaFrame:
    lam: float
    basis: np.ndarray
    A_gram: np.ndarray
    B_form: np.ndarray
    singular_values: np.ndarray
    tau: float
    interior_residual: np.ndarray
    pencil_values: np.ndarray
    pencil_vectors: np.ndarray
    warnings: tuple = ()

    @property
    def dim(self):
        return self.basis.shape[1]

    def pencil_eigvecs_full(self):
        """Pencil eigenvectors as full-length vectors (a-orthonormal)."""
        return self.basis @ self.pencil_vectors

    def pencil_inertia(self, tol=DEFAULT):
        return InertiaTriple.from_values(self.pencil_values, tol.pencil_zero)


@dataclass(frozen=True, eq=False)
class ResolventDiff:
    lam: float
    R: np.ndarray
    inertia: InertiaTriple
    range_residual: float
    rank: int


@dataclass(eq=False)
class BranchTrace:
    mu: np.ndarray
    values: list
    matching: list
    flags: list
    scale: np.ndarray = field(default=None)
    zero_tol: float = DEFAULT.pencil_zero

    def branches(self):
        """Branch label for every value at every step, following the matching."""
        labels = [np.arange(len(self.values[0]))]
        nxt = len(self.values[0])
        for k, match in enumerate(self.matching):
            lab = -np.ones(len(self.values[k + 1]), dtype=np.int64)
            for i, j in enumerate(match):
                if j >= 0:
                    lab[j] = labels[k][i]
            for j in np.flatnonzero(lab < 0):
                lab[j] = nxt
                nxt += 1
            labels.append(lab)
        return labels

    def rows(self):
        out = []
        for k, lab in enumerate(self.branches()):
            for b, nu in sorted(zip(lab.tolist(), self.values[k].tolist())):
                out.append((float(self.mu[k]), int(b), float(nu), self.flags[k]))
        return out

    def crossings(self):
        """Sign changes of every branch as ``(branch, mu_left, mu_right, direction)``
        where direction is ``'+-'`` or ``'-+'``."""
        series = {}
        for k, lab in enumerate(self.branches()):
            for b, nu in zip(lab, self.values[k]):
                series.setdefault(int(b), []).append((float(self.mu[k]), float(nu)))
        events = []
        for b, pts in sorted(series.items()):
            last = None
            for mu, nu in pts:
                sgn = 0 if abs(nu) <= self.zero_tol else (1 if nu > 0 else -1)
                if sgn == 0:
                    continue
                if last is not None and sgn != last[1]:
                    events.append((b, last[0], mu, "+-" if last[1] > 0 else "-+"))
                last = (mu, sgn)
        events.sort(key=lambda e: (e[1], e[0]))
        return events


# ---------------------------------------------------------------------------
# Schur complement
# ---------------------------------------------------------------------------

def _interior_solve(form, split, lam, tol):
    _, n_at = count_below(form, split, "dirichlet", lam, tol)
    if n_at:
        raise DirichletEigenvalue(lam, n_at)
    t = form.shifted(lam)
    tii, tig, tgi, tgg = split.blocks(t)
    x = sla.solve(tii, -tig, assume_a="sym")
    return t, x, (tii, tig, tgi, tgg)


def harmonic_extension(form, split, lam, tol=DEFAULT):
    """``n x |Gamma|`` matrix whose column g has boundary values e_g and
    interior values solving the interior rows of ``(K - lam M) u = 0``."""
    _, x, _ = _interior_solve(form, split, lam, tol)
    ext = np.zeros((form.n, split.boundary.size))
    ext[split.boundary, np.arange(split.boundary.size)] = 1.0
    ext[split.interior, :] = x
    return ext


def schur_dtn(form, split, lam, tol=DEFAULT):
    """Schur complement ``S(lam) = T_GG - T_GI T_II^{-1} T_IG`` of ``T = K - lam M``."""
    _, x, (tii, _, tgi, tgg) = _interior_solve(form, split, lam, tol)
    s = tgg + tgi @ x
    return DtnMap(lam=float(lam), S=0.5 * (s + s.T), condition=float(np.linalg.cond(tii)))


# ---------------------------------------------------------------------------
# G_lambda and B_lambda
# ---------------------------------------------------------------------------

def harmonic_nullspace(form, split, lam, tau=None):
    """Orthonormal basis of the lambda-harmonic subspace via SVD of the interior
    rows of ``K - lam M``. Returns ``(basis, singular_values, tau, warnings)``."""
    t = form.shifted(lam)
    rows = t[split.interior, :]
    n = form.n
    _, sv, vt = np.linalg.svd(rows, full_matrices=True)
    smax = sv[0] if sv.size else 0.0
    if tau is None:
        tau = max(split.interior.size, n) * EPS * smax * 10.0
    rank = int(np.count_nonzero(sv > tau))
    warnings = ()
    if np.any((sv > tau / 10.0) & (sv <= tau * 10.0)):
        warnings = (f"ill-conditioned-rank: singular value within a factor 10 of tau={tau:.3e}",)
    return vt[rank:].T.copy(), sv, float(tau), warnings


def glambda_frame(form, split, lam, tau=None, tol=DEFAULT):
    """Frame of G_lam with its a-Gram and b-form matrices; valid at every real lam."""
    null, sv, tau, warnings = harmonic_nullspace(form, split, lam, tau)
    k = form.K
    gram0 = null.T @ k @ null
    chol = np.linalg.cholesky(0.5 * (gram0 + gram0.T))
    basis = sla.solve_triangular(chol, null.T, lower=True).T
    a_gram = basis.T @ k @ basis
    a_gram = 0.5 * (a_gram + a_gram.T)
    t = form.shifted(lam)
    b_form = basis.T @ t @ basis
    b_form = 0.5 * (b_form + b_form.T)
    resid = np.linalg.norm(t[split.interior, :] @ basis, axis=0)
    pencil = eigh_gen(b_form, a_gram, vectors=True, tol=tol, problem="pencil")
    return GLambdaFrame(
        lam=float(lam),
        basis=basis,
        A_gram=a_gram,
        B_form=b_form,
        singular_values=sv,
        tau=tau,
        interior_residual=resid,
        pencil_values=pencil.values,
        pencil_vectors=pencil.vectors,
        warnings=warnings,
    )


def blambda_signature(frame, tol=DEFAULT):
    """``(dim G^-, dim G^0, dim G^+)`` from an LDL^T of the b-form matrix.

    The frame is a-orthonormal, so the zero threshold is the pencil tolerance
    scaled by the Gram norm.
    """
    if frame.dim == 0:
        return InertiaTriple(0, 0, 0)
    scale = float(np.linalg.norm(frame.A_gram, 2))
    return ldlt(frame.B_form, atol=tol.pencil_zero * scale).inertia


# ---------------------------------------------------------------------------
# branch tracing
# ---------------------------------------------------------------------------

def _match(prev, cur):
    if len(prev) == 0 or len(cur) == 0:
        return -np.ones(len(prev), dtype=np.int64)
    cost = np.abs(prev[:, None] - cur[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = -np.ones(len(prev), dtype=np.int64)
    out[rows] = cols
    return out


def _sign(x, zero):
    return np.where(np.abs(x) <= zero, 0, np.sign(x)).astype(int)


def blambda_branches(form, split, mu_from, mu_to, steps, tol=DEFAULT, max_depth=12, jobs=1):
    """Pencil eigenvalues of B_mu on a grid, matched into continuous branches.

    Steps where a matched branch changes sign are bisected until the jump is
    below 10% of that branch's scale or ``max_depth`` is reached; refined
    points carry flag ``refined``, unresolved ones ``unresolved``.
    """
    if not mu_from < mu_to:
        raise InvalidArgument("need mu_from < mu_to")
    if steps < 2:
        raise InvalidArgument("need at least 2 steps")

    def values_at(mu):
        return glambda_frame(form, split, mu, tol=tol).pencil_values

    grid = np.linspace(mu_from, mu_to, int(steps))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            coarse = list(pool.map(values_at, grid))
    else:
        coarse = [values_at(mu) for mu in grid]

    # per-branch scale from the coarse matching
    coarse_trace = BranchTrace(grid, coarse, [_match(a, b) for a, b in zip(coarse, coarse[1:])],
                               ["ok"] * len(grid), zero_tol=tol.pencil_zero)
    scale = {}
    for k, lab in enumerate(coarse_trace.branches()):
        for b, nu in zip(lab, coarse[k]):
            scale[int(b)] = max(scale.get(int(b), 0.0), abs(float(nu)))

    mus, vals, flags = [grid[0]], [coarse[0]], ["ok"]
    labels = coarse_trace.branches()
    for k in range(len(grid) - 1):
        lab_scale = np.array([scale[int(b)] for b in labels[k]]) if len(labels[k]) else np.zeros(0)
        pts = _refine(grid[k], coarse[k], grid[k + 1], coarse[k + 1], lab_scale,
                      values_at, tol.pencil_zero, max_depth)
        for mu, v, flag in pts:
            mus.append(mu)
            vals.append(v)
            flags.append(flag)
    matching = [_match(a, b) for a, b in zip(vals, vals[1:])]
    for k, match in enumerate(matching):
        if np.any(match < 0) or len(vals[k]) != len(vals[k + 1]):
            flags[k + 1] = "unresolved"
    return BranchTrace(np.array(mus), vals, matching, flags,
                       scale=np.array([scale[b] for b in sorted(scale)]), zero_tol=tol.pencil_zero)


def _refine(mu_a, va, mu_b, vb, scale_a, values_at, zero, depth_left):
    """Points strictly after ``mu_a`` up to and including ``mu_b``."""
    match = _match(va, vb)
    needs = False
    for i, j in enumerate(match):
        if j < 0:
            continue
        sa, sb = _sign(va[i], zero), _sign(vb[j], zero)
        if sa != sb and abs(va[i] - vb[j]) >= 0.1 * max(scale_a[i], zero):
            needs = True
            break
    if not needs:
        return [(mu_b, vb, "ok")]
    if depth_left == 0:
        return [(mu_b, vb, "unresolved")]
    mid = 0.5 * (mu_a + mu_b)
    vm = values_at(mid)
    scale_m = np.zeros(len(vm))
    for i, j in enumerate(_match(va, vm)):
        if j >= 0:
            scale_m[j] = scale_a[i]
    left = _refine(mu_a, va, mid, vm, scale_a, values_at, zero, depth_left - 1)
    right = _refine(mid, vm, mu_b, vb, scale_m, values_at, zero, depth_left - 1)
    left[-1] = (left[-1][0], left[-1][1], "refined" if left[-1][2] == "ok" else left[-1][2])
    return left + right


def write_trace_csv(trace, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for mu, b, nu, flag in trace.rows():
            w.writerow((repr(mu), b, repr(nu), flag))


# ---------------------------------------------------------------------------
# resolvent difference
# ---------------------------------------------------------------------------

def resolvent_difference(form, split, lam, tol=DEFAULT):
    """``R'(lam) = (A_N - lam)^{-1} - (A_D - lam)^{-1}``.

    ``R`` holds the symmetric kernel ``X = T^{-1} - E_I T_II^{-1} E_I^T``; the
    operator in the M inner product is ``X M`` and has the same inertia. The
    range of ``X`` lies in G_lam, so its inertia is read off the compression
    onto an orthonormal G_lam basis.
    """
    _, n_n = count_below(form, split, "neumann", lam, tol)
    _, n_d = count_below(form, split, "dirichlet", lam, tol)
    if n_n or n_d:
        raise SpectralPoint(lam, n_n, n_d)
    t = form.shifted(lam)
    tii = split.blocks(t)[0]
    x = np.linalg.inv(t)
    x[np.ix_(split.interior, split.interior)] -= np.linalg.inv(tii)
    x = 0.5 * (x + x.T)
    null, _, _, _ = harmonic_nullspace(form, split, lam)
    comp = null.T @ x @ null
    inner = ldlt(comp).inertia
    r = null.shape[1]
    res = np.linalg.norm(t[split.interior, :] @ x) / (np.linalg.norm(t) * max(np.linalg.norm(x), 1e-300))
    return ResolventDiff(
        lam=float(lam),
        R=x,
        inertia=InertiaTriple(inner.n_minus, form.n - r + inner.n_zero, inner.n_plus),
        range_residual=float(res),
        rank=r - inner.n_zero,
    )
