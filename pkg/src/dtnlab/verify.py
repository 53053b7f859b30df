"""Pass/fail checks of the Dirichlet/Neumann comparison identities.

Integer identities compare terms obtained along independent paths: counting
functions from LDL^T inertia, multiplicities from eigensolves, and dimensions
of G_lam^-/0 from the B_lam pencil.
"""

from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from . import dtn
from .eigensolve import (common_eigenspace, eigenspace_basis, multiplicities,
                         problem_spectrum)
from .errors import DirichletEigenvalue, InvalidArgument
from .inertia import count_below, ldlt
from .tolerances import DEFAULT, EPS

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    lam: float = None
    interval: list = None
    lhs: object = None
    rhs: object = None
    residual: float = None
    terms: dict = field(default_factory=dict)
    diagnostics: str = ""
    asserted: bool = True

    @property
    def passed(self):
        return self.status != FAIL

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass
class PayneRecord:
    k: int
    lam_dirichlet: float
    lam_neumann_next: float
    p: int = None
    q: int = None
    margin_strict: float = None
    margin_weak: float = None
    payne_margin: float = None
    nonpositive_outside_domain: bool = None


def _status(ok):
    return PASS if ok else FAIL


def _gminus(form, split, lam, tol):
    frame = dtn.glambda_frame(form, split, lam, tol=tol)
    return frame, dtn.blambda_signature(frame, tol)


# ---------------------------------------------------------------------------
# integer identities
# ---------------------------------------------------------------------------

def check_haynsworth(form, split, lam, tol=DEFAULT):
    """``N_N = N_D + n_D + dim G^-`` at any real ``lam``.

    Away from Dirichlet eigenvalues the Schur-complement inertia is also
    computed and must equal ``dim G^-``.
    """
    nn, _ = count_below(form, split, "neumann", lam, tol)
    nd, _ = count_below(form, split, "dirichlet", lam, tol)
    mult = multiplicities(form, split, lam, tol)
    frame, sig = _gminus(form, split, lam, tol)
    terms = {"N_N": nn, "N_D": nd, "n_D": mult.dirichlet, "dim_G_minus": sig.n_minus}
    rhs = nd + mult.dirichlet + sig.n_minus
    ok = nn == rhs
    diag = "; ".join(frame.warnings)
    try:
        s = dtn.schur_dtn(form, split, lam, tol)
    except DirichletEigenvalue:
        pass
    else:
        scale = max(np.linalg.norm(s.S, 2), np.linalg.norm(form.shifted(lam), 2))
        neg_s = ldlt(s.S, atol=tol.pencil_zero * scale).inertia.n_minus
        terms["n_minus_S"] = neg_s
        if neg_s != sig.n_minus:
            ok = False
            diag = (diag + "; " if diag else "") + f"Schur inertia {neg_s} != pencil {sig.n_minus}"
    return CheckResult("haynsworth", _status(ok), lam=float(lam), lhs=nn, rhs=rhs,
                       terms=terms, diagnostics=diag)


def check_kernel_dim(form, split, lam, tol=DEFAULT):
    """``dim G^0 = n_N + n_D + n_{N,D}`` plus the inclusion of both eigenspaces in G^0."""
    frame, sig = _gminus(form, split, lam, tol)
    mult = multiplicities(form, split, lam, tol)
    rhs = mult.neumann + mult.dirichlet + mult.common
    t = form.shifted(lam)
    worst = 0.0
    tnorm = np.linalg.norm(t, 2)
    for problem in ("neumann", "dirichlet"):
        eb = eigenspace_basis(form, split, problem, lam, tolerances=tol)
        for u in eb.basis.T:
            scale = tnorm * np.linalg.norm(u) * np.linalg.norm(frame.basis, 2)
            worst = max(worst, np.linalg.norm(frame.basis.T @ t @ u) / scale,
                        np.linalg.norm(t[split.interior] @ u) / (tnorm * np.linalg.norm(u)))
    ok = sig.n_zero == rhs and worst <= tol.ineq
    return CheckResult(
        "kernel_dim", _status(ok), lam=float(lam), lhs=sig.n_zero, rhs=rhs, residual=float(worst),
        terms={"n_N": mult.neumann, "n_D": mult.dirichlet, "n_ND": mult.common,
               "dim_G": frame.dim},
        diagnostics="; ".join(frame.warnings),
    )


def _neighbour_gap(form, split, lam, tol):
    width = tol.cluster_width(lam)
    vals = np.concatenate([problem_spectrum(form, split, p, tol).values
                           for p in ("neumann", "dirichlet")])
    d = np.abs(vals - lam)
    d = d[d > width]
    return float(d.min()) if d.size else max(1.0, abs(lam))


def check_crossing(form, split, lam, eps=None, delta=None, tol=DEFAULT, max_halvings=50):
    """Sign pattern of the pencil eigenvalues of B_mu near ``lam``.

    Just below ``lam``: ``n_D`` negative and ``n_N`` positive values in
    ``(-eps, eps)``; at ``lam``: ``n_N + n_D + n_{N,D}`` zeros; just above:
    ``n_N`` negative and ``n_D`` positive. ``delta`` is halved until every
    pencil eigenvalue at the probes lies within ``eps / 2`` of its partner at
    ``lam``.
    """
    mult = multiplicities(form, split, lam, tol)
    at = dtn.glambda_frame(form, split, lam, tol=tol)
    nu0 = at.pencil_values
    zero = np.abs(nu0) <= tol.pencil_zero
    rest = np.abs(nu0[~zero])
    if eps is None:
        eps = 0.5 * float(rest.min()) if rest.size else 1.0
    dmax = 0.5 * _neighbour_gap(form, split, lam, tol)
    delta = dmax if delta is None else min(delta, dmax)

    def window(values):
        inside = values[np.abs(values) < eps]
        return int(np.count_nonzero(inside < 0)), int(np.count_nonzero(inside > 0)), \
            int(np.count_nonzero(inside == 0))

    found = None
    for _ in range(max_halvings):
        probes = []
        close = True
        for mu in (lam - delta / 2, lam + delta / 2):
            vals = dtn.glambda_frame(form, split, mu, tol=tol).pencil_values
            cost = np.abs(nu0[:, None] - vals[None, :])
            r, c = linear_sum_assignment(cost)
            if len(c) < len(vals) or cost[r, c].max(initial=0.0) >= eps / 2:
                close = False
                break
            probes.append(vals)
        if close:
            found = probes
            break
        delta /= 2
    n_zero = int(np.count_nonzero(zero))
    expected = {"below": (mult.dirichlet, mult.neumann), "at": mult.neumann + mult.dirichlet + mult.common,
                "above": (mult.neumann, mult.dirichlet)}
    terms = {"n_N": mult.neumann, "n_D": mult.dirichlet, "n_ND": mult.common, "zeros_at": n_zero}
    if found is None:
        return CheckResult("crossing", SKIPPED, lam=float(lam), terms=terms,
                           diagnostics="no admissible delta: eigenvalues too clustered")
    below, above = window(found[0])[:2], window(found[1])[:2]
    terms.update({"below_neg": below[0], "below_pos": below[1],
                  "above_neg": above[0], "above_pos": above[1],
                  "eps": float(eps), "delta": float(delta)})
    ok = below == expected["below"] and above == expected["above"] and n_zero == expected["at"]
    return CheckResult("crossing", _status(ok), lam=float(lam),
                       lhs=[list(below), n_zero, list(above)],
                       rhs=[list(expected["below"]), expected["at"], list(expected["above"])],
                       terms=terms)


def _count_in_h(form, split, problem, lo, hi, closed_lo, tol):
    """Eigenvalues of ``problem`` in the window, minus common multiplicities."""
    spec = problem_spectrum(form, split, problem, tol)
    total = 0
    for mu, mult in spec.clusters():
        inside = (lo <= mu < hi) if closed_lo else (lo < mu <= hi)
        if inside:
            total += mult - common_eigenspace(form, split, mu, tolerances=tol)[0]
    return total


def _is_eigenvalue(form, split, lam, tol):
    return any(count_below(form, split, p, lam, tol)[1] for p in ("neumann", "dirichlet"))


def check_interval(form, split, a, b, tol=DEFAULT):
    """``dim G_b^- = dim G_a^- + #N[a, b) - #D(a, b]``, both counted off the
    common eigenvectors."""
    if not a < b:
        raise InvalidArgument("need a < b")
    for x in (a, b):
        if _is_eigenvalue(form, split, x, tol):
            raise InvalidArgument(
                f"endpoint {x!r} is an eigenvalue; move it by about "
                f"{10 * tol.cluster_width(x):.3e}")
    ga = _gminus(form, split, a, tol)[1].n_minus
    gb = _gminus(form, split, b, tol)[1].n_minus
    n_in = _count_in_h(form, split, "neumann", a, b, True, tol)
    d_in = _count_in_h(form, split, "dirichlet", a, b, False, tol)
    rhs = ga + n_in - d_in
    return CheckResult("interval", _status(gb == rhs), interval=[float(a), float(b)],
                       lhs=gb, rhs=rhs,
                       terms={"dim_G_minus_a": ga, "neumann_in": n_in, "dirichlet_in": d_in})


def check_resolvent(form, split, lam, tol=DEFAULT):
    """``n_-(R'(lam)) = N_N(lam) - N_D(lam)`` off the spectrum."""
    rd = dtn.resolvent_difference(form, split, lam, tol)
    nn, _ = count_below(form, split, "neumann", lam, tol)
    nd, _ = count_below(form, split, "dirichlet", lam, tol)
    return CheckResult("resolvent", _status(rd.inertia.n_minus == nn - nd), lam=float(lam),
                       lhs=rd.inertia.n_minus, rhs=nn - nd, residual=rd.range_residual,
                       terms={"N_N": nn, "N_D": nd, "rank": rd.rank})


def check_resolvent_jump(form, split, lam0, delta=None, tol=DEFAULT):
    """Jump of ``n_-(R')`` across ``lam0`` equals ``n_N(lam0) - n_D(lam0)``."""
    dmax = 0.5 * _neighbour_gap(form, split, lam0, tol)
    delta = dmax if delta is None else min(delta, dmax)
    lo = dtn.resolvent_difference(form, split, lam0 - delta, tol).inertia.n_minus
    hi = dtn.resolvent_difference(form, split, lam0 + delta, tol).inertia.n_minus
    mult = multiplicities(form, split, lam0, tol)
    rhs = mult.neumann - mult.dirichlet
    return CheckResult("resolvent_jump", _status(hi - lo == rhs), lam=float(lam0),
                       interval=[float(lam0 - delta), float(lam0 + delta)],
                       lhs=hi - lo, rhs=rhs,
                       terms={"n_minus_below": lo, "n_minus_above": hi,
                              "n_N": mult.neumann, "n_D": mult.dirichlet})


# ---------------------------------------------------------------------------
# inequalities
# ---------------------------------------------------------------------------

def filonov_span(form, split, lam, tol=DEFAULT):
    """Columns spanning chi_[0,lam](A_D) H + E_N(lam) H + G^0 + G^-."""
    width = tol.cluster_width(lam)
    spd = problem_spectrum(form, split, "dirichlet", tol)
    cols = [spd.vectors[:, (spd.values >= 0) & (spd.values <= lam + width)]]
    cols.append(eigenspace_basis(form, split, "neumann", lam, tolerances=tol).basis)
    frame = dtn.glambda_frame(form, split, lam, tol=tol)
    cols.append(frame.pencil_eigvecs_full()[:, frame.pencil_values <= tol.pencil_zero])
    return np.hstack(cols)


def check_filonov(form, split, lam, n_samples=1000, seed=0, tol=DEFAULT):
    """``a[u] <= lam |u|^2`` for random ``u`` from the Filonov span."""
    if not lam > 0:
        raise InvalidArgument("filonov check needs lam > 0")
    span = filonov_span(form, split, lam, tol)
    if span.shape[1] == 0:
        return CheckResult("filonov", SKIPPED, lam=float(lam), diagnostics="empty span")
    q, sv, _ = np.linalg.svd(span, full_matrices=False)
    rank = int(np.count_nonzero(sv > sv[0] * 1e-10))
    basis = q[:, :rank]
    rng = np.random.default_rng(seed)
    u = basis @ rng.standard_normal((rank, n_samples))
    k, m = form.K, form.M
    au = np.einsum("ij,ij->j", u, k @ u)
    nu = np.einsum("ij,ij->j", u, m @ u)
    kf = np.linalg.norm(k)
    excess = (au - lam * nu) / (kf * nu)
    violations = int(np.count_nonzero(excess > tol.ineq))
    nn, _ = count_below(form, split, "neumann", lam, tol)
    dim_en = eigenspace_basis(form, split, "neumann", lam, tolerances=tol).dimension
    return CheckResult(
        "filonov", _status(violations == 0), lam=float(lam), lhs=violations, rhs=0,
        residual=float(excess.max()),
        terms={"samples": int(n_samples), "span_dim": rank, "upper_bound": nn + dim_en,
               "dimension_consistent": bool(rank <= nn + dim_en)},
    )


def payne_records(form, split, k_max, tol=DEFAULT, identity_terms=True):
    """Per-``k`` records of the chain bounds. ``nonpositive_outside_domain`` is
    a heuristic report: whether some vector of G^0 + G^- has boundary support."""
    subset = None if identity_terms else k_max + 1
    spn = problem_spectrum(form, split, "neumann", tol, vectors=identity_terms, subset=subset)
    spd = problem_spectrum(form, split, "dirichlet", tol, vectors=identity_terms, subset=subset)
    ln, ldv = spn.values, spd.values
    out = []
    for k in range(1, min(k_max, len(ldv)) + 1):
        lam = float(ldv[k - 1])
        width = tol.cluster_width(lam)
        rec = PayneRecord(k=k, lam_dirichlet=lam,
                          lam_neumann_next=float(ln[k]) if k < len(ln) else None)
        if rec.lam_neumann_next is not None:
            rec.payne_margin = lam - rec.lam_neumann_next
        if identity_terms:
            frame, sig = _gminus(form, split, lam, tol)
            mult = multiplicities(form, split, lam, tol)
            rec.p, rec.q = sig.n_minus, mult.dirichlet
            leading = count_below(form, split, "dirichlet", lam, tol)[0] == k - 1
            i1 = k + rec.q + rec.p - 1
            if leading and 1 <= i1 <= len(ln):
                rec.margin_strict = lam - width - float(ln[i1 - 1])
            i2 = k + rec.p
            if 1 <= i2 <= len(ln):
                rec.margin_weak = lam + width - float(ln[i2 - 1])
            vecs = frame.pencil_eigvecs_full()[:, frame.pencil_values <= tol.pencil_zero]
            bnorm = np.linalg.norm(vecs[split.boundary], axis=0)
            rec.nonpositive_outside_domain = bool(np.any(bnorm > 1e-8 * np.linalg.norm(vecs, axis=0)))
        out.append(rec)
    return out


def check_payne_chain(form, split, k_max, continuum=False, tol=DEFAULT, identity_terms=True):
    """Chain bounds at every ``lambda = lambda_{D,k}`` with ``p = dim G^-`` and
    ``q = n_D``: ``lambda_{N,k+q+p-1} < lambda`` (asserted where ``k`` leads its
    cluster) and ``lambda_{N,k+p} <= lambda``; plus the Payne inequality
    ``lambda_{N,k+1} < lambda_{D,k}``.

    The Payne inequality is a continuum statement and is only asserted when
    ``continuum`` is set; otherwise it is reported.
    """
    recs = payne_records(form, split, k_max, tol, identity_terms)
    ok = True
    notes = []
    for r in recs:
        if r.margin_strict is not None and not r.margin_strict > 0:
            ok = False
            notes.append(f"strict bound lambda_{N,k+q+p-1} < lambda_{D,k} fails at k={r.k}")
        if r.margin_weak is not None and not r.margin_weak >= 0:
            ok = False
            notes.append(f"bound lambda_{N,k+p} <= lambda_{D,k} fails at k={r.k}")
        if r.payne_margin is not None and not r.payne_margin > 0:
            if continuum:
                ok = False
            notes.append(f"payne {'fails' if continuum else 'does not hold (reported)'} at k={r.k}")
    if len(recs) < k_max:
        notes.append(f"spectrum holds only {len(recs)} Dirichlet eigenvalues; tail skipped")
    margins = [r.payne_margin for r in recs if r.payne_margin is not None]
    result = CheckResult(
        "payne_chain", _status(ok), lhs=len(recs), rhs=k_max,
        residual=float(min(margins)) if margins else None,
        terms={"continuum": bool(continuum), "records": [asdict(r) for r in recs]},
        diagnostics="; ".join(notes),
    )
    return recs, result


def projected_b(form, split, v, lam, problem):
    """``b[P'_B(lam) v]`` with the discrete projections onto G_lam.

    Dirichlet: subtract the zero-extended interior solve of the interior
    residual. Neumann: ``P'_N(lam) v = (K - lam M)^{-1}`` applied to the
    boundary rows of ``K v`` (zero on interior rows).
    """
    t = form.shifted(lam)
    v = np.asarray(v, dtype=float)
    if problem == "dirichlet":
        tii = split.blocks(t)[0]
        w = v.copy()
        w[split.interior] -= sla.solve(tii, (t @ v)[split.interior], assume_a="sym")
    elif problem == "neumann":
        rhs = np.zeros_like(v)
        rhs[split.boundary] = (form.K @ v)[split.boundary]
        w = sla.solve(t, rhs, assume_a="sym")
    else:
        raise InvalidArgument(f"unknown problem {problem!r}")
    return float(w @ t @ w), w


def check_monotone(form, split, v, lam_grid, problem, tol=DEFAULT):
    """``b[P'_N(lam) v]`` nondecreasing / ``b[P'_D(lam) v]`` nonincreasing on an
    eigenvalue-free grid; strictly so when ``v`` is outside the operator domain."""
    grid = np.asarray(lam_grid, dtype=float)
    if grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise InvalidArgument("lam_grid must be strictly increasing with at least 2 points")
    lo_count = count_below(form, split, problem, grid[0], tol)
    hi_count = count_below(form, split, problem, grid[-1], tol)
    if lo_count[1] or hi_count[1] or lo_count[0] != hi_count[0]:
        raise InvalidArgument("lam_grid touches an eigenvalue of the chosen problem")
    v = np.asarray(v, dtype=float)
    values = np.array([projected_b(form, split, v, lam, problem)[0] for lam in grid])
    sign = 1.0 if problem == "neumann" else -1.0
    steps = sign * np.diff(values)
    scale = float(np.abs(values).max())
    # values of b at the rounding level carry no sign information
    roundoff = form.n * EPS * np.linalg.norm(form.K, 2) * float(v @ v)
    violation = float(max(0.0, -steps.min()))
    ok = violation <= tol.mono * scale + roundoff
    if problem == "dirichlet":
        outside = np.linalg.norm(v[split.boundary]) > 1e-12 * max(np.linalg.norm(v), 1e-300)
    else:
        kv = form.K @ v
        outside = np.linalg.norm(kv[split.boundary]) > 1e-12 * max(np.linalg.norm(kv), 1e-300)
    strict = bool(np.all(steps > roundoff))
    if outside and not strict:
        ok = False
    return CheckResult(
        f"monotone_{problem}", _status(ok), interval=[float(grid[0]), float(grid[-1])],
        residual=violation / scale if scale > roundoff else 0.0,
        terms={"points": int(grid.size), "strict_expected": bool(outside), "strict": strict,
               "scale": scale, "roundoff": float(roundoff)},
    )


def check_projection_identities(form, split, n_random=20, seed=0, tol=DEFAULT):
    """Projection onto interior-supported vectors and its complement onto G_0."""
    k, m = form.K, form.M
    n = form.n
    i = split.interior
    kii = split.blocks(k)[0]
    p0 = np.zeros((n, n))
    p0[i, :] = sla.solve(kii, k[i, :], assume_a="pos")
    comp = np.eye(n) - p0
    rel = {}
    rel["idempotent"] = np.linalg.norm(p0 @ p0 - p0) / np.linalg.norm(p0)
    kp = k @ p0
    rel["a_selfadjoint"] = np.linalg.norm(kp - kp.T) / np.linalg.norm(kp)
    rel["complement_in_G0"] = np.linalg.norm(k[i, :] @ comp) / (np.linalg.norm(k) * np.linalg.norm(comp))
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((n, n_random))
    ad = np.zeros((n, n_random))
    ad[i, :] = sla.solve(kii, (m @ f)[i, :], assume_a="pos")
    an = sla.solve(k, m @ f, assume_a="pos")
    rel["dirichlet_inverse"] = np.linalg.norm(ad - p0 @ an) / np.linalg.norm(ad)
    sv = np.linalg.svd(comp, compute_uv=False)
    rank = int(np.count_nonzero(sv > sv[0] * n * 1e-12))
    worst = float(max(rel.values()))
    ok = worst <= tol.projection and rank == split.boundary.size
    return CheckResult("projection_identities", _status(ok), lhs=rank, rhs=int(split.boundary.size),
                       residual=worst, terms={key: float(val) for key, val in rel.items()})


# ---------------------------------------------------------------------------
# probes and the suite runner
# ---------------------------------------------------------------------------

def eigen_probes(form, split, limit=10, tol=DEFAULT):
    """Distinct eigenvalues among the first ``limit`` of either problem."""
    vals = []
    for problem in ("neumann", "dirichlet"):
        vals.extend(problem_spectrum(form, split, problem, tol).values[:limit].tolist())
    out = []
    for v in sorted(vals):
        if not out or abs(v - out[-1]) > tol.cluster_width(out[-1]):
            out.append(v)
    return out


def simple_eigenvalues(form, split, count=5, tol=DEFAULT):
    out = []
    for lam in eigen_probes(form, split, limit=max(10, 2 * count), tol=tol):
        mult = multiplicities(form, split, lam, tol)
        if mult.total_neumann + mult.total_dirichlet == 1:
            out.append(lam)
        if len(out) == count:
            break
    return out


def _all_values(form, split, tol):
    return np.concatenate([problem_spectrum(form, split, p, tol).values
                           for p in ("neumann", "dirichlet")])


def nudge(lam, values, tol=DEFAULT):
    """Move ``lam`` up until it is ``probe_separation`` (relative) from every value."""
    lam = float(lam)
    for _ in range(1000):
        sep = tol.probe_separation * max(1.0, abs(lam))
        if np.all(np.abs(values - lam) >= sep):
            return lam
        lam += 10.0 * sep
    raise InvalidArgument("could not move probe off the spectrum")  # pragma: no cover


def random_probes(form, split, count, rng, tol=DEFAULT, upper=None, lower=0.0):
    """Seeded non-eigenvalue shifts in ``(lower, upper)``."""
    values = _all_values(form, split, tol)
    if upper is None:
        spd = problem_spectrum(form, split, "dirichlet", tol).values
        upper = 1.2 * float(spd[min(9, len(spd) - 1)])
    if not lower < upper:
        raise InvalidArgument("need lower < upper")
    return [nudge(x, values, tol) for x in rng.uniform(lower, upper, size=count)]


def filonov_probes(form, split, count, rng, tol=DEFAULT):
    """Shifts above the lowest Neumann eigenvalue, where ``N_N >= 1`` makes the
    Filonov span nonempty."""
    first = float(problem_spectrum(form, split, "neumann", tol).values[0])
    spd = problem_spectrum(form, split, "dirichlet", tol).values
    upper = max(1.2 * float(spd[min(9, len(spd) - 1)]), 2.0 * first)
    return random_probes(form, split, count, rng, tol, upper=upper, lower=first * (1 + 1e-3))


def random_intervals(form, split, count, rng, tol=DEFAULT, upper=None):
    probes = random_probes(form, split, 2 * count, rng, tol, upper)
    out = []
    for a, b in zip(probes[::2], probes[1::2]):
        if a == b:
            continue
        out.append((min(a, b), max(a, b)))
    return out


def free_interval(form, split, problem, tol=DEFAULT, limit=6):
    """Widest gap between consecutive distinct eigenvalues among the lowest
    ``limit``, trimmed by 5% on each side."""
    clusters = [mu for mu, _ in problem_spectrum(form, split, problem, tol).clusters()][:limit]
    best = None
    for a, b in zip(clusters, clusters[1:]):
        if best is None or b - a > best[1] - best[0]:
            best = (a, b)
    if best is None:
        top = clusters[0]
        return 0.05 * top, 0.95 * top
    a, b = best
    return a + 0.05 * (b - a), b - 0.05 * (b - a)


def run_suite(form, split, seed=0, tol=DEFAULT, n_probes=10, n_intervals=5, eig_limit=10,
              n_samples=1000, n_filonov=3, n_monotone=20, k_max=10, continuum=False):
    """Every check on one assembled fixture, in a fixed order."""
    rng = np.random.default_rng(seed)
    results = []
    probes = random_probes(form, split, n_probes, rng, tol)
    eigs = eigen_probes(form, split, eig_limit, tol)
    for lam in probes + eigs:
        results.append(check_haynsworth(form, split, lam, tol))
    for lam in eigs:
        results.append(check_kernel_dim(form, split, lam, tol))
    for lam in simple_eigenvalues(form, split, 5, tol):
        results.append(check_crossing(form, split, lam, tol=tol))
    for a, b in random_intervals(form, split, n_intervals, rng, tol):
        results.append(check_interval(form, split, a, b, tol))
    for lam in probes:
        results.append(check_resolvent(form, split, lam, tol))
    for lam in simple_eigenvalues(form, split, 5, tol):
        results.append(check_resolvent_jump(form, split, lam, tol=tol))
    for j, lam in enumerate(filonov_probes(form, split, n_filonov, rng, tol)):
        results.append(check_filonov(form, split, lam, n_samples, seed + j, tol))
    for problem in ("neumann", "dirichlet"):
        a, b = free_interval(form, split, problem, tol)
        grid = np.linspace(a, b, 50)
        for _ in range(n_monotone):
            results.append(check_monotone(form, split, rng.standard_normal(form.n), grid, problem, tol))
    results.append(check_payne_chain(form, split, k_max, continuum, tol)[1])
    results.append(check_projection_identities(form, split, seed=seed, tol=tol))
    return results
