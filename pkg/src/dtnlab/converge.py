"""Grid-refinement study on the unit square against separation-of-variables
eigenvalues."""

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .eigensolve import problem_spectrum
from .mesh import assemble, build_grid
from .tolerances import DEFAULT
from .verify import FAIL, PASS, CheckResult, check_payne_chain

LADDER = (16, 32, 64)


def square_targets(problem, count, shift=0.0):
    """Lowest ``count`` values of ``pi^2 (i^2 + j^2) + shift``; ``i, j >= 1`` for
    Dirichlet and ``i, j >= 0`` for Neumann, with multiplicity."""
    start = 1 if problem == "dirichlet" else 0
    top = start + count + 1
    vals = sorted(np.pi ** 2 * (i * i + j * j) for i in range(start, top) for j in range(start, top))
    return np.array(vals[:count]) + shift


def unit_square(m, shift=1.0):
    """``(m+1) x (m+1)`` node grid, spacing ``1/m``, lumped mass."""
    return assemble(build_grid(m + 1, m + 1, h=1.0 / m), shift=shift, mass_mode="lumped")


def fit_order(hs, errors):
    """Common slope of ``log err_k`` against ``log h`` with one intercept per
    eigenvalue (least squares). Columns with an error below 1e-9 (exact up to
    rounding) are dropped."""
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = np.all(errors > 1e-9, axis=0)
    e = errors[:, keep]
    if e.shape[1] == 0 or len(hs) < 2:
        return None
    x = np.log(hs)
    rows, rhs = [], []
    for k in range(e.shape[1]):
        for i in range(len(hs)):
            row = np.zeros(1 + e.shape[1])
            row[0] = x[i]
            row[1 + k] = 1.0
            rows.append(row)
            rhs.append(np.log(e[i, k]))
    coef = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)[0]
    return float(coef[0])


@dataclass
class ConvergeResult:
    ladder: list
    shift: float
    count: int
    rows: list = field(default_factory=list)
    order: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        d["checks"] = [c.to_dict() for c in self.checks]
        return d


def run_converge(ladder=LADDER, shift=1.0, count=5, k_max=10, tol=DEFAULT,
                 dirichlet_rel=0.01, neumann_rel=0.03, order_target=2.0, order_band=0.3):
    """Spectra on every grid of the ladder, relative errors, fitted order, and
    the Payne inequality on the finest grid."""
    res = ConvergeResult(ladder=[int(m) for m in ladder], shift=float(shift), count=int(count))
    errs = {"dirichlet": [], "neumann": []}
    finest = None
    for m in ladder:
        t0 = time.perf_counter()
        form, split = unit_square(m, shift)
        need = max(count, k_max + 1)
        for problem in ("dirichlet", "neumann"):
            vals = problem_spectrum(form, split, problem, tol, vectors=False, subset=need).values
            target = square_targets(problem, count, shift)
            rel = np.abs(vals[:count] - target) / target
            errs[problem].append(rel)
            res.rows.append({"m": int(m), "h": 1.0 / m, "problem": problem,
                             "values": vals[:count].tolist(), "targets": target.tolist(),
                             "rel_error": rel.tolist()})
        res.timing[f"m={m}"] = time.perf_counter() - t0
        finest = (form, split)
    hs = [1.0 / m for m in ladder]
    for problem in ("dirichlet", "neumann"):
        res.order[problem] = fit_order(hs, errs[problem])

    worst_d = float(np.max(errs["dirichlet"][-1]))
    worst_n = float(np.max(errs["neumann"][-1]))
    res.checks.append(CheckResult("converge_dirichlet", PASS if worst_d <= dirichlet_rel else FAIL,
                                  lhs=worst_d, rhs=dirichlet_rel, residual=worst_d,
                                  terms={"h": hs[-1]}))
    p = res.order["dirichlet"]
    ok = p is not None and abs(p - order_target) <= order_band
    res.checks.append(CheckResult("converge_order", PASS if ok else FAIL, lhs=p, rhs=order_target,
                                  residual=None if p is None else abs(p - order_target),
                                  terms={"band": order_band, "neumann_order": res.order["neumann"]}))
    res.checks.append(CheckResult("converge_neumann", PASS if worst_n <= neumann_rel else FAIL,
                                  lhs=worst_n, rhs=neumann_rel, residual=worst_n,
                                  terms={"h": hs[-1]}))
    t0 = time.perf_counter()
    # p_k/q_k need a null-space basis of the full grid; only the Payne margins are computed here
    res.checks.append(check_payne_chain(*finest, k_max, continuum=True, tol=tol,
                                        identity_terms=False)[1])
    res.timing["payne"] = time.perf_counter() - t0
    return res
