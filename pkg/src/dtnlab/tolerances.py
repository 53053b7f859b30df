"""Numerical tolerances shared by every module.

All knobs live in one frozen record so reports can echo exactly what was used.
"""

from dataclasses import asdict, dataclass, fields, replace

import numpy as np

EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Tolerances:
    # eigenvalue clusters: |a - b| <= cluster * max(1, |a|)
    cluster: float = 1e-9
    # random probes stay this far (relative) from every eigenvalue
    probe_separation: float = 1e-6
    # cyclic Jacobi stops when off(S) <= jacobi_off * ||S||_F
    jacobi_off: float = 1e-13
    jacobi_max_sweeps: int = 40
    # zero pencil eigenvalue of B_lambda in the a-normalised frame
    pencil_zero: float = 1e-9
    # principal-angle test for common eigenvectors: cos >= 1 - angle
    angle: float = 1e-8
    # filonov: a[u] <= lam |u|^2 + ineq * ||K||_F |u|^2
    ineq: float = 1e-8
    # monotonicity: one-sided violation <= mono * scale
    mono: float = 1e-9
    # projection identities, relative
    projection: float = 1e-9

    def cluster_width(self, lam):
        return self.cluster * max(1.0, abs(float(lam)))

    def as_dict(self):
        return asdict(self)

    def updated(self, **overrides):
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise KeyError(", ".join(sorted(unknown)))
        return replace(self, **overrides)


DEFAULT = Tolerances()
