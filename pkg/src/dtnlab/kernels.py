"""Hot numeric kernels: cyclic Jacobi and Bunch-Kaufman LDL^T.

Every kernel has two implementations with the same contract: an explicit-loop
version compiled with numba, and a vectorised pure-numpy version. The numba
path is used when numba imports and ``DTNLAB_NUMBA`` is not set to ``0``.
"""

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

BK_ALPHA = (1.0 + math.sqrt(17.0)) / 8.0


def numba_enabled():
    flag = os.environ.get("DTNLAB_NUMBA", "1").strip().lower()
    return numba is not None and flag not in ("0", "false", "no", "off")


def _njit(func):
    if numba is None:  # pragma: no cover
        return func
    return numba.njit(cache=True, nogil=True)(func)


# ---------------------------------------------------------------------------
# Jacobi
# ---------------------------------------------------------------------------

@_njit
def _jacobi_numba(a, v, tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if math.sqrt(2.0 * off) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def _tournament(m):
    """Round-robin schedule of disjoint index pairs covering all m(m-1)/2 pairs."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p = np.array([players[i] for i in range(m // 2)])
        q = np.array([players[m - 1 - i] for i in range(m // 2)])
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        rounds.append((lo, hi))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi_numpy(a, v, tol, max_sweeps):
    n = a.shape[0]
    if n < 2:
        return 0
    m = n + (n % 2)
    if m != n:
        # decoupled dummy index; its off-diagonal entries stay exactly zero
        a2 = np.zeros((m, m))
        a2[:n, :n] = a
        v2 = np.zeros((m, m))
        v2[:n, :n] = v
        v2[n, n] = 1.0
    else:
        a2, v2 = a, v
    rounds = _tournament(m)
    iu = np.triu_indices(m, 1)
    result = -1
    for sweep in range(max_sweeps + 1):
        if math.sqrt(2.0 * np.sum(a2[iu] ** 2)) <= tol:
            result = sweep
            break
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a2[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            theta = (a2[q, q] - a2[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t[safe == 0.0] = 1.0
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            colp, colq = a2[:, p].copy(), a2[:, q].copy()
            a2[:, p] = c * colp - s * colq
            a2[:, q] = s * colp + c * colq
            rowp, rowq = a2[p, :].copy(), a2[q, :].copy()
            a2[p, :] = c[:, None] * rowp - s[:, None] * rowq
            a2[q, :] = s[:, None] * rowp + c[:, None] * rowq
            a2[p, q] = 0.0
            a2[q, p] = 0.0
            vp, vq = v2[:, p].copy(), v2[:, q].copy()
            v2[:, p] = c * vp - s * vq
            v2[:, q] = s * vp + c * vq
    if m != n:
        a[...] = a2[:n, :n]
        v[...] = v2[:n, :n]
    return result


def jacobi_eigh(s, tol, max_sweeps, use_numba=None):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(values, vectors, sweeps)`` with values ascending; ``sweeps`` is
    -1 when the off-diagonal norm did not drop below ``tol`` in time.
    """
    a = np.array(s, dtype=np.float64, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        sweeps = _jacobi_numba(a, v, float(tol), int(max_sweeps))
    else:
        sweeps = _jacobi_numpy(a, v, float(tol), int(max_sweeps))
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], int(sweeps)


# ---------------------------------------------------------------------------
# Bunch-Kaufman
# ---------------------------------------------------------------------------

@_njit
def _bk_numba(a, lower, perm, blocks, alpha):
    n = a.shape[0]
    amax0 = 0.0
    for i in range(n):
        for j in range(n):
            if abs(a[i, j]) > amax0:
                amax0 = abs(a[i, j])
    grow = amax0
    k = 0
    while k < n:
        absakk = abs(a[k, k])
        imax = k
        colmax = 0.0
        for i in range(k + 1, n):
            if abs(a[i, k]) > colmax:
                colmax = abs(a[i, k])
                imax = i
        step = 1
        piv = k
        if max(absakk, colmax) == 0.0:
            blocks[k] = 1
            k += 1
            continue
        if absakk < alpha * colmax:
            rowmax = 0.0
            for j in range(k, n):
                if j != imax and abs(a[imax, j]) > rowmax:
                    rowmax = abs(a[imax, j])
            if absakk >= alpha * colmax * (colmax / rowmax):
                piv = k
            elif abs(a[imax, imax]) >= alpha * rowmax:
                piv = imax
            else:
                piv = imax
                step = 2
        target = k + step - 1
        if piv != target:
            for j in range(n):
                tmp = a[target, j]
                a[target, j] = a[piv, j]
                a[piv, j] = tmp
            for i in range(n):
                tmp = a[i, target]
                a[i, target] = a[i, piv]
                a[i, piv] = tmp
            for j in range(k):
                tmp = lower[target, j]
                lower[target, j] = lower[piv, j]
                lower[piv, j] = tmp
            tp = perm[target]
            perm[target] = perm[piv]
            perm[piv] = tp
        if step == 1:
            d = a[k, k]
            blocks[k] = 1
            for i in range(k + 1, n):
                lower[i, k] = a[i, k] / d
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i, j] -= lower[i, k] * a[k, j]
                    if abs(a[i, j]) > grow:
                        grow = abs(a[i, j])
            for i in range(k + 1, n):
                a[i, k] = 0.0
                a[k, i] = 0.0
        else:
            # scaled by the off-diagonal entry, as in LAPACK dsytf2
            d21 = a[k + 1, k]
            d11 = a[k, k] / d21
            d22 = a[k + 1, k + 1] / d21
            t = 1.0 / (d21 * (d11 * d22 - 1.0))
            blocks[k] = 2
            blocks[k + 1] = 0
            for i in range(k + 2, n):
                w1 = a[i, k]
                w2 = a[i, k + 1]
                lower[i, k] = (w1 * d22 - w2) * t
                lower[i, k + 1] = (w2 * d11 - w1) * t
            for i in range(k + 2, n):
                for j in range(k + 2, n):
                    a[i, j] -= lower[i, k] * a[k, j] + lower[i, k + 1] * a[k + 1, j]
                    if abs(a[i, j]) > grow:
                        grow = abs(a[i, j])
            for i in range(k + 2, n):
                a[i, k] = 0.0
                a[k, i] = 0.0
                a[i, k + 1] = 0.0
                a[k + 1, i] = 0.0
        k += step
    for i in range(n):
        lower[i, i] = 1.0
    if amax0 == 0.0:
        return 1.0
    return grow / amax0


def _bk_numpy(a, lower, perm, blocks, alpha):
    n = a.shape[0]
    amax0 = float(np.abs(a).max()) if n else 0.0
    grow = amax0
    k = 0
    while k < n:
        absakk = abs(a[k, k])
        if k + 1 < n:
            col = np.abs(a[k + 1:, k])
            imax = k + 1 + int(np.argmax(col))
            colmax = float(col.max())
        else:
            imax, colmax = k, 0.0
        step, piv = 1, k
        if max(absakk, colmax) == 0.0:
            blocks[k] = 1
            k += 1
            continue
        if absakk < alpha * colmax:
            row = np.abs(a[imax, k:]).copy()
            row[imax - k] = 0.0
            rowmax = float(row.max())
            if absakk >= alpha * colmax * (colmax / rowmax):
                piv = k
            elif abs(a[imax, imax]) >= alpha * rowmax:
                piv = imax
            else:
                piv, step = imax, 2
        target = k + step - 1
        if piv != target:
            a[[target, piv], :] = a[[piv, target], :]
            a[:, [target, piv]] = a[:, [piv, target]]
            lower[[target, piv], :k] = lower[[piv, target], :k]
            perm[[target, piv]] = perm[[piv, target]]
        if step == 1:
            blocks[k] = 1
            lcol = a[k + 1:, k] / a[k, k]
            lower[k + 1:, k] = lcol
            a[k + 1:, k + 1:] -= np.outer(lcol, a[k, k + 1:])
            a[k + 1:, k] = 0.0
            a[k, k + 1:] = 0.0
        else:
            blocks[k], blocks[k + 1] = 2, 0
            d21 = a[k + 1, k]
            d11, d22 = a[k, k] / d21, a[k + 1, k + 1] / d21
            t = 1.0 / (d21 * (d11 * d22 - 1.0))
            dinv = np.array([[d22, -1.0], [-1.0, d11]]) * t
            w = a[k + 2:, k:k + 2]
            lk = w @ dinv
            lower[k + 2:, k:k + 2] = lk
            a[k + 2:, k + 2:] -= lk @ w.T
            a[k + 2:, k:k + 2] = 0.0
            a[k:k + 2, k + 2:] = 0.0
        if k + step < n:
            grow = max(grow, float(np.abs(a[k + step:, k + step:]).max()))
        k += step
    np.fill_diagonal(lower, 1.0)
    return grow / amax0 if amax0 else 1.0


def bk_factor(matrix, use_numba=None):
    """Bunch-Kaufman partial pivoting, ``P A P^T = L D L^T``.

    Returns ``(lower, dmat, perm, blocks, growth)``: ``dmat`` is the
    block-diagonal D as a dense array, ``blocks[k]`` is 1 or 2 at the first
    row of each pivot block and 0 on the second row of a 2x2 block.
    """
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    n = a.shape[0]
    lower = np.zeros((n, n))
    perm = np.arange(n, dtype=np.int64)
    blocks = np.zeros(n, dtype=np.int64)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        growth = _bk_numba(a, lower, perm, blocks, BK_ALPHA)
    else:
        growth = _bk_numpy(a, lower, perm, blocks, BK_ALPHA)
    dmat = np.zeros((n, n))
    k = 0
    while k < n:
        if blocks[k] == 2:
            dmat[k:k + 2, k:k + 2] = a[k:k + 2, k:k + 2]
            k += 2
        else:
            dmat[k, k] = a[k, k]
            k += 1
    return lower, dmat, perm, blocks, float(growth)
