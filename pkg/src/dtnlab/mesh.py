"""Discrete domains and the assembled quadratic-form pair (K, M).

Three domain kinds are supported: a 1-D chain (``interval1d``), a masked
4-neighbour lattice (``grid2d``) and an arbitrary weighted graph (``graph``).
The interior/boundary split is carried by :class:`IndexSplit`; the Dirichlet
problem is the interior block of the pencil and the Neumann problem the full
pencil.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import lapack

from .errors import AssemblyFailure, InvalidArgument, InvalidDomain
from .tolerances import EPS

KINDS = ("interval1d", "grid2d", "graph")
MASS_MODES = ("identity", "lumped")


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = [find(i) for i in range(n)]
    labels = {}
    for r in roots:
        labels.setdefault(r, len(labels))
    return np.array([labels[r] for r in roots], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class DomainSpec:
    kind: str
    node_count: int
    adjacency: tuple
    boundary: frozenset
    component_ids: np.ndarray
    h: float = None
    coords: np.ndarray = None
    grid_shape: tuple = None

    @property
    def interior(self):
        return [i for i in range(self.node_count) if i not in self.boundary]

    @property
    def boundary_free_components(self):
        """Component labels that contain no boundary node."""
        touched = {int(self.component_ids[b]) for b in self.boundary}
        return sorted(set(int(c) for c in self.component_ids) - touched)

    def validate(self):
        n = self.node_count
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown domain kind {self.kind!r}")
        if any(b < 0 or b >= n for b in self.boundary):
            raise InvalidArgument("boundary index out of range")
        if not self.boundary:
            raise InvalidDomain("boundary set is empty")
        if len(self.boundary) >= n:
            raise InvalidDomain("no interior nodes: every node is on the boundary")
        seen = set()
        for i, j, w in self.adjacency:
            if not 0 <= i < j < n:
                raise InvalidArgument(f"edge ({i}, {j}) must satisfy 0 <= i < j < {n}")
            if (i, j) in seen:
                raise InvalidArgument(f"duplicate edge ({i}, {j})")
            if not w > 0:
                raise InvalidArgument(f"edge ({i}, {j}) has nonpositive weight {w}")
            seen.add((i, j))
        if not np.array_equal(self.component_ids, _components(n, self.adjacency)):
            raise InvalidArgument("component labels disagree with adjacency")
        return self


@dataclass(frozen=True, eq=False)
class IndexSplit:
    interior: np.ndarray
    boundary: np.ndarray
    perm: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "interior", _frozen(np.asarray(self.interior, dtype=np.int64)))
        object.__setattr__(self, "boundary", _frozen(np.asarray(self.boundary, dtype=np.int64)))
        object.__setattr__(self, "perm", _frozen(np.concatenate([self.interior, self.boundary])))
        n = self.perm.size
        if self.interior.size < 1 or self.boundary.size < 1:
            raise InvalidDomain("split needs at least one interior and one boundary index")
        if not np.array_equal(np.sort(self.perm), np.arange(n)):
            raise InvalidArgument("interior and boundary must partition 0..n-1")

    @property
    def n(self):
        return int(self.perm.size)

    def blocks(self, a):
        """Return ``(II, IG, GI, GG)`` blocks of a square matrix."""
        i, g = self.interior, self.boundary
        return a[np.ix_(i, i)], a[np.ix_(i, g)], a[np.ix_(g, i)], a[np.ix_(g, g)]


@dataclass(frozen=True, eq=False)
class FormPair:
    K: np.ndarray
    M: np.ndarray
    shift: float
    mass_mode: str = "identity"

    def __post_init__(self):
        object.__setattr__(self, "K", _frozen(np.asarray(self.K, dtype=float)))
        object.__setattr__(self, "M", _frozen(np.asarray(self.M, dtype=float)))

    @property
    def n(self):
        return self.K.shape[0]

    def shifted(self, lam):
        """``K - lam * M``."""
        return self.K - lam * self.M


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_interval(n, h, both_ends=False):
    """Path graph on ``n`` nodes with spacing ``h``; boundary is the last node
    (or both end nodes)."""
    if not (isinstance(n, (int, np.integer)) and n >= 2):
        raise InvalidArgument("interval needs at least 2 nodes")
    if not h > 0:
        raise InvalidArgument("spacing h must be positive")
    w = 1.0 / (h * h)
    edges = tuple((i, i + 1, w) for i in range(n - 1))
    boundary = frozenset({0, n - 1} if both_ends else {n - 1})
    spec = DomainSpec(
        kind="interval1d",
        node_count=int(n),
        adjacency=edges,
        boundary=boundary,
        component_ids=_components(n, edges),
        h=float(h),
        coords=_frozen(np.arange(n, dtype=float)[:, None] * h),
    )
    return spec.validate()


def build_grid(rows, cols, mask=None, h=None):
    """4-neighbour lattice on the masked-in cells of a ``rows x cols`` grid.

    Boundary nodes are masked-in nodes with a missing neighbour. Spacing
    defaults to ``1 / (cols - 1)`` so that a full mask covers the unit square
    edge to edge with the boundary ring on its sides.
    """
    if rows < 1 or cols < 1:
        raise InvalidArgument("grid needs positive dimensions")
    if mask is None:
        mask = np.ones((rows, cols), dtype=bool)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (rows, cols):
        raise InvalidArgument(f"mask shape {mask.shape} != ({rows}, {cols})")
    if mask.sum() < 2:
        raise InvalidDomain("mask has fewer than 2 nodes")
    if h is None:
        h = 1.0 / max(cols - 1, 1)
    if not h > 0:
        raise InvalidArgument("spacing h must be positive")
    index = -np.ones((rows, cols), dtype=np.int64)
    cells = np.argwhere(mask)
    index[mask] = np.arange(len(cells))
    w = 1.0 / (h * h)
    edges = []
    boundary = set()
    for node, (r, c) in enumerate(cells):
        nbrs = 0
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < rows and 0 <= cc < cols and mask[rr, cc]:
                nbrs += 1
                other = index[rr, cc]
                if other > node:
                    edges.append((node, int(other), w))
        if nbrs < 4:
            boundary.add(node)
    if len(boundary) == len(cells):
        raise InvalidDomain("grid has no interior node")
    edges = tuple(sorted(edges))
    spec = DomainSpec(
        kind="grid2d",
        node_count=len(cells),
        adjacency=edges,
        boundary=frozenset(boundary),
        component_ids=_components(len(cells), edges),
        h=float(h),
        coords=_frozen(cells[:, ::-1] * h),
        grid_shape=(rows, cols),
    )
    return spec.validate()


def build_graph(node_count, edges, boundary):
    """Weighted graph; edges are ``(i, j, w)`` with ``w > 0``."""
    if node_count < 1:
        raise InvalidArgument("graph needs at least one node")
    norm = []
    for e in edges:
        if len(e) != 3:
            raise InvalidArgument(f"edge {e!r} is not (i, j, w)")
        i, j, w = int(e[0]), int(e[1]), float(e[2])
        if i == j:
            raise InvalidArgument(f"self-loop at node {i}")
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise InvalidArgument(f"edge ({i}, {j}) out of range")
        norm.append((min(i, j), max(i, j), w))
    bnd = frozenset(int(b) for b in boundary)
    if any(not 0 <= b < node_count for b in bnd):
        raise InvalidArgument("boundary index out of range")
    norm = tuple(norm)
    spec = DomainSpec(
        kind="graph",
        node_count=int(node_count),
        adjacency=norm,
        boundary=bnd,
        component_ids=_components(node_count, [(i, j, w) for i, j, w in norm if i != j]),
    )
    return spec.validate()


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def laplacian(n, edges):
    lap = np.zeros((n, n))
    for i, j, w in edges:
        lap[i, j] -= w
        lap[j, i] -= w
        lap[i, i] += w
        lap[j, j] += w
    return lap


def _lumped(domain):
    """Finite-volume weights and dual-cell masses for interval/grid domains."""
    h = domain.h
    n = domain.node_count
    if domain.kind == "interval1d":
        mass = np.zeros(n)
        edges = []
        for i, j, _ in domain.adjacency:
            edges.append((i, j, 1.0 / h))
            mass[i] += 0.5 * h
            mass[j] += 0.5 * h
        return edges, mass
    rows, cols = domain.grid_shape
    pos = np.rint(domain.coords[:, ::-1] / h).astype(np.int64)
    present = np.zeros((rows, cols), dtype=bool)
    present[pos[:, 0], pos[:, 1]] = True
    # square (r, c) has corners (r, c) .. (r+1, c+1)
    sq = np.zeros((rows + 1, cols + 1), dtype=bool)
    sq[1:rows, 1:cols] = (present[:-1, :-1] & present[1:, :-1]
                          & present[:-1, 1:] & present[1:, 1:])

    def square(r, c):
        return bool(sq[r + 1, c + 1])

    mass = np.zeros(n)
    for node, (r, c) in enumerate(pos):
        touching = square(r - 1, c - 1) + square(r - 1, c) + square(r, c - 1) + square(r, c)
        mass[node] = h * h * max(touching, 1) / 4.0
    edges = []
    for i, j, _ in domain.adjacency:
        (ri, ci), (rj, cj) = pos[i], pos[j]
        if ri == rj:
            c0 = min(ci, cj)
            faces = square(ri - 1, c0) + square(ri, c0)
        else:
            r0 = min(ri, rj)
            faces = square(r0, ci - 1) + square(r0, ci)
        edges.append((i, j, 0.5 * max(faces, 1)))
    return edges, mass


def _check_positive(k):
    n = k.shape[0]
    chol, info = lapack.dpotrf(k, lower=1, clean=1)
    if info > 0:
        return info - 1
    if info < 0:  # pragma: no cover
        raise InvalidArgument("dpotrf rejected its input")
    piv = np.diag(chol) ** 2
    floor = n * EPS * np.abs(k).max()
    bad = np.flatnonzero(piv <= floor)
    return int(bad[0]) if bad.size else None


def assemble(domain, shift=1.0, mass_mode="identity"):
    """Assemble ``(FormPair, IndexSplit)`` for a domain.

    ``K`` is the weighted Laplacian plus ``shift * M``. In ``identity`` mode
    ``M = I`` and edge weights are taken from the domain; ``lumped`` mode
    (interval/grid only) uses finite-volume face weights and dual-cell masses.
    """
    if mass_mode not in MASS_MODES:
        raise InvalidArgument(f"mass_mode must be one of {MASS_MODES}")
    if not shift >= 0:
        raise InvalidArgument("shift must be nonnegative")
    n = domain.node_count
    if mass_mode == "identity":
        lap = laplacian(n, domain.adjacency)
        m = np.eye(n)
    else:
        if domain.kind == "graph":
            raise InvalidArgument("lumped mass needs interval or grid geometry")
        edges, mass = _lumped(domain)
        lap = laplacian(n, edges)
        m = np.diag(mass)
    k = lap + shift * m
    k = 0.5 * (k + k.T)
    bad = _check_positive(k)
    if bad is not None:
        raise AssemblyFailure("stiffness matrix is not positive definite", bad)
    split = IndexSplit(interior=domain.interior, boundary=sorted(domain.boundary))
    return FormPair(K=k, M=m, shift=float(shift), mass_mode=mass_mode), split


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def parse_mask(text):
    lines = [ln.rstrip("\r\n") for ln in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise InvalidArgument("mask file is empty")
    width = len(lines[0])
    rows = []
    for k, ln in enumerate(lines):
        if len(ln) != width:
            raise InvalidArgument(f"mask line {k + 1} has length {len(ln)}, expected {width}")
        bad = set(ln) - {"#", "."}
        if bad:
            raise InvalidArgument(f"mask line {k + 1} has invalid characters {sorted(bad)}")
        rows.append([ch == "#" for ch in ln])
    return np.array(rows, dtype=bool)


def read_mask(path):
    return parse_mask(Path(path).read_text())


def format_mask(mask):
    return "\n".join("".join("#" if x else "." for x in row) for row in np.asarray(mask)) + "\n"


def parse_graph(text):
    """``nodes N boundary i,j,...`` header followed by ``i j w`` lines."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidArgument("graph file is empty")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "nodes" or head[2] != "boundary":
        raise InvalidArgument("graph header must read 'nodes N boundary i,j,...'")
    try:
        n = int(head[1])
        boundary = [int(tok) for tok in head[3].split(",") if tok]
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise ValueError(ln)
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    except ValueError as exc:
        raise InvalidArgument(f"malformed graph file: {exc}") from None
    return build_graph(n, edges, boundary)


def read_graph(path):
    return parse_graph(Path(path).read_text())


def format_graph(domain):
    head = f"nodes {domain.node_count} boundary {','.join(str(b) for b in sorted(domain.boundary))}"
    body = [f"{i} {j} {w!r}" for i, j, w in domain.adjacency]
    return "\n".join([head, *body]) + "\n"
