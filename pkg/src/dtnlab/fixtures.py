"""Named test domains used by the verification suite, the CLI and the tests."""

import numpy as np

from .mesh import assemble, build_graph, build_grid, build_interval

P3_EDGES = ((0, 1, 1.0), (1, 2, 1.0))
TRIANGLE_EDGES = ((3, 4, 1.0), (3, 5, 1.0), (4, 5, 1.0))


def p3():
    """Path on three nodes, boundary = {2}."""
    return build_graph(3, P3_EDGES, {2})


def p3_triangle():
    """P3 plus a disjoint unit triangle that touches no boundary node."""
    return build_graph(6, P3_EDGES + TRIANGLE_EDGES, {2})


def interval(n=10, both_ends=True):
    return build_interval(n, 1.0 / (n - 1), both_ends=both_ends)


def square_grid(m):
    return build_grid(m, m)


def l_shape(m=10):
    """``m x m`` grid with the top-right quadrant removed."""
    mask = np.ones((m, m), dtype=bool)
    mask[: m // 2, m // 2:] = False
    return build_grid(m, m, mask=mask)


def random_graph(seed, n_max=40, n_min=4):
    """Seeded random weighted graph.

    A random spanning tree plus extra edges; about one fixture in five gets an
    extra component with no boundary node.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    free = 0
    if n >= 8 and rng.random() < 0.2:
        free = int(rng.integers(2, min(6, n // 2) + 1))
    main = n - free
    edges = {}

    def add(i, j):
        i, j = min(i, j), max(i, j)
        edges[(i, j)] = float(rng.uniform(0.5, 2.0))

    order = rng.permutation(main)
    for k in range(1, main):
        add(int(order[k]), int(order[rng.integers(0, k)]))
    for _ in range(int(rng.integers(0, 2 * main))):
        i, j = rng.choice(main, size=2, replace=False)
        add(int(i), int(j))
    for k in range(main + 1, n):
        add(k, int(rng.integers(main, k)))
    n_bnd = int(rng.integers(1, max(1, main // 3) + 1))
    bnd = set(int(b) for b in rng.choice(main, size=n_bnd, replace=False))
    return build_graph(n, [(i, j, w) for (i, j), w in sorted(edges.items())], bnd)


def standard_set():
    """The named fixtures every identity is exercised on."""
    return {
        "p3": p3(),
        "interval10": interval(10),
        "grid8": square_grid(8),
        "grid10": square_grid(10),
        "lshape10": l_shape(10),
        "p3_triangle": p3_triangle(),
    }


def assembled(domain, shift=1.0, mass_mode="identity"):
    return assemble(domain, shift=shift, mass_mode=mass_mode)
