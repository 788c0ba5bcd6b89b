import numpy as np
import pytest

from spectradim import Graph, generate_cycle


def random_connected_graph(n, extra_edges, seed):
    """Seeded random graph: spanning cycle plus random chords (connected)."""
    rng = np.random.default_rng(seed)
    base = generate_cycle(n)
    edges = set(zip(base.u.tolist(), base.v.tolist()))
    while len(edges) < n + extra_edges:
        a, b = (int(x) for x in rng.integers(0, n, 2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    us, vs = zip(*sorted(edges))
    return Graph(n, us, vs)


def random_graph(n, num_edges, seed):
    """Seeded random graph, possibly disconnected, no isolated-vertex pruning."""
    rng = np.random.default_rng(seed)
    edges = set()
    while len(edges) < num_edges:
        a, b = (int(x) for x in rng.integers(0, n, 2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    us, vs = zip(*sorted(edges))
    return Graph(n, us, vs)


def random_disconnected_graph(seed):
    """Seeded union of 2-4 connected components, every vertex has an edge.

    Isolated vertices carry eigenvalue 1 under the identity-row convention,
    so the zero-multiplicity-equals-component-count invariant is stated on
    graphs whose components all contain at least one edge.
    """
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 5))
    us, vs, offset = [], [], 0
    for _ in range(k):
        n = int(rng.integers(3, 40))
        part = random_connected_graph(n, int(rng.integers(0, n)), seed + offset)
        us.append(part.u + offset)
        vs.append(part.v + offset)
        offset += n
    return Graph(offset, np.concatenate(us), np.concatenate(vs))


def cycle_eigenvalues(n):
    """Analytic normalized-Laplacian spectrum of C_n: 1 - cos(2 pi k / n)."""
    return np.sort(1.0 - np.cos(2.0 * np.pi * np.arange(n) / n))


def torus_eigenvalues(dims):
    """Analytic spectrum of a periodic lattice: 1 - mean_a cos(2 pi k_a / d_a)."""
    grids = np.meshgrid(
        *[2.0 * np.pi * np.arange(d) / d for d in dims], indexing="ij"
    )
    lam = 1.0 - sum(np.cos(t) for t in grids) / len(dims)
    return np.sort(lam.ravel())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
