"""Symmetric normalized Laplacian: dense form and matrix-free operator."""

import numpy as np

from .graph import Graph


def degrees(g: Graph) -> np.ndarray:
    """Weighted degree of every vertex (sum of incident edge weights)."""
    return g.degrees


class LaplacianOperator:
    """Matrix-free I - D^{-1/2} A D^{-1/2} for an immutable graph.

    Isolated vertices get a zero D^{-1/2} entry, so their Laplacian row is
    the identity row and the operator stays total.
    """

    def __init__(self, g: Graph):
        self.graph = g
        d = g.degrees
        inv_sqrt = np.zeros(g.n)
        nz = d > 0
        inv_sqrt[nz] = 1.0 / np.sqrt(d[nz])
        self.inv_sqrt_deg = inv_sqrt
        self._adj = g.adjacency

    @property
    def shape(self):
        return (self.graph.n, self.graph.n)

    def apply(self, x):
        """Return (I - D^{-1/2} A D^{-1/2}) x."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.graph.n:
            raise ValueError(f"vector length {x.shape[0]} != n {self.graph.n}")
        s = self.inv_sqrt_deg if x.ndim == 1 else self.inv_sqrt_deg[:, None]
        return x - s * (self._adj @ (s * x))

    def apply_shifted(self, x):
        """Return (2I - L) x; its largest eigenvalues are L's smallest."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.graph.n:
            raise ValueError(f"vector length {x.shape[0]} != n {self.graph.n}")
        s = self.inv_sqrt_deg if x.ndim == 1 else self.inv_sqrt_deg[:, None]
        return x + s * (self._adj @ (s * x))

    __call__ = apply


def dense_matrix(g: Graph, max_n: int = 3000) -> np.ndarray:
    """Explicit symmetric normalized Laplacian.

    Refuses graphs above ``max_n`` to guard against accidental O(n^2)
    memory blowups; use the matrix-free operator instead.
    """
    if g.n > max_n:
        raise ValueError(
            f"n={g.n} exceeds dense limit {max_n}; use LaplacianOperator"
        )
    op = LaplacianOperator(g)
    s = op.inv_sqrt_deg
    L = np.eye(g.n)
    if g.num_edges:
        off = -g.w * s[g.u] * s[g.v]
        L[g.u, g.v] = off
        L[g.v, g.u] = off
    return L
