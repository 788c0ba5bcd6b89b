"""Graph parsing, canonicalization, components, and analytic fixtures.

The canonical graph form is a simple undirected graph: symmetric adjacency,
no self-loops, no duplicate edges, strictly positive weights, vertices
indexed 0..n-1.
"""

from dataclasses import dataclass, field
from functools import cached_property
import itertools

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .errors import ParseError, UnsupportedFormatError


@dataclass
class ParseDiagnostics:
    self_loops_dropped: int = 0
    duplicates_merged: int = 0


class Graph:
    """Immutable simple undirected graph in canonical form.

    Edges are stored once as (u, v) with u < v alongside positive weights.
    ``labels`` keeps the original vertex identifiers when the input was
    compacted; ``labels[i]`` is the original id of vertex i.
    """

    def __init__(self, n, u, v, w=None, labels=None, diagnostics=None):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if w is None:
            w = np.ones(len(u))
        w = np.asarray(w, dtype=np.float64)
        if not (len(u) == len(v) == len(w)):
            raise ValueError("edge arrays must have equal length")
        if len(u) and (u.min() < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("vertex index out of range")
        if np.any(u == v):
            raise ValueError("self-loops are not allowed in canonical form")
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        order = np.lexsort((hi, lo))
        lo, hi, w = lo[order], hi[order], w[order]
        if len(lo) > 1 and np.any((lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])):
            raise ValueError("duplicate edges are not allowed in canonical form")
        self.n = int(n)
        self.u = lo
        self.v = hi
        self.w = w
        self.labels = list(labels) if labels is not None else None
        self.diagnostics = diagnostics
        self.u.setflags(write=False)
        self.v.setflags(write=False)
        self.w.setflags(write=False)

    @property
    def num_edges(self):
        return len(self.u)

    @property
    def is_weighted(self):
        return bool(np.any(self.w != 1.0))

    @cached_property
    def adjacency(self):
        """Symmetric CSR adjacency matrix."""
        rows = np.concatenate([self.u, self.v])
        cols = np.concatenate([self.v, self.u])
        vals = np.concatenate([self.w, self.w])
        return csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))

    @cached_property
    def degrees(self):
        """Weighted degree of every vertex."""
        d = np.zeros(self.n)
        np.add.at(d, self.u, self.w)
        np.add.at(d, self.v, self.w)
        return d

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.w, other.w)
        )

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"

    def to_edge_list_text(self):
        """Canonical serialization: sorted "u v w" lines, u < v, 0-indexed."""
        lines = [
            f"{u} {v} {float(w)!r}\n" for u, v, w in zip(self.u, self.v, self.w)
        ]
        return "".join(lines)


@dataclass
class ComponentDecomposition:
    component_id: np.ndarray  # per-vertex component index
    sizes: np.ndarray  # per-component vertex counts
    largest: int  # index of the largest component

    @property
    def count(self):
        return len(self.sizes)


def _iter_lines(stream):
    if isinstance(stream, str):
        return stream.splitlines()
    return (line.rstrip("\n") for line in stream)


def _canonicalize_edges(n, us, vs, ws, labels=None):
    """Drop self-loops, merge duplicates (weights summed), symmetrize."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    ws = np.asarray(ws, dtype=np.float64)
    loops = us == vs
    n_loops = int(loops.sum())
    us, vs, ws = us[~loops], vs[~loops], ws[~loops]
    lo, hi = np.minimum(us, vs), np.maximum(us, vs)
    key = lo * n + hi
    order = np.argsort(key, kind="stable")
    key, lo, hi, ws = key[order], lo[order], hi[order], ws[order]
    uniq, start = np.unique(key, return_index=True)
    merged = len(key) - len(uniq)
    wsum = np.add.reduceat(ws, start) if len(key) else ws
    diag = ParseDiagnostics(self_loops_dropped=n_loops, duplicates_merged=merged)
    return Graph(n, lo[start], hi[start], wsum, labels=labels, diagnostics=diag)


def parse_edge_list(stream, zero_or_one_indexed="auto", weighted=False):
    """Parse whitespace-separated "u v [w]" lines into a canonical Graph.

    Lines starting with '#' or '%' are comments. Vertex ids are compacted
    to 0..n-1 in first-appearance order; original ids are kept as labels.
    Duplicate edges are merged (weights summed) and self-loops dropped.
    """
    ids = {}
    us, vs, ws = [], [], []
    raw_min = None
    for lineno, line in enumerate(_iter_lines(stream), start=1):
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError("expected at least two fields", line=lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-numeric vertex token in {fields[:2]}", line=lineno)
        if weighted:
            if len(fields) < 3:
                raise ParseError("weighted parse requires a third column", line=lineno)
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {fields[2]!r}", line=lineno)
            if not np.isfinite(w) or w <= 0:
                raise ParseError(f"non-positive weight {w}", line=lineno)
        else:
            w = 1.0
        raw_min = min(a, b) if raw_min is None else min(raw_min, a, b)
        for x in (a, b):
            if x not in ids:
                ids[x] = len(ids)
        us.append(ids[a])
        vs.append(ids[b])
        ws.append(w)
    if not us:
        raise ParseError("empty graph")
    offset = 0
    if zero_or_one_indexed == 1 or (zero_or_one_indexed == "auto" and raw_min >= 1):
        offset = 1
    labels = [orig - offset for orig in ids]
    return _canonicalize_edges(len(ids), us, vs, ws, labels=labels)


def parse_matrix_market(stream, weighted=False):
    """Parse a Matrix Market coordinate file into a canonical Graph.

    Supports pattern/real, symmetric/general. General matrices are
    symmetrized. Real entry values become weights only when ``weighted``;
    they must be strictly positive either way.
    """
    lines = iter(enumerate(_iter_lines(stream), start=1))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty graph")
    parts = header.strip().lower().split()
    if len(parts) != 5 or parts[0] != "%%matrixmarket" or parts[1] != "matrix":
        raise ParseError("missing MatrixMarket header", line=lineno)
    layout, kind, symmetry = parts[2], parts[3], parts[4]
    if layout != "coordinate":
        raise UnsupportedFormatError(f"unsupported layout {layout!r}", line=lineno)
    if kind not in ("pattern", "real", "integer"):
        raise UnsupportedFormatError(f"unsupported field type {kind!r}", line=lineno)
    if symmetry not in ("symmetric", "general"):
        raise UnsupportedFormatError(f"unsupported symmetry {symmetry!r}", line=lineno)

    dims = None
    us, vs, ws = [], [], []
    for lineno, line in lines:
        line = line.strip()
        if not line or line[0] == "%":
            continue
        fields = line.split()
        if dims is None:
            if len(fields) != 3:
                raise ParseError("expected dimension line 'rows cols nnz'", line=lineno)
            try:
                rows, cols, nnz = (int(f) for f in fields)
            except ValueError:
                raise ParseError("non-numeric dimension line", line=lineno)
            if rows != cols:
                raise ParseError(f"matrix is not square ({rows}x{cols})", line=lineno)
            dims = (rows, nnz)
            continue
        if len(fields) < 2:
            raise ParseError("expected entry 'i j [value]'", line=lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("non-numeric entry indices", line=lineno)
        if not (1 <= i <= dims[0] and 1 <= j <= dims[0]):
            raise ParseError(
                f"entry ({i},{j}) outside declared dimension {dims[0]}", line=lineno
            )
        w = 1.0
        if kind in ("real", "integer"):
            if len(fields) < 3:
                raise ParseError("real matrix entry is missing its value", line=lineno)
            try:
                val = float(fields[2])
            except ValueError:
                raise ParseError(f"non-numeric value {fields[2]!r}", line=lineno)
            if not np.isfinite(val) or val <= 0:
                raise ParseError(f"non-positive weight {val}", line=lineno)
            if weighted:
                w = val
        us.append(i - 1)
        vs.append(j - 1)
        ws.append(w)
    if dims is None:
        raise ParseError("empty graph")
    if len(us) != dims[1]:
        raise ParseError(
            f"dimension line declares {dims[1]} entries, found {len(us)}"
        )
    if not us:
        raise ParseError("empty graph")
    return _canonicalize_edges(dims[0], us, vs, ws)


def connected_components(g):
    """Undirected connectivity with deterministic component numbering.

    Components are numbered by their smallest contained vertex index;
    ties for the largest component break toward the lower index.
    """
    ncomp, raw = csgraph.connected_components(g.adjacency, directed=False)
    # renumber by smallest contained vertex
    first_vertex = np.full(ncomp, g.n, dtype=np.int64)
    np.minimum.at(first_vertex, raw, np.arange(g.n))
    rank = np.empty(ncomp, dtype=np.int64)
    rank[np.argsort(first_vertex)] = np.arange(ncomp)
    component_id = rank[raw]
    sizes = np.bincount(component_id, minlength=ncomp)
    largest = int(np.argmax(sizes))  # argmax takes the lowest index on ties
    return ComponentDecomposition(component_id, sizes, largest)


def largest_connected_component(g):
    """Induced subgraph on the largest component, vertices re-indexed."""
    comp = connected_components(g)
    if comp.count == 1:
        return g
    keep = comp.component_id == comp.largest
    new_index = np.cumsum(keep) - 1
    mask = keep[g.u]  # edges never cross components
    old_labels = g.labels if g.labels is not None else range(g.n)
    labels = [lbl for lbl, k in zip(old_labels, keep) if k]
    return Graph(
        int(keep.sum()),
        new_index[g.u[mask]],
        new_index[g.v[mask]],
        g.w[mask],
        labels=labels,
    )


def generate_lattice(dims, periodic=False):
    """Grid graph over the Cartesian product of ranges, row-major indexing.

    ``periodic`` wraps every axis (torus); wrapped axes must have length
    at least 3, otherwise the wrap edge would duplicate an existing one.
    """
    dims = list(dims)
    if not 1 <= len(dims) <= 4:
        raise ValueError("number of lattice axes must be between 1 and 4")
    if any(d < 1 for d in dims):
        raise ValueError("lattice axis lengths must be positive")
    if periodic and any(d < 3 for d in dims):
        raise ValueError("periodic axes must have length >= 3")
    strides = np.ones(len(dims), dtype=np.int64)
    for a in range(len(dims) - 2, -1, -1):
        strides[a] = strides[a + 1] * dims[a + 1]
    us, vs = [], []
    for coords in itertools.product(*(range(d) for d in dims)):
        i = int(np.dot(coords, strides))
        for axis, d in enumerate(dims):
            c = coords[axis]
            if c + 1 < d:
                us.append(i)
                vs.append(i + strides[axis])
            elif periodic and d >= 3:
                us.append(i)
                vs.append(i - (d - 1) * strides[axis])
    n = int(np.prod(dims))
    return Graph(n, us, vs)


def generate_cycle(n):
    """Cycle graph C_n (periodic 1-D lattice)."""
    return generate_lattice([n], periodic=True)


def generate_complete(n):
    """Complete graph K_n."""
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    pairs = np.array(list(itertools.combinations(range(n), 2)), dtype=np.int64)
    return Graph(n, pairs[:, 0], pairs[:, 1])


def permute_vertices(g, perm):
    """Rename vertex i to perm[i]; the result is isomorphic to g."""
    perm = np.asarray(perm, dtype=np.int64)
    if len(perm) != g.n or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValueError("perm is not a bijection on 0..n-1")
    labels = None
    if g.labels is not None:
        labels = [None] * g.n
        for i, lbl in enumerate(g.labels):
            labels[perm[i]] = lbl
    return Graph(g.n, perm[g.u], perm[g.v], g.w, labels=labels)
