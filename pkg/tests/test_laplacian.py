import numpy as np
import pytest

from spectradim import (
    Graph,
    LaplacianOperator,
    degrees,
    dense_matrix,
    generate_complete,
    parse_edge_list,
)

from conftest import random_graph


def test_degrees_triangle():
    assert degrees(generate_complete(3)).tolist() == [2, 2, 2]


def test_degrees_path():
    assert degrees(parse_edge_list("0 1\n1 2\n")).tolist() == [1, 2, 1]


def test_degrees_weighted_edge():
    g = Graph(2, [0], [1], [2.5])
    assert degrees(g).tolist() == [2.5, 2.5]


def test_apply_zero_vector():
    op = LaplacianOperator(generate_complete(4))
    assert np.array_equal(op.apply(np.zeros(4)), np.zeros(4))


def test_apply_constant_on_single_edge():
    op = LaplacianOperator(generate_complete(2))
    assert np.allclose(op.apply(np.ones(2)), 0.0, atol=1e-15)


def test_apply_antisymmetric_on_single_edge():
    # dense L of a single edge is [[1,-1],[-1,1]]
    op = LaplacianOperator(generate_complete(2))
    assert np.allclose(op.apply(np.array([1.0, -1.0])), [2.0, -2.0])


def test_apply_length_mismatch():
    op = LaplacianOperator(generate_complete(3))
    with pytest.raises(ValueError):
        op.apply(np.zeros(4))


def test_dense_single_edge():
    L = dense_matrix(generate_complete(2))
    assert np.allclose(L, [[1, -1], [-1, 1]])


def test_dense_triangle():
    L = dense_matrix(generate_complete(3))
    assert np.allclose(np.diag(L), 1.0)
    off = L[~np.eye(3, dtype=bool)]
    assert np.allclose(off, -0.5)  # -1/sqrt(2*2)


def test_dense_path():
    L = dense_matrix(parse_edge_list("0 1\n1 2\n"))
    assert L[0, 1] == pytest.approx(-1 / np.sqrt(2), abs=1e-15)


def test_dense_refuses_large():
    with pytest.raises(ValueError, match="dense limit"):
        dense_matrix(generate_complete(20), max_n=10)


def test_isolated_vertex_identity_row():
    g = Graph(3, [0], [1])
    L = dense_matrix(g)
    assert np.array_equal(L[2], [0, 0, 1])
    op = LaplacianOperator(g)
    x = np.array([0.0, 0.0, 5.0])
    assert op.apply(x)[2] == 5.0


def test_apply_matches_dense_random():
    rng = np.random.default_rng(0)
    for trial in range(100):
        n = int(rng.integers(5, 200))
        g = random_graph(n, int(rng.integers(n // 2, 2 * n)), trial)
        L = dense_matrix(g)
        op = LaplacianOperator(g)
        x = rng.standard_normal(n)
        ref = L @ x
        got = op.apply(x)
        denom = max(np.linalg.norm(ref), 1.0)
        assert np.linalg.norm(got - ref) <= 1e-12 * denom


def test_symmetry_random_vectors():
    rng = np.random.default_rng(1)
    g = random_graph(120, 300, 1)
    op = LaplacianOperator(g)
    for _ in range(50):
        x, y = rng.standard_normal((2, g.n))
        lhs = np.dot(op.apply(x), y)
        rhs = np.dot(x, op.apply(y))
        assert abs(lhs - rhs) <= 1e-12 * np.linalg.norm(x) * np.linalg.norm(y)


def test_rayleigh_quotient_bounded():
    rng = np.random.default_rng(2)
    g = random_graph(150, 400, 2)
    op = LaplacianOperator(g)
    for _ in range(50):
        x = rng.standard_normal(g.n)
        q = np.dot(x, op.apply(x)) / np.dot(x, x)
        assert -1e-12 <= q <= 2 + 1e-12


def test_sqrt_degree_nullvector():
    for seed in range(5):
        g = random_graph(80, 200, seed)
        op = LaplacianOperator(g)
        v = np.sqrt(g.degrees)
        assert np.linalg.norm(op.apply(v)) <= 1e-12 * max(np.linalg.norm(v), 1.0)
