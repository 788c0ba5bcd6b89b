"""Eigenvalues of the normalized Laplacian: dense and iterative paths."""

from dataclasses import dataclass, field
import json
import math
import os
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh
from scipy.sparse.linalg import ArpackNoConvergence

from .errors import SolverError
from .graph import Graph
from .laplacian import LaplacianOperator, dense_matrix

DEFAULT_SEED = 42


def _seed_fallback():
    env = os.environ.get("SPECTRADIM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


@dataclass(frozen=True)
class SpectrumConfig:
    """Knobs for the spectrum dispatcher and the iterative solver."""

    dense_threshold: int = 3000
    target_fraction: float = 0.02
    min_partial: int = 64
    tol: float = 1e-8
    max_iter: Optional[int] = None
    seed: int = field(default_factory=_seed_fallback)

    def __post_init__(self):
        if not 0 < self.target_fraction <= 1:
            raise ValueError("target_fraction must be in (0, 1]")
        if self.dense_threshold < 2:
            raise ValueError("dense_threshold must be >= 2")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues of the normalized Laplacian with provenance."""

    values: np.ndarray  # sorted ascending
    n: int  # order of the underlying operator
    kind: str  # "full" | "partial"
    solver: str  # "dense" | "iterative"
    m: Optional[int] = None  # number of values when partial
    residual_bound: Optional[float] = None  # iterative only
    seed: Optional[int] = None  # iterative only

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        self.values.setflags(write=False)

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "kind": self.kind,
            "m": self.m,
            "solver": self.solver,
            "seed": self.seed,
            "residual_bound": self.residual_bound,
            "values": self.values.tolist(),
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        d = json.loads(text)
        return cls(
            values=np.asarray(d["values"]),
            n=d["n"],
            kind=d["kind"],
            solver=d["solver"],
            m=d.get("m"),
            residual_bound=d.get("residual_bound"),
            seed=d.get("seed"),
        )

    def to_text(self) -> str:
        """One eigenvalue per line, for external plotting."""
        return "".join(f"{float(v)!r}\n" for v in self.values)


def full_spectrum_dense(g: Graph, cfg: Optional[SpectrumConfig] = None) -> Spectrum:
    """All n eigenvalues via a dense symmetric eigensolver."""
    cfg = cfg if cfg is not None else SpectrumConfig()
    if g.n > cfg.dense_threshold:
        raise ValueError(
            f"n={g.n} exceeds dense_threshold {cfg.dense_threshold}; "
            "use partial_spectrum_iterative"
        )
    L = dense_matrix(g, max_n=cfg.dense_threshold)
    values = np.linalg.eigvalsh(L)  # sorted ascending
    return Spectrum(values=values, n=g.n, kind="full", solver="dense")


def partial_spectrum_iterative(
    g: Graph, m: int, cfg: Optional[SpectrumConfig] = None
) -> Spectrum:
    """The m smallest eigenvalues via restarted Lanczos (ARPACK).

    Works on the shifted operator 2I - L whose largest eigenvalues are the
    smallest of L, so the solve stays matvec-only (no factorization). The
    start vector is seeded for reproducibility, and every returned Ritz
    pair is verified against ``cfg.tol`` through its explicit residual.
    """
    cfg = cfg if cfg is not None else SpectrumConfig()
    if not 1 <= m < g.n:
        raise ValueError(f"m must satisfy 1 <= m < n, got m={m}, n={g.n}")
    op = LaplacianOperator(g)
    lin = LinearOperator((g.n, g.n), matvec=op.apply_shifted, dtype=np.float64)
    v0 = np.random.default_rng(cfg.seed).standard_normal(g.n)
    # generous subspace: degenerate clusters (tori have multiplicities up
    # to ~50) are missed with the ARPACK default ncv
    ncv = min(g.n, max(4 * m, m + 64))
    maxiter = cfg.max_iter if cfg.max_iter is not None else 100 * g.n
    try:
        w, vecs = eigsh(
            lin, k=m, which="LA", v0=v0, ncv=ncv, maxiter=maxiter, tol=0
        )
    except ArpackNoConvergence as exc:
        partial = np.sort(2.0 - np.asarray(exc.eigenvalues)) if len(exc.eigenvalues) else None
        raise SolverError(
            f"iterative solver did not converge within {maxiter} iterations "
            f"({len(exc.eigenvalues)}/{m} eigenpairs)",
            partial_values=partial,
        ) from exc
    values = 2.0 - w
    residuals = np.linalg.norm(op.apply(vecs) - vecs * values, axis=0)
    bound = float(residuals.max())
    if bound > cfg.tol:
        raise SolverError(
            f"eigenpair residual {bound:.3e} exceeds tolerance {cfg.tol:.3e}",
            partial_values=np.sort(values),
        )
    order = np.argsort(values)
    return Spectrum(
        values=values[order],
        n=g.n,
        kind="partial",
        solver="iterative",
        m=m,
        residual_bound=bound,
        seed=cfg.seed,
    )


def spectrum(g: Graph, cfg: Optional[SpectrumConfig] = None) -> Spectrum:
    """Dispatch: dense below the threshold, else the lower partial spectrum.

    The partial size covers twice the default fit window (target_fraction
    0.02 against the s = 1/100 cutoff) with a floor of ``min_partial``.
    """
    cfg = cfg if cfg is not None else SpectrumConfig()
    if g.n <= cfg.dense_threshold:
        return full_spectrum_dense(g, cfg)
    m = max(cfg.min_partial, math.ceil(cfg.target_fraction * g.n))
    m = min(m, g.n - 1)
    return partial_spectrum_iterative(g, m, cfg)
