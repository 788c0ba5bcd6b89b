"""Figure rendering for the CLI report paths.

Everything here is optional sugar on top of the delimited/JSON outputs:
each helper renders one matplotlib figure to a file and returns the path.
"""

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (6.4, 4.2)
DPI = 150


def _save(fig, out_dir, name):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def spectrum_figure(spec, out_dir, stem):
    """Sorted eigenvalues against their normalized index."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    x = np.arange(1, len(spec.values) + 1) / spec.n
    ax.plot(x, spec.values, lw=1.0)
    ax.set_xlabel("normalized index k/n")
    ax.set_ylabel("eigenvalue")
    ax.set_title(f"{stem}: {spec.kind} spectrum (n={spec.n}, {spec.solver})")
    ax.grid(alpha=0.3)
    return _save(fig, out_dir, f"{stem}_spectrum.png")


def fit_figure(interp, estimate, out_dir, stem):
    """Log-log view of the resampled low spectrum with the fitted slope."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ok = np.isfinite(interp.values) & (interp.values > 0)
    ax.loglog(interp.grid[ok], interp.values[ok], ".", ms=3, label="resampled spectrum")
    window = ok & (interp.grid <= estimate.s) & (interp.values <= estimate.lambda_s)
    if window.any():
        xs = interp.grid[window]
        anchor = interp.values[window][-1]
        ax.loglog(
            xs,
            anchor * (xs / xs[-1]) ** estimate.slope,
            "-",
            lw=2,
            label=f"slope {estimate.slope:.3f}",
        )
    ax.axvline(estimate.s, color="gray", ls="--", lw=1, label=f"cutoff s={estimate.s:g}")
    d = "inf" if math.isinf(estimate.d_s) else f"{estimate.d_s:.3f}"
    ax.set_xlabel("x")
    ax.set_ylabel("lambda(x)")
    ax.set_title(f"{stem}: d_s = {d} (r^2 = {estimate.r_squared:.4f})")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    return _save(fig, out_dir, f"{stem}_fit.png")


def oracle_figure(curve, weyl_d_s, out_dir, stem):
    """Return-probability decay with the two dimension estimates."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    pos = curve.times > 0
    ax.loglog(curve.times[pos], curve.probabilities[pos], ".-", ms=4)
    w = "inf" if math.isinf(weyl_d_s) else f"{weyl_d_s:.3f}"
    ax.set_xlabel("t")
    ax.set_ylabel("return probability")
    ax.set_title(
        f"{stem}: heat-kernel fit {curve.fitted_dimension:.3f}, eigenvalue-growth {w}"
    )
    ax.grid(alpha=0.3, which="both")
    return _save(fig, out_dir, f"{stem}_oracle.png")


def batch_figure(rows, out_dir, stem="batch"):
    """Estimated dimension per graph for a batch run (finite values only)."""
    named = [
        (r["name"], float(r["d_s"]))
        for r in rows
        if r.get("d_s") not in ("", "inf", None) and not r.get("error")
    ]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if named:
        names, ds = zip(*named)
        ax.bar(range(len(ds)), ds)
        ax.set_xticks(range(len(ds)))
        ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("estimated dimension")
    ax.set_title(f"{stem}: {len(named)} estimates")
    ax.grid(alpha=0.3, axis="y")
    return _save(fig, out_dir, f"{stem}_dimensions.png")
