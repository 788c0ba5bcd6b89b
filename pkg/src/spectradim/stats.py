"""Correlation utilities relating complexity scores to external metrics."""

import csv
from dataclasses import dataclass, field
import json
import math
from typing import List

import numpy as np
from scipy.stats import rankdata

from .errors import ParseError, UndefinedCorrelationError


@dataclass(eq=False)
class PairedSeries:
    """Per-record (complexity, metric) pairs with identifiers.

    ``dropped`` counts records discarded at load time for missing or
    non-finite values.
    """

    names: List[str]
    xs: np.ndarray
    ys: np.ndarray
    dropped: int = 0

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=np.float64)
        self.ys = np.asarray(self.ys, dtype=np.float64)
        if not (len(self.names) == len(self.xs) == len(self.ys)):
            raise ValueError("names, xs, ys must have equal length")
        if len(self.xs) < 2:
            raise ValueError("need at least 2 records")
        if not (np.all(np.isfinite(self.xs)) and np.all(np.isfinite(self.ys))):
            raise ValueError("non-finite values must be dropped at load")

    def __len__(self):
        return len(self.xs)


def load_paired_csv(stream) -> PairedSeries:
    """Read "name,complexity,metric" CSV (extra columns ignored).

    Rows with missing or non-finite numbers are dropped and counted.
    """
    reader = csv.DictReader(stream)
    required = {"name", "complexity", "metric"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ParseError(
            f"CSV header must contain {sorted(required)}, got {reader.fieldnames}"
        )
    names, xs, ys, dropped = [], [], [], 0
    for row in reader:
        try:
            x = float(row["complexity"])
            y = float(row["metric"])
        except (TypeError, ValueError):
            dropped += 1
            continue
        if not (math.isfinite(x) and math.isfinite(y)):
            dropped += 1
            continue
        names.append(row["name"])
        xs.append(x)
        ys.append(y)
    if len(xs) < 2:
        raise ParseError(f"need at least 2 valid rows, got {len(xs)}")
    return PairedSeries(names, xs, ys, dropped=dropped)


def spearman(series: PairedSeries) -> float:
    """Spearman rank correlation: Pearson on average-tie ranks."""
    rx = rankdata(series.xs)
    ry = rankdata(series.ys)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined: a series is constant")
    return float(np.dot(dx, dy) / math.sqrt(sxx * syy))


def _quantile_bins(values: np.ndarray, bins: int) -> np.ndarray:
    """Equal-frequency bin assignment (ties permitting)."""
    edges = np.quantile(values, np.linspace(0, 1, bins + 1))
    return np.searchsorted(edges[1:-1], values, side="right")


def mutual_information(series: PairedSeries, bins: int = None):
    """Plug-in mutual information (nats) over a 2-D quantile-binned histogram.

    Default bin count per axis is floor(sqrt(N)). Returns (mi, bins).
    """
    n = len(series)
    if bins is None:
        bins = max(2, int(math.isqrt(n)))
    if not 2 <= bins <= n:
        raise ValueError(f"bins must satisfy 2 <= bins <= N, got {bins} (N={n})")
    bx = _quantile_bins(series.xs, bins)
    by = _quantile_bins(series.ys, bins)
    joint = np.zeros((bins, bins))
    np.add.at(joint, (bx, by), 1.0)
    joint /= n
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    nz = joint > 0
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / np.outer(px, py)[nz])))
    return max(mi, 0.0), bins


def correlation_report(series: PairedSeries, bins: int = None) -> dict:
    """JSON-ready report combining both correlation measures."""
    mi, used_bins = mutual_information(series, bins)
    return {
        "n": len(series),
        "spearman": spearman(series),
        "mi": mi,
        "mi_units": "nats",
        "bins": used_bins,
        "dropped": series.dropped,
    }
