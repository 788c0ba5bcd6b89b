"""Spectral dimension estimation from eigenvalue growth, plus the
heat-kernel return-probability oracle used to validate it.

The estimator resamples the sorted spectrum onto a fixed grid, then fits
the log-log slope of the initial part (below the cutoff at x = s) and
inverts it: counting growth rho(lambda) ~ lambda^(d/2) is equivalent to
lambda(x) ~ x^(2/d), so d = 2 / slope.
"""

from dataclasses import dataclass
import json
import math
from typing import Optional

import numpy as np

from .errors import ContaminationError, InsufficientSpectrumError, NonMonotoneFitError
from .graph import Graph, connected_components, largest_connected_component
from .spectrum import Spectrum, SpectrumConfig, spectrum

DEFAULT_M = 2304
DEFAULT_S = 0.01
EPS_ZERO = 1e-9
FIT_EPS = 1e-13
SLOPE_FLOOR = 1e-6
MIN_FIT_POINTS = 5

#: Distinguished result for flat spectra (e.g. complete graphs).
INFINITE = math.inf


@dataclass(frozen=True, eq=False)
class InterpolatedSpectrum:
    """Fixed-size resampling of the sorted spectrum on the grid j/M.

    ``values`` holds lambda(j/M); grid points beyond the coverage of a
    partial spectrum are NaN. The original interpolation knots are kept so
    lambda(x) can be evaluated at off-grid points such as the cutoff s.
    """

    grid: np.ndarray
    values: np.ndarray
    M: int
    n: int
    source_kind: str  # "full" | "partial"
    knot_x: Optional[np.ndarray] = None
    knot_y: Optional[np.ndarray] = None

    def value_at(self, x: float) -> float:
        """Evaluate the interpolation lambda(x), clamping left of 1/n."""
        if self.knot_x is not None:
            return float(np.interp(x, self.knot_x, self.knot_y, left=self.knot_y[0]))
        return float(np.interp(x, self.grid, self.values, left=self.values[0]))

    @property
    def coverage(self) -> float:
        """Largest x for which lambda(x) is defined (m/n for partial)."""
        if self.knot_x is not None:
            return float(self.knot_x[-1])
        return float(self.grid[-1])


@dataclass(frozen=True, eq=False)
class DimensionEstimate:
    """Fitted spectral dimension with fit diagnostics and provenance."""

    d_s: float  # positive real or INFINITE
    slope: float
    r_squared: float
    points_used: int
    s: float
    lambda_s: float
    M: int
    n: Optional[int] = None
    solver: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "d_s": "inf" if math.isinf(self.d_s) else self.d_s,
            "slope": self.slope,
            "r_squared": self.r_squared,
            "points_used": self.points_used,
            "s": self.s,
            "lambda_s": self.lambda_s,
            "M": self.M,
            "n": self.n,
            "solver": self.solver,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True, eq=False)
class ReturnProbabilityCurve:
    """Average heat-kernel return probability over a time grid.

    pi(t) = (1/n) sum_k exp(-lambda_k t); the fitted dimension comes from
    the log-log decay of pi(t) - 1/n over the mixing window, the finite
    graph's stand-in for the infinite-graph power-law regime.
    """

    times: np.ndarray
    probabilities: np.ndarray
    fitted_dimension: float
    fit_window: tuple

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "probabilities": self.probabilities.tolist(),
            "fitted_dimension": self.fitted_dimension,
            "fit_window": list(self.fit_window),
        }


def interpolate_spectrum(spec: Spectrum, M: int = DEFAULT_M) -> InterpolatedSpectrum:
    """Resample the sorted spectrum onto the fixed grid x_j = j/M.

    Knots sit at (k/n, lambda_k) for k = 1..len(values); values left of
    1/n clamp to lambda_1. For a partial spectrum, grid points beyond m/n
    are NaN (the interpolation is undefined there).
    """
    if M < 16:
        raise ValueError(f"M must be >= 16, got {M}")
    vals = spec.values
    if len(vals) == 0:
        raise ValueError("empty spectrum")
    knot_x = np.arange(1, len(vals) + 1) / spec.n
    grid = np.arange(1, M + 1) / M
    values = np.interp(grid, knot_x, vals, left=vals[0], right=np.nan)
    # np.interp right= handles x > knot_x[-1] except exact endpoint; be explicit
    values[grid > knot_x[-1]] = np.nan
    return InterpolatedSpectrum(
        grid=grid,
        values=values,
        M=M,
        n=spec.n,
        source_kind=spec.kind,
        knot_x=knot_x,
        knot_y=np.asarray(vals),
    )


def _ols_loglog(x, y):
    """OLS of log y on log x; returns (slope, r_squared)."""
    lx, ly = np.log(x), np.log(y)
    lx_c = lx - lx.mean()
    slope = float(np.dot(lx_c, ly) / np.dot(lx_c, lx_c))
    intercept = ly.mean() - slope * lx.mean()
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.dot(ly - ly.mean(), ly - ly.mean()))
    ss_res = float(np.dot(resid, resid))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return slope, min(max(r2, 0.0), 1.0)


def estimate_dimension(
    interp: InterpolatedSpectrum,
    s: float = DEFAULT_S,
    eps_zero: float = FIT_EPS,
    slope_floor: float = SLOPE_FLOOR,
    min_fit_points: int = MIN_FIT_POINTS,
) -> DimensionEstimate:
    """Fit the low-spectrum growth exponent and invert it to a dimension.

    Grid points enter the fit when x_j <= s, the value is above
    ``eps_zero`` (log of the zero eigenvalue is undefined), and the value
    is at most lambda(s); the conjunction is the conservative reading for
    plateaued spectra. Slopes at or below ``slope_floor`` map to INFINITE.
    """
    if not 0 < s < 1:
        raise ValueError(f"s must be in (0, 1), got {s}")
    if interp.coverage < s:
        raise InsufficientSpectrumError(
            f"interpolation covers x <= {interp.coverage:.4g} < s = {s:.4g}; "
            "compute more of the low spectrum"
        )
    lam_s = interp.value_at(s)
    grid, vals = interp.grid, interp.values
    if lam_s <= eps_zero:
        # lambda(x) is identically ~0 through the whole window: a flat
        # spectrum (complete graphs, star-like cores), i.e. zero slope
        window = int(np.sum(grid <= s))
        return DimensionEstimate(
            d_s=INFINITE,
            slope=0.0,
            r_squared=1.0,
            points_used=window,
            s=s,
            lambda_s=lam_s,
            M=interp.M,
            n=interp.n,
            solver=None,
        )
    mask = (
        (grid <= s)
        & np.isfinite(vals)
        & (vals > eps_zero)
        & (vals <= lam_s)
    )
    used = int(mask.sum())
    if used < min_fit_points:
        raise InsufficientSpectrumError(
            f"only {used} eligible fit points below lambda(s) "
            f"(need {min_fit_points}); M too small, s too small, or the "
            "spectrum is degenerate"
        )
    slope, r2 = _ols_loglog(grid[mask], vals[mask])
    if slope < 0:
        raise NonMonotoneFitError(
            f"fitted slope {slope:.3e} is negative on nondecreasing input"
        )
    d_s = INFINITE if slope <= slope_floor else 2.0 / slope
    return DimensionEstimate(
        d_s=d_s,
        slope=slope,
        r_squared=r2,
        points_used=used,
        s=s,
        lambda_s=lam_s,
        M=interp.M,
        n=interp.n,
        solver=None,
    )


def return_probability_curve(
    spec: Spectrum,
    t_grid=None,
    points: int = 64,
) -> ReturnProbabilityCurve:
    """Heat-kernel average return probability and its fitted decay exponent.

    Requires a full spectrum (the trace needs every eigenvalue). The fit
    window is [1/lambda_max, 1/lambda_2]: between the shortest timescale
    and the mixing time set by the spectral gap. The stationary term 1/n
    is subtracted before fitting so the finite-size saturation does not
    flatten the slope.
    """
    if spec.kind != "full":
        raise ValueError("oracle requires full spectrum")
    vals = spec.values
    nonzero = vals[vals > EPS_ZERO]
    if len(nonzero) == 0:
        raise ValueError("spectrum has no nonzero eigenvalues; oracle undefined")
    lam2, lam_max = float(nonzero[0]), float(vals[-1])
    t_lo, t_hi = 1.0 / lam_max, 1.0 / lam2
    fit_t = np.geomspace(t_lo, t_hi, points)
    if t_grid is None:
        t_grid = fit_t
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if np.any(t_grid < 0):
        raise ValueError("times must be nonnegative")

    def pi(ts):
        return np.exp(-np.outer(ts, vals)).mean(axis=1)

    probs = pi(t_grid)
    excess = pi(fit_t) - 1.0 / spec.n
    keep = excess > 0
    if t_lo >= t_hi or len(np.unique(fit_t[keep])) < 2:
        # degenerate window: lambda_2 == lambda_max leaves no decay to fit
        slope = math.nan
    else:
        slope, _ = _ols_loglog(fit_t[keep], excess[keep])
    return ReturnProbabilityCurve(
        times=t_grid,
        probabilities=probs,
        fitted_dimension=-2.0 * slope,
        fit_window=(t_lo, t_hi),
    )


def estimate_graph_dimension(
    g: Graph,
    M: int = DEFAULT_M,
    s: float = DEFAULT_S,
    config: Optional[SpectrumConfig] = None,
    use_lcc: bool = True,
) -> DimensionEstimate:
    """End-to-end pipeline: (LCC) -> spectrum -> interpolation -> slope fit."""
    if use_lcc:
        g = largest_connected_component(g)
    else:
        ncomp = connected_components(g).count
        zeros_in_window = sum(1 for k in range(1, ncomp + 1) if k / g.n <= s)
        if zeros_in_window > 1:
            raise ContaminationError(
                f"zero-eigenvalue contamination: {ncomp} components put "
                f"{zeros_in_window} zero eigenvalues inside the fit window; "
                "extract the largest component or raise s"
            )
    spec = spectrum(g, config)
    interp = interpolate_spectrum(spec, M)
    est = estimate_dimension(interp, s)
    return DimensionEstimate(
        d_s=est.d_s,
        slope=est.slope,
        r_squared=est.r_squared,
        points_used=est.points_used,
        s=est.s,
        lambda_s=est.lambda_s,
        M=est.M,
        n=g.n,
        solver=spec.solver,
    )
