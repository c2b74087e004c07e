"""
Multifractal Analysis Module

This module estimates the generalized (Renyi) fractal dimensions of the value
distribution of a time series:
- Probability histograms of the sample values at resolution dV
- Renyi entropy E_q of a histogram, in bits
- Generalized dimensions N_q as the scaling of E_q with resolution
- The full q spectrum with its N_(+inf) and N_(-inf) extremes

Resolutions are expressed relative to the series range, so the scaling
variable is x = log2(range / dV), which is log2(1 / dV) up to a constant.
At x = 0 there is a single bin and every E_q vanishes.

By default N_q is the least-squares slope of E_q against x through that
single-bin point. Because E_q is non-increasing in q at every resolution and
the regression weights x are non-negative, the spectrum is then
non-increasing in q for every input. Its fit quality is the uncentred R^2.

With anchored=False N_q is the ordinary least-squares slope with an
intercept and the centred R^2. That estimate converges to the limiting
dimension as the series grows, but it carries no ordering guarantee: on
Gaussian-tailed samples the rarest bin holds a single sample from a few
octaves on, so E_q for negative q stops growing near log2(n) while E_q for
positive q keeps rising, and the spectrum can increase with q.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from .errors import ConfigurationError, DomainError
from .response_model import hurst_from_dimension
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

# |q - 1| below this uses the Shannon form
SHANNON_TOL = 1e-9

DEFAULT_LADDER_DEPTH = 8
LADDER_START = 3
MIN_RESOLUTIONS = 5
MIN_OCTAVES = 2.0

Resolutions = Union[None, int, Sequence[float]]


@dataclass(frozen=True, eq=False)
class ProbabilityHistogram:
    """
    Occupation probabilities of equal-width value bins.

    Bin i covers [v_min + i*dV, v_min + (i + 1)*dV); the last bin also holds
    v_max.

    Attributes:
        bin_count (int): Number of bins N = max(1, ceil((v_max - v_min) / dV))
        resolution (float): Bin width dV in microvolts
        v_min (float): Smallest sample value
        v_max (float): Largest sample value
        probabilities (np.ndarray): Fraction of samples per bin, summing to 1
    """

    bin_count: int
    resolution: float
    v_min: float
    v_max: float
    probabilities: np.ndarray

    @property
    def edges(self) -> np.ndarray:
        return self.v_min + self.resolution * np.arange(self.bin_count + 1)

    @property
    def occupied(self) -> np.ndarray:
        """Probabilities of the non-empty bins."""
        return self.probabilities[self.probabilities > 0]

    @property
    def relative_resolution(self) -> float:
        """dV as a fraction of the value range (1 for a constant series)."""
        span = self.v_max - self.v_min
        return 1.0 if span == 0 else min(1.0, self.resolution / span)


def _finite_values(ts: TimeSeries) -> np.ndarray:
    values = ts.values[np.isfinite(ts.values)]
    if values.size == 0:
        raise DomainError("Series has no finite samples")
    return values


def build_histogram(ts: TimeSeries, delta_v: float) -> ProbabilityHistogram:
    """
    Histogram of the sample values at resolution delta_v.

    Bins are anchored at the smallest value, so the histogram is invariant
    under a shift of the whole series. For a uniformly sampled series the
    sample fractions equal the fractions of time spent in each bin.

    Args:
        ts: The series
        delta_v: Bin width in microvolts

    Returns:
        ProbabilityHistogram: The occupation probabilities

    Raises:
        DomainError: If delta_v is not positive

    Examples:
        >>> h = build_histogram(TimeSeries(np.array([0.0, 1.0, 0.0, 1.0]), 1.0), 0.5)
        >>> h.probabilities.tolist()
        [0.5, 0.5]
    """
    if not (np.isfinite(delta_v) and delta_v > 0):
        raise DomainError(f"Resolution must be positive, got {delta_v}")
    values = _finite_values(ts)
    v_min, v_max = float(values.min()), float(values.max())
    bins = max(1, int(math.ceil((v_max - v_min) / delta_v)))

    index = np.minimum(((values - v_min) / delta_v).astype(np.int64), bins - 1)
    counts = np.bincount(index, minlength=bins)
    return ProbabilityHistogram(bins, float(delta_v), v_min, v_max, counts / values.size)


def renyi_entropy(h: ProbabilityHistogram, q: float) -> float:
    """
    Renyi entropy of order q in bits, over occupied bins only.

    E_q = log2(sum w_i^q) / (1 - q), and the Shannon entropy
    -sum w_i log2 w_i when |q - 1| < 1e-9.

    Args:
        h: The histogram
        q: Moment order

    Returns:
        float: Entropy in bits

    Examples:
        >>> h = ProbabilityHistogram(8, 1.0, 0.0, 8.0, np.full(8, 0.125))
        >>> renyi_entropy(h, 2.0)
        3.0
    """
    w = h.occupied
    if abs(q - 1.0) < SHANNON_TOL:
        return float(-np.sum(w * np.log2(w)))
    log_sum = logsumexp(q * np.log(w)) / math.log(2.0)
    return float(log_sum / (1.0 - q))


def default_resolutions(ts: TimeSeries, depth: int = DEFAULT_LADDER_DEPTH) -> List[float]:
    """
    Dyadic resolution ladder range/8, range/16, ... with the given depth.

    Returns an empty list for a constant series.
    """
    if depth < 1:
        raise ConfigurationError(f"resolution ladder depth must be positive, got {depth}")
    values = _finite_values(ts)
    span = float(values.max() - values.min())
    if span == 0:
        return []
    return [span / 2.0 ** k for k in range(LADDER_START, LADDER_START + depth)]


def _resolve_ladder(ts: TimeSeries, resolutions: Resolutions) -> List[float]:
    if resolutions is None:
        return default_resolutions(ts)
    if isinstance(resolutions, (int, np.integer)):
        return default_resolutions(ts, int(resolutions))
    ladder = [float(r) for r in resolutions]
    for r in ladder:
        if not (math.isfinite(r) and r > 0):
            raise DomainError(f"Resolution must be positive, got {r}")
    return ladder


def _check_ladder(ladder: Sequence[float]) -> None:
    if len(ladder) < MIN_RESOLUTIONS:
        raise ConfigurationError(
            f"At least {MIN_RESOLUTIONS} resolutions are needed, got {len(ladder)}"
        )
    octaves = math.log2(max(ladder) / min(ladder))
    if octaves < MIN_OCTAVES:
        raise ConfigurationError(
            f"Resolutions must span at least {MIN_OCTAVES:g} octaves, got {octaves:.3g}"
        )


def _anchored_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """Least-squares slope through the single-bin point (0, 0), and the uncentred R^2."""
    slope = float(np.dot(x, y) / np.dot(x, x))
    total = float(np.dot(y, y))
    if total == 0.0:
        return slope, 1.0
    residual = y - slope * x
    return slope, 1.0 - float(np.dot(residual, residual)) / total


def _linear_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """Least-squares slope with intercept, and the centred R^2 (1 for a flat y)."""
    slope, intercept = np.polyfit(x, y, 1)
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0:
        return float(slope), 1.0
    residual = y - (slope * x + intercept)
    return float(slope), 1.0 - float(np.dot(residual, residual)) / total


def _scaling_variable(histograms: Sequence[ProbabilityHistogram]) -> np.ndarray:
    x = np.array([-math.log2(h.relative_resolution) for h in histograms])
    if np.unique(x).size < 2:
        raise ConfigurationError("Resolutions collapse to fewer than two distinct scales; nothing to fit")
    return x


def generalized_dimension(
    ts: TimeSeries,
    q: float,
    resolutions: Resolutions = None,
    anchored: bool = True,
) -> Tuple[float, float]:
    """
    Generalized fractal dimension N_q with its fit quality.

    N_q is the least-squares slope of E_q against log2(range / dV) across the
    resolution ladder, through the single-bin point unless anchored is False.
    N_0 is the capacity dimension, N_1 the information dimension and N_2 the
    correlation dimension.

    Args:
        ts: The series
        q: Moment order
        resolutions: None for the default ladder, an int for a default
            ladder of that depth, or explicit dV values in microvolts
        anchored: Fit through the single-bin point (uncentred R^2); False
            fits an intercept (centred R^2)

    Returns:
        Tuple[float, float]: (N_q, R^2)

    Raises:
        ConfigurationError: If the ladder has fewer than 5 resolutions or
            spans less than 2 octaves
    """
    values = _finite_values(ts)
    if float(np.ptp(values)) == 0.0:
        return 0.0, 1.0
    ladder = _resolve_ladder(ts, resolutions)
    _check_ladder(ladder)

    histograms = [build_histogram(ts, r) for r in ladder]
    x = _scaling_variable(histograms)
    y = np.array([renyi_entropy(h, q) for h in histograms])
    fit = _anchored_fit if anchored else _linear_fit
    return fit(x, y)


@dataclass(frozen=True, eq=False)
class FractalSpectrum:
    """
    Generalized dimensions over a grid of moment orders.

    Attributes:
        q_grid (np.ndarray): Strictly increasing moment orders
        dims (np.ndarray): N_q per order
        r_squared (np.ndarray): R^2 of each fit (uncentred when anchored)
        resolutions (Tuple[float, ...]): Resolution ladder used (empty for a constant series)
        n_plus_inf (float): Direct estimate of N_(+inf) from the most probable bin
        n_minus_inf (float): Direct estimate of N_(-inf) from the least probable occupied bin
    """

    q_grid: np.ndarray
    dims: np.ndarray
    r_squared: np.ndarray
    resolutions: Tuple[float, ...]
    n_plus_inf: float
    n_minus_inf: float

    @property
    def width(self) -> float:
        """N at the lowest order minus N at the highest order."""
        return float(self.dims[0] - self.dims[-1])

    def dimension_at(self, q: float) -> float:
        """N_q at the grid order nearest q."""
        return float(self.dims[int(np.argmin(np.abs(self.q_grid - q)))])

    def is_monotone(self, slack: float = 1e-3) -> bool:
        """True if N_q never rises by more than slack as q increases."""
        return bool(np.all(np.diff(self.dims) <= slack))

    def rows(self) -> List[Tuple[float, float, float]]:
        """(q, N_q, R^2) rows for tabular output."""
        return [(float(q), float(n), float(r)) for q, n, r in zip(self.q_grid, self.dims, self.r_squared)]


def q_grid(q_min: float = -20.0, q_max: float = 20.0, dq: float = 0.5) -> np.ndarray:
    """
    Evenly spaced moment orders from q_min to q_max inclusive.

    Raises:
        ConfigurationError: If q_min >= q_max or dq <= 0
    """
    if not (math.isfinite(q_min) and math.isfinite(q_max) and q_min < q_max):
        raise ConfigurationError(f"q range needs q_min < q_max, got [{q_min}, {q_max}]")
    if not (math.isfinite(dq) and dq > 0):
        raise ConfigurationError(f"q step must be positive, got {dq}")
    steps = int(math.floor((q_max - q_min) / dq + 1e-9))
    grid = q_min + dq * np.arange(steps + 1)
    if q_max - grid[-1] > 1e-9 * max(1.0, abs(q_max)):
        grid = np.append(grid, q_max)
    return grid


def fractal_spectrum(
    ts: TimeSeries,
    q_min: float = -20.0,
    q_max: float = 20.0,
    dq: float = 0.5,
    resolutions: Resolutions = None,
    anchored: bool = True,
) -> FractalSpectrum:
    """
    Generalized dimension spectrum over a grid of moment orders.

    The histograms are built once per resolution and shared across the q grid.
    The extremes N_(+inf) and N_(-inf) are also estimated directly from the
    scaling of -log2 w_max and -log2 w_min.

    Args:
        ts: The series
        q_min: Lowest moment order
        q_max: Highest moment order
        dq: Order step
        resolutions: As for generalized_dimension
        anchored: As for generalized_dimension

    Returns:
        FractalSpectrum: Dimensions and fit diagnostics

    Raises:
        ConfigurationError: On an invalid q grid or resolution ladder
    """
    grid = q_grid(q_min, q_max, dq)
    values = _finite_values(ts)
    if float(np.ptp(values)) == 0.0:
        zeros = np.zeros(grid.size)
        return FractalSpectrum(grid, zeros, np.ones(grid.size), (), 0.0, 0.0)

    ladder = _resolve_ladder(ts, resolutions)
    _check_ladder(ladder)
    logger.debug("spectrum ladder: %s", ", ".join(f"{r:.4g}" for r in ladder))

    histograms = [build_histogram(ts, r) for r in ladder]
    x = _scaling_variable(histograms)
    fit = _anchored_fit if anchored else _linear_fit

    dims = np.empty(grid.size)
    r_squared = np.empty(grid.size)
    for i, q in enumerate(grid):
        y = np.array([renyi_entropy(h, q) for h in histograms])
        dims[i], r_squared[i] = fit(x, y)

    n_plus, _ = fit(x, np.array([-math.log2(h.occupied.max()) for h in histograms]))
    n_minus, _ = fit(x, np.array([-math.log2(h.occupied.min()) for h in histograms]))

    spectrum = FractalSpectrum(grid, dims, r_squared, tuple(ladder), n_plus, n_minus)
    logger.info(
        "spectrum: %d orders, width %.4f, N(+inf) %.4f, N(-inf) %.4f",
        grid.size, spectrum.width, n_plus, n_minus,
    )
    return spectrum


def capacity_dimension(h: ProbabilityHistogram) -> float:
    """
    Single-resolution capacity dimension log(occupied bins) / log(1 / dV_rel).

    Returns 0 when the histogram has a single bin.
    """
    rel = h.relative_resolution
    if rel >= 1.0:
        return 0.0
    return math.log2(h.occupied.size) / -math.log2(rel)


def hurst_from_spectrum(spectrum: FractalSpectrum, d: int = 1, q: float = 0.0) -> float:
    """
    Hurst exponent from a spectrum, taking N_q at order q as the representative dimension.

    Raises:
        DomainError: If the chosen dimension maps outside [0, 1]
    """
    return hurst_from_dimension(spectrum.dimension_at(q), d)


def spectrum_width(
    ts: TimeSeries,
    resolutions: Resolutions = None,
    q_max: float = 20.0,
    anchored: bool = True,
) -> float:
    """N_(-q_max) - N_(+q_max) from a two-point grid; 0 for a constant series."""
    return fractal_spectrum(ts, -q_max, q_max, 2 * q_max, resolutions, anchored).width
