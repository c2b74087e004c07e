"""
Hurst Exponent Module

This module estimates the Hurst exponent by rescaled-range (R/S) analysis:
- hurst_rs: one estimate for a whole series
- hurst_sliding: a time-varying estimate over sliding windows
- persistence: reading of H as anti-persistent, uncorrelated or persistent

R/S uses non-overlapping windows of dyadic sizes 8, 16, ... keeping only sizes
with at least four windows. The estimate is the slope of log2(R/S) against
log2(n). With corrected=True the Anis-Lloyd expected R/S of white noise is
subtracted first and 1/2 added back.
"""

import logging
import math
from enum import Enum
from typing import List, Tuple

import numpy as np

from .errors import DegenerateInputError, DomainError
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

MIN_LENGTH = 64
MIN_WINDOW = 8
MIN_WINDOWS_PER_SIZE = 4


class Persistence(Enum):
    """Qualitative reading of a Hurst exponent."""

    ANTI_PERSISTENT = "anti-persistent"
    UNCORRELATED = "uncorrelated"
    PERSISTENT = "persistent"


def persistence(H: float, tol: float = 0.0) -> Persistence:
    """
    Classify a Hurst exponent.

    H > 1/2 means an increase is more likely followed by an increase, H < 1/2
    means it is more likely followed by a decrease.

    Args:
        H: Hurst exponent
        tol: Half-width of the band around 1/2 read as uncorrelated

    Returns:
        Persistence: The classification
    """
    if not math.isfinite(H):
        raise DomainError(f"Hurst exponent must be finite, got {H}")
    if abs(H - 0.5) <= tol:
        return Persistence.UNCORRELATED
    return Persistence.PERSISTENT if H > 0.5 else Persistence.ANTI_PERSISTENT


def expected_rescaled_range(n: int) -> float:
    """
    Anis-Lloyd expected R/S of n independent Gaussian samples.

    E[R/S](n) = Gamma((n - 1)/2) / (sqrt(pi) Gamma(n/2)) * sum_{i=1}^{n-1} sqrt((n - i)/i)
    """
    i = np.arange(1, n)
    ratio = math.exp(math.lgamma((n - 1) / 2.0) - math.lgamma(n / 2.0)) / math.sqrt(math.pi)
    return ratio * float(np.sum(np.sqrt((n - i) / i)))


def window_sizes(length: int) -> List[int]:
    """Dyadic window sizes from 8 that leave at least four windows."""
    sizes = []
    n = MIN_WINDOW
    while length // n >= MIN_WINDOWS_PER_SIZE:
        sizes.append(n)
        n *= 2
    return sizes


def rescaled_range(values: np.ndarray, n: int) -> Tuple[float, int]:
    """
    Mean R/S over the non-overlapping windows of size n.

    Windows with zero standard deviation are skipped.

    Returns:
        Tuple[float, int]: (mean R/S, windows used); R/S is NaN when none qualify
    """
    k = values.size // n
    blocks = values[: k * n].reshape(k, n)
    deviations = blocks - blocks.mean(axis=1, keepdims=True)
    profile = np.cumsum(deviations, axis=1)
    r = profile.max(axis=1) - profile.min(axis=1)
    s = blocks.std(axis=1)
    used = s > 0
    if not np.any(used):
        return float("nan"), 0
    return float(np.mean(r[used] / s[used])), int(np.count_nonzero(used))


def hurst_rs(ts: TimeSeries, corrected: bool = False) -> float:
    """
    Rescaled-range estimate of the Hurst exponent.

    Time Complexity: O(n log n)

    Args:
        ts: Series of at least 64 finite samples
        corrected: Subtract the Anis-Lloyd expectation before fitting
            (off by default)

    Returns:
        float: The H estimate

    Raises:
        DomainError: If the series is shorter than 64 samples or has non-finite values
        DegenerateInputError: If every window has zero spread

    Examples:
        >>> rng = np.random.default_rng(0)
        >>> 0.4 < hurst_rs(TimeSeries(rng.normal(size=4096), 1.0)) < 0.6
        True
    """
    values = ts.values
    if values.size < MIN_LENGTH:
        raise DomainError(f"R/S analysis needs at least {MIN_LENGTH} samples, got {values.size}")
    if not np.all(np.isfinite(values)):
        raise DomainError("R/S analysis needs finite samples")

    log_n, log_rs = [], []
    for n in window_sizes(values.size):
        rs, used = rescaled_range(values, n)
        if used == 0:
            continue
        log_n.append(math.log2(n))
        target = math.log2(rs)
        if corrected:
            target -= math.log2(expected_rescaled_range(n))
        log_rs.append(target)

    if len(log_n) < 2:
        raise DegenerateInputError("Series has zero spread in all but at most one R/S window size")

    slope = float(np.polyfit(log_n, log_rs, 1)[0])
    return 0.5 + slope if corrected else slope


def hurst_sliding(ts: TimeSeries, window: int, stride: int, corrected: bool = False) -> TimeSeries:
    """
    Hurst exponent over sliding windows.

    Each estimate is stamped at the time of the last sample in its window.
    Windows with no spread yield NaN gaps, which are logged.

    Args:
        ts: The series
        window: Samples per window (at least 64)
        stride: Samples between window starts (at least 1)
        corrected: As for hurst_rs

    Returns:
        TimeSeries: Estimates with sampling interval stride * dt

    Raises:
        DomainError: If the window is shorter than 64, longer than the
            series, or the stride is not positive
    """
    if int(window) != window or window < MIN_LENGTH:
        raise DomainError(f"Window must be an integer of at least {MIN_LENGTH} samples, got {window}")
    if int(stride) != stride or stride < 1:
        raise DomainError(f"Stride must be a positive integer, got {stride}")
    if window > len(ts):
        raise DomainError(f"Window of {window} samples exceeds series length {len(ts)}")
    window, stride = int(window), int(stride)

    starts = range(0, len(ts) - window + 1, stride)
    estimates = np.empty(len(starts))
    gaps = 0
    for j, start in enumerate(starts):
        try:
            estimates[j] = hurst_rs(ts.window(start, start + window), corrected)
        except DegenerateInputError:
            estimates[j] = np.nan
            gaps += 1

    if gaps:
        logger.warning("sliding R/S: %d of %d windows had no spread and were left as gaps", gaps, len(starts))
    logger.debug("sliding R/S: %d windows of %d samples, stride %d", len(starts), window, stride)
    return TimeSeries(estimates, ts.dt * stride, ts.t0 + (window - 1) * ts.dt)
