"""
Fractional Brownian Motion Module

This module generates fractional Gaussian noise (fGn) and fractional Brownian
motion (fBm) with exact covariance.

The primary method is Davies-Harte circulant embedding: the fGn autocovariance
is embedded in a circulant matrix whose eigenvalues come from one FFT, and a
sample is the real part of an FFT of scaled complex normals. When the
embedding is not non-negative definite (round-off near H = 1 on short grids)
the generator falls back to Hosking's sequential Durbin-Levinson method.
"""

import logging
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]

# eigenvalues down to -EIGEN_TOL (relative to the largest) are round-off
EIGEN_TOL = 1e-10


def fgn_autocovariance(H: float, k, dt: float = 1.0):
    """
    Autocovariance of fGn increments at integer lag k.

    gamma(k) = dt^(2H) / 2 * (|k + 1|^(2H) - 2|k|^(2H) + |k - 1|^(2H))

    Args:
        H: Hurst exponent in (0, 1)
        k: Lag or array of lags
        dt: Sampling interval

    Returns:
        float or np.ndarray: Autocovariance values
    """
    k = np.abs(np.asarray(k, dtype=float))
    two_h = 2.0 * H
    return 0.5 * dt ** two_h * (np.abs(k + 1) ** two_h - 2 * k ** two_h + np.abs(k - 1) ** two_h)


def _check_hurst(H: float) -> None:
    if not (np.isfinite(H) and 0.0 < H < 1.0):
        raise DomainError(f"Hurst exponent must lie in (0, 1), got {H}")


def fgn_generate(
    H: float,
    n: int,
    dt: float = 1.0,
    seed: SeedLike = None,
    size: Optional[int] = None,
) -> np.ndarray:
    """
    Sample fractional Gaussian noise.

    Each sample has variance dt^(2H); consecutive samples are correlated as
    increments of fBm on a grid of spacing dt.

    Time Complexity: O(n log n) per path (circulant embedding)

    Args:
        H: Hurst exponent in (0, 1)
        n: Number of samples per path
        dt: Sampling interval
        seed: Seed, SeedSequence or Generator
        size: Number of independent paths; None for a single 1-D path

    Returns:
        np.ndarray: Shape (n,) or (size, n)

    Raises:
        DomainError: If H is outside (0, 1), n < 1 or dt is not positive
    """
    _check_hurst(H)
    if int(n) != n or n < 1:
        raise DomainError(f"Sample count must be a positive integer, got {n}")
    if not (np.isfinite(dt) and dt > 0):
        raise DomainError(f"Sampling interval must be positive, got {dt}")
    n = int(n)

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    paths = 1 if size is None else int(size)
    if paths < 1:
        raise DomainError(f"Path count must be positive, got {size}")

    gamma = fgn_autocovariance(H, np.arange(n + 1), dt)
    row = np.concatenate([gamma, gamma[n - 1:0:-1]])
    m = row.size
    eigenvalues = np.fft.fft(row).real

    if eigenvalues.min() < -EIGEN_TOL * eigenvalues.max():
        logger.warning(
            "circulant embedding not non-negative definite (H=%g, n=%d); "
            "falling back to sequential synthesis",
            H, n,
        )
        samples = _hosking(gamma[:n], n, paths, rng)
    else:
        scale = np.sqrt(np.clip(eigenvalues, 0.0, None) / m)
        w = rng.standard_normal((paths, m)) + 1j * rng.standard_normal((paths, m))
        samples = np.fft.fft(scale * w, axis=-1).real[:, :n]

    logger.debug("fgn: H=%g, n=%d, paths=%d", H, n, paths)
    return samples[0] if size is None else samples


def _hosking(gamma: np.ndarray, n: int, paths: int, rng: np.random.Generator) -> np.ndarray:
    # Durbin-Levinson recursion, vectorised over paths
    z = rng.standard_normal((paths, n))
    x = np.empty((paths, n))
    phi = np.zeros(n)
    v = gamma[0]
    x[:, 0] = np.sqrt(v) * z[:, 0]
    for i in range(1, n):
        prev = phi[: i - 1].copy()
        k = (gamma[i] - prev @ gamma[i - 1:0:-1]) / v
        phi[: i - 1] = prev - k * prev[::-1]
        phi[i - 1] = k
        v *= 1.0 - k * k
        mean = x[:, i - 1::-1] @ phi[:i]
        x[:, i] = mean + np.sqrt(max(v, 0.0)) * z[:, i]
    return x


def fbm_generate(H: float, n: int, dt: float = 1.0, seed: SeedLike = None) -> TimeSeries:
    """
    Sample a fractional Brownian motion path.

    Args:
        H: Hurst exponent in (0, 1)
        n: Number of samples, the first of which is B(0) = 0
        dt: Sampling interval in seconds
        seed: Seed, SeedSequence or Generator

    Returns:
        TimeSeries: Path with Var[B(t)] = t^(2H)

    Raises:
        DomainError: If H is outside (0, 1) or n < 2

    Examples:
        >>> path = fbm_generate(0.7, 1024, dt=1 / 1024, seed=0)
        >>> path.values[0]
        0.0
    """
    _check_hurst(H)
    if int(n) != n or n < 2:
        raise DomainError(f"An fBm path needs at least two samples, got {n}")
    increments = fgn_generate(H, int(n) - 1, dt, seed)
    return TimeSeries(np.concatenate([[0.0], np.cumsum(increments)]), dt)


def fbm_paths(H: float, n: int, dt: float, seed: SeedLike, size: int) -> np.ndarray:
    """
    Sample several independent fBm paths at once.

    Returns:
        np.ndarray: Shape (size, n); column 0 is zero
    """
    _check_hurst(H)
    if int(n) != n or n < 2:
        raise DomainError(f"An fBm path needs at least two samples, got {n}")
    increments = fgn_generate(H, int(n) - 1, dt, seed, size=size)
    return np.concatenate([np.zeros((size, 1)), np.cumsum(increments, axis=1)], axis=1)
