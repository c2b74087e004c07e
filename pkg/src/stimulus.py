"""
Stimulus Module

This module models external stimuli as Gaussian flux pulses and pulse trains.
A pulse has peak amplitude phi0, peak time t_star and width sigma, and its
flux is phi0 * exp(-(t - t_star)^2 / sigma^2). Concurrent pulses superpose.

Generators build reproducible trains: Poisson arrivals for stimuli with equal
probability of occurrence, and a jittered periodic train for rhythmic drive.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import DomainError
from .fractional_core import SampledFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaussianPulse:
    """
    A single Gaussian stimulus pulse.

    Attributes:
        phi0 (float): Peak flux amplitude
        t_star (float): Time of the peak in seconds
        sigma (float): Pulse width in seconds (strictly positive)
    """

    phi0: float
    t_star: float
    sigma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.phi0):
            raise DomainError(f"Pulse amplitude must be finite, got {self.phi0}")
        if not math.isfinite(self.t_star):
            raise DomainError(f"Pulse peak time must be finite, got {self.t_star}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"Pulse width must be positive, got {self.sigma}")

    def __str__(self) -> str:
        return f"GaussianPulse(phi0={self.phi0:g}, t*={self.t_star:g}, sigma={self.sigma:g})"


@dataclass(frozen=True)
class StimulusTrain:
    """
    An ordered collection of Gaussian pulses. May be empty.

    Attributes:
        pulses (Tuple[GaussianPulse, ...]): Pulses in declaration order
    """

    pulses: Tuple[GaussianPulse, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pulses", tuple(self.pulses))

    def __len__(self) -> int:
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    def is_empty(self) -> bool:
        return not self.pulses

    def merge(self, other: "StimulusTrain") -> "StimulusTrain":
        """
        Union of two trains; the pulses of self come first.

        Args:
            other: The train to append

        Returns:
            StimulusTrain: A new train holding every pulse of both
        """
        return StimulusTrain(self.pulses + other.pulses)

    @property
    def min_sigma(self) -> Optional[float]:
        """Narrowest pulse width, or None for an empty train."""
        return min((p.sigma for p in self.pulses), default=None)


def pulse_value(p: GaussianPulse, t):
    """
    Flux of a single pulse at time t.

    Args:
        p: The pulse
        t: Time in seconds (scalar or array)

    Returns:
        float or np.ndarray: phi0 * exp(-(t - t_star)^2 / sigma^2)

    Examples:
        >>> pulse_value(GaussianPulse(1.0, 0.002, 0.001), 0.002)
        1.0
    """
    t = np.asarray(t, dtype=float)
    value = p.phi0 * np.exp(-((t - p.t_star) ** 2) / p.sigma ** 2)
    return float(value) if value.ndim == 0 else value


def train_value(train: StimulusTrain, t):
    """
    Superposed flux of every pulse in the train at time t.

    An empty train yields zero flux.

    Args:
        train: The stimulus train
        t: Time in seconds (scalar or array)

    Returns:
        float or np.ndarray: Sum of the pulse fluxes
    """
    t = np.asarray(t, dtype=float)
    total = np.zeros_like(t)
    for p in train.pulses:
        total = total + p.phi0 * np.exp(-((t - p.t_star) ** 2) / p.sigma ** 2)
    return float(total) if total.ndim == 0 else total


def sample_train(train: StimulusTrain, dt: float, n: int) -> SampledFunction:
    """
    Sample the train flux at t = 0, dt, 2dt, ..., (n - 1)dt.

    Args:
        train: The stimulus train
        dt: Sampling interval in seconds
        n: Number of samples

    Returns:
        SampledFunction: The sampled flux

    Raises:
        DomainError: If dt is not positive or n < 1
    """
    if not (np.isfinite(dt) and dt > 0):
        raise DomainError(f"Sampling interval must be positive, got {dt}")
    if int(n) != n or n < 1:
        raise DomainError(f"Sample count must be a positive integer, got {n}")
    t = dt * np.arange(int(n))
    return SampledFunction(train_value(train, t), dt)


def poisson_train(
    rate: float,
    count: int,
    phi0: float,
    sigma: float,
    seed: int,
    t_start: float = 0.0,
) -> StimulusTrain:
    """
    Generate pulses whose peak times form a Poisson process.

    Inter-arrival gaps are exponential with mean 1/rate, so every instant is
    equally likely to host a stimulus.

    Args:
        rate: Mean arrival rate in Hz
        count: Number of pulses
        phi0: Peak amplitude shared by all pulses
        sigma: Width shared by all pulses
        seed: Random seed
        t_start: Time origin of the arrival process

    Returns:
        StimulusTrain: Pulses ordered by peak time

    Raises:
        DomainError: If rate is not positive or count is negative
    """
    if not (np.isfinite(rate) and rate > 0):
        raise DomainError(f"Arrival rate must be positive, got {rate}")
    if int(count) != count or count < 0:
        raise DomainError(f"Pulse count must be a non-negative integer, got {count}")

    rng = np.random.default_rng(seed)
    peaks = t_start + np.cumsum(rng.exponential(1.0 / rate, size=int(count)))
    logger.debug("poisson train: %d pulses at %.3g Hz (seed=%s)", count, rate, seed)
    return StimulusTrain(tuple(GaussianPulse(phi0, float(t), sigma) for t in peaks))


def periodic_train(
    template: GaussianPulse,
    rate: float,
    duration: float,
    jitter: float = 0.0,
    seed: Optional[int] = None,
) -> StimulusTrain:
    """
    Generate a rhythmic train of copies of a template pulse.

    Peaks sit at (j + 1/2)/rate for every j that keeps them inside
    [0, duration), each displaced by jitter * N(0, 1) / rate.

    Args:
        template: Pulse whose amplitude and width are reused
        rate: Pulse rate in Hz
        duration: Length of the covered interval in seconds
        jitter: Timing jitter as a fraction of the period
        seed: Random seed for the jitter

    Returns:
        StimulusTrain: The rhythmic train

    Raises:
        DomainError: If rate or duration is not positive or jitter is negative
    """
    if not (np.isfinite(rate) and rate > 0):
        raise DomainError(f"Pulse rate must be positive, got {rate}")
    if not (np.isfinite(duration) and duration > 0):
        raise DomainError(f"Duration must be positive, got {duration}")
    if not (np.isfinite(jitter) and jitter >= 0):
        raise DomainError(f"Jitter must be non-negative, got {jitter}")

    count = max(0, int(math.ceil(duration * rate - 0.5)))
    peaks = (np.arange(count) + 0.5) / rate
    if jitter > 0:
        rng = np.random.default_rng(seed)
        peaks = peaks + jitter * rng.standard_normal(count) / rate
    return StimulusTrain(tuple(GaussianPulse(template.phi0, float(t), template.sigma) for t in peaks))


def train_from_lists(
    phi0: Iterable[float],
    t_star: Iterable[float],
    sigma: Iterable[float],
) -> StimulusTrain:
    """
    Build a train from parallel lists; length-1 phi0 or sigma lists broadcast.

    Raises:
        DomainError: If the list lengths cannot be matched
    """
    phi0, t_star, sigma = list(phi0), list(t_star), list(sigma)
    n = len(t_star)
    if len(phi0) == 1:
        phi0 = phi0 * n
    if len(sigma) == 1:
        sigma = sigma * n
    if not (len(phi0) == len(sigma) == n):
        raise DomainError(
            f"phi0, t_star and sigma need equal lengths, got {len(phi0)}, {n}, {len(sigma)}"
        )
    return StimulusTrain(tuple(GaussianPulse(a, t, s) for a, t, s in zip(phi0, t_star, sigma)))
