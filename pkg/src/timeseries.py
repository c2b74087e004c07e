"""
Time Series Module

This module defines the TimeSeries class used across the package to represent
a uniformly sampled scalar signal, such as a synthesized or recorded EEG trace.
Each series carries its sample values (in microvolts), its sampling interval
and its start time.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Represents a uniformly sampled scalar signal.

    Attributes:
        values (np.ndarray): Sample values (μV), one-dimensional and non-empty
        dt (float): Sampling interval in seconds (strictly positive)
        t0 (float): Time of the first sample in seconds

    Non-finite values are allowed so that derived series (for example a
    sliding Hurst track) can mark gaps with NaN. Signal files never contain
    them; the reader rejects NaN and infinity.

    Examples:
        >>> ts = TimeSeries(np.array([1.0, 2.0, 3.0]), dt=0.5)
        >>> ts.times
        array([0. , 0.5, 1. ])
        >>> ts.sample_rate
        2.0
    """

    values: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise DomainError(f"TimeSeries values must be one-dimensional, got shape {values.shape}")
        if values.size == 0:
            raise DomainError("TimeSeries values must be non-empty")
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise DomainError(f"Sampling interval must be positive and finite, got {self.dt}")
        if not np.isfinite(self.t0):
            raise DomainError(f"Start time must be finite, got {self.t0}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def times(self) -> np.ndarray:
        """Sample instants t0, t0 + dt, t0 + 2dt, ..."""
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def sample_rate(self) -> float:
        """Sampling rate in Hz."""
        return 1.0 / self.dt

    @property
    def duration(self) -> float:
        """Time spanned from the first to the last sample."""
        return self.dt * (self.values.size - 1)

    @property
    def v_min(self) -> float:
        return float(np.nanmin(self.values))

    @property
    def v_max(self) -> float:
        return float(np.nanmax(self.values))

    def is_constant(self) -> bool:
        """
        Check whether every finite sample has the same value.

        Returns:
            bool: True if the peak-to-peak range of the finite samples is zero
        """
        finite = self.values[np.isfinite(self.values)]
        return finite.size == 0 or float(np.ptp(finite)) == 0.0

    def increments(self) -> "TimeSeries":
        """
        First differences of the series, stamped at the later sample.

        Raises:
            DomainError: If the series has fewer than two samples
        """
        if self.values.size < 2:
            raise DomainError("At least two samples are needed to take increments")
        return TimeSeries(np.diff(self.values), self.dt, self.t0 + self.dt)

    def window(self, start: int, stop: int) -> "TimeSeries":
        """
        Slice samples [start, stop) into a new series with the matching start time.
        """
        if not 0 <= start < stop <= self.values.size:
            raise DomainError(f"Invalid window [{start}, {stop}) for series of length {self.values.size}")
        return TimeSeries(self.values[start:stop], self.dt, self.t0 + start * self.dt)

    def __str__(self) -> str:
        return f"TimeSeries(n={len(self)}, dt={self.dt:g}, t0={self.t0:g})"

    def __repr__(self) -> str:
        return self.__str__()
