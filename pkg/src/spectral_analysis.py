"""
Spectral Analysis Module

This module characterizes the amplitude and frequency content of a signal:
- Periodogram (mean removed, rectangular window)
- Dominant frequency and conventional EEG band
- Validation against an amplitude band and a target frequency
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import signal

from .errors import ConfigurationError, DegenerateInputError, DomainError
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

MIN_PERIODOGRAM_LENGTH = 16

ALPHA_MIN_AMPLITUDE = 5.0
ALPHA_MAX_AMPLITUDE = 100.0


class EEGBand(Enum):
    """Conventional EEG frequency bands."""

    DELTA = "delta"
    THETA = "theta"
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    NONE = "none"


def periodogram(ts: TimeSeries) -> Tuple[np.ndarray, np.ndarray]:
    """
    One-sided power spectrum of the mean-removed series.

    Frequencies are k / (n dt) for k = 0 .. n/2. The powers sum to the
    population variance of the series.

    Args:
        ts: Series of at least 16 finite samples

    Returns:
        Tuple[np.ndarray, np.ndarray]: (frequencies in Hz, power in uV^2)

    Raises:
        DomainError: If the series is too short or has non-finite samples
    """
    if len(ts) < MIN_PERIODOGRAM_LENGTH:
        raise DomainError(f"Periodogram needs at least {MIN_PERIODOGRAM_LENGTH} samples, got {len(ts)}")
    if not np.all(np.isfinite(ts.values)):
        raise DomainError("Periodogram needs finite samples")
    freqs, power = signal.periodogram(
        ts.values, fs=ts.sample_rate, window="boxcar", detrend="constant", scaling="spectrum"
    )
    return freqs, power


def dominant_frequency(ts: TimeSeries) -> float:
    """
    Frequency of the strongest non-DC periodogram bin.

    Ties resolve to the lower frequency.

    Raises:
        DegenerateInputError: If the series is constant

    Examples:
        >>> t = np.arange(1024) / 256
        >>> dominant_frequency(TimeSeries(np.sin(2 * np.pi * 34 * t), 1 / 256))
        34.0
    """
    freqs, power = periodogram(ts)
    if ts.is_constant() or not np.any(power[1:] > 0):
        raise DegenerateInputError("Constant series has no dominant frequency")
    return float(freqs[1 + int(np.argmax(power[1:]))])


def classify_band(f: float) -> EEGBand:
    """
    EEG band of a frequency.

    delta [0.5, 4), theta [4, 8), alpha [8, 13], beta (13, 30],
    gamma (30, 100]; anything else is NONE.

    Raises:
        DomainError: If f is negative or not finite
    """
    if not np.isfinite(f) or f < 0:
        raise DomainError(f"Frequency must be non-negative, got {f}")
    if 0.5 <= f < 4:
        return EEGBand.DELTA
    if 4 <= f < 8:
        return EEGBand.THETA
    if 8 <= f <= 13:
        return EEGBand.ALPHA
    if 13 < f <= 30:
        return EEGBand.BETA
    if 30 < f <= 100:
        return EEGBand.GAMMA
    return EEGBand.NONE


@dataclass(frozen=True)
class SignalStats:
    """
    Amplitude and frequency summary of a signal.

    Attributes:
        v_min (float): Smallest sample (uV)
        v_max (float): Largest sample (uV)
        dominant_frequency (Optional[float]): Peak frequency in Hz, None if degenerate
        band_label (EEGBand): Band of the dominant frequency
        within_band (bool): Every sample strictly inside the amplitude band
        amplitude_band (Tuple[float, float]): The band checked against
        sample_rate (float): Sampling rate in Hz
    """

    v_min: float
    v_max: float
    dominant_frequency: Optional[float]
    band_label: EEGBand
    within_band: bool
    amplitude_band: Tuple[float, float]
    sample_rate: float

    @property
    def peak_to_peak(self) -> float:
        return self.v_max - self.v_min


@dataclass(frozen=True)
class ValidationResult:
    """
    Outcome of validate_signal.

    Attributes:
        stats (SignalStats): Full statistics, always populated
        passed (bool): Both criteria hold
        reasons (Tuple[str, ...]): One entry per failed criterion
    """

    stats: SignalStats
    passed: bool
    reasons: Tuple[str, ...] = field(default_factory=tuple)


def signal_stats(ts: TimeSeries, band: Tuple[float, float] = (-60.0, 60.0)) -> SignalStats:
    """
    Summary statistics of a signal against an amplitude band.

    A constant signal gets dominant_frequency None and band NONE.
    """
    low, high = band
    try:
        f = dominant_frequency(ts)
        label = classify_band(f)
    except DegenerateInputError:
        f, label = None, EEGBand.NONE
    inside = bool(np.all((ts.values > low) & (ts.values < high)))
    return SignalStats(ts.v_min, ts.v_max, f, label, inside, (float(low), float(high)), ts.sample_rate)


def validate_signal(
    ts: TimeSeries,
    band: Tuple[float, float],
    target_f: float,
    tol_f: float,
) -> ValidationResult:
    """
    Check a signal against an amplitude band and a target frequency.

    Passes iff every sample lies strictly inside the band and the dominant
    frequency is within tol_f of target_f. A degenerate spectrum fails with a
    reason instead of raising.

    Args:
        ts: The signal
        band: (low, high) amplitude band in microvolts
        target_f: Target dominant frequency in Hz
        tol_f: Allowed frequency deviation in Hz

    Returns:
        ValidationResult: Statistics, verdict and failure reasons

    Raises:
        ConfigurationError: If low >= high or tol_f <= 0
    """
    low, high = band
    if not (np.isfinite(low) and np.isfinite(high) and low < high):
        raise ConfigurationError(f"Amplitude band needs low < high, got ({low}, {high})")
    if not (np.isfinite(tol_f) and tol_f > 0):
        raise ConfigurationError(f"Frequency tolerance must be positive, got {tol_f}")

    stats = signal_stats(ts, band)
    reasons = []
    if not stats.within_band:
        reasons.append(
            f"amplitude: samples span [{stats.v_min:.4g}, {stats.v_max:.4g}] uV, "
            f"outside ({low:g}, {high:g}) uV"
        )
    if stats.dominant_frequency is None:
        reasons.append("frequency: degenerate spectrum (constant signal)")
    elif abs(stats.dominant_frequency - target_f) > tol_f:
        reasons.append(
            f"frequency: dominant {stats.dominant_frequency:.4g} Hz is more than "
            f"{tol_f:g} Hz from target {target_f:g} Hz"
        )

    result = ValidationResult(stats, not reasons, tuple(reasons))
    logger.info("validation %s: %s", "passed" if result.passed else "failed", "; ".join(reasons) or "ok")
    return result


def alpha_rhythm(stats: SignalStats) -> bool:
    """
    Relaxed eyes-closed profile: alpha-band dominant frequency with a
    peak-to-peak amplitude between 5 and 100 uV.
    """
    return (
        stats.band_label is EEGBand.ALPHA
        and ALPHA_MIN_AMPLITUDE <= stats.peak_to_peak <= ALPHA_MAX_AMPLITUDE
    )


def print_validation(result: ValidationResult) -> None:
    """
    Print signal statistics and the validation verdict as a table.

    Args:
        result: Outcome of validate_signal
    """
    stats = result.stats
    freq = "n/a" if stats.dominant_frequency is None else f"{stats.dominant_frequency:.4f}"
    low, high = stats.amplitude_band

    print("\n" + "=" * 80)
    print("SIGNAL STATISTICS")
    print("=" * 80)
    print(f"{'Quantity':<30} {'Value':<20}")
    print("-" * 80)
    print(f"{'v_min (uV)':<30} {stats.v_min:<20.4f}")
    print(f"{'v_max (uV)':<30} {stats.v_max:<20.4f}")
    print(f"{'peak-to-peak (uV)':<30} {stats.peak_to_peak:<20.4f}")
    print(f"{'dominant frequency (Hz)':<30} {freq:<20}")
    print(f"{'band':<30} {stats.band_label.value:<20}")
    print(f"{'amplitude band (uV)':<30} {f'({low:g}, {high:g})':<20}")
    print(f"{'within band':<30} {str(stats.within_band):<20}")
    print(f"{'alpha rhythm':<30} {str(alpha_rhythm(stats)):<20}")
    print("-" * 80)
    print(f"RESULT: {'PASS' if result.passed else 'FAIL'}")
    for reason in result.reasons:
        print(f"  - {reason}")
