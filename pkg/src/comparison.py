"""
Signal Comparison Module

This module compares two signals side by side on the quantities used to judge
a synthesized EEG trace against a reference: amplitude range, dominant
frequency, R/S Hurst exponent and multifractal spectrum width.

Every quantity is independent of signal length, so signals of different
lengths are still compared; the difference is noted in the report.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import DegenerateInputError, DomainError
from .fractal_analysis import Resolutions, spectrum_width
from .hurst import hurst_rs
from .spectral_analysis import dominant_frequency
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

QUANTITIES: Tuple[Tuple[str, str], ...] = (
    ("v_min (uV)", "v_min"),
    ("v_max (uV)", "v_max"),
    ("dominant frequency (Hz)", "dominant_frequency"),
    ("Hurst exponent (R/S)", "hurst"),
    ("spectrum width", "spectrum_width"),
)


@dataclass(frozen=True)
class SignalSummary:
    """
    Comparison quantities of one signal.

    Quantities that cannot be measured on the signal (a constant or very
    short series) are None.

    Attributes:
        label (str): Name shown in reports
        length (int): Number of samples
        sample_rate (float): Sampling rate in Hz
        v_min (float): Smallest sample (uV)
        v_max (float): Largest sample (uV)
        dominant_frequency (Optional[float]): Peak periodogram frequency in Hz
        hurst (Optional[float]): R/S Hurst exponent
        spectrum_width (float): N_(-20) - N_(+20)
    """

    label: str
    length: int
    sample_rate: float
    v_min: float
    v_max: float
    dominant_frequency: Optional[float]
    hurst: Optional[float]
    spectrum_width: float


@dataclass(frozen=True)
class SignalComparison:
    """
    Two summaries and their absolute differences.

    Attributes:
        first (SignalSummary): Summary of the first signal
        second (SignalSummary): Summary of the second signal
    """

    first: SignalSummary
    second: SignalSummary

    @property
    def same_length(self) -> bool:
        return self.first.length == self.second.length

    @property
    def differences(self) -> Dict[str, Optional[float]]:
        """Absolute difference per quantity; None where either side is unmeasurable."""
        out = {}
        for _, attr in QUANTITIES:
            a, b = getattr(self.first, attr), getattr(self.second, attr)
            out[attr] = None if a is None or b is None else abs(a - b)
        return out


def summarize_signal(ts: TimeSeries, label: str, resolutions: Resolutions = None) -> SignalSummary:
    """
    Measure the comparison quantities of a signal.

    Args:
        ts: The signal
        label: Name shown in reports
        resolutions: Resolution ladder for the spectrum width

    Returns:
        SignalSummary: The measured quantities
    """
    try:
        freq: Optional[float] = dominant_frequency(ts)
    except (DegenerateInputError, DomainError) as exc:
        logger.info("%s: no dominant frequency (%s)", label, exc)
        freq = None
    try:
        H: Optional[float] = hurst_rs(ts)
    except (DegenerateInputError, DomainError) as exc:
        logger.info("%s: no Hurst estimate (%s)", label, exc)
        H = None
    width = spectrum_width(ts, resolutions)
    return SignalSummary(label, len(ts), ts.sample_rate, ts.v_min, ts.v_max, freq, H, width)


def compare_signals(
    a: TimeSeries,
    b: TimeSeries,
    labels: Tuple[str, str] = ("A", "B"),
    resolutions: Resolutions = None,
) -> SignalComparison:
    """
    Compare two signals on amplitude, frequency, persistence and multifractality.

    The comparison is informative only; no pass/fail judgement is made.
    """
    comparison = SignalComparison(
        summarize_signal(a, labels[0], resolutions),
        summarize_signal(b, labels[1], resolutions),
    )
    if not comparison.same_length:
        logger.info("comparing signals of different lengths: %d and %d", len(a), len(b))
    return comparison


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.6f}"


def print_comparison_results(comparison: SignalComparison) -> None:
    """
    Print a comparison as a formatted table.

    Args:
        comparison: Result of compare_signals
    """
    first, second = comparison.first, comparison.second
    differences = comparison.differences

    print("\n" + "=" * 80)
    print("SIGNAL COMPARISON RESULTS")
    print("=" * 80)
    print(f"{'Quantity':<26} {first.label[:17]:<18} {second.label[:17]:<18} {'|Difference|':<15}")
    print("-" * 80)
    print(f"{'samples':<26} {first.length:<18} {second.length:<18} {'':<15}")
    print(f"{'sample rate (Hz)':<26} {first.sample_rate:<18.6g} {second.sample_rate:<18.6g} {'':<15}")
    for name, attr in QUANTITIES:
        a, b = getattr(first, attr), getattr(second, attr)
        print(f"{name:<26} {_fmt(a):<18} {_fmt(b):<18} {_fmt(differences[attr]):<15}")
    print("-" * 80)
    if not comparison.same_length:
        print(f"Note: signals differ in length ({first.length} vs {second.length} samples); "
              "all quantities are length-independent.")
