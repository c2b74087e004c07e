"""
Command-Line Interface

Subcommands:
- simulate: synthesize an EEG-like signal from a run configuration
- analyze:  multifractal spectrum and Hurst exponent of a signal file
- validate: check a signal against an amplitude band and target frequency
- compare:  side-by-side statistics of two signal files

Exit codes: 0 success, 1 runtime error, 2 configuration or argument error,
3 validation failure.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional, Tuple

import numpy as np

from . import __version__
from .comparison import compare_signals, print_comparison_results
from .config import AnalysisConfig, load_config
from .errors import ConfigurationError, DomainError, FractalBrainError, SignalFormatError
from .fractal_analysis import fractal_spectrum, hurst_from_spectrum
from .hurst import hurst_rs, hurst_sliding, persistence
from .response_model import synthesize_eeg
from .signal_io import read_signal, write_signal, write_table
from .spectral_analysis import print_validation, validate_signal

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_INVALID = 3

SIMULATE_FREQUENCY_TOL = 2.0


def _band(text: str) -> Tuple[float, float]:
    """Parse an amplitude band given as low:high."""
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"band must be low:high, got {text!r}")
    try:
        low, high = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"band bounds must be numbers, got {text!r}") from None
    if not (np.isfinite(low) and np.isfinite(high) and low < high):
        raise argparse.ArgumentTypeError(f"band needs low < high, got {text!r}")
    return low, high


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (np.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _attach_band_values(argv: List[str]) -> List[str]:
    """Rewrite "--band LOW:HIGH" as "--band=LOW:HIGH" so negative bounds are not read as flags."""
    joined = []
    i = 0
    while i < len(argv):
        if argv[i] == "--band" and i + 1 < len(argv):
            joined.append(f"--band={argv[i + 1]}")
            i += 2
        else:
            joined.append(argv[i])
            i += 1
    return joined


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src",
        description="Fractional brain-response synthesis and multifractal signal analysis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log progress to stderr (-v info, -vv debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Synthesize a signal from a run configuration")
    p.add_argument("config", help="Run configuration (INI)")
    p.add_argument("--out", required=True, help="Signal file to write")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("analyze", help="Multifractal spectrum and Hurst exponent of a signal")
    p.add_argument("signal", help="Signal file (t,v)")
    p.add_argument("--spectrum", metavar="PATH", help="Write the q,N_q,R2 table here instead of stdout")
    p.add_argument("--hurst", action="store_true", help="Also estimate the Hurst exponent")
    p.add_argument("--hurst-out", metavar="PATH",
                   help="Write the sliding-window Hurst series here instead of printing it")
    p.add_argument("--config", help="Run configuration whose [analysis] section applies")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("validate", help="Check amplitude band and dominant frequency")
    p.add_argument("signal", help="Signal file (t,v)")
    p.add_argument("--band", type=_band, default=(-60.0, 60.0), metavar="LOW:HIGH",
                   help="Amplitude band in uV, e.g. --band -60:60")
    p.add_argument("--freq", type=_positive, default=34.0, help="Target frequency in Hz")
    p.add_argument("--tol", type=_positive, default=2.0, help="Frequency tolerance in Hz")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("compare", help="Compare two signals side by side")
    p.add_argument("first", help="First signal file")
    p.add_argument("second", help="Second signal file")
    p.set_defaults(handler=cmd_compare)

    return parser


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    synthesis = cfg.synthesis
    ts = synthesize_eeg(synthesis)
    write_signal(ts, args.out)

    check = validate_signal(ts, synthesis.amplitude_band, synthesis.target_frequency, SIMULATE_FREQUENCY_TOL)
    low, high = synthesis.amplitude_band
    print(f"D = {cfg.model.D:.6g} m^2/s (tau = {cfg.model.tau:g} s, C = {cfg.model.C:g} m/s)")
    print(f"seed = {synthesis.seed}")
    print(f"samples = {len(ts)} at {ts.sample_rate:g} Hz -> {args.out}")
    print(f"band check ({low:g}, {high:g}) uV: {'PASS' if check.stats.within_band else 'FAIL'}")
    for reason in check.reasons:
        print(f"  - {reason}")
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    ts = read_signal(args.signal)
    analysis = load_config(args.config).analysis if args.config else AnalysisConfig()

    spectrum = fractal_spectrum(
        ts, analysis.q_min, analysis.q_max, analysis.dq, analysis.resolutions,
        anchored=analysis.fit == "anchored",
    )
    header = ("q", "N_q", "R2")
    if args.spectrum:
        write_table(args.spectrum, header, spectrum.rows())
    else:
        print(",".join(header))
        for q, n, r in spectrum.rows():
            print(f"{q!r},{n!r},{r!r}")

    out = sys.stdout if args.spectrum else sys.stderr
    print(f"spectrum width = {spectrum.width:.6f}", file=out)
    print(f"N(+inf) ~ {spectrum.n_plus_inf:.6f}, N(-inf) ~ {spectrum.n_minus_inf:.6f}", file=out)
    try:
        print(f"H from N_0 = {hurst_from_spectrum(spectrum):.6f}", file=out)
    except DomainError as exc:
        print(f"H from N_0 = n/a ({exc})", file=out)

    if args.hurst or args.hurst_out:
        H = hurst_rs(ts)
        print(f"H (R/S) = {H:.6f} ({persistence(H).value})", file=out)
        if len(ts) >= analysis.rs_window:
            track = hurst_sliding(ts, analysis.rs_window, analysis.rs_stride)
            print(f"sliding H median = {float(np.nanmedian(track.values)):.6f} "
                  f"over {len(track)} windows", file=out)
            rows = list(zip(track.times, track.values))
            if args.hurst_out:
                write_table(args.hurst_out, ("t", "H"), rows)
            else:
                print("t,H", file=out)
                for t, h in rows:
                    print(f"{float(t)!r},{float(h)!r}", file=out)
        else:
            logger.warning("signal shorter than rs_window=%d; sliding estimate skipped", analysis.rs_window)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    result = validate_signal(read_signal(args.signal), args.band, args.freq, args.tol)
    print_validation(result)
    return EXIT_OK if result.passed else EXIT_INVALID


def cmd_compare(args: argparse.Namespace) -> int:
    comparison = compare_signals(
        read_signal(args.first),
        read_signal(args.second),
        labels=(os.path.basename(args.first), os.path.basename(args.second)),
    )
    print_comparison_results(comparison)
    return EXIT_OK


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Process exit code
    """
    parser = build_parser()
    argv = _attach_band_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG

    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (ConfigurationError, SignalFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FractalBrainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
