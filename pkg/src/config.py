"""
Run Configuration Module

This module loads run configuration files. A configuration is INI text with
up to four sections:

    [model]      C, tau, D, H, V0, d
    [stimulus]   phi0, t_star, sigma            (explicit pulses)
                 rate, count, seed, phi0, sigma (Poisson-generated pulses)
    [synthesis]  sample_rate, duration, noise_hurst, noise_level, band_low,
                 band_high, target_frequency, seed, jitter, mode
    [analysis]   q_min, q_max, dq, resolutions, fit, rs_window, rs_stride

Keys are case-sensitive. Unknown sections and keys are rejected so typos
cannot pass silently. Missing keys take their defaults, except that a
[stimulus] section must always state sigma.
"""

import configparser
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, TypeVar, Union

from .errors import ConfigurationError, DomainError
from .fractal_analysis import DEFAULT_LADDER_DEPTH, MIN_RESOLUTIONS
from .hurst import MIN_LENGTH
from .response_model import ModelParams, SynthesisConfig
from .stimulus import StimulusTrain, poisson_train, train_from_lists

logger = logging.getLogger(__name__)

T = TypeVar('T')

MODEL_KEYS = ("C", "tau", "D", "H", "V0", "d")
STIMULUS_KEYS = ("phi0", "t_star", "sigma", "rate", "count", "seed", "t_start")
SYNTHESIS_KEYS = (
    "sample_rate", "duration", "noise_hurst", "noise_level", "band_low", "band_high",
    "target_frequency", "seed", "jitter", "mode",
)
ANALYSIS_KEYS = ("q_min", "q_max", "dq", "resolutions", "fit", "rs_window", "rs_stride")

SPECTRUM_FITS = ("anchored", "intercept")

SECTIONS: Dict[str, Tuple[str, ...]] = {
    "model": MODEL_KEYS,
    "stimulus": STIMULUS_KEYS,
    "synthesis": SYNTHESIS_KEYS,
    "analysis": ANALYSIS_KEYS,
}

DEFAULT_PHI0 = 1.0


@dataclass(frozen=True)
class AnalysisConfig:
    """
    Settings for spectrum and Hurst analysis.

    Attributes:
        q_min (float): Lowest moment order
        q_max (float): Highest moment order
        dq (float): Moment order step
        resolutions (Union[int, Tuple[float, ...]]): Default ladder depth or
            explicit resolutions in microvolts
        fit (str): "anchored" (through the single-bin point) or "intercept"
        rs_window (int): Sliding R/S window in samples
        rs_stride (int): Sliding R/S stride in samples
    """

    q_min: float = -20.0
    q_max: float = 20.0
    dq: float = 0.5
    resolutions: Union[int, Tuple[float, ...]] = DEFAULT_LADDER_DEPTH
    fit: str = "anchored"
    rs_window: int = 1024
    rs_stride: int = 256

    def __post_init__(self) -> None:
        if not (math.isfinite(self.q_min) and math.isfinite(self.q_max) and self.q_min < self.q_max):
            raise ConfigurationError(f"q_min must be below q_max, got {self.q_min} and {self.q_max}")
        if not (math.isfinite(self.dq) and self.dq > 0):
            raise ConfigurationError(f"dq must be positive, got {self.dq}")
        if isinstance(self.resolutions, int):
            if self.resolutions < MIN_RESOLUTIONS:
                raise ConfigurationError(
                    f"resolutions depth must be at least {MIN_RESOLUTIONS}, got {self.resolutions}"
                )
        else:
            if len(self.resolutions) < MIN_RESOLUTIONS:
                raise ConfigurationError(
                    f"resolutions needs at least {MIN_RESOLUTIONS} values, got {len(self.resolutions)}"
                )
            if any(not (math.isfinite(r) and r > 0) for r in self.resolutions):
                raise ConfigurationError(f"resolutions must be positive, got {self.resolutions}")
        if self.fit not in SPECTRUM_FITS:
            raise ConfigurationError(f"fit must be one of {SPECTRUM_FITS}, got {self.fit!r}")
        if self.rs_window < MIN_LENGTH:
            raise ConfigurationError(f"rs_window must be at least {MIN_LENGTH}, got {self.rs_window}")
        if self.rs_stride < 1:
            raise ConfigurationError(f"rs_stride must be positive, got {self.rs_stride}")


@dataclass(frozen=True)
class RunConfig:
    """
    A complete run configuration.

    Attributes:
        synthesis (SynthesisConfig): Model, stimulus and synthesis settings
        analysis (AnalysisConfig): Analysis settings
    """

    synthesis: SynthesisConfig = field(default_factory=SynthesisConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)

    @property
    def model(self) -> ModelParams:
        return self.synthesis.params

    @property
    def train(self) -> StimulusTrain:
        return self.synthesis.train


class _Section:
    """Typed access to one parsed section, naming the section in every error."""

    def __init__(self, name: str, items: Dict[str, str]):
        self.name = name
        self.items = items

    def __contains__(self, key: str) -> bool:
        return key in self.items

    def _convert(self, key: str, kind: Callable[[str], T], label: str) -> T:
        raw = self.items[key].strip()
        try:
            return kind(raw)
        except ValueError:
            raise ConfigurationError(f"[{self.name}] {key}: expected {label}, got {raw!r}") from None

    def number(self, key: str, default: float = None) -> float:
        if key not in self.items:
            return default
        value = self._convert(key, float, "a number")
        if not math.isfinite(value):
            raise ConfigurationError(f"[{self.name}] {key}: must be finite, got {value}")
        return value

    def integer(self, key: str, default: int = None) -> int:
        if key not in self.items:
            return default
        return self._convert(key, int, "an integer")

    def text(self, key: str, default: str) -> str:
        return self.items[key].strip() if key in self.items else default

    def numbers(self, key: str) -> List[float]:
        raw = self.items[key]
        parts = [p.strip() for p in raw.split(",")]
        if not parts or any(not p for p in parts):
            raise ConfigurationError(f"[{self.name}] {key}: expected a comma-separated list, got {raw!r}")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ConfigurationError(f"[{self.name}] {key}: expected numbers, got {raw!r}") from None
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError(f"[{self.name}] {key}: values must be finite, got {raw!r}")
        return values

    def require(self, key: str, reason: str = "") -> None:
        if key not in self.items:
            suffix = f" ({reason})" if reason else ""
            raise ConfigurationError(f"[{self.name}] missing required key '{key}'{suffix}")


def _read_sections(path: str) -> Dict[str, _Section]:
    parser = configparser.ConfigParser(interpolation=None, default_section="__defaults__")
    parser.optionxform = str
    with open(path, encoding="utf-8") as f:
        try:
            parser.read_file(f)
        except configparser.Error as exc:
            raise ConfigurationError(f"{path}: {exc}") from None

    sections = {}
    for name in parser.sections():
        if name not in SECTIONS:
            raise ConfigurationError(
                f"{path}: unknown section [{name}] (expected one of {', '.join(SECTIONS)})"
            )
        items = dict(parser.items(name))
        for key in items:
            if key not in SECTIONS[name]:
                raise ConfigurationError(f"[{name}] unknown key '{key}'")
        sections[name] = _Section(name, items)
    return sections


def _parse_model(s: _Section) -> ModelParams:
    kwargs = {}
    for key in ("C", "tau", "D", "H", "V0"):
        value = s.number(key)
        if value is not None:
            kwargs[key] = value
    d = s.integer("d")
    if d is not None:
        kwargs["d"] = d
    try:
        return ModelParams(**kwargs)
    except DomainError as exc:
        raise ConfigurationError(f"[model] {exc}") from exc


def _parse_stimulus(s: _Section) -> StimulusTrain:
    s.require("sigma", "pulse width has no default")
    try:
        if "rate" in s:
            if "t_star" in s:
                raise ConfigurationError("[stimulus] t_star cannot be combined with rate")
            s.require("count", "generated trains need a pulse count")
            return poisson_train(
                rate=s.number("rate"),
                count=s.integer("count"),
                phi0=s.number("phi0", DEFAULT_PHI0),
                sigma=s.number("sigma"),
                seed=s.integer("seed", 0),
                t_start=s.number("t_start", 0.0),
            )
        for key in ("count", "seed", "t_start"):
            if key in s:
                raise ConfigurationError(f"[stimulus] {key} only applies together with rate")
        s.require("t_star", "or give rate and count for a generated train")
        phi0 = s.numbers("phi0") if "phi0" in s else [DEFAULT_PHI0]
        return train_from_lists(phi0, s.numbers("t_star"), s.numbers("sigma"))
    except DomainError as exc:
        raise ConfigurationError(f"[stimulus] {exc}") from exc


def _parse_synthesis(s: _Section, params: ModelParams, train: StimulusTrain) -> SynthesisConfig:
    defaults = SynthesisConfig()
    return SynthesisConfig(
        params=params,
        train=train,
        sample_rate=s.number("sample_rate", defaults.sample_rate),
        duration=s.number("duration", defaults.duration),
        noise_hurst=s.number("noise_hurst", defaults.noise_hurst),
        noise_level=s.number("noise_level", defaults.noise_level),
        amplitude_band=(
            s.number("band_low", defaults.amplitude_band[0]),
            s.number("band_high", defaults.amplitude_band[1]),
        ),
        target_frequency=s.number("target_frequency", defaults.target_frequency),
        seed=s.integer("seed", defaults.seed),
        jitter=s.number("jitter", defaults.jitter),
        mode=s.text("mode", defaults.mode),
    )


def _parse_analysis(s: _Section) -> AnalysisConfig:
    defaults = AnalysisConfig()
    resolutions = defaults.resolutions
    if "resolutions" in s:
        raw = s.text("resolutions", "")
        if "," in raw:
            resolutions = tuple(s.numbers("resolutions"))
        else:
            resolutions = s.integer("resolutions")
    return AnalysisConfig(
        q_min=s.number("q_min", defaults.q_min),
        q_max=s.number("q_max", defaults.q_max),
        dq=s.number("dq", defaults.dq),
        resolutions=resolutions,
        fit=s.text("fit", defaults.fit),
        rs_window=s.integer("rs_window", defaults.rs_window),
        rs_stride=s.integer("rs_stride", defaults.rs_stride),
    )


def load_config(path: str) -> RunConfig:
    """
    Load and validate a run configuration file.

    Every invariant of the model, synthesis and analysis settings is checked
    here, so a successfully loaded configuration is runnable.

    Args:
        path: INI file to read

    Returns:
        RunConfig: The validated configuration

    Raises:
        ConfigurationError: On unknown sections or keys, a missing sigma,
            malformed values or inconsistent parameters
        OSError: If the file cannot be read
    """
    sections = _read_sections(path)

    params = _parse_model(sections.get("model", _Section("model", {})))
    train = _parse_stimulus(sections["stimulus"]) if "stimulus" in sections else StimulusTrain()
    synthesis = _parse_synthesis(sections.get("synthesis", _Section("synthesis", {})), params, train)
    analysis = _parse_analysis(sections.get("analysis", _Section("analysis", {})))

    logger.info(
        "loaded %s: D=%.6g m^2/s, %d pulses, seed %d", path, params.D, len(train), synthesis.seed
    )
    return RunConfig(synthesis, analysis)
