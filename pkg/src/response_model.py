"""
Response Model Module

This module implements the fractional-diffusion model of brain response to
external stimuli:
- The physical parameter set and its relations (reaction time, dimension to
  Hurst map, generalized diffusivity)
- The closed-form response V(t) = V0 + C^(2H-1) D^(-H) I^H[phi](t), evaluated
  at the stimulated boundary
- Synthesis of EEG-like signals from a rhythmic response plus fractional
  Gaussian noise, mapped onto a target amplitude band
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import signal

from .errors import ConfigurationError, DomainError
from .fbm import fgn_generate
from .fractional_core import QuadratureScheme, SampledFunction, fractional_integral
from .stimulus import GaussianPulse, StimulusTrain, periodic_train, sample_train
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

DEFAULT_C = 0.055
DEFAULT_TAU = 0.215
DEFAULT_H = 0.79
DEFAULT_V0 = 31.99

# relative tolerance for D = tau * C^2 when all three are given
CONSISTENCY_RTOL = 1e-6

SYNTHESIS_MODES = ("response", "uniform")


def derive_diffusivity(tau: float, C: float) -> float:
    """
    Diffusion coefficient from reaction time and propagation speed, D = tau * C^2.

    Examples:
        >>> round(derive_diffusivity(0.215, 0.055), 10)
        0.000650375
    """
    if not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"Reaction time must be positive, got {tau}")
    if not (math.isfinite(C) and C > 0):
        raise DomainError(f"Propagation speed must be positive, got {C}")
    return tau * C * C


def reaction_time(D: float, C: float) -> float:
    """Reaction time from diffusivity and propagation speed, tau = D / C^2."""
    if not (math.isfinite(D) and D > 0):
        raise DomainError(f"Diffusion coefficient must be positive, got {D}")
    if not (math.isfinite(C) and C > 0):
        raise DomainError(f"Propagation speed must be positive, got {C}")
    return D / (C * C)


@dataclass(frozen=True)
class ModelParams:
    """
    Physical parameters of the response model.

    Any two of C, D and tau determine the third. When neither D nor tau is
    given the default reaction time applies. Supplying all three requires
    D = tau * C^2 within a relative 1e-6.

    Attributes:
        C (float): Propagation speed in m/s
        D (float): Diffusion coefficient in m^2/s
        tau (float): Reaction time in seconds
        H (float): Hurst exponent in (0, 1]
        V0 (float): Initial potential in microvolts
        d (int): Euclidean dimension
    """

    C: float = DEFAULT_C
    D: Optional[float] = None
    tau: Optional[float] = None
    H: float = DEFAULT_H
    V0: float = DEFAULT_V0
    d: int = 1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.C) and self.C > 0):
            raise DomainError(f"C must be positive, got {self.C}")
        if not (math.isfinite(self.H) and 0.0 < self.H <= 1.0):
            raise DomainError(f"H must lie in (0, 1], got {self.H}")
        if not math.isfinite(self.V0):
            raise DomainError(f"V0 must be finite, got {self.V0}")
        if self.d not in (1, 2, 3):
            raise DomainError(f"d must be 1, 2 or 3, got {self.d}")

        tau, D = self.tau, self.D
        if D is None:
            tau = DEFAULT_TAU if tau is None else tau
            D = derive_diffusivity(tau, self.C)
        elif tau is None:
            tau = reaction_time(D, self.C)
        else:
            expected = derive_diffusivity(tau, self.C)
            if not (math.isfinite(D) and D > 0):
                raise DomainError(f"D must be positive, got {D}")
            if abs(D - expected) > CONSISTENCY_RTOL * expected:
                raise DomainError(
                    f"Inconsistent parameters: D={D:g} but tau*C^2={expected:g} "
                    f"(tau={tau:g}, C={self.C:g})"
                )
        object.__setattr__(self, "tau", float(tau))
        object.__setattr__(self, "D", float(D))

    @property
    def response_gain(self) -> float:
        """Factor C^(2H-1) D^(-H) multiplying the fractional integral of the flux."""
        return self.C ** (2 * self.H - 1) * self.D ** (-self.H)


def hurst_from_dimension(N_rep: float, d: int = 1) -> float:
    """
    Hurst exponent from a representative fractal dimension, H = (1 + d - N) / 2.

    Args:
        N_rep: Representative fractal dimension
        d: Euclidean dimension

    Returns:
        float: H in [0, 1]

    Raises:
        DomainError: If the resulting H falls outside [0, 1]

    Examples:
        >>> hurst_from_dimension(1.0)
        0.5
        >>> hurst_from_dimension(2.0)
        0.0
    """
    H = (1.0 + d - N_rep) / 2.0
    if not (0.0 <= H <= 1.0):
        raise DomainError(
            f"Dimension N={N_rep:g} gives H={H:g} outside [0, 1] for d={d}"
        )
    return H


def dimension_from_hurst(H: float, d: int = 1) -> float:
    """Representative fractal dimension from the Hurst exponent, N = 1 + d - 2H."""
    if not (math.isfinite(H) and 0.0 <= H <= 1.0):
        raise DomainError(f"H must lie in [0, 1], got {H}")
    return 1.0 + d - 2.0 * H


def generalized_diffusivity(t: float, params: ModelParams) -> float:
    """
    Time-dependent diffusivity C * D * t^(2H - 1).

    Raises:
        DomainError: If t is not positive
    """
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"Time must be positive, got {t}")
    return params.C * params.D * t ** (2 * params.H - 1)


def anomalous_coefficient(params: ModelParams) -> float:
    """
    Coefficient C^(2(2H-1)) D^(2(1-H)) of the fractional diffusion equation.

    Reduces to D at H = 1/2.
    """
    H = params.H
    return params.C ** (2 * (2 * H - 1)) * params.D ** (2 * (1 - H))


def solve_flux_response(
    flux: SampledFunction,
    params: ModelParams,
    scheme: QuadratureScheme = QuadratureScheme.PRODUCT_TRAPEZOID,
) -> TimeSeries:
    """
    Boundary potential driven by a sampled flux.

    Args:
        flux: Stimulus flux on a uniform grid starting at t = 0
        params: Model parameters
        scheme: Quadrature rule for the fractional integral

    Returns:
        TimeSeries: V(t) = V0 + C^(2H-1) D^(-H) I^H[flux](t)
    """
    integral = fractional_integral(flux, params.H, scheme)
    values = params.V0 + params.response_gain * integral.values
    return TimeSeries(values, flux.dt, flux.t0)


def solve_response(
    train: StimulusTrain,
    params: ModelParams,
    dt: float,
    n: int,
    scheme: QuadratureScheme = QuadratureScheme.PRODUCT_TRAPEZOID,
) -> TimeSeries:
    """
    Boundary potential driven by a stimulus train.

    Samples the train flux at t = 0, dt, ..., (n - 1)dt and applies the
    closed-form response. An empty train leaves V at V0.

    Args:
        train: Stimulus pulses
        params: Model parameters
        dt: Sampling interval in seconds
        n: Number of samples
        scheme: Quadrature rule

    Returns:
        TimeSeries: The response in microvolts

    Examples:
        >>> v = solve_response(StimulusTrain(), ModelParams(), 0.01, 5)
        >>> bool(np.all(v.values == ModelParams().V0))
        True
    """
    flux = sample_train(train, dt, n)
    response = solve_flux_response(flux, params, scheme)
    logger.debug("response: %d pulses, n=%d, dt=%g, H=%g", len(train), n, dt, params.H)
    return response


@dataclass(frozen=True)
class SynthesisConfig:
    """
    Settings for EEG-like signal synthesis.

    Attributes:
        params (ModelParams): Response model parameters
        train (StimulusTrain): Configured stimulus; its first pulse is the
            template of the rhythmic drive
        sample_rate (float): Output sampling rate in Hz
        duration (float): Signal length in seconds
        noise_hurst (float): Hurst exponent of the fractional Gaussian noise
        noise_level (float): Noise standard deviation relative to the response
        amplitude_band (Tuple[float, float]): Target (low, high) range in microvolts
        target_frequency (float): Rhythm frequency in Hz
        seed (int): Master random seed
        jitter (float): Rhythm timing jitter as a fraction of the period
        mode (str): "response" or "uniform" (direct uniform-amplitude surrogate)
        band_margin (float): Fraction of the band width left free at each edge
    """

    params: ModelParams = field(default_factory=ModelParams)
    train: StimulusTrain = field(default_factory=StimulusTrain)
    sample_rate: float = 256.0
    duration: float = 10.0
    noise_hurst: float = DEFAULT_H
    noise_level: float = 2.0
    amplitude_band: Tuple[float, float] = (-60.0, 60.0)
    target_frequency: float = 34.0
    seed: int = 0
    jitter: float = 0.05
    mode: str = "response"
    band_margin: float = 0.01

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise ConfigurationError(f"sample_rate must be positive, got {self.sample_rate}")
        if not (math.isfinite(self.duration) and self.duration > 0):
            raise ConfigurationError(f"duration must be positive, got {self.duration}")
        if not (math.isfinite(self.target_frequency) and self.target_frequency > 0):
            raise ConfigurationError(f"target_frequency must be positive, got {self.target_frequency}")
        if self.sample_rate <= 2 * self.target_frequency:
            raise ConfigurationError(
                f"target_frequency {self.target_frequency:g} Hz cannot be resolved at "
                f"sample_rate {self.sample_rate:g} Hz (needs sample_rate > 2 * target_frequency)"
            )
        if self.duration * self.target_frequency < 1:
            raise ConfigurationError(
                f"duration {self.duration:g} s holds less than one period of {self.target_frequency:g} Hz"
            )
        if not (0.0 < self.noise_hurst < 1.0):
            raise ConfigurationError(f"noise_hurst must lie in (0, 1), got {self.noise_hurst}")
        if not (math.isfinite(self.noise_level) and self.noise_level >= 0):
            raise ConfigurationError(f"noise_level must be non-negative, got {self.noise_level}")
        low, high = self.amplitude_band
        if not (math.isfinite(low) and math.isfinite(high) and low < high):
            raise ConfigurationError(f"amplitude band needs low < high, got ({low}, {high})")
        if not (math.isfinite(self.jitter) and self.jitter >= 0):
            raise ConfigurationError(f"jitter must be non-negative, got {self.jitter}")
        if self.mode not in SYNTHESIS_MODES:
            raise ConfigurationError(f"mode must be one of {SYNTHESIS_MODES}, got {self.mode!r}")
        if not (0.0 <= self.band_margin < 0.5):
            raise ConfigurationError(f"band_margin must lie in [0, 0.5), got {self.band_margin}")

    @property
    def sample_count(self) -> int:
        return int(round(self.duration * self.sample_rate))

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate


def synthesize_eeg(cfg: SynthesisConfig) -> TimeSeries:
    """
    Synthesize an EEG-like signal.

    In "response" mode the configured train is merged with a jittered periodic
    train of its first pulse at the target frequency. The response to this
    drive is solved on a grid fine enough to resolve the pulses, the response
    to the mean flux (the t^H drift) is removed, and the result is decimated
    to the output rate and normalized to unit variance. Fractional Gaussian
    noise of relative level noise_level is added and the composite is mapped
    affinely onto the amplitude band less its margins.

    In "uniform" mode alternating-sign extremes of uniform random magnitude
    are placed at twice the target frequency and joined by half-cosine arcs.

    A composite with zero range (no stimulus and no noise) yields the constant
    series V0.

    Args:
        cfg: Synthesis settings

    Returns:
        TimeSeries: The synthesized signal in microvolts

    Raises:
        ConfigurationError: If the settings are infeasible
    """
    n = cfg.sample_count
    if n < 2:
        raise ConfigurationError(f"duration * sample_rate gives {n} samples; at least 2 are needed")
    rhythm_seed, noise_seed, uniform_seed = np.random.SeedSequence(cfg.seed).spawn(3)

    if cfg.mode == "uniform":
        composite = _uniform_surrogate(n, cfg.dt, cfg.target_frequency, np.random.default_rng(uniform_seed))
    else:
        response = _rhythmic_response(cfg, n, rhythm_seed)
        composite = response
        if cfg.noise_level > 0:
            noise = fgn_generate(cfg.noise_hurst, n, seed=noise_seed)
            composite = response + cfg.noise_level * noise

    values = _map_to_band(composite, cfg)
    if values is None:
        logger.info("synthesis produced no fluctuation; returning constant V0")
        return TimeSeries(np.full(n, cfg.params.V0), cfg.dt)

    logger.info(
        "synthesized %d samples at %g Hz (mode=%s, seed=%d)", n, cfg.sample_rate, cfg.mode, cfg.seed
    )
    return TimeSeries(values, cfg.dt)


def _rhythmic_response(cfg: SynthesisConfig, n: int, seed: np.random.SeedSequence) -> np.ndarray:
    if cfg.train.is_empty():
        return np.zeros(n)

    template: GaussianPulse = cfg.train.pulses[0]
    drive = periodic_train(template, cfg.target_frequency, cfg.duration, cfg.jitter, seed).merge(cfg.train)

    # resolve the narrowest pulse with at least two samples per width
    factor = max(1, int(math.ceil(cfg.dt / (drive.min_sigma / 2.0))))
    fine_dt = cfg.dt / factor
    flux = sample_train(drive, fine_dt, n * factor)
    centred = SampledFunction(flux.values - flux.values.mean(), fine_dt)
    logger.debug("rhythmic drive: %d pulses, oversampling x%d", len(drive), factor)

    fine = solve_flux_response(centred, cfg.params).values - cfg.params.V0
    coarse = signal.resample_poly(fine, 1, factor)[:n] if factor > 1 else fine

    std = float(np.std(coarse))
    if std == 0.0:
        return np.zeros(n)
    return (coarse - coarse.mean()) / std


def _uniform_surrogate(n: int, dt: float, frequency: float, rng: np.random.Generator) -> np.ndarray:
    half_period = 0.5 / frequency
    t = dt * np.arange(n)
    knots = int(math.ceil(t[-1] / half_period)) + 2
    signs = np.where(np.arange(knots) % 2 == 0, 1.0, -1.0)
    extremes = signs * rng.uniform(0.0, 1.0, knots)

    k = np.minimum((t / half_period).astype(int), knots - 2)
    u = t / half_period - k
    weight = 0.5 * (1.0 - np.cos(np.pi * u))
    return extremes[k] * (1.0 - weight) + extremes[k + 1] * weight


def _map_to_band(values: np.ndarray, cfg: SynthesisConfig) -> Optional[np.ndarray]:
    span = float(np.ptp(values))
    if span == 0.0:
        return None
    low, high = cfg.amplitude_band
    width = high - low
    lo, hi = low + cfg.band_margin * width, high - cfg.band_margin * width
    return lo + (values - values.min()) * (hi - lo) / span
