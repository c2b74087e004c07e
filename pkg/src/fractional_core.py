"""
Fractional Calculus Primitives

This module provides the building blocks of the response model:
- A positive-domain Gamma function
- The Riemann-Liouville fractional integral of order H in (0, 1], discretized
  by product integration so the weakly singular kernel (t - xi)^(H - 1) is
  integrated exactly on every sub-interval
- The classical Gaussian diffusion kernel, used as a reference solution

Product integration replaces f by a piecewise interpolant on the uniform grid
and integrates the kernel against each interpolating piece analytically. The
kernel is never sampled at xi = t, so the endpoint singularity costs nothing.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import signal

from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """
    A real function sampled on the uniform grid t0, t0 + dt, t0 + 2dt, ...

    Attributes:
        values (np.ndarray): Finite samples, one-dimensional and non-empty
        dt (float): Sampling interval in seconds
        t0 (float): Time of the first sample in seconds
    """

    values: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise DomainError("SampledFunction needs a non-empty one-dimensional array of samples")
        if not np.all(np.isfinite(values)):
            raise DomainError("SampledFunction samples must all be finite")
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise DomainError(f"Sampling interval must be positive, got {self.dt}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)


class QuadratureScheme(Enum):
    """
    Product-integration rules for the Riemann-Liouville integral.

    PRODUCT_RECTANGLE holds f constant on each sub-interval at the mean of its
    end values and converges at first order. PRODUCT_TRAPEZOID interpolates f
    linearly and converges at second order on smooth integrands.
    """

    PRODUCT_RECTANGLE = "product-rectangle"
    PRODUCT_TRAPEZOID = "product-trapezoid"

    @property
    def order(self) -> int:
        """Documented convergence order of the rule."""
        return 1 if self is QuadratureScheme.PRODUCT_RECTANGLE else 2


def gamma(x: float) -> float:
    """
    Gamma function on the positive real axis.

    Delegates to math.gamma, which evaluates a Lanczos approximation
    (g = 6.024680040776729583740234375 with 13 coefficients) and is accurate
    to a few ulps for positive arguments.

    Args:
        x: Positive, finite argument

    Returns:
        float: Gamma(x)

    Raises:
        DomainError: If x is not positive and finite

    Examples:
        >>> round(gamma(0.5) ** 2, 12) == round(math.pi, 12)
        True
        >>> gamma(4)
        6.0
    """
    try:
        x = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"gamma expects a real argument, got {x!r}") from exc
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"gamma is only defined here for positive finite arguments, got {x}")
    return math.gamma(x)


def fractional_integral(
    f: SampledFunction,
    order: float,
    scheme: QuadratureScheme = QuadratureScheme.PRODUCT_TRAPEZOID,
) -> SampledFunction:
    """
    Riemann-Liouville fractional integral of order H on the sample grid.

    Computes (1/Gamma(H)) * integral from t0 to t of f(xi) (t - xi)^(H - 1) dxi
    at every sample instant. The value at the first sample is zero.

    The weights depend only on the index distance n - k, so the whole grid is
    evaluated as one discrete convolution.

    Time Complexity: O(n log n) through FFT convolution for large grids

    Args:
        f: Integrand on a uniform grid
        order: Integration order H in (0, 1]
        scheme: Product-integration rule

    Returns:
        SampledFunction: The fractional integral on the same grid

    Raises:
        DomainError: If the order lies outside (0, 1]

    Examples:
        >>> one = SampledFunction(np.ones(101), dt=0.01)
        >>> out = fractional_integral(one, 1.0)
        >>> round(float(out.values[-1]), 12)
        1.0
    """
    if not isinstance(f, SampledFunction):
        raise DomainError(f"fractional_integral expects a SampledFunction, got {type(f).__name__}")
    if not (np.isfinite(order) and 0.0 < order <= 1.0):
        raise DomainError(f"Integration order must lie in (0, 1], got {order}")

    if scheme is QuadratureScheme.PRODUCT_TRAPEZOID:
        values = _product_trapezoid(f.values, f.dt, float(order))
    elif scheme is QuadratureScheme.PRODUCT_RECTANGLE:
        values = _product_rectangle(f.values, f.dt, float(order))
    else:
        raise DomainError(f"Unknown quadrature scheme {scheme!r}")

    logger.debug("fractional integral: n=%d, H=%g, scheme=%s", f.values.size, order, scheme.value)
    return SampledFunction(values, f.dt, f.t0)


def _product_trapezoid(fx: np.ndarray, dt: float, alpha: float) -> np.ndarray:
    n = fx.size
    out = np.zeros(n)
    if n == 1:
        return out

    j = np.arange(1, n, dtype=float)

    # interior weights c[m] for index distance m; the newest sample has weight 1
    c = np.empty(n)
    c[0] = 1.0
    c[1:] = (j + 1) ** (1 + alpha) - 2 * j ** (1 + alpha) + (j - 1) ** (1 + alpha)

    # the first sample only sees the right half of its hat function
    start = (j - 1) ** (1 + alpha) - (j - 1 - alpha) * j ** alpha

    g = fx.copy()
    g[0] = 0.0
    conv = signal.convolve(c, g, method="auto")[:n]

    w0 = dt ** alpha / math.gamma(2 + alpha)
    out[1:] = w0 * (conv[1:] + start * fx[0])
    return out


def _product_rectangle(fx: np.ndarray, dt: float, alpha: float) -> np.ndarray:
    n = fx.size
    out = np.zeros(n)
    if n == 1:
        return out

    k = np.arange(n - 1, dtype=float)
    b = (k + 1) ** alpha - k ** alpha
    fc = 0.5 * (fx[:-1] + fx[1:])
    conv = signal.convolve(b, fc, method="auto")[: n - 1]

    out[1:] = dt ** alpha / math.gamma(1 + alpha) * conv
    return out


def classical_kernel(r, t: float, D: float, d: int = 1):
    """
    Gaussian kernel of the classical diffusion equation in d dimensions.

    Returns (4 pi D t)^(-d/2) exp(-r^2 / (4 D t)).

    Args:
        r: Distance from the source in metres (scalar or array)
        t: Elapsed time in seconds
        D: Diffusion coefficient in m^2/s
        d: Euclidean dimension, one of 1, 2, 3

    Returns:
        float or np.ndarray: Kernel value(s), shaped like r

    Raises:
        DomainError: If t or D is not positive, or d is not 1, 2 or 3
    """
    if not (np.isfinite(t) and t > 0):
        raise DomainError(f"Kernel time must be positive, got {t}")
    if not (np.isfinite(D) and D > 0):
        raise DomainError(f"Diffusion coefficient must be positive, got {D}")
    if d not in (1, 2, 3):
        raise DomainError(f"Euclidean dimension must be 1, 2 or 3, got {d}")

    r = np.asarray(r, dtype=float)
    value = (4.0 * math.pi * D * t) ** (-d / 2.0) * np.exp(-(r ** 2) / (4.0 * D * t))
    return float(value) if value.ndim == 0 else value
