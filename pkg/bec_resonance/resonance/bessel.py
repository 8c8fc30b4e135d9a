"""Bessel weights Jₙ(x) of the sideband expansion and their positive zeros."""

import logging
import math

import numpy as np
from scipy import optimize, special

from bec_resonance.util.errors import DomainError

logger = logging.getLogger(__name__)

MAX_ORDER = 200
MAX_ARGUMENT = 1000.0
WEIGHT_MASS_THRESHOLD = 0.999
ZERO_BRACKET = 0.25


def _check_box(n: int, x: float):
    if abs(n) > MAX_ORDER:
        raise DomainError(f"Bessel order |n| must not exceed {MAX_ORDER}, got {n}.")
    if not np.isfinite(x) or abs(x) > MAX_ARGUMENT:
        raise DomainError(f"Bessel argument |x| must not exceed {MAX_ARGUMENT}, got {x}.")


def bessel_j(n: int, x: float) -> float:
    """
    Bessel function of the first kind Jₙ(x) for integer n.

    Negative orders use J₋ₙ(x) = (−1)ⁿJₙ(x).

    Raises:
        DomainError: If |n| > 200 or |x| > 1000.
    """

    _check_box(n, x)
    value = float(special.jv(abs(n), x))
    return -value if n < 0 and n % 2 else value


def bessel_weights(n_max: int, x: float) -> np.ndarray:
    """Weights Jₙ(x) for n = −n_max..n_max."""

    _check_box(n_max, x)
    n = np.arange(-n_max, n_max + 1)
    values = special.jv(np.abs(n), x)
    return np.where((n < 0) & (n % 2 == 1), -values, values)


def weight_mass(n_max: int, x: float) -> float:
    """Σ_{|n|≤n_max} Jₙ(x)², which tends to 1 as n_max grows."""
    return float(np.sum(bessel_weights(n_max, x) ** 2))


def default_n_max(x: float) -> int:
    return math.ceil(abs(x)) + 8


def bessel_zero(n: int, k: int) -> float:
    """
    The k-th positive root of Jₙ.

    The tabulated root is bracketed by ±0.25 and refined with Brent's method,
    which keeps the residual well below 1e−9.

    Raises:
        DomainError: If n < 0, n > 200 or k < 1.
    """

    if n < 0 or n > MAX_ORDER or k < 1:
        raise DomainError(f"Bessel zero needs 0 <= n <= {MAX_ORDER} and k >= 1, got ({n}, {k}).")

    estimate = float(special.jn_zeros(n, k)[-1])
    root = optimize.brentq(
        lambda x: special.jv(n, x),
        estimate - ZERO_BRACKET,
        estimate + ZERO_BRACKET,
        xtol=1e-14,
    )
    logger.debug("Zero %d of J_%d at %.15f", k, n, root)
    return float(root)
