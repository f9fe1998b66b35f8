"""Euler gamma function and the two-parameter Wright function."""

import math

from scipy.special import rgamma as _scipy_rgamma

__all__ = ["PoleError", "ConvergenceError", "gamma_fn", "rgamma", "wright"]

#: relative size below which a series term counts as negligible
WRIGHT_RTOL = 1e-16
#: number of consecutive negligible terms required to stop
WRIGHT_QUIET_TERMS = 3
WRIGHT_MAX_TERMS = 1000


class PoleError(ValueError):
    """Raised when the gamma function is evaluated at one of its poles."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative evaluation exhausts its budget."""


def _is_pole(x):
    return x <= 0 and float(x).is_integer()


def gamma_fn(x):
    """Gamma function on the real line, negative non-integers included.

    Raises :class:`PoleError` at ``0, -1, -2, ...``.  Negative arguments go
    through the reflection formula inside :func:`math.gamma`.
    """
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at x={x:g}")
    return math.gamma(x)


def rgamma(x):
    """Reciprocal gamma as an entire function: zero at the poles."""
    x = float(x)
    if _is_pole(x):
        return 0.0
    try:
        g = math.gamma(x)
    except OverflowError:
        return float(_scipy_rgamma(x))
    return 1.0 / g if g != 0.0 else float(_scipy_rgamma(x))


def wright(z, gamma, delta, *, rtol=WRIGHT_RTOL, max_terms=WRIGHT_MAX_TERMS):
    r"""Two-parameter Wright function

    .. math::

        W(z; \gamma, \delta) = \sum_{k \ge 0} \frac{z^k}{k!\, \Gamma(\gamma k + \delta)}

    The reciprocal gamma is treated as entire, so terms where
    ``gamma * k + delta`` hits a pole contribute exactly zero.

    Summation stops once ``WRIGHT_QUIET_TERMS`` consecutive terms are below
    ``rtol * max(1, |partial sum|)``.

    Parameters
    ----------
    z : float
        Series argument.
    gamma : float
        First parameter, must be > -1.
    delta : float
        Second parameter.
    rtol : float
        Relative truncation threshold.
    max_terms : int
        Hard cap on the number of terms.

    Returns
    -------
    float
    """
    z = float(z)
    gamma = float(gamma)
    delta = float(delta)
    if not gamma > -1.0:
        raise ValueError(f"Wright function needs gamma > -1, got {gamma}")

    total = 0.0
    power = 1.0  # z**k / k!
    quiet = 0
    for k in range(max_terms):
        if k > 0:
            power *= z / k
        term = power * rgamma(gamma * k + delta)
        total += term
        if abs(term) < rtol * max(1.0, abs(total)):
            quiet += 1
            if quiet >= WRIGHT_QUIET_TERMS:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"Wright series W({z}; {gamma}, {delta}) did not converge in {max_terms} terms"
    )
