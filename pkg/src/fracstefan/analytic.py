"""Closed-form similarity solution of the one-phase fractional Stefan problem.

In dimensionless variables the concentration is

    c(x, tau) = (1 - W(-x / tau**(a/2); -a/2, 1)) / (1 - W(-p; -a/2, 1))

on ``0 <= x <= s(tau) = p * tau**(a/2)``, where the front coefficient ``p``
is the positive root of

    lam * G(1 - a/2) * W(-p; -a/2, 1 - a/2) = p * G(1 + a/2) * (1 - W(-p; -a/2, 1)).
"""

from dataclasses import dataclass, field

import numpy as np

from .special import ConvergenceError, gamma_fn, wright

__all__ = [
    "ModelParams",
    "FrontResult",
    "to_dimensionless",
    "transcendental_residual",
    "solve_p_transcendental",
    "exact_concentration",
    "exact_profile",
    "exact_front",
]

P_BRACKET = (1e-6, 6.0)


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless problem instance, optionally tied to physical data.

    ``lam`` is the fractional Stefan number ``CS / C0``.  When the physical
    block (``D_alpha``, ``C0``, ``CS``, ``l``) is given, ``lam`` must agree
    with it; :meth:`from_physical` builds a consistent instance.
    """

    alpha: float
    lam: float
    D_alpha: float | None = None
    C0: float | None = None
    CS: float | None = None
    l: float | None = None  # noqa: E741

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.lam > 0.0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        block = (self.D_alpha, self.C0, self.CS, self.l)
        if any(v is not None for v in block):
            if any(v is None for v in block):
                raise ValueError("physical block must be given in full: D_alpha, C0, CS, l")
            if not (self.C0 > self.CS > 0.0):
                raise ValueError("need C0 > CS > 0")
            if not (self.l > 0.0 and self.D_alpha > 0.0):
                raise ValueError("need l > 0 and D_alpha > 0")
            if not np.isclose(self.lam, self.CS / self.C0, rtol=1e-12, atol=0.0):
                raise ValueError(f"lambda={self.lam} inconsistent with CS/C0={self.CS / self.C0}")

    @classmethod
    def from_physical(cls, alpha, D_alpha, C0, CS, l):  # noqa: E741
        return cls(alpha=alpha, lam=CS / C0, D_alpha=D_alpha, C0=C0, CS=CS, l=l)

    @property
    def has_physical(self):
        return self.D_alpha is not None


@dataclass
class FrontResult:
    """Front coefficient ``p`` of ``s(tau) = p * tau**(alpha/2)`` and how it was found."""

    p: float
    residual: float
    method: str  # "transcendental" or "iterative"
    iterations: int
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {
            "p": self.p,
            "residual": self.residual,
            "method": self.method,
            "iterations": self.iterations,
            "trace": list(self.trace),
        }


def to_dimensionless(t, X, C, params):
    """Map physical ``(t, X, C)`` to dimensionless ``(tau, x, c)``."""
    if not params.has_physical:
        raise ValueError("to_dimensionless needs the physical block of ModelParams")
    tau = t * (params.D_alpha / params.l**2) ** (1.0 / params.alpha)
    return tau, X / params.l, C / params.CS


def transcendental_residual(p, alpha, lam):
    """Cross-multiplied form of the front equation; its positive root is ``p``."""
    h = 0.5 * alpha
    lhs = lam * gamma_fn(1.0 - h) * wright(-p, -h, 1.0 - h)
    rhs = p * gamma_fn(1.0 + h) * (1.0 - wright(-p, -h, 1.0))
    return lhs - rhs


def solve_p_transcendental(params, tol=1e-10, max_iter=200):
    """Front coefficient from the transcendental equation.

    Safeguarded Newton on :func:`transcendental_residual` with a central
    difference derivative.  Any Newton step leaving the current sign-change
    bracket is replaced by bisection.

    Returns
    -------
    FrontResult
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    alpha, lam = params.alpha, params.lam
    f = lambda p: transcendental_residual(p, alpha, lam)  # noqa: E731

    lo, hi = P_BRACKET
    f_lo, f_hi = f(lo), f(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise ValueError(f"no sign change of the front equation on [{lo}, {hi}]")

    p = min(max(np.sqrt(2.0 * lam), lo), hi)
    fp = f(p)
    for it in range(1, max_iter + 1):
        if abs(fp) < tol:
            return FrontResult(p=p, residual=abs(fp), method="transcendental", iterations=it - 1)
        # shrink the bracket around the root
        if np.sign(fp) == np.sign(f_lo):
            lo, f_lo = p, fp
        else:
            hi, f_hi = p, fp

        h = 1e-7 * max(1.0, p)
        dfp = (f(p + h) - f(p - h)) / (2.0 * h)
        step_ok = dfp != 0.0 and np.isfinite(dfp)
        if step_ok:
            p_new = p - fp / dfp
            step_ok = lo < p_new < hi
        if not step_ok:
            p_new = 0.5 * (lo + hi)
        p = p_new
        fp = f(p)
    if abs(fp) < tol:
        return FrontResult(p=p, residual=abs(fp), method="transcendental", iterations=max_iter)
    raise ConvergenceError(f"front equation unsolved after {max_iter} iterations (|f|={abs(fp):.3e})")


def exact_concentration(x, tau, p, alpha):
    """Analytical concentration at ``(x, tau)`` for ``0 <= x <= p * tau**(alpha/2)``."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    s = p * tau ** (0.5 * alpha)
    if x < 0 or x > s * (1.0 + 1e-12):
        raise ValueError(f"x={x} outside [0, s(tau)={s}]")
    h = 0.5 * alpha
    num = 1.0 - wright(-x / tau**h, -h, 1.0)
    den = 1.0 - wright(-p, -h, 1.0)
    return num / den


def exact_profile(u, p, alpha):
    """Analytical concentration against the front-fixed coordinate ``u = x / s(tau)``.

    The similarity solution does not depend on ``tau`` once expressed in ``u``,
    so one profile serves every time layer.
    """
    u = np.asarray(u, dtype=float)
    h = 0.5 * alpha
    den = 1.0 - wright(-p, -h, 1.0)
    flat = [(1.0 - wright(-p * ui, -h, 1.0)) / den for ui in u.ravel()]
    return np.array(flat).reshape(u.shape)


def exact_front(tau, p, alpha):
    """Front position ``s(tau) = p * tau**(alpha/2)``."""
    if np.any(np.asarray(tau) < 0):
        raise ValueError("tau must be non-negative")
    return p * np.asarray(tau, dtype=float) ** (0.5 * alpha)
