"""Front coefficient from the numerical scheme alone.

The front reaches the far edge of the slab (``s = 1``) at the end time, so a
consistent ``p`` satisfies ``|1 - p_s * tau_n**(alpha/2)| < epsilon``.  Here
``p_s`` is the value re-estimated from the fractional Stefan condition on a
grid marched with front coefficient ``p``.  Since ``tau_n = p**(-2/alpha)``
the test reduces to ``|1 - p_s / p| < epsilon``.  The fixed point of
``p -> p_s`` is bracketed and bisected.
"""

import math
from dataclasses import dataclass

import numpy as np

from .analytic import FrontResult
from .phi_net import predict_phi
from .scheme import DEFAULT_TAU0_FACTOR, build_mesh, march, recover
from .special import ConvergenceError, gamma_fn

__all__ = ["PIterConfig", "DegenerateGridError", "BracketError", "estimate_p_from_grid", "find_p", "resolve_phi"]


class DegenerateGridError(ValueError):
    """Every concentration step at the front was non-positive."""


class BracketError(ValueError):
    """The bracket does not enclose a fixed point."""


@dataclass(frozen=True)
class PIterConfig:
    epsilon: float = 1e-3
    bracket_lo: float = 0.1
    bracket_hi: float = 3.0
    max_iters: int = 60
    tau0_factor: float = DEFAULT_TAU0_FACTOR

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        lo, hi = sorted((self.bracket_lo, self.bracket_hi))
        if not 0 < lo < hi:
            raise ValueError("need 0 < bracket_lo < bracket_hi")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


def estimate_p_from_grid(grid, lam, *, include_initial=True):
    """Layer-averaged front coefficient from the Stefan condition.

    Uses the one-sided step ``c[m, j] - c[m-1, j]`` at ``u = 1``.  Negative
    steps are clamped to zero.  With ``include_initial`` the regularised
    layer ``j = 0`` counts in the average.
    """
    mesh = grid.mesh
    a = grid.alpha
    c = recover(grid).c
    dc = np.clip(c[mesh.m] - c[mesh.m - 1], 0.0, None)
    if not include_initial:
        dc = dc[1:]
    if not np.any(dc > 0):
        raise DegenerateGridError("no positive concentration step at the front")
    k = lam * gamma_fn(1.0 - 0.5 * a) / (gamma_fn(1.0 + 0.5 * a) * mesh.delta_u)
    return float(np.mean(np.sqrt(k * dc)))


def resolve_phi(phi_mode, m, params):
    """``"network"`` -> network prediction for ``delta_u = 1/m``; a number -> itself."""
    if isinstance(phi_mode, str):
        if phi_mode != "network":
            raise ValueError(f"unknown phi mode {phi_mode!r}")
        return predict_phi(1.0 / m, params.lam, params.alpha)
    phi = float(phi_mode)
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0, 1], got {phi}")
    return phi


def find_p(params, m, n, phi_mode="network", cfg=PIterConfig()):
    """Bisect the fixed point of the estimator map ``p -> p_s``.

    Stops at the first midpoint meeting ``|1 - p_s / p| < cfg.epsilon``.
    The trace lists ``{p, phi_of_p, residual}`` for both bracket ends
    followed by every midpoint.

    Returns
    -------
    FrontResult
        ``method="iterative"``, ``iterations`` counts bisection steps.
    """
    phi = resolve_phi(phi_mode, m, params)
    trace = []

    def evaluate(p):
        mesh = build_mesh(m, n, p, params.alpha, cfg.tau0_factor)
        with np.errstate(all="ignore"):
            ps = estimate_p_from_grid(march(params, mesh, phi), params.lam)
        if not math.isfinite(ps):
            raise ConvergenceError(f"scheme produced a non-finite estimate at p={p}")
        residual = abs(1.0 - ps / p)
        trace.append({"p": p, "phi_of_p": ps, "residual": residual})
        return ps - p, residual

    lo, hi = sorted((cfg.bracket_lo, cfg.bracket_hi))
    g_lo, res_lo = evaluate(lo)
    g_hi, res_hi = evaluate(hi)
    for p_end, res in ((lo, res_lo), (hi, res_hi)):
        if res < cfg.epsilon:
            return FrontResult(p=p_end, residual=res, method="iterative", iterations=0, trace=trace)
    if np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(f"p_s - p keeps its sign on [{lo}, {hi}]")

    for it in range(1, cfg.max_iters + 1):
        mid = 0.5 * (lo + hi)
        g_mid, res = evaluate(mid)
        if res < cfg.epsilon:
            return FrontResult(p=mid, residual=res, method="iterative", iterations=it, trace=trace)
        if np.sign(g_mid) == np.sign(g_lo):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    raise ConvergenceError(f"no p met the criterion within {cfg.max_iters} bisection steps")
