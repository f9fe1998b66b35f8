"""Blend parameter ``phi`` for the fractional quadrature.

``predict_phi`` evaluates a small fixed feed-forward network
(3 inputs + bias -> 5 tanh + bias -> 5 sigmoid + bias -> 1 sigmoid) with the
published trained weights.  ``calibrate_phi`` recovers the optimal ``phi``
for one configuration by direct minimisation against the analytical
solution; this is how training targets for such a network are produced.
"""

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .analytic import ModelParams, exact_profile, solve_p_transcendental
from .scheme import build_mesh, march, recover

__all__ = [
    "PhiNetWeights",
    "DEFAULT_WEIGHTS",
    "act_tanh",
    "act_sig",
    "append_bias",
    "predict_phi",
    "calibration_functional",
    "golden_section",
    "calibrate_phi",
    "training_set",
    "TRAINING_DU",
    "TRAINING_LAMBDA",
    "TRAINING_ALPHA",
]

_W1 = [
    [6.02145, 2.14126, 0.677927, -13.8801, 1.52535],
    [-0.514316, 0.150222, -0.853299, 0.162208, -0.88522],
    [0.80747, -7.26578, -0.0383236, -0.307713, -5.98303],
    [-0.140854, 2.3685, 0.0361885, -0.284572, 5.68518],
]
_W2 = [
    [-7.18748, -2.4983, -0.72953, -1.40697, 0.748731],
    [-8.66802, -2.94062, 0.0381687, -0.909638, 0.268698],
    [-1.77908, 0.0049326, -4.28149, -0.264405, 0.382544],
    [11.2767, 2.75494, -1.16368, -2.87708, -1.78879],
    [-7.43406, -1.53303, -1.25246, -1.20859, 1.33437],
    [-0.590041, -0.72953, 1.50501, -2.31013, -0.662821],
]
_W3 = [[10.4966], [3.34645], [3.03464], [4.17581], [-3.59841], [-0.490178]]

# Sums of all entries, frozen when the matrices were typed in.
WEIGHT_CHECKSUMS = {"W1": -10.5774521, "W2": -33.9016507, "W3": 16.964912}

TRAINING_DU = (1 / 25, 1 / 50, 1 / 75, 1 / 100)
TRAINING_LAMBDA = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0)
TRAINING_ALPHA = (0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class PhiNetWeights:
    """Weight matrices, rows indexed by the source layer (bias row last)."""

    W1: np.ndarray
    W2: np.ndarray
    W3: np.ndarray

    def __post_init__(self):
        shapes = {"W1": (4, 5), "W2": (6, 5), "W3": (6, 1)}
        for name, shape in shapes.items():
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def checksums(self):
        return {name: float(getattr(self, name).sum()) for name in ("W1", "W2", "W3")}

    def to_json(self):
        return json.dumps({name: getattr(self, name).tolist() for name in ("W1", "W2", "W3")})

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        return cls(W1=doc["W1"], W2=doc["W2"], W3=doc["W3"])


DEFAULT_WEIGHTS = PhiNetWeights(W1=_W1, W2=_W2, W3=_W3)


def act_tanh(v):
    return np.tanh(np.asarray(v, dtype=float))


def act_sig(v):
    return expit(np.asarray(v, dtype=float))


def append_bias(v):
    return np.append(np.asarray(v, dtype=float), 1.0)


def predict_phi(delta_u, lam, alpha, weights=DEFAULT_WEIGHTS):
    """Network estimate of the optimal trapezoidal share, strictly inside (0, 1)."""
    x = np.array([delta_u, lam, alpha, 1.0])
    h1 = act_tanh(x @ weights.W1)
    h2 = act_sig(append_bias(h1) @ weights.W2)
    out = act_sig(append_bias(h2) @ weights.W3)
    return float(out[0])


# -- calibration -------------------------------------------------------------


def calibration_functional(phi, params, mesh, reference=None):
    """Sum of absolute deviations ``|c_num - c_exact|`` over every mesh node.

    ``reference`` is the analytical profile against ``u``; it is time
    independent, so pass it in when evaluating many ``phi``.  Non-finite
    results (unstable runs) map to ``inf``.
    """
    if reference is None:
        reference = exact_profile(mesh.u, mesh.p, mesh.alpha)
    with np.errstate(all="ignore"):
        c = recover(march(params, mesh, phi)).c
        val = float(np.abs(c - reference[:, None]).sum())
    return val if math.isfinite(val) else math.inf


def golden_section(f, a, b, tol=1e-3):
    """Minimise ``f`` on the interval between ``a`` and ``b`` (either order).

    Returns the midpoint of the final bracket, whose width is below ``tol``.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while abs(b - a) > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def calibrate_phi(params, mesh, p_exact=None, *, scan_step=0.01, tol=1e-3, reverse=False):
    """Minimiser over ``phi in [0, 1]`` of :func:`calibration_functional`.

    A coarse scan with step ``scan_step`` picks the starting bracket (the
    functional need not be unimodal); golden-section search then narrows it
    to width ``tol``.  ``reverse`` runs the search from the upper end.
    """
    if p_exact is not None and not math.isclose(p_exact, mesh.p, rel_tol=1e-12):
        raise ValueError("mesh must be built with the analytical front coefficient")
    reference = exact_profile(mesh.u, mesh.p, mesh.alpha)
    cache = {}

    def F(phi):
        phi = min(max(phi, 0.0), 1.0)
        if phi not in cache:
            cache[phi] = calibration_functional(phi, params, mesh, reference)
        return cache[phi]

    steps = int(round(1.0 / scan_step))
    grid = np.linspace(0.0, 1.0, steps + 1)
    values = np.array([F(float(g)) for g in grid])
    best = int(np.argmin(values))
    lo = float(grid[max(best - 1, 0)])
    hi = float(grid[min(best + 1, steps)])
    if reverse:
        lo, hi = hi, lo
    phi = golden_section(F, lo, hi, tol=tol)
    # the scan node itself may beat the interior search on a kinked functional
    return phi if F(phi) <= values[best] else float(grid[best])


def training_set(du_values=TRAINING_DU, lam_values=TRAINING_LAMBDA, alpha_values=TRAINING_ALPHA):
    """Yield ``(delta_u, lam, alpha, phi_opt)`` over the product grid, with ``n = 4m``.

    Long running: one full calibration per grid point.
    """
    for du, lam, alpha in itertools.product(du_values, lam_values, alpha_values):
        params = ModelParams(alpha=alpha, lam=lam)
        p = solve_p_transcendental(params).p
        m = int(round(1.0 / du))
        mesh = build_mesh(m, 4 * m, p, alpha)
        yield du, lam, alpha, calibrate_phi(params, mesh, p)
