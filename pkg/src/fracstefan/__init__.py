"""Numerical and analytical solutions of the one-phase fractional Stefan problem."""

from .analytic import (
    FrontResult,
    ModelParams,
    exact_concentration,
    exact_front,
    exact_profile,
    solve_p_transcendental,
    to_dimensionless,
)
from .p_iter import PIterConfig, estimate_p_from_grid, find_p
from .phi_net import DEFAULT_WEIGHTS, PhiNetWeights, calibrate_phi, predict_phi
from .scheme import MeshSpec, SolutionGrid, build_mesh, march, recover, solve_tridiagonal
from .special import gamma_fn, wright

__version__ = "0.1.0"
