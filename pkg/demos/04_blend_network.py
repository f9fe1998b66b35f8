"""
Choosing the blend parameter
============================

A small fixed network maps (du, lambda, alpha) to the trapezoidal share phi.
Its target is the phi minimising the summed absolute error against the
analytical solution, which ``calibrate_phi`` recovers directly.
"""

import numpy as np

from fracstefan import ModelParams, build_mesh, calibrate_phi, predict_phi, solve_p_transcendental
from fracstefan.phi_net import DEFAULT_WEIGHTS, calibration_functional

print("weight shapes:", DEFAULT_WEIGHTS.W1.shape, DEFAULT_WEIGHTS.W2.shape, DEFAULT_WEIGHTS.W3.shape)

for alpha in (0.25, 0.5, 0.75, 1.0):
    phis = [predict_phi(1 / 80, lam, alpha) for lam in (1 / 3, 2 / 3, 1.0)]
    print(f"alpha={alpha:4}: phi =", np.round(phis, 4))

# direct calibration on a training-size mesh (n = 4m)
params = ModelParams(alpha=0.5, lam=1 / 3)
p = solve_p_transcendental(params).p
mesh = build_mesh(25, 100, p, params.alpha)
phi_star = calibrate_phi(params, mesh, p)
print(f"\ncalibrated phi = {phi_star:.4f}, network phi = {predict_phi(1 / 25, 1 / 3, 0.5):.4f}")
for phi in (0.0, phi_star, 1.0):
    print(f"F({phi:.4f}) = {calibration_functional(phi, params, mesh):.4g}")
