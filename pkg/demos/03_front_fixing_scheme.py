"""
Front-fixing finite differences
===============================

The moving domain is mapped onto u in [0, 1] and the integro-differential
form of the problem is marched layer by layer.  Each layer is a tridiagonal
solve; the history integral blends a rectangle rule with a fractional
trapezoidal rule through phi.
"""

import numpy as np

from fracstefan import ModelParams, build_mesh, exact_profile, march, recover, solve_p_transcendental

params = ModelParams(alpha=0.5, lam=1 / 3)
p = solve_p_transcendental(params).p
mesh = build_mesh(m=80, n=240, p=p, alpha=params.alpha)
print(f"du={mesh.delta_u}, dtau={mesh.delta_tau:.5f}, tau*={mesh.tau_star:.4f}")

# phi = 1 is the pure trapezoidal rule
grid = march(params, mesh, phi=1.0)
phys = recover(grid)
print("c at the front on a few layers:", phys.c[-1, [1, 60, 240]])
print("x at the front on the last layer:", phys.x[-1, -1])

# compare with the exact solution, skipping the regularised layer j = 0
err = np.abs(phys.c - exact_profile(mesh.u, p, params.alpha)[:, None])[:, 1:]
i, j = np.unravel_index(err.argmax(), err.shape)
print(f"max abs error {err.max():.4f} at u={mesh.u[i]:.3f}, layer {j + 1} of {mesh.n}")
print("max abs error over the last half of the layers:", err[:, mesh.n // 2 :].max())
