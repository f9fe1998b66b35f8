"""
Analytical front coefficient
============================

The dissolution front moves as s(tau) = p tau**(alpha/2).  For each
subdiffusion order alpha and Stefan number lambda, p is the root of a
transcendental equation built from Wright functions.
"""

import numpy as np

from fracstefan import ModelParams, exact_front, exact_profile, solve_p_transcendental

alphas = (0.25, 0.5, 0.75, 1.0)
lambdas = (1 / 3, 2 / 3, 1.0)

print("lambda  " + "  ".join(f"alpha={a:<5}" for a in alphas))
for lam in lambdas:
    row = [solve_p_transcendental(ModelParams(alpha=a, lam=lam)).p for a in alphas]
    print(f"{lam:6.4f}  " + "  ".join(f"{p:10.6f}" for p in row))

# the front reaches s = 1 at tau* = p**(-2/alpha)
params = ModelParams(alpha=0.5, lam=1 / 3)
p = solve_p_transcendental(params).p
tau_star = p ** (-2 / params.alpha)
print(f"\nalpha=0.5, lambda=1/3: p={p:.6f}, tau*={tau_star:.4f}, s(tau*)={exact_front(tau_star, p, 0.5):.12f}")

# in the front-fixed coordinate u = x / s(tau) the profile does not depend on tau
u = np.linspace(0, 1, 6)
print("u        :", np.array2string(u, precision=2))
print("c(u)     :", np.array2string(exact_profile(u, p, 0.5), precision=5))
