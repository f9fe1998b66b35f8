"""
Front coefficient without the analytical solution
=================================================

``find_p`` bisects the fixed point of p -> p_s, where p_s is re-estimated
from the Stefan condition on a grid marched with coefficient p.  Running it
with phi = 1 and with the network phi gives the two numerical tables.
"""

from fracstefan import ModelParams, find_p, solve_p_transcendental

cells = [(0.25, 1 / 3), (0.5, 1 / 3), (0.75, 2 / 3), (1.0, 1.0)]
print("alpha  lambda   analytical   phi=1      network")
for alpha, lam in cells:
    params = ModelParams(alpha=alpha, lam=lam)
    exact = solve_p_transcendental(params).p
    old = find_p(params, 80, 240, 1.0).p
    new = find_p(params, 80, 240, "network").p
    print(f"{alpha:5}  {lam:6.4f}   {exact:.6f}   {old:.6f}   {new:.6f}")

res = find_p(ModelParams(alpha=0.5, lam=1 / 3), 80, 240, "network")
print(f"\n{res.iterations} bisection steps, final residual {res.residual:.2e}")
for step in res.trace:
    print(f"  p={step['p']:.6f}  p_s={step['phi_of_p']:.6f}  |1 - p_s/p|={step['residual']:.2e}")
