"""
The two-parameter Wright function
=================================

W(z; gamma, delta) = sum_k z**k / (k! Gamma(gamma k + delta)) is the building
block of the analytical solution.  Two special cases make easy sanity checks.
"""

import math

import numpy as np

from fracstefan import wright

# gamma = 0, delta = 1 collapses the series to the exponential
for z in (-2.0, 0.0, 1.5):
    print(f"W({z:+.1f}; 0, 1) = {wright(z, 0.0, 1.0):.15f}   exp = {math.exp(z):.15f}")

# gamma = -1/2, delta = 1 gives erfc(z / 2) on the negative axis
z = np.linspace(0, 3, 7)
table = np.array([[wright(-x, -0.5, 1.0), math.erfc(x / 2)] for x in z])
print("\n   z     W(-z;-1/2,1)      erfc(z/2)")
for x, (w, e) in zip(z, table):
    print(f"{x:5.2f}  {w:.14f}  {e:.14f}")

# the reciprocal gamma is entire: terms sitting on a pole simply vanish
print("\nW(0.4; -1/2, 1) =", wright(0.4, -0.5, 1.0))
