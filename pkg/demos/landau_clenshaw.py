"""Coefficient functionals: eta, Landau's constants and Clenshaw's ratio.

eta(mu) bounds |mu_l tau_0 + ... + mu_0 tau_l| for functions bounded by
one in the disk.  For trigonometric polynomials the same constant bounds
the functional against E_n, but only in the limit n -> infinity.
"""
import numpy as np

from cfz import functionals as fn

for l in range(5):
    print(f"G_{l} = {fn.landau_constant(l):.10f}   eta(1,...,1) = {fn.eta(np.ones(l + 1)).eta:.10f}")

# the extremal function for l = 1 is (z + 1/2)/(1 + z/2)
d = fn.landau_extremal(1)
print("\nl = 1 extremal coefficients:", d.taylor(3).taus.real)

# which branch handles which weights
for mus in ([1, 1], [0, 1], [1, 0, 3], [1j, 2, 0.5]):
    s = fn.eta(mus)
    print(f"mu = {mus}: eta = {s.eta:.10f} via {s.branch}")

# |F(c)| / E_n(c) for the extremal head c: above eta at small n,
# converging to it geometrically
print("\n  n   ratio - 1.25")
for n in (3, 5, 8, 12, 16, 24, 31):
    print(f"{n:3d}   {fn.least_upper_bound_ratio([1, 1], n) - 1.25: .3e}")

# Clenshaw: ||tau_0 cos n phi + tau_1 cos (n-1) phi|| / E_n stays below G_1
rng = np.random.default_rng(0)
ratios = [fn.clenshaw_ratio(rng.uniform(-1, 1, 2), 30) for _ in range(20)]
print("\nmax Clenshaw ratio over 20 random heads:", max(ratios))
print("Landau head (1/2, 3/4):", fn.clenshaw_ratio([0.5, 0.75], 30))
