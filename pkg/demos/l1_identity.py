"""L1 minimal deviation with prescribed leading coefficients.

For weights whose square-root head s* = sum lambda_j z^j has no zeros
in the closed disk, the least L1 norm of Re{sum mu_j e^{i(n-j)phi}} + t
over lower-degree t equals 4 sum |lambda_j|^2, for every n >= 2l + 2.
"""
import numpy as np

from cfz import functionals as fn

for mus in ([1], [1, 1], [1, 1, 1], [2, 0.5j]):
    lam, _, zero_free = fn.sqrt_head(mus)
    print(f"mu = {mus}: lambda = {np.round(lam, 6)}, s* zero-free in the disk: {zero_free}")
    for n in (8, 16, 32):
        computed, predicted = fn.l1_min_deviation(mus, n)
        print(f"mu = {mus}, n = {n:2d}: {computed:.12f} vs {predicted:.12f}")

# the grid LP snaps the zeros of the error to grid nodes, so the exact
# L1 norm of its minimizer is off by a fraction that does not shrink
# with n; Newton steps on the exact objective remove it
print("\nno polish, mu = (1,1), n = 16:", fn.l1_min_deviation([1, 1], 16, newton=0)[0])
