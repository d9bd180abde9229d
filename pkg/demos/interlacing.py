"""Zeros of R_n = Re w_n and S_n = Im w_n, with w_n = z^n p*(z)/p(z).

When the phase of w_n increases monotonically, R_n and S_n each vanish
exactly 2(n - l) times and their zeros interlace.  The phase rate is
n minus a sum of Poisson kernels, so a zero of p near the circle can
make it negative for small n.
"""
import numpy as np

from cfz.blaschke import (BlaschkeDatum, eval_R_S, monotone_degree, phase_rate, sign_change_points,
                          strictly_interlace)
from cfz.numerics import ComplexPoly

d = BlaschkeDatum(ComplexPoly.from_roots([0.8, -0.3 + 0.4j]))
grid = np.linspace(0, 2 * np.pi, 8192, endpoint=False)
print("phase rate is guaranteed positive from n =", monotone_degree(d))

for n in range(d.l + 2, d.l + 14, 2):
    N = 64 * (n + d.l)
    zr = sign_change_points(lambda p: eval_R_S(d, n, p)[0], N)
    zs = sign_change_points(lambda p: eval_R_S(d, n, p)[1], N)
    rate = phase_rate(d, n, grid).min()
    print(f"n = {n:2d}: min rate {rate:6.2f}, zeros R {zr.size:2d}, S {zs.size:2d}, "
          f"expected {2 * (n - d.l):2d}, interlace {strictly_interlace(zr, zs)}")
