"""The two-coefficient problem tau = (1, 1).

Fix cos n phi + cos (n-1) phi and ask how small the sup norm can get
once every lower frequency is free.  The CF datum predicts the answer
and the shape of the optimum; the Remez solver computes it exactly.
"""
import numpy as np

from cfz import remez
from cfz.blaschke import AsymZolotarev, BlaschkeDatum
from cfz.cf_schur import solve_cf

taus = np.array([1.0, 1.0])

# CF datum: a scaled Blaschke product gamma p/p* whose expansion starts 1 + z
sol = solve_cf(taus)
datum = BlaschkeDatum.from_cf(sol)
print("l =", sol.l, " gamma =", sol.gamma, " p =", sol.p.coeffs.real)
print("zero of p at", -sol.p.coeffs[0].real, "-> r =", datum.r)

# exact minimal deviation vs the asymptotic prediction |gamma|
print("\n  n        E_n            E_n - |gamma|      sup |Z_n - asymptotic|")
for n in (4, 8, 12, 16, 20, 24, 28):
    res = remez.solve(remez.FixedHead(n, taus), polish=2)
    sup_gap, _ = remez.compare_asymptotic(res, AsymZolotarev(datum, n))
    print(f"{n:3d}  {res.E_n:.15f}  {res.E_n - sol.gamma_abs: .3e}  {sup_gap:.3e}")

# the gaps shrink by about r^2 = 0.382 per degree, and E_n
# approaches |gamma| from below: the finite problem does better
# than the H-infinity bound suggests
print("\nr^2 =", datum.r**2)

# the optimum equioscillates on 2(n - l) points
res = remez.solve(remez.FixedHead(10, taus))
print("\nn = 10 reference:", np.round(res.reference, 4))
print("error there:     ", np.round(res(res.reference), 6))
