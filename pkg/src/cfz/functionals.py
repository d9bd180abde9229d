"""Sharp bounds for coefficient functionals |sum_j mu_{l-j} tau_j|.

eta_l(mu) is the maximum of |mu_l a_0 + ... + mu_0 a_l| over functions
f = sum a_j z^j bounded by one in the disk.  Two closed-form branches are
handled directly:

* the square-root branch, when s*(z) = sum lambda_j z^j (the truncated
  square root of mu(z)) has no zeros in the closed disk:
  eta = sum |lambda_j|^2, attained by s/s*;
* the positive branch, when Re{mu_0 e^{il phi} + ... + mu_{l-1} e^{i phi}
  + mu_l/2} >= 0: eta = |mu_l|, attained by a unimodular constant.

Anything else goes to a direct search over Blaschke products of degree
<= l (small l only).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.optimize import linprog, minimize

from . import remez
from .blaschke import BlaschkeDatum, reciprocal, sign_change_points, sup_norm
from .cf_schur import as_sequence
from .numerics import ComplexPoly, ConvergenceError, poly_roots, series_divide

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_L = 3


class UnsupportedCaseError(ValueError):
    pass


class BranchError(ValueError):
    pass


@dataclass(frozen=True)
class EtaSolution:
    eta: float
    branch: str
    extremal: BlaschkeDatum
    lambdas: np.ndarray = None

    def coefficients(self, order):
        """Taylor coefficients c_0..c_order of the extremal function."""
        return self.extremal.taylor(order).taus


def _weights(mus):
    mus = np.atleast_1d(np.asarray(mus, dtype=complex))
    if mus.ndim != 1 or mus.size == 0 or not np.any(mus):
        raise ValueError("weights must be a nonempty, not identically zero array")
    return mus


def functional(mus, c):
    """sum_j mu_{l-j} c_j."""
    mus = _weights(mus)
    c = np.asarray(c, dtype=complex)[: mus.size]
    return complex(np.dot(mus[::-1][: c.size], c))


def sqrt_head(mus):
    """Taylor coefficients of the principal sqrt(mu_0 + ... + mu_l z^l).

    Returns ``(lambdas, s, zero_free)`` where s is the reciprocal of
    s*(z) = sum lambda_j z^j and ``zero_free`` says whether s* has no zero
    in |z| <= 1 (margin 1e-9).
    """
    mus = _weights(mus)
    if mus[0] == 0:
        raise BranchError("mu_0 = 0: no analytic square root at the origin")
    l = mus.size - 1
    lam = np.zeros(l + 1, dtype=complex)
    lam[0] = np.sqrt(mus[0])
    for k in range(1, l + 1):
        lam[k] = (mus[k] - np.dot(lam[1:k], lam[k - 1 : 0 : -1])) / (2 * lam[0])
    sstar = ComplexPoly(lam)
    if sstar.degree == 0:
        zero_free = True
    else:
        try:
            zeros = poly_roots(sstar)
        except ConvergenceError as exc:
            zeros = exc.best
        zero_free = bool(np.min(np.abs(zeros)) > 1 + 1e-9)
    return lam, reciprocal(sstar), zero_free


def positive_case(mus, nodes=4096, slack=1e-12):
    """Grid check of Re{mu_0 e^{il phi} + ... + mu_{l-1} e^{i phi} + mu_l/2} >= 0."""
    mus = _weights(mus)
    l = mus.size - 1
    c = mus.copy()
    c[l] = c[l] / 2
    # coefficient of e^{ik phi} is mu_{l-k}
    def g(phi):
        z = np.exp(1j * np.asarray(phi))
        return np.real(np.polyval(c, z))

    phi = 2 * np.pi * np.arange(nodes) / nodes
    v = g(phi)
    scale = max(float(np.sum(np.abs(mus))), 1.0)
    i = int(np.argmin(v))
    lo = v[i]
    if lo < scale * 1e-6:
        h = 2 * np.pi / nodes
        res = minimize(lambda x: g(x[0]), [phi[i]], method="Nelder-Mead",
                       bounds=[(phi[i] - h, phi[i] + h)], options={"xatol": 1e-13, "fatol": 1e-16})
        lo = min(lo, float(res.fun))
    return bool(lo >= -slack * scale)


def _datum_from_s(lam):
    """Monic p and gamma with gamma p/p* = s/s*."""
    s = reciprocal(ComplexPoly(lam)).trimmed()
    lead = s.leading
    p = ComplexPoly(s.coeffs / lead)
    # s/s* = (lead / conj(lead)) p/p*
    return p, lead / np.conj(lead)


def _blaschke_coeffs(zeros, order):
    """Taylor coefficients of prod_k (z - a_k)/(1 - conj(a_k) z) through ``order``."""
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0
    k = np.arange(order)
    for a in zeros:
        # (z - a)/(1 - conj(a) z) = -a + (1 - |a|^2) sum_{k>=1} conj(a)^{k-1} z^k
        f = np.empty(order + 1, dtype=complex)
        f[0] = -a
        f[1:] = (1 - abs(a) ** 2) * np.conj(a) ** k
        out = np.convolve(out, f)[: order + 1]
    return out


def _to_disk(w):
    return w / (1 + np.abs(w))


def brute_force_eta(mus, starts=20, seed=0):
    """Direct maximization of |functional| over Blaschke products of degree <= l.

    Zeros are parametrized as w / (1 + |w|) with w unconstrained; each
    degree d = 1..l gets ``starts`` BFGS runs on -|functional|^2.
    """
    mus = _weights(mus)
    l = mus.size - 1
    if l > BRUTE_FORCE_MAX_L:
        raise UnsupportedCaseError(f"brute force is limited to l <= {BRUTE_FORCE_MAX_L}")
    rng = np.random.default_rng(seed)
    rev = mus[::-1]
    best_val, best_zeros = abs(mus[l]), np.zeros(0, dtype=complex)
    for d in range(1, l + 1):

        def neg(x, d=d):
            c = _blaschke_coeffs(_to_disk(x[:d] + 1j * x[d:]), l)
            return -abs(np.dot(rev, c)) ** 2

        for _ in range(starts):
            res = minimize(neg, rng.normal(scale=1.5, size=2 * d), method="BFGS", options={"gtol": 1e-12})
            val = np.sqrt(-res.fun)
            if val > best_val:
                best_val, best_zeros = val, _to_disk(res.x[:d] + 1j * res.x[d:])
    p = ComplexPoly.from_roots(best_zeros) if best_zeros.size else ComplexPoly([1.0])
    val = functional(mus, _blaschke_coeffs(best_zeros, l))
    gamma = np.conj(val) / abs(val) if val != 0 else 1.0
    return EtaSolution(float(best_val), "brute_force", BlaschkeDatum(p, gamma))


def eta(mus, method="auto"):
    """Sharp bound eta_l(mu) with its extremal function.

    Branch order: square root, then positive, then brute force (l <= 3).
    ``method="brute_force"`` skips the closed forms.
    """
    mus = _weights(mus)
    l = mus.size - 1
    if method == "brute_force":
        return brute_force_eta(mus)
    try:
        lam, s, zero_free = sqrt_head(mus)
    except BranchError:
        zero_free = False
    if zero_free:
        p, phase = _datum_from_s(lam)
        c = series_divide(p.coeffs, reciprocal(p).coeffs, l) * phase
        val = functional(mus, c)
        # rotate so the functional comes out real and positive
        gamma = phase * np.conj(val) / abs(val)
        return EtaSolution(float(np.sum(np.abs(lam) ** 2)), "sqrt_case", BlaschkeDatum(p, gamma), lam)
    if positive_case(mus):
        eps = np.conj(mus[l]) / abs(mus[l])
        return EtaSolution(float(abs(mus[l])), "positive_case", BlaschkeDatum(ComplexPoly([1.0]), eps))
    log.info("eta: no closed-form branch applies, searching directly")
    return brute_force_eta(mus)


def landau_constant(l):
    """G_l = 1 + sum_{j=1}^{l} ((2j-1)!! / (2j)!!)^2."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return float(sum(Fraction(comb(2 * j, j), 4**j) ** 2 for j in range(l + 1)))


def _half_binomials(l):
    """(-1)^nu binom(-1/2, nu) = binom(2 nu, nu) / 4^nu, nu = 0..l."""
    return np.array([comb(2 * v, v) / 4**v for v in range(l + 1)])


def landau_extremal(l, tol=1e-10):
    """Blaschke ratio sum d_nu z^{l-nu} / sum d_nu z^nu attaining G_l."""
    if l < 1:
        raise ValueError("l must be >= 1")
    d = _half_binomials(l)
    datum = BlaschkeDatum(ComplexPoly(d[::-1]), 1.0)
    total = float(np.real(np.sum(datum.taylor(l).taus)))
    if abs(total - landau_constant(l)) > tol:
        # sums started at nu = 1 leave a denominator vanishing at 0
        raise ValueError(f"coefficient sum {total!r} != G_l = {landau_constant(l)!r}; "
                         "the nu-from-1 variant has no Taylor expansion at 0")
    return datum


def least_upper_bound_ratio(mus, n, **opts):
    """|functional(c)| / E_n(c) for the extremal head c of eta(mus).

    The ratio tends to eta geometrically, but for small n it can exceed
    eta: E_n(c) may fall below |gamma(c)| = 1.  ``opts`` go to
    :func:`cfz.remez.solve` (``polish=2`` by default, since the ratio
    is compared against eta at rounding level).
    """
    opts.setdefault("polish", 2)
    mus = _weights(mus)
    l = mus.size - 1
    if n <= l + 1:
        raise ValueError("need n > l + 1")
    sol = eta(mus)
    c = sol.extremal.taylor(l).taus
    res = remez.solve(remez.FixedHead(n, c), **opts)
    return abs(functional(mus, c)) / res.E_n


def clenshaw_ratio(taus, n, **opts):
    """||sum tau_j cos (n-j) phi|| / E_n(tau) for real tau."""
    opts.setdefault("polish", 2)
    seq = as_sequence(taus)
    if not seq.is_real:
        raise ValueError("Clenshaw's ratio is defined for real coefficients")
    l = seq.m
    if n <= l + 1:
        raise ValueError("need n > l + 1")
    t = seq.taus.real
    j = np.arange(l + 1)

    def trunc(phi):
        return np.cos(np.multiply.outer(phi, n - j)) @ t

    num, _ = sup_norm(trunc, n, nodes=max(4096, 32 * n))
    res = remez.solve(remez.FixedHead(n, t), **opts)
    return num / res.E_n


def _zeros(poly, nodes):
    return sign_change_points(poly, nodes)


def l1_norm_trig(poly, nodes=None):
    """Exact integral of |poly| over one period.

    Sign changes are located on a grid and refined by root bracketing; on
    each arc between zeros the antiderivative is evaluated in closed form.
    """
    k = np.arange(1, poly.a.size)

    def F(phi):
        phi = np.asarray(phi, dtype=float)
        arg = np.multiply.outer(phi, k)
        return poly.a[0] * phi + np.sin(arg) @ (poly.a[1:] / k) - np.cos(arg) @ (poly.b[1:] / k)

    zeros = _zeros(poly, nodes or 32 * max(poly.degree, 1))
    if zeros.size == 0:
        return float(abs(F(2 * np.pi) - F(0.0)))
    ends = np.append(zeros, zeros[0] + 2 * np.pi)
    return float(np.sum(np.abs(np.diff(F(ends)))))


def _l1_newton_step(poly, N, nodes):
    """Newton step for min over t in T_{N-1} of the L1 norm of poly + t.

    The gradient in the coefficient of a basis function b is the integral
    of sgn(e) b; the Hessian is sum over the simple zeros z of e of
    2 b_k(z) b_m(z) / |e'(z)|.
    """
    zeros = _zeros(poly, nodes)
    if zeros.size < 2 * N - 1:
        return None
    k = np.arange(1, N)
    ends = np.append(zeros, zeros[0] + 2 * np.pi)
    mid = 0.5 * (ends[:-1] + ends[1:])
    sg = np.sign(poly(mid))
    lo, hi = ends[:-1], ends[1:]
    # arc integrals of 1, cos k phi, sin k phi
    i0 = hi - lo
    ic = (np.sin(np.multiply.outer(hi, k)) - np.sin(np.multiply.outer(lo, k))) / k
    is_ = (np.cos(np.multiply.outer(lo, k)) - np.cos(np.multiply.outer(hi, k))) / k
    grad = np.concatenate([[sg @ i0], sg @ ic, sg @ is_])
    basis = np.hstack([np.ones((zeros.size, 1)), np.cos(np.multiply.outer(zeros, k)), np.sin(np.multiply.outer(zeros, k))])
    slope = np.abs(poly(zeros, 1))
    hess = basis.T @ (basis * (2 / slope)[:, None])
    try:
        return -np.linalg.solve(hess, grad)
    except np.linalg.LinAlgError:
        return None


def _shift(poly, step, N):
    a = poly.a.copy()
    b = poly.b.copy()
    a[:N] += step[:N]
    b[1:N] += step[N:]
    return remez.TrigPoly(a, b)


def l1_min_deviation(mus, n, nodes=None, newton=8):
    """L1 minimal deviation of Re{sum mu_j e^{i(n-j)phi}} + t, t of degree n-l-1.

    A linear program on a ``nodes``-point grid (default 32 n) gives a
    starting t.  The grid objective is biased low by the trapezoid error
    at the zeros, a fixed fraction of roughly (2 pi n / nodes)^2 that does
    not shrink with n, and its minimizer snaps the zeros to grid nodes.
    Up to ``newton`` Newton steps on the exact L1 objective then polish t;
    ``computed`` is the exact L1 norm of the final polynomial.

    Returns ``(computed, predicted)`` with predicted = 4 sum |lambda_j|^2.
    Only the zero-free square-root case is supported.
    """
    mus = _weights(mus)
    l = mus.size - 1
    if n < 2 * l + 2:
        raise ValueError("need n >= 2l + 2")
    try:
        lam, _, zero_free = sqrt_head(mus)
    except BranchError as exc:
        raise UnsupportedCaseError(str(exc)) from exc
    if not zero_free:
        raise UnsupportedCaseError("square-root head has zeros in the closed disk")
    K = nodes or 32 * n
    phi = 2 * np.pi * np.arange(K) / K
    j = np.arange(l + 1)
    g = np.real(np.exp(1j * np.multiply.outer(phi, n - j)) @ mus)
    N = n - l
    k = np.arange(N)
    B = np.hstack([np.cos(np.multiply.outer(phi, k)), np.sin(np.multiply.outer(phi, k[1:]))])
    nt = B.shape[1]
    w = 2 * np.pi / K
    cost = np.concatenate([np.zeros(nt), np.full(K, w)])
    eye = np.eye(K)
    A_ub = np.vstack([np.hstack([B, -eye]), np.hstack([-B, -eye])])
    b_ub = np.concatenate([-g, g])
    bounds = [(None, None)] * nt + [(0, None)] * K
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"L1 linear program failed: {res.message}")
    a = np.zeros(n + 1)
    b = np.zeros(n + 1)
    # Re{mu e^{i k phi}} = Re mu cos k phi - Im mu sin k phi
    a[n - j] += mus.real
    b[n - j] -= mus.imag
    poly = _shift(remez.TrigPoly(a, b), res.x[:nt], N)
    val = l1_norm_trig(poly, K)
    log.debug("l1: grid objective %.12g, exact norm at grid optimum %.12g", res.fun, val)
    for _ in range(newton):
        step = _l1_newton_step(poly, N, K)
        if step is None:
            break
        for _ in range(20):
            trial = _shift(poly, step, N)
            tval = l1_norm_trig(trial, K)
            if tval <= val:
                break
            step = step / 2
        else:
            break
        done = val - tval <= 1e-15 * val
        poly, val = trial, tval
        if done:
            break
    return val, float(4 * np.sum(np.abs(lam) ** 2))
