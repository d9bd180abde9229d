"""Reflected Blaschke products and the asymptotic Zolotarev polynomial.

With z = exp(i phi), the function

    w_n(phi) = z^n p*(z) / p(z)

is unimodular; R_n = Re w_n and S_n = Im w_n.  For CF data (gamma, p)
the asymptotic minimal polynomial with head conj(tau_j) at frequency
n - j is Re{conj(gamma) w_n}.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .cf_schur import CoefficientSequence, as_sequence, solve_cf
from .numerics import ComplexPoly, ConvergenceError, poly_roots, series_divide


def reciprocal(p):
    """p*(z) = z^l conj(p(1/conj z)): conjugate and reverse the coefficients."""
    if not isinstance(p, ComplexPoly):
        p = ComplexPoly(p)
    return ComplexPoly(np.conj(p.coeffs[::-1]))


def taylor_ratio(p, order):
    """First ``order + 1`` Taylor coefficients of p/p* at z = 0."""
    if not isinstance(p, ComplexPoly):
        p = ComplexPoly(p)
    p = p.trimmed()
    return CoefficientSequence(series_divide(p.coeffs, reciprocal(p).coeffs, order))


@dataclass(frozen=True)
class BlaschkeDatum:
    """gamma * p/p* with p monic and all zeros strictly inside the disk."""

    p: ComplexPoly
    gamma: complex = 1.0
    r: float = field(init=False)

    def __post_init__(self):
        p = self.p if isinstance(self.p, ComplexPoly) else ComplexPoly(self.p)
        p = p.trimmed()
        if abs(p.leading - 1) > 1e-12:
            raise ValueError("p must be monic")
        object.__setattr__(self, "p", p)
        r = 0.0
        if p.degree > 0:
            try:
                zeros = poly_roots(p)
            except ConvergenceError as exc:
                zeros = exc.best
            r = float(np.max(np.abs(zeros)))
        if r >= 1:
            raise ValueError(f"p has a zero of modulus {r:.6g} >= 1")
        object.__setattr__(self, "r", r)

    @classmethod
    def from_cf(cls, sol):
        return cls(sol.p, sol.gamma)

    @property
    def l(self):
        return self.p.degree

    @property
    def pstar(self):
        return reciprocal(self.p)

    def __call__(self, z):
        """gamma p(z)/p*(z)."""
        return self.gamma * self.p(z) / self.pstar(z)

    def taylor(self, order):
        return CoefficientSequence(self.gamma * taylor_ratio(self.p, order).taus)


def unimodular(datum, n, phi):
    z = np.exp(1j * np.asarray(phi, dtype=float))
    return z**n * datum.pstar(z) / datum.p(z)


def eval_R_S(datum, n, phi):
    """Real and imaginary parts of z^n p*(z)/p(z) at z = exp(i phi)."""
    w = unimodular(datum, n, phi)
    return w.real, w.imag


@dataclass(frozen=True)
class AsymZolotarev:
    datum: BlaschkeDatum
    n: int

    def __post_init__(self):
        if self.n <= self.datum.l:
            raise ValueError("need n > l")

    @classmethod
    def from_taus(cls, taus, n):
        return cls(BlaschkeDatum.from_cf(solve_cf(as_sequence(taus))), n)

    def __call__(self, phi):
        return eval_asym_zolotarev(self, phi)


def phase_rate(datum, n, phi):
    """d/dphi of arg(z^n p*/p) = n - sum_k (1 - |a_k|^2) / |e^{i phi} - a_k|^2.

    While this stays positive, R_n and S_n each have exactly 2(n - l)
    simple zeros and those zeros interlace; where it goes negative the
    phase runs backwards and extra zeros appear.
    """
    phi = np.asarray(phi, dtype=float)
    out = np.full(phi.shape, float(n))
    if datum.l == 0:
        return out
    try:
        zeros = poly_roots(datum.p)
    except ConvergenceError as exc:
        zeros = exc.best
    z = np.exp(1j * phi)
    for a in zeros:
        out -= (1 - abs(a) ** 2) / np.abs(z - a) ** 2
    return out


def monotone_degree(datum):
    """Smallest n for which phase_rate > 0 is guaranteed (Poisson kernel bound)."""
    if datum.l == 0:
        return 1
    zeros = poly_roots(datum.p)
    return int(np.floor(np.sum((1 + np.abs(zeros)) / (1 - np.abs(zeros))))) + 1


def eval_asym_zolotarev(az, phi):
    """|gamma| Re{exp(-i arg gamma) z^n p*/p}, i.e. Re{conj(gamma) w_n}."""
    return np.real(np.conj(az.datum.gamma) * unimodular(az.datum, az.n, phi))


def sample_grid(az, N):
    if N < 2 * (az.n + az.datum.l) + 2:
        raise ValueError("too few nodes for this degree")
    phi = 2 * np.pi * np.arange(N) / N
    return phi, az(phi)


def fourier_coefficients(values, kmax):
    """Cosine/sine coefficients a_k, b_k (k = 0..kmax) from equispaced samples."""
    values = np.asarray(values, dtype=float)
    N = values.size
    phi = 2 * np.pi * np.arange(N) / N
    k = np.arange(kmax + 1)
    a = 2.0 / N * np.cos(np.outer(k, phi)) @ values
    b = 2.0 / N * np.sin(np.outer(k, phi)) @ values
    a[0] /= 2
    b[0] = 0.0
    return a, b


def head_gap(az, taus, N=None):
    """Max deviation of the extracted head coefficients from tau.

    The coefficient pair (a, b) at frequency n - j should equal
    (Re tau_j, Im tau_j).
    """
    taus = as_sequence(taus).taus
    n, l = az.n, az.datum.l
    N = N or 2 * (n + l) + 2
    _, vals = sample_grid(az, N)
    a, b = fourier_coefficients(vals, n)
    j = np.arange(taus.size)
    got = a[n - j] + 1j * b[n - j]
    return float(np.max(np.abs(got - taus)))


def sup_norm(f, n_hint, nodes=None, refine=3):
    """sup |f| on [0, 2 pi): dense grid plus bounded refinement of the top maxima.

    Returns ``(value, argmax)``. ``f`` must be vectorized.
    """
    N = nodes or max(1024, 16 * n_hint)
    h = 2 * np.pi / N
    phi = h * np.arange(N)
    v = np.abs(f(phi))
    peaks = np.flatnonzero((v >= np.roll(v, 1)) & (v >= np.roll(v, -1)))
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(v))])
    top = peaks[np.argsort(v[peaks])[::-1][:refine]]
    best, where = float(np.max(v)), float(phi[np.argmax(v)])
    for i in top:
        c = phi[i]
        res = minimize_scalar(
            lambda x: -abs(float(f(np.array([x]))[0])),
            bounds=(c - h, c + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if -res.fun > best:
            best, where = float(-res.fun), float(res.x % (2 * np.pi))
    return best, where


def sign_change_points(f, N):
    """Zeros of a vectorized periodic ``f`` located on an N-node grid.

    Each grid sign change is refined by bracketing root search to 1e-12.
    """
    phi = 2 * np.pi * np.arange(N + 1) / N
    v = f(phi)
    v[-1] = v[0]
    idx = np.flatnonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)
    exact = phi[:-1][v[:-1] == 0]

    def g(x):
        return float(f(np.array([x]))[0])

    roots = []
    for i in idx:
        a, b = phi[i], phi[i + 1]
        fa, fb = g(a), g(b)
        if fa * fb < 0:
            roots.append(brentq(g, a, b, xtol=1e-12))
        else:
            # a root within rounding of an endpoint
            roots.append(a if abs(fa) <= abs(fb) else b)
    return np.sort(np.concatenate([np.asarray(roots), exact]) % (2 * np.pi))


def strictly_interlace(x, y):
    """True iff the sorted circular point sets x and y alternate."""
    if x.size != y.size or x.size == 0:
        return False
    tags = np.concatenate([np.zeros(x.size), np.ones(y.size)])
    order = np.argsort(np.concatenate([x, y]), kind="stable")
    pts = np.concatenate([x, y])[order]
    if np.any(np.diff(pts) <= 0):
        return False
    t = tags[order]
    return bool(np.all(t[1:] != t[:-1]) and t[0] != t[-1])
