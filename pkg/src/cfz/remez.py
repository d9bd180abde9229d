"""Periodic Remez exchange for trigonometric polynomials with a fixed head.

Problem: the head f_n(phi) = sum_{j<=l} (a_j cos (n-j)phi + b_j sin (n-j)phi),
with tau_j = a_j + i b_j, is fixed; find the correction t of degree
N - 1 = n - l - 1 minimizing ||f_n + t|| on [0, 2 pi).  The correction
space is a Haar space of dimension 2N - 1 on the circle, so an error
function that equioscillates on 2N points is optimal.
"""

import logging
import time
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev

from .blaschke import sup_norm
from .cf_schur import as_sequence
from .numerics import ConvergenceError, SingularMatrixError, solve_linear

log = logging.getLogger(__name__)

MAX_COND = 1e12


class RemezError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """sum_k a_k cos k phi + b_k sin k phi, k = 0..degree (b_0 ignored)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).copy()
        b = np.asarray(self.b, dtype=float).copy()
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("a and b must be 1-d arrays of equal length")
        b[0] = 0.0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degree(self):
        return self.a.size - 1

    def __call__(self, phi, deriv=0):
        phi = np.asarray(phi, dtype=float)
        k = np.arange(self.a.size)
        arg = np.multiply.outer(phi, k)
        c, s = np.cos(arg), np.sin(arg)
        kd = k.astype(float) ** deriv
        # d^r/dphi^r of (a cos + b sin) cycles through (a, b) -> (b, -a) -> ...
        r = deriv % 4
        if r == 0:
            out = c @ (self.a * kd) + s @ (self.b * kd)
        elif r == 1:
            out = c @ (self.b * kd) - s @ (self.a * kd)
        elif r == 2:
            out = -(c @ (self.a * kd)) - s @ (self.b * kd)
        else:
            out = s @ (self.a * kd) - c @ (self.b * kd)
        return out

    def on_grid(self, G):
        """Values at the G equispaced nodes 2 pi i / G (G > degree)."""
        coef = np.zeros(G, dtype=complex)
        coef[: self.a.size] = self.a - 1j * self.b
        return np.real(np.fft.ifft(coef) * G)

    def __add__(self, other):
        n = max(self.a.size, other.a.size)
        a = np.zeros(n)
        b = np.zeros(n)
        a[: self.a.size] += self.a
        b[: self.b.size] += self.b
        a[: other.a.size] += other.a
        b[: other.b.size] += other.b
        return TrigPoly(a, b)


@dataclass(frozen=True, eq=False)
class FixedHead:
    """Degree n and prescribed tau_0..tau_l; the polynomial carries conj(tau_j)."""

    n: int
    taus: object

    def __post_init__(self):
        seq = as_sequence(self.taus)
        object.__setattr__(self, "taus", seq)
        if self.n - seq.m - 1 < 0:
            raise ValueError(f"need n >= l + 1 (n={self.n}, l={seq.m})")

    @property
    def l(self):
        return self.taus.m

    def trig(self):
        a = np.zeros(self.n + 1)
        b = np.zeros(self.n + 1)
        j = np.arange(self.l + 1)
        a[self.n - j] += self.taus.taus.real
        b[self.n - j] += self.taus.taus.imag
        return TrigPoly(a, b)

    def __call__(self, phi):
        return self.trig()(phi)


def algebraic_head(A, n):
    """Trig head equivalent to sum_j A_j x^{n-j} on [-1, 1] via x = cos phi.

    The leading Chebyshev coefficients of the algebraic head become the
    (real) tau_j.
    """
    A = np.asarray(A, dtype=float)
    mono = np.zeros(n + 1)
    mono[n - np.arange(A.size)] = A
    cheb = chebyshev.poly2cheb(mono)
    return FixedHead(n, cheb[n - np.arange(A.size)])


@dataclass(frozen=True, eq=False)
class MinimaxResult:
    head: FixedHead
    correction: TrigPoly
    E_n: float
    reference: np.ndarray
    levelled_error: float
    iterations: int
    wall_time: float = 0.0

    @property
    def polynomial(self):
        return self.head.trig() + self.correction

    def __call__(self, phi):
        return eval_error(self, phi)


def eval_error(result, phi):
    """Z_n(phi) = f_n(phi) + correction(phi)."""
    return result.polynomial(phi)


def _basis(phi, N, signs):
    k = np.arange(N)
    arg = np.multiply.outer(phi, k)
    return np.hstack([np.cos(arg), np.sin(arg[:, 1:]), -signs[:, None]])


def _run_extrema(poly, G):
    """One maximum of |e| per sign run of e on the circle, Newton-refined."""
    h = 2 * np.pi / G
    v = poly.on_grid(G)
    s = np.sign(v)
    s[s == 0] = 1
    change = np.flatnonzero(s != np.roll(s, 1))
    if change.size == 0:
        i = int(np.argmax(np.abs(v)))
        cand = np.array([i])
    else:
        cand = []
        bounds = np.append(change, change[0] + G)
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            idx = np.arange(lo, hi) % G
            cand.append(idx[np.argmax(np.abs(v[idx]))])
        cand = np.asarray(cand)
    phi0 = h * cand
    phi = phi0.copy()
    for _ in range(8):
        d1 = poly(phi, 1)
        d2 = poly(phi, 2)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(d2 != 0, d1 / d2, 0.0)
        phi = np.clip(phi - step, phi0 - h, phi0 + h)
        if np.all(np.abs(step) < 1e-15):
            break
    vals = poly(phi)
    keep = np.abs(vals) < np.abs(v[cand])
    phi[keep] = phi0[keep]
    vals[keep] = v[cand][keep]
    phi = phi % (2 * np.pi)
    phi[phi >= 2 * np.pi] = 0.0
    order = np.argsort(phi)
    return phi[order], vals[order]


def _select(phi, vals, M):
    """Drop adjacent pairs with the smallest |e| until M points remain."""
    phi, vals = list(phi), list(vals)
    while len(phi) > M:
        mag = np.abs(vals)
        i = int(np.argmin(mag))
        L = len(phi)
        j = (i - 1) % L if mag[(i - 1) % L] < mag[(i + 1) % L] else (i + 1) % L
        for k in sorted((i, j), reverse=True):
            del phi[k], vals[k]
    return np.asarray(phi), np.asarray(vals)


def solve(head, tol=1e-10, maxiter=60, grid=None, polish=0):
    """Best approximation of the fixed head from trig polynomials of degree n-l-1.

    Multi-point exchange: each step solves the levelled system on the
    current 2(n-l) reference points, then takes one extremum of the error
    per sign run (Newton-refined on a max(4096, 32 n) grid), pruned back to
    2(n-l) alternating points. Stops when (max|e| - |h|) / max|e| <= tol.

    ``polish`` extra exchanges are run after convergence and the iterate
    with the smallest levelled gap is kept; one or two are enough to reach
    rounding level, which convergence sweeps need.
    """
    t0 = time.perf_counter()
    f = head.trig()
    n, N = head.n, head.n - head.l
    M = 2 * N
    G = grid or max(4096, 32 * n)
    ref = np.pi / (2 * N) + np.pi * np.arange(M) / N
    signs = (-1.0) ** np.arange(M)
    jittered = False
    best = None
    extra = 0
    it = 0
    while it < maxiter:
        it += 1
        A = _basis(ref, N, signs)
        try:
            x, rcond = solve_linear(A, -f(ref), return_rcond=True)
        except SingularMatrixError:
            rcond = 0.0
        if rcond * MAX_COND < 1:
            if jittered:
                raise RemezError(f"reference degenerated at iteration {it} (rcond {rcond:.3g})")
            jittered = True
            rng = np.random.default_rng(it)
            ref = np.sort(ref + 1e-3 * (np.pi / N) * rng.uniform(-1, 1, M))
            continue
        a = np.zeros(N)
        b = np.zeros(N)
        a[:] = x[:N]
        b[1:] = x[N : 2 * N - 1]
        h = x[-1]
        corr = TrigPoly(a, b)
        err = f + corr
        phi, vals = _run_extrema(err, G)
        if phi.size < M:
            raise RemezError(f"only {phi.size} alternating extrema, need {M}")
        phi, vals = _select(phi, vals, M)
        emax = float(np.max(np.abs(vals)))
        gap = (emax - abs(h)) / emax
        log.debug("remez n=%d it=%d |h|=%.17g emax=%.17g gap=%.3g", n, it, abs(h), emax, gap)
        if gap <= tol:
            if best is None or gap < best[0]:
                best = (gap, MinimaxResult(head, corr, emax, phi, abs(h), it, time.perf_counter() - t0))
            if extra >= polish:
                return best[1]
            extra += 1
        ref, signs = phi, np.sign(vals)
    if best is not None:
        return best[1]
    raise ConvergenceError(f"Remez did not converge in {maxiter} iterations (n={n})", best=ref)


def check_alternation(result, rtol=1e-9):
    """The optimality certificate: 2(n-l) points, alternating signs, |e| ~ E_n."""
    M = 2 * (result.head.n - result.head.l)
    ref = result.reference
    if ref.size != M or np.any(np.diff(ref) <= 0) or ref[0] < 0 or ref[-1] >= 2 * np.pi:
        return False
    v = result(ref)
    s = np.sign(v)
    if np.any(s[1:] == s[:-1]) or s[0] == s[-1]:
        return False
    if np.any(np.abs(v) < result.E_n * (1 - rtol)):
        return False
    return abs(result.E_n - result.levelled_error) <= 1e-10 * result.E_n


def sup_error(result):
    return sup_norm(result, 2 * result.head.n, nodes=max(4096, 32 * result.head.n))[0]


def compare_asymptotic(result, az):
    """(sup_gap, E_gap) between the exact and the asymptotic polynomial."""
    if az.n != result.head.n:
        raise ValueError("degrees differ")
    n = result.head.n + az.datum.l

    def diff(phi):
        return result(phi) - az(phi)

    sup_gap, _ = sup_norm(diff, 2 * n, nodes=max(4096, 32 * n))
    E_gap = abs(result.E_n - abs(az.datum.gamma))
    return sup_gap, E_gap

