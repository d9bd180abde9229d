"""Dense numerical kernel: polynomial roots, Hermitian eigenproblems,
linear solves and periodic quadrature.

Nothing in here knows about Blaschke products or minimax problems; the
math modules build on these pieces.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.linalg import lapack

DEFAULT_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """An iteration hit its cap. ``best`` holds the last iterate."""

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class IllConditionedWarning(RuntimeWarning):
    pass


class QuadratureError(RuntimeError):
    def __init__(self, msg, estimates):
        super().__init__(msg)
        self.estimates = estimates


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Polynomial with complex coefficients in ascending order.

    ``coeffs[k]`` multiplies ``z**k``. Trailing zeros are kept, so the
    nominal length survives operations like :func:`cfz.blaschke.reciprocal`;
    ``degree`` reports the index of the last nonzero entry.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots):
        roots = np.asarray(roots, dtype=complex)
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.concatenate([[0], c]) - r * np.concatenate([c, [0]])
        return cls(c)

    @property
    def degree(self):
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    @property
    def leading(self):
        return self.coeffs[self.degree]

    def trimmed(self):
        return ComplexPoly(self.coeffs[: self.degree + 1])

    def monic(self):
        t = self.trimmed()
        return ComplexPoly(t.coeffs / t.leading)

    def derivative(self):
        c = self.coeffs
        if c.size == 1:
            return ComplexPoly([0.0])
        return ComplexPoly(c[1:] * np.arange(1, c.size))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for a in self.coeffs[::-1]:
            out = out * z + a
        return out

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self.trimmed().coeffs, other.trimmed().coeffs)

    def __repr__(self):
        return f"ComplexPoly({np.array2string(self.coeffs, precision=6)})"


def _aberth_start(c, rng):
    n = c.size - 1
    # Fujiwara-type bound on the root moduli, then a random fraction of it.
    a = np.abs(c[:-1] / c[-1])
    k = np.arange(n, 0, -1)
    bound = 2 * np.max(a ** (1.0 / k))
    radius = bound * rng.uniform(0.4, 1.0) if bound > 0 else 1.0
    phase = rng.uniform(0, 2 * np.pi)
    return radius * np.exp(1j * (phase + 2 * np.pi * np.arange(n) / n + 0.4 / n))


def poly_roots(p, tol=DEFAULT_TOL, maxiter=500, seed=0):
    """All roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Returns an array of ``p.degree`` roots, repeated by multiplicity.
    Raises :class:`ConvergenceError` (with ``best``) if the residual
    target ``|p(root)| <= tol * max|coeff| * (degree+1)`` is not met
    within ``maxiter`` sweeps.
    """
    if not isinstance(p, ComplexPoly):
        p = ComplexPoly(p)
    p = p.trimmed()
    n = p.degree
    if n < 1:
        raise ValueError("poly_roots needs degree >= 1")
    c = p.coeffs
    if n == 1:
        return np.array([-c[0] / c[1]])
    dp = p.derivative()
    target = tol * np.max(np.abs(c)) * (n + 1)
    rng = np.random.default_rng(seed)
    z = _aberth_start(c, rng)
    eye = np.eye(n, dtype=bool)
    for _ in range(maxiter):
        pz = p(z)
        res = np.abs(pz)
        if np.all(res <= target):
            return z
        dpz = dp(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        bad = ~np.isfinite(step)
        if np.any(bad):
            # Colliding iterates: nudge apart instead of dividing by zero.
            step[bad] = 1e-3 * (1 + np.abs(z[bad])) * np.exp(1j * rng.uniform(0, 2 * np.pi, bad.sum()))
        step[res <= target] = 0.0
        z = z - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * (1 + np.abs(z))):
            if np.all(np.abs(p(z)) <= target):
                return z
            break
    raise ConvergenceError(f"Aberth iteration did not reach residual {target:.3g}", best=z)


def _check_hermitian(A, atol=1e-14):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(A, A.conj().T, rtol=0, atol=atol * max(1.0, np.max(np.abs(A), initial=0))):
        raise ValueError("matrix is not Hermitian")
    return A


def eig_hermitian(A, tol=DEFAULT_TOL, max_sweeps=100):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Eigenvalues are returned sorted by descending modulus, eigenvectors as
    unit-norm columns in the same order. Real input gives real output.
    """
    A = _check_hermitian(A)
    real = not np.iscomplexobj(A) or np.all(A.imag == 0)
    W = np.array(A.real if real else A, dtype=float if real else complex)
    W = 0.5 * (W + W.conj().T)
    n = W.shape[0]
    V = np.eye(n, dtype=W.dtype)
    scale = np.linalg.norm(W)
    if n == 1 or scale == 0:
        return _sorted_eig(np.real(np.diag(W)).copy(), V)

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    for _ in range(max_sweeps):
        if off(W) <= tol * scale:
            return _sorted_eig(np.real(np.diag(W)).copy(), V)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = W[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                e = apq / mag
                theta = (W[q, q].real - W[p, p].real) / (2 * mag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                J = np.array([[c, s], [-s * np.conj(e), c * np.conj(e)]], dtype=W.dtype)
                idx = [p, q]
                W[:, idx] = W[:, idx] @ J
                W[idx, :] = J.conj().T @ W[idx, :]
                V[:, idx] = V[:, idx] @ J
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", best=(np.diag(W), V))


def _sorted_eig(w, V):
    order = np.lexsort((-w, -np.abs(w)))
    return w[order], V[:, order]


def solve_linear(A, b, pivot_tol=1e-13, return_rcond=False):
    """Solve ``A x = b`` by row-equilibrated LU with partial pivoting.

    A pivot smaller than ``pivot_tol`` (after scaling rows to unit max)
    raises :class:`SingularMatrixError`. A residual above
    ``1e-10 (|A||x| + |b|)`` after one refinement step emits an
    :class:`IllConditionedWarning`.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape[0] != A.shape[0]:
        raise ValueError("A must be square and b conformal")
    dtype = np.result_type(A, b, float)
    A = A.astype(dtype)
    b = b.astype(dtype)
    rows = np.max(np.abs(A), axis=1)
    if np.any(rows == 0):
        raise SingularMatrixError("matrix has a zero row")
    As = A / rows[:, None]
    bs = b / (rows[:, None] if b.ndim == 2 else rows)
    with warnings.catch_warnings():
        # exact zero pivots are reported below as SingularMatrixError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(As, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < pivot_tol:
        raise SingularMatrixError(f"pivot {np.min(pivots):.3g} below {pivot_tol:g}")
    x = scipy.linalg.lu_solve((lu, piv), bs)
    r = bs - As @ x
    x = x + scipy.linalg.lu_solve((lu, piv), r)
    resid = np.linalg.norm(A @ x - b)
    bound = 1e-10 * (np.linalg.norm(A, 2) * np.linalg.norm(x) + np.linalg.norm(b))
    if resid > bound:
        warnings.warn(f"residual {resid:.3g} exceeds {bound:.3g}", IllConditionedWarning, stacklevel=2)
    if not return_rcond:
        return x
    gecon = lapack.zgecon if np.iscomplexobj(lu) else lapack.dgecon
    rcond, _ = gecon(lu, np.linalg.norm(As, 1), norm="1")
    return x, float(rcond)


def quad_periodic(f, tol=DEFAULT_TOL, kmin=3, kmax=22):
    """Integral of a 2*pi-periodic ``f`` over one period.

    Trapezoid rule on ``2**k`` equispaced nodes, doubling ``k`` until two
    successive values differ by less than ``tol``. ``f`` must accept an
    array of angles.
    """
    k = kmin
    n = 2**k
    total = np.sum(f(2 * np.pi * np.arange(n) / n))
    prev = 2 * np.pi * total / n
    while k < kmax:
        k += 1
        n *= 2
        total += np.sum(f(2 * np.pi * (np.arange(n // 2) * 2 + 1) / n))
        est = 2 * np.pi * total / n
        if abs(est - prev) < tol:
            return float(est)
        prev = est
    raise QuadratureError(f"no convergence to {tol:g} with 2**{kmax} nodes", (prev, est))


def series_divide(num, den, order):
    """First ``order + 1`` Taylor coefficients of num(z)/den(z) at 0."""
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    if den[0] == 0:
        raise ZeroDivisionError("denominator vanishes at z = 0")
    a = np.zeros(order + 1, dtype=complex)
    a[: min(num.size, order + 1)] = num[: order + 1]
    d = np.zeros(order + 1, dtype=complex)
    d[: min(den.size, order + 1)] = den[: order + 1]
    out = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        out[k] = (a[k] - np.dot(d[1 : k + 1], out[k - 1 :: -1][:k])) / d[0]
    return out
