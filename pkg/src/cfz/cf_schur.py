"""Caratheodory-Fejer / Schur problem.

Given Taylor data tau_0..tau_m, find the smallest l, a monic polynomial p
of degree l with zeros in the open unit disk and a scalar gamma such that

    gamma * p(z) / p*(z) = tau_0 + tau_1 z + ... + tau_m z^m + O(z^{m+1}).

|gamma| is the largest singular value of the (l+1)x(l+1) Hankel section
H[i, j] = tau_{l-i-j}.  Writing p*(z) = sum q_k z^k, the matching
conditions through order l read ``H q = gamma * conj(q)``, so q is a
Takagi vector of H; q_0 = 1 fixes both the scaling and the phase of gamma.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .numerics import ComplexPoly, ConvergenceError, eig_hermitian, poly_roots, series_divide

log = logging.getLogger(__name__)

ZERO_MARGIN = 1e-9
RESIDUAL_TOL = 1e-8
# relative gap below which two char values count as one multiple value
_TIE = 1e-9


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Prescribed leading coefficients tau_0..tau_m."""

    taus: np.ndarray
    is_real: bool = field(init=False)

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.taus, dtype=complex)).copy()
        if t.ndim != 1 or t.size == 0:
            raise ValueError("need at least one coefficient")
        if not np.all(np.isfinite(t)):
            raise ValueError("coefficients must be finite")
        if not np.any(t != 0):
            raise ValueError("all coefficients vanish")
        t.setflags(write=False)
        object.__setattr__(self, "taus", t)
        object.__setattr__(self, "is_real", bool(np.all(np.abs(t.imag) <= 1e-14)))

    @property
    def m(self):
        return self.taus.size - 1

    def __len__(self):
        return self.taus.size

    def __mul__(self, c):
        return CoefficientSequence(self.taus * c)

    __rmul__ = __mul__


def as_sequence(taus):
    return taus if isinstance(taus, CoefficientSequence) else CoefficientSequence(taus)


@dataclass(frozen=True)
class CFSolution:
    l: int
    p: ComplexPoly
    gamma: complex
    residual: float
    zero_margin: float

    @property
    def gamma_abs(self):
        return abs(self.gamma)


@dataclass(frozen=True)
class HankelSpectrum:
    matrix_order: int
    char_values: np.ndarray
    D_values: np.ndarray = None


class CFRejection(ValueError):
    """A candidate (l, gamma) failed one of the validation checks.

    ``reason`` is one of ``"singular"``, ``"multiplicity"``,
    ``"zero_margin"``, ``"residual"``.
    """

    def __init__(self, reason, l, detail=""):
        super().__init__(f"l={l}: {reason} {detail}".strip())
        self.reason = reason
        self.l = l
        self.detail = detail


class CFFailure(RuntimeError):
    """No degree l <= m produced a validated solution."""

    def __init__(self, rejections):
        msg = "; ".join(str(r) for r in rejections)
        super().__init__(f"no validated CF solution ({msg})")
        self.rejections = rejections


class DegenerateSectionError(ValueError):
    pass


def hankel_section(seq, l):
    """(l+1)x(l+1) matrix with entries tau_{l-i-j} above the antidiagonal."""
    seq = as_sequence(seq)
    if not 0 <= l <= seq.m:
        raise ValueError(f"l must lie in 0..{seq.m}")
    t = seq.taus.real if seq.is_real else seq.taus
    i, j = np.indices((l + 1, l + 1))
    k = l - i - j
    return np.where(k >= 0, t[np.clip(k, 0, None)], 0)


def hankel_spectrum(seq, l):
    seq = as_sequence(seq)
    H = hankel_section(seq, l)
    if seq.is_real:
        w, _ = eig_hermitian(H)
    else:
        s2, _ = eig_hermitian(H.conj().T @ H)
        w = np.sqrt(np.clip(s2, 0, None))
    return HankelSpectrum(l + 1, w)


def largest_char_value(seq, l):
    """Modulus of gamma for degree l, plus the sign of gamma in the real case.

    Returns ``(gamma_abs, phase_hint)``; ``phase_hint`` is +-1.0 for real
    data and None for complex data, where the phase comes out of the
    matching step.
    """
    seq = as_sequence(seq)
    H = hankel_section(seq, l)
    if not np.any(H):
        raise DegenerateSectionError(f"Hankel section of order {l + 1} is zero")
    spec = hankel_spectrum(seq, l)
    lead = spec.char_values[0]
    if seq.is_real:
        return float(abs(lead)), float(np.sign(lead))
    return float(lead), None


def schur_determinant(seq, l, lam):
    """D_{l+1}(lam): determinant of [[lam I, T^T], [conj(T), lam I]].

    T is the lower-triangular Toeplitz matrix of tau_0..tau_l.
    """
    seq = as_sequence(seq)
    t = seq.taus[: l + 1]
    i, j = np.indices((l + 1, l + 1))
    T = np.where(i >= j, t[np.clip(i - j, 0, None)], 0)
    eye = np.eye(l + 1)
    M = np.block([[lam * eye, T.T], [T.conj(), lam * eye]])
    return np.linalg.det(M)


def hankel_char_poly(seq, l, lam):
    """Delta(lam) = det(H - lam I) for the Hankel section H."""
    H = hankel_section(seq, l)
    return np.linalg.det(H - lam * np.eye(l + 1))


def _validate(seq, l, q, gamma):
    """Build p from the normalized Takagi vector and run both checks."""
    p = ComplexPoly(np.conj(q[::-1]))
    if l == 0:
        margin = 1.0
    else:
        try:
            zeros = poly_roots(p)
        except ConvergenceError as exc:
            zeros = exc.best
        margin = 1.0 - float(np.max(np.abs(zeros)))
    if margin <= ZERO_MARGIN:
        raise CFRejection("zero_margin", l, f"(margin {margin:.3g})")
    ratio = series_divide(p.coeffs, q, seq.m)
    scale = max(float(np.max(np.abs(seq.taus))), np.finfo(float).tiny)
    residual = float(np.max(np.abs(gamma * ratio - seq.taus))) / scale
    if residual > RESIDUAL_TOL:
        raise CFRejection("residual", l, f"(residual {residual:.3g})")
    if seq.is_real:
        gamma = float(np.real(gamma))
        p = ComplexPoly(p.coeffs.real)
    return CFSolution(l, p, gamma, residual, margin)


def _takagi_candidates(seq, l, gamma_abs):
    """Unit vectors v with H v = gamma conj(v), |gamma| ~ gamma_abs."""
    H = hankel_section(seq, l)
    tol = _TIE * max(gamma_abs, 1.0)
    if seq.is_real:
        w, V = eig_hermitian(H)
        hits = np.flatnonzero(np.abs(np.abs(w) - gamma_abs) <= tol)
        return H, [V[:, k] for k in hits]
    s2, V = eig_hermitian(H.conj().T @ H)
    s = np.sqrt(np.clip(s2, 0, None))
    hits = np.flatnonzero(np.abs(s - gamma_abs) <= tol)
    if hits.size > 1:
        raise CFRejection("multiplicity", l, f"(singular value {gamma_abs:.6g} repeated)")
    return H, [V[:, k] for k in hits]


def blaschke_match(seq, l, gamma_abs):
    """Solve and validate the matching identity for one candidate degree.

    Raises :class:`CFRejection` if the system is singular (q_0 = 0), the
    zeros of p come within 1e-9 of the circle, or the Taylor residual of
    gamma p/p* against tau exceeds 1e-8 (relative to max |tau|).
    """
    seq = as_sequence(seq)
    H, cands = _takagi_candidates(seq, l, gamma_abs)
    if not cands:
        raise CFRejection("singular", l, f"(no singular vector for {gamma_abs:.6g})")
    rejections = []
    for v in cands:
        if abs(v[0]) <= 1e-12:
            rejections.append(CFRejection("singular", l, "(leading coefficient of p* vanishes)"))
            continue
        q = v / v[0]
        gamma = np.dot(q, H @ q) / np.vdot(q, q)
        try:
            return _validate(seq, l, q, gamma)
        except CFRejection as exc:
            rejections.append(exc)
    # report the most informative reason when a +- pair both fail
    order = {"residual": 0, "zero_margin": 1, "multiplicity": 2, "singular": 3}
    raise min(rejections, key=lambda r: order[r.reason])


def solve_cf(seq):
    """Smallest-degree validated CF solution for ``seq``.

    Raises :class:`CFFailure` carrying every per-degree rejection when no
    l <= m validates, which flags a borderline or non-generic sequence.
    """
    seq = as_sequence(seq)
    rejections = []
    for l in range(seq.m + 1):
        try:
            gamma_abs, _ = largest_char_value(seq, l)
        except DegenerateSectionError as exc:
            rejections.append(CFRejection("singular", l, str(exc)))
            continue
        try:
            sol = blaschke_match(seq, l, gamma_abs)
        except CFRejection as exc:
            log.debug("cf: %s", exc)
            rejections.append(exc)
            continue
        log.info("cf: accepted l=%d |gamma|=%.16g", l, abs(sol.gamma))
        return sol
    raise CFFailure(rejections)


def fejer_monotone_check(seq):
    """True iff tau_m >= ... >= tau_1 >= tau_0 > 0 (real data)."""
    seq = as_sequence(seq)
    if not seq.is_real:
        return False
    t = seq.taus.real
    return bool(t[0] > 0 and np.all(np.diff(t) >= 0))


def all_ones_gamma(l):
    """Known closed form of |gamma| for the all-ones sequence of length l+1."""
    return 1.0 / (2.0 * np.sin(np.pi / (2 * (2 * l + 3))))
