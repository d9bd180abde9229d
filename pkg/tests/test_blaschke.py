import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cfz.blaschke import (AsymZolotarev, BlaschkeDatum, eval_R_S, fourier_coefficients, head_gap, monotone_degree,
                          phase_rate, reciprocal, sample_grid, sign_change_points, strictly_interlace, sup_norm, taylor_ratio)
from cfz.cf_schur import solve_cf
from cfz.numerics import ComplexPoly
from cfz.reports import fit_geometric


def random_datum(rng, l, rmax=0.8):
    zeros = rng.uniform(0, rmax, l) * np.exp(2j * np.pi * rng.uniform(size=l))
    return BlaschkeDatum(ComplexPoly.from_roots(zeros), np.exp(2j * np.pi * rng.uniform()))


def test_reciprocal():
    assert np.allclose(reciprocal([-0.5, 1]).coeffs, [1, -0.5])
    assert np.allclose(reciprocal([0, 0, 1]).trimmed().coeffs, [1])
    assert np.allclose(reciprocal([2, 1j, 1]).coeffs, [1, -1j, 2])


def test_taylor_ratio():
    assert np.allclose(taylor_ratio([-0.5, 1], 3).taus, [-0.5, 0.75, 0.375, 0.1875])
    assert np.allclose(taylor_ratio([1], 4).taus, [1, 0, 0, 0, 0])
    assert np.allclose(taylor_ratio([0.5, 1], 1).taus, [0.5, 0.75])


def test_datum_checks():
    d = BlaschkeDatum(ComplexPoly([0.25, -1, 1]))
    assert np.isclose(d.r, 0.5) and d.l == 2
    with pytest.raises(ValueError):
        BlaschkeDatum(ComplexPoly([-2, 1]))
    with pytest.raises(ValueError):
        BlaschkeDatum(ComplexPoly([1, 2]))
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 50))
    assert np.allclose(np.abs(d.p(z)), np.abs(d.pstar(z)), atol=1e-12)


def test_eval_R_S_examples():
    phi = np.linspace(0, 2 * np.pi, 37)
    R, S = eval_R_S(BlaschkeDatum(ComplexPoly([1])), 5, phi)
    assert np.allclose(R, np.cos(5 * phi)) and np.allclose(S, np.sin(5 * phi))
    R, S = eval_R_S(BlaschkeDatum(ComplexPoly([-0.5, 1])), 2, 0.0)
    assert np.isclose(R, 1) and np.isclose(S, 0, atol=1e-15)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 2**31 - 1))
def test_normalization(l, seed):
    rng = np.random.default_rng(seed)
    d = random_datum(rng, l, 0.95)
    R, S = eval_R_S(d, l + 7, rng.uniform(0, 2 * np.pi, 1000))
    assert np.max(np.abs(R**2 + S**2 - 1)) <= 1e-12


def zero_sets(d, n):
    N = 64 * (n + d.l)
    return (sign_change_points(lambda p: eval_R_S(d, n, p)[0], N),
            sign_change_points(lambda p: eval_R_S(d, n, p)[1], N))


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_interlacing_when_phase_is_monotone(l, seed):
    rng = np.random.default_rng(seed)
    d = random_datum(rng, l)
    grid = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    for n in range(l + 1, l + 21):
        if np.min(phase_rate(d, n, grid)) <= 0.05 * n:
            continue
        zr, zs = zero_sets(d, n)
        assert zr.size == zs.size == 2 * (n - l)
        assert strictly_interlace(zr, zs)
    n = monotone_degree(d)
    assert np.min(phase_rate(d, n, grid)) > 0


def test_extra_zeros_when_phase_runs_backwards():
    # a zero at 0.8 pushes the phase rate down to n - 9 near phi = 0
    d = BlaschkeDatum(ComplexPoly([-0.8, 1]))
    assert np.isclose(phase_rate(d, 4, 0.0), -5)
    zr, zs = zero_sets(d, 4)
    assert max(zr.size, zs.size) > 2 * (4 - 1)
    assert not strictly_interlace(zr, zs)
    zr, zs = zero_sets(d, 10)
    assert zr.size == zs.size == 18 and strictly_interlace(zr, zs)


def test_strictly_interlace():
    assert strictly_interlace(np.array([0.0, 2.0]), np.array([1.0, 3.0]))
    assert not strictly_interlace(np.array([0.0, 1.0]), np.array([2.0, 3.0]))
    assert not strictly_interlace(np.array([0.0]), np.array([0.0]))


def test_asym_examples():
    az = AsymZolotarev(BlaschkeDatum(ComplexPoly([1])), 6)
    phi = np.linspace(0, 2 * np.pi, 41)
    assert np.allclose(az(phi), np.cos(6 * phi))
    phi, vals = sample_grid(AsymZolotarev(BlaschkeDatum(ComplexPoly([1])), 1), 4)
    assert np.allclose(vals, [1, 0, -1, 0], atol=1e-15)
    with pytest.raises(ValueError):
        sample_grid(az, 10)
    _, vals = sample_grid(AsymZolotarev(BlaschkeDatum(ComplexPoly([-0.5, 1])), 8), 1024)
    assert 0.999 <= np.max(np.abs(vals)) <= 1.0


def test_asym_sup_golden():
    az = AsymZolotarev.from_taus([1, 1], 20)
    g = abs(az.datum.gamma)
    sup, _ = sup_norm(az, 21)
    assert g - 1e-9 <= sup <= g + 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2**31 - 1))
def test_asym_bounded_by_gamma(l, seed):
    rng = np.random.default_rng(seed)
    d = random_datum(rng, l)
    d = BlaschkeDatum(d.p, 2.5 * d.gamma)
    az = AsymZolotarev(d, l + 9)
    assert np.max(np.abs(az(rng.uniform(0, 2 * np.pi, 2000)))) <= 2.5 * (1 + 1e-12)


def test_even_for_real_data():
    az = AsymZolotarev.from_taus([0.4, -0.3, 0.9], 15)
    phi = np.linspace(0, np.pi, 33)
    assert np.allclose(az(-phi), az(phi), atol=1e-13)


def test_head_coefficients_converge():
    taus = [1, 0.5j, -0.25]
    r = AsymZolotarev.from_taus(taus, 10).datum.r
    series = [(n, head_gap(AsymZolotarev.from_taus(taus, n), taus)) for n in range(5, 43)]
    ratio, _, _ = fit_geometric(series, floor=1e-13)
    assert ratio <= r + 0.1


def test_head_is_exact_for_blaschke_data():
    # with m = l the expansion matches exactly; the head is tau itself
    sol = solve_cf([-0.5, 0.75])
    az = AsymZolotarev(BlaschkeDatum.from_cf(sol), 20)
    assert head_gap(az, [-0.5, 0.75]) <= 1e-5


def test_fourier_coefficients():
    N = 16
    phi = 2 * np.pi * np.arange(N) / N
    a, b = fourier_coefficients(3 + 2 * np.cos(2 * phi) - np.sin(5 * phi), 6)
    assert np.allclose(a, [3, 0, 2, 0, 0, 0, 0], atol=1e-14)
    assert np.allclose(b, [0, 0, 0, 0, 0, -1, 0], atol=1e-14)
