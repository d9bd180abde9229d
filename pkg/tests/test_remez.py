import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cfz import remez
from cfz.blaschke import AsymZolotarev, BlaschkeDatum, taylor_ratio
from cfz.cf_schur import solve_cf
from cfz.numerics import ComplexPoly
from cfz.reports import fit_geometric
from oracles import lp_minimax

GOLDEN = 1.6180339887498949


def test_trig_poly():
    t = remez.TrigPoly([1, 0, 2], [5, 3, 0])
    assert t.b[0] == 0
    phi = np.linspace(0, 2 * np.pi, 17)
    assert np.allclose(t(phi), 1 + 3 * np.sin(phi) + 2 * np.cos(2 * phi))
    assert np.allclose(t(phi, 1), 3 * np.cos(phi) - 4 * np.sin(2 * phi))
    assert np.allclose(t(phi, 2), -3 * np.sin(phi) - 8 * np.cos(2 * phi))
    assert np.allclose(t(phi, 3), -3 * np.cos(phi) + 16 * np.sin(2 * phi))
    G = 16
    assert np.allclose(t.on_grid(G), t(2 * np.pi * np.arange(G) / G))
    s = t + remez.TrigPoly([0, 1], [0, 1])
    assert np.allclose(s.a, [1, 1, 2]) and np.allclose(s.b, [0, 4, 0])


def test_fixed_head():
    h = remez.FixedHead(5, [1 + 2j, -1])
    f = h.trig()
    assert np.isclose(f.a[5], 1) and np.isclose(f.b[5], 2) and np.isclose(f.a[4], -1)
    with pytest.raises(ValueError):
        remez.FixedHead(1, [1, 1, 1])


@pytest.mark.parametrize("c", [1.0, -2.5, 0.3 + 0.4j])
@pytest.mark.parametrize("n", [1, 10, 57, 100])
def test_single_coefficient(c, n):
    res = remez.solve(remez.FixedHead(n, [c]))
    assert abs(res.E_n - abs(c)) <= 1e-10
    assert np.max(np.abs(res.correction.a)) <= 1e-10 and np.max(np.abs(res.correction.b)) <= 1e-10
    assert remez.check_alternation(res)


def test_eval_error():
    res = remez.solve(remez.FixedHead(5, [1]))
    assert np.isclose(remez.eval_error(res, 0.0), 1)
    v = res(res.reference)
    assert np.allclose(np.abs(v), res.E_n, rtol=1e-9)
    assert np.all(np.sign(v[1:]) != np.sign(v[:-1]))


def test_golden_head():
    res = remez.solve(remez.FixedHead(20, [1, 1]))
    assert abs(res.E_n - GOLDEN) <= 0.01 * GOLDEN
    assert remez.check_alternation(res)
    assert res.reference.size == 2 * 19
    assert remez.sup_error(res) <= res.E_n * (1 + 1e-9)


def test_algebraic_head():
    # the monic Chebyshev polynomial deviates 2^(1-n) from zero on [-1, 1]
    res = remez.solve(remez.algebraic_head([1.0], 6))
    assert np.isclose(res.E_n, 2.0**-5, rtol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_matches_lp_oracle(l, free, seed):
    rng = np.random.default_rng(seed)
    t = rng.uniform(-1, 1, l + 1) + 1j * rng.uniform(-1, 1, l + 1)
    head = remez.FixedHead(l + free, t)
    res = remez.solve(head)
    assert remez.check_alternation(res)
    assert abs(res.E_n - lp_minimax(head)) <= 1e-6


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.integers(0, 60), st.integers(0, 2**31 - 1))
def test_alternation_certificate(l, extra, seed):
    rng = np.random.default_rng(seed)
    t = rng.uniform(-1, 1, l + 1) + 1j * rng.uniform(-1, 1, l + 1)
    res = remez.solve(remez.FixedHead(l + 1 + extra, t))
    assert remez.check_alternation(res)
    assert abs(res.E_n - res.levelled_error) <= 1e-10 * res.E_n


def test_large_degree():
    res = remez.solve(remez.FixedHead(200, [0.7, -0.2 + 0.1j, 0.3]))
    assert remez.check_alternation(res)


def test_E_n_is_not_monotone_in_n():
    # the head moves to frequencies n - j as n grows, so the correction
    # spaces are not nested and E_n can move either way
    t = np.array([0.27392337 + 0.63297599j, -0.46042657 - 0.84034014j])
    E = [remez.solve(remez.FixedHead(n, t)).E_n for n in range(2, 32)]
    d = np.diff(E)
    assert np.any(d > 1e-9) and np.any(d < -1e-9)


def test_E_n_approaches_gamma_from_below_for_golden_head():
    E = [remez.solve(remez.FixedHead(n, [1, 1]), polish=2).E_n for n in range(2, 20)]
    assert np.all(np.diff(E) > 0) and E[-1] < GOLDEN


@pytest.mark.filterwarnings("ignore:fit_geometric")
@pytest.mark.parametrize("taus", [[1, 1], taylor_ratio([-0.5, 1], 1).taus, [0.6, -0.2j, 0.5]])
def test_convergence_to_gamma(taus):
    sol = solve_cf(taus)
    datum = BlaschkeDatum.from_cf(sol)
    l = sol.l
    gaps, sups = [], []
    for n in range(l + 5, l + 41):
        res = remez.solve(remez.FixedHead(n, taus), polish=2)
        sup_gap, E_gap = remez.compare_asymptotic(res, AsymZolotarev(datum, n))
        gaps.append((n, E_gap))
        sups.append((n, sup_gap))
    floor = 1e-12 * sol.gamma_abs
    for series in (gaps, sups):
        ratio, _, resid = fit_geometric(series, floor=floor)
        assert ratio < 1 and ratio <= datum.r + 0.1 and resid < 0.5


def test_compare_asymptotic_examples():
    taus = taylor_ratio([-0.5, 1], 1).taus
    datum = BlaschkeDatum(ComplexPoly([-0.5, 1]))

    def gaps(n):
        return remez.compare_asymptotic(remez.solve(remez.FixedHead(n, taus)), AsymZolotarev(datum, n))

    assert gaps(24)[0] < gaps(12)[0]
    one = BlaschkeDatum(ComplexPoly([1]))
    for n in (3, 17):
        sup_gap, E_gap = remez.compare_asymptotic(remez.solve(remez.FixedHead(n, [1])), AsymZolotarev(one, n))
        assert sup_gap <= 1e-12 and E_gap <= 1e-12
    g = BlaschkeDatum.from_cf(solve_cf([1, 1]))
    e15 = remez.compare_asymptotic(remez.solve(remez.FixedHead(15, [1, 1])), AsymZolotarev(g, 15))[1]
    e30 = remez.compare_asymptotic(remez.solve(remez.FixedHead(30, [1, 1])), AsymZolotarev(g, 30))[1]
    assert e30 <= e15
    with pytest.raises(ValueError):
        remez.compare_asymptotic(remez.solve(remez.FixedHead(15, [1, 1])), AsymZolotarev(g, 16))
