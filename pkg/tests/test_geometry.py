import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussrel.codes import gen_code
from gaussrel.core import thresholds
from gaussrel.geometry import (
    CapSpec,
    VacuousBoundError,
    cap_area_log,
    lemma1_check,
    lemma2_cardinality_bound,
    lemma4_bound,
    log_sin_power_integral,
    opt_sr,
    rankin_bound,
    rankin_bound_cosine,
    rankin_intermediate,
    rankin_log_f,
    rankin_log_f_bracket,
    ring_area_log,
    ring_sandwich_ratio,
    sphere_area_log,
    triple_coordinates,
    z_of,
)


# --- surface measures ------------------------------------------------------------

def test_sphere_area_examples():
    assert sphere_area_log(2) == pytest.approx(math.log(2 * math.pi), abs=1e-14)
    assert sphere_area_log(3) == pytest.approx(math.log(4 * math.pi), abs=1e-14)
    assert sphere_area_log(3, 2.0) == pytest.approx(math.log(16 * math.pi), abs=1e-14)
    n, a = 100, 10.0
    assert abs(sphere_area_log(n, a) / n - 0.5 * math.log(2 * math.pi * math.e * a * a / n)) < 0.05
    for bad in (0, 2.5, -1):
        with pytest.raises(ValueError):
            sphere_area_log(bad)


def test_sphere_area_no_overflow():
    assert math.isfinite(sphere_area_log(5000, math.sqrt(5000)))


def test_sin_power_integral_matches_quadrature():
    from scipy import integrate
    for m in (0, 1, 5, 40):
        for lo, hi in ((0.0, 0.5), (0.2, 1.1), (0.0, math.pi / 2)):
            ref, _ = integrate.quad(lambda u: math.sin(u) ** m, lo, hi, epsabs=1e-15)
            assert math.exp(log_sin_power_integral(m, lo, hi)) == pytest.approx(ref, rel=1e-10)


def test_exact_cap_of_hemisphere_is_half_sphere():
    for n in (3, 10, 200):
        assert cap_area_log(CapSpec(n, math.pi / 2), method="exact") == pytest.approx(
            sphere_area_log(n) - math.log(2), abs=1e-10)


def test_asymptotic_cap_tracks_exact():
    # the closed form is exact up to a (1 + o(1)) factor for fixed theta
    theta = 0.6
    errs = [abs(cap_area_log(CapSpec(n, theta)) - cap_area_log(CapSpec(n, theta), method="exact"))
            for n in (50, 200, 800)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.01


def test_ring_at_equator():
    # (1/n) ln(D_n / |S^{n-1}|) -> 0; with delta = 1/n^2 the gap is about 2 ln n / n
    for n in (100, 1000, 10000):
        val = (ring_area_log(CapSpec(n, math.pi / 2)) - sphere_area_log(n)) / n
        assert abs(val) <= 2 * math.log(n) / n


@pytest.mark.parametrize("n", [10, 50, 100, 400])
@pytest.mark.parametrize("theta", [0.3, math.pi / 4, 1.2, math.pi / 2])
def test_ring_sandwich(n, theta):
    ratio = ring_sandwich_ratio(CapSpec(n, theta))
    assert 1 - 1 / (2 * n * math.sin(theta)) <= ratio <= 1


def test_ring_thin_limit():
    n, theta, delta = 50, math.pi / 4, 1e-9
    got = math.exp(ring_area_log(CapSpec(n, theta, delta))) / delta
    ref = (n - 1) * math.pi ** ((n - 1) / 2) * math.sin(theta) ** (n - 2) / math.gamma((n + 1) / 2)
    assert got == pytest.approx(ref, rel=1e-6)


def test_cap_and_ring_monotone_and_ordered():
    for n in (10, 60):
        thetas = np.linspace(0.2, 1.5, 40)
        caps = [cap_area_log(CapSpec(n, th), method="exact") for th in thetas]
        caps_asym = [cap_area_log(CapSpec(n, th)) for th in thetas]
        rings = [ring_area_log(CapSpec(n, th)) for th in thetas]
        assert np.all(np.diff(caps) > 0) and np.all(np.diff(caps_asym) > 0)
        assert np.all(np.diff(rings) > 0)
        assert all(r <= c for r, c in zip(rings, caps))


def test_regime_flag():
    with pytest.warns(RuntimeWarning):
        cap_area_log(CapSpec(100, 0.005))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cap_area_log(CapSpec(100, 0.5))


def test_capspec_validation():
    with pytest.raises(ValueError):
        CapSpec(10, 2.0)
    with pytest.raises(ValueError):
        CapSpec(10, 0.5, delta=0.0)
    assert CapSpec(10, 0.5).thickness == 0.01
    with pytest.raises(ValueError):
        cap_area_log(CapSpec(10, 0.5), method="bogus")


# --- two-codeword geometry ----------------------------------------------------------

def test_z_examples():
    assert z_of(3, 3, 0.0, 4) == 1.0
    for a in (0.5, 4.0, 30.0):
        for rho in (-0.5, 0.0, 0.3, 1.0):
            s, r = opt_sr(rho, a)
            assert z_of(s, r, rho, a) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        z_of(1, 1, -1.0, 4)


def test_z_identity_random():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        a = rng.uniform(0.05, 50)
        rho0 = rng.uniform(-0.95, 1.0)
        rho = rng.uniform(-0.95, 1.0)
        s, r = opt_sr(rho0, a)
        expected = 1 + a * (1 + rho0) * (rho - rho0) / (2 * (1 + rho))
        assert abs(z_of(s, r, rho, a) - expected) <= 1e-12 * max(1.0, abs(expected))


def test_opt_sr_examples():
    assert opt_sr(1.0, 4) == (1.0, 5.0)
    assert opt_sr(0.0, 4) == (3.0, 3.0)


@pytest.mark.parametrize("a,rho", [(4.0, 0.0), (4.0, 0.5), (1.0, -0.3), (10.0, 0.9)])
def test_opt_sr_minimises_objective(a, rho):
    def obj(s, r):
        z = z_of(s, r, rho, a)
        return (s - 1) / 2 - 0.5 * math.log(z) if z > 0 else math.inf

    s0, r0 = opt_sr(rho, a)
    best = obj(s0, r0)
    for ds in np.linspace(-0.2, 0.2, 41):
        for dr in np.linspace(-0.2, 0.2, 41):
            assert obj(s0 + ds, r0 + dr) >= best - 1e-12
    from scipy.optimize import minimize
    res = minimize(lambda v: obj(*v), [s0 + 0.1, r0 - 0.1], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14})
    assert res.x == pytest.approx([s0, r0], abs=1e-6)


def test_triple_coordinates_example():
    g = triple_coordinates(4, 0.0, 3, 3)
    assert g.x1 == pytest.approx(math.sqrt(2), abs=1e-15)
    assert g.x2 == pytest.approx(math.sqrt(2), abs=1e-15)
    assert g.y2 == pytest.approx(math.sqrt(2), abs=1e-15)
    assert g.r1 == pytest.approx(1.0, abs=1e-12)
    assert g.x1 ** 2 + g.x2 ** 2 == pytest.approx(4.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 20), st.floats(-0.95, 0.95), st.floats(0, 1), st.floats(0, 1))
def test_triple_residual_is_z(a, rho, us, ur):
    s0, r0 = opt_sr(rho, a)
    s, r = s0 * (0.8 + 0.4 * us), r0 * (0.8 + 0.4 * ur)
    z = z_of(s, r, rho, a)
    if z < 0:
        with pytest.raises(ValueError):
            triple_coordinates(a, rho, s, r)
        return
    g = triple_coordinates(a, rho, s, r)
    assert g.r1 == pytest.approx(z, abs=1e-12 * max(1.0, r))
    assert g.codeword_distance2 == pytest.approx(2 * a * (1 - rho), rel=1e-12)
    # the output point is at squared distance s from both codewords
    assert g.x1 ** 2 + (g.x2 - g.y2) ** 2 + g.r1 == pytest.approx(s, rel=1e-10, abs=1e-10)


def test_triple_negative_radicand():
    with pytest.raises(ValueError, match="radicand"):
        triple_coordinates(4, 0.0, 0.1, 0.5)


def test_lemma1_examples():
    for rho, expected in ((0.5, True), (0.7, False)):
        s, r = opt_sr(rho, 4)
        assert lemma1_check(4, rho, s, r) is expected
    assert lemma1_check(4, 0.0, 5, 2)
    assert lemma1_check(0.3, 0.0, 1.3, 1.0)


@pytest.mark.parametrize("a", [0.5, 4.0, 20.0])
def test_lemma1_matches_tau1(a):
    tau1 = thresholds(a).tau_bar1
    for rho in np.linspace(0, 1, 201):
        if abs(rho - tau1) < 1e-9:
            continue
        s, r = opt_sr(rho, a)
        assert lemma1_check(a, rho, s, r) == (rho <= tau1)


# --- cardinality bounds ----------------------------------------------------------------

def test_lemma4_examples():
    assert lemma4_bound(4, 0.0) == 16
    assert lemma4_bound(4, 0.0) >= 8
    assert lemma4_bound(10, 0.5) == 2023
    with pytest.raises(ValueError):
        lemma4_bound(10, 1.0)


def test_lemma4_monotone():
    mus = np.linspace(0, 0.95, 40)
    for n in (4, 16, 64):
        vals = [lemma4_bound(n, m) for m in mus]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
    for mu in (0.0, 0.3):
        vals = [lemma4_bound(n, mu) for n in range(1, 100)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_lemma4_dominates_generated_codes():
    for n in range(1, 65):
        assert 2 * n <= lemma4_bound(n, 0.0)
    for n in (4, 16, 64):
        code = gen_code("simplex", n, n + 1, 1.0)
        assert code.M <= lemma4_bound(n, max(code.max_cosine(), 0.0))
    for n, M in ((8, 64), (32, 512), (64, 512)):
        code = gen_code("random_uniform", n, M, 1.0, seed=3)
        assert code.M <= lemma4_bound(n, max(code.max_cosine(), 0.0))


@pytest.mark.parametrize("n", [4, 8, 16])
def test_rankin_above_simplex(n):
    # the simplex has cosine -1/n, below any positive cosine threshold
    mu = 1.01 / (n + 2)
    assert rankin_bound_cosine(n, mu) >= n + 1


@pytest.mark.parametrize("n,M", [(8, 64), (16, 256), (32, 512)])
def test_rankin_and_intermediate_above_random_codes(n, M):
    code = gen_code("random_uniform", n, M, 1.0, seed=1)
    phi = 0.5 * math.acos(code.max_cosine())
    assert M < rankin_bound(n, phi)
    assert M < rankin_intermediate(n, phi)


def test_rankin_below_twice_lemma4():
    for n in (8, 16, 32, 64):
        for mu in (0.1, 0.3, 0.5, 0.7):
            phi = 0.5 * math.acos(mu)
            beta = math.asin(math.sqrt(2) * math.sin(phi))
            if math.tan(beta) ** 2 >= n + 1:
                continue
            assert rankin_bound(n, phi) <= 2 * lemma4_bound(n, mu)


def test_rankin_regime_flag():
    with pytest.warns(RuntimeWarning):
        rankin_bound(8, 0.5 * math.acos(0.1))
    with pytest.raises(ValueError):
        rankin_bound(8, math.pi / 4)


def test_rankin_integral_bracket():
    lo, hi = rankin_log_f_bracket(0.5, 20)
    assert lo <= rankin_log_f(0.5, 20) <= hi
    for n in (10, 40, 200, 1000):
        for beta in np.linspace(0.1, 1.2, 12):
            if math.tan(beta) ** 2 >= n + 1:
                continue
            lo, hi = rankin_log_f_bracket(beta, n)
            val = rankin_log_f(beta, n)
            assert lo - 1e-10 <= val <= hi + 1e-10


def test_lemma2_examples():
    assert lemma2_cardinality_bound(64, 0.5, 0.001, 100) == 100 + lemma4_bound(64, 0.044)
    # slack 0 and large m: bound approaches m + 2 n^{3/2}
    m = 10 ** 9
    assert lemma2_cardinality_bound(16, 0.0, 0.0, m) - m == math.floor(2 * 16 ** 1.5)
    with pytest.raises(VacuousBoundError):
        lemma2_cardinality_bound(64, 0.9, 0.1, 2)
    assert lemma2_cardinality_bound(64, 0.5, 0.001, [10, 100, 1000]) <= lemma2_cardinality_bound(64, 0.5, 0.001, 100)


def test_lemma2_subexponential():
    ms = [2 ** k for k in range(1, 20)]
    ns = [16, 32, 64, 128, 256]
    rates = [math.log(lemma2_cardinality_bound(n, 0.5, 1.0 / n, ms)) / n for n in ns]
    assert all(b < a for a, b in zip(rates, rates[1:]))
    assert rates[-1] < 0.05


def test_gamma_inequality():
    # Gamma((z-1)/2) (z^2 - 1) / Gamma(z/2) < sqrt(2) z^{3/2} e^{1/z}
    zs = np.concatenate([np.linspace(1.001, 10, 500), np.geomspace(10, 1e4, 500)])
    for z in zs:
        lhs = math.lgamma((z - 1) / 2) + math.log(z * z - 1) - math.lgamma(z / 2)
        rhs = 0.5 * math.log(2) + 1.5 * math.log(z) + 1 / z
        assert lhs < rhs
