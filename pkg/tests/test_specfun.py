import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from hypershell import specfun
from hypershell._spherical import half_integer_bessel
from hypershell.errors import BesselOverflowError, DomainError, PoleError
from hypershell.specfun import BesselKind, bessel, bessel_derivative, log_derivative

mpmath.mp.dps = 40

_MP = {
    "J": mpmath.besselj,
    "Y": mpmath.bessely,
    "I": mpmath.besseli,
    "K": mpmath.besselk,
}


def reference(kind, nu, x):
    return float(_MP[kind](mpmath.mpf(nu), mpmath.mpf(x)))


def modulus(nu, x):
    # J/Y accuracy is measured against the local amplitude sqrt(J^2 + Y^2);
    # near a zero of J or Y a purely relative measure is meaningless
    return math.hypot(reference("J", nu, x), reference("Y", nu, x))


ORDERS = [-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.5, 7.0, 12.5, 20.0, 33.5, 47.0, 60.0]
ARGS = list(np.logspace(-6, math.log10(50), 17))


@pytest.mark.parametrize("kind", ["I", "K"])
def test_modified_against_reference(kind):
    worst = 0.0
    for nu in ORDERS:
        for x in ARGS:
            ref = reference(kind, nu, x)
            if not 1e-280 < abs(ref) < 1e280:
                continue
            worst = max(worst, abs(bessel(kind, nu, x) / ref - 1))
    assert worst <= 1e-12


@pytest.mark.parametrize("kind", ["J", "Y"])
def test_ordinary_against_reference(kind):
    worst = 0.0
    for nu in ORDERS:
        for x in ARGS:
            ref = reference(kind, nu, x)
            if not 1e-280 < abs(ref) < 1e280:
                continue
            worst = max(worst, abs(bessel(kind, nu, x) - ref) / max(abs(ref), modulus(nu, x)))
    assert worst <= 1e-12


def test_closed_form_examples():
    assert bessel("I", 0.5, 1.0) == pytest.approx(math.sqrt(2 / math.pi) * math.sinh(1.0), rel=1e-14)
    assert bessel("I", 0.5, 1.0) == pytest.approx(0.9376748883, abs=1e-10)
    assert bessel("K", 0.5, 1.0) == pytest.approx(0.4610685044, abs=1e-10)
    assert bessel("J", 0, 1e-9) == pytest.approx(1.0, abs=1e-15)


def test_k0_against_integral_representation():
    # integrand below 1e-300 beyond t = 7
    value, _ = integrate.quad(lambda t: math.exp(-math.cosh(t)), 0, 7.0, epsabs=0, epsrel=1e-13)
    assert bessel("K", 0, 1.0) == pytest.approx(value, rel=1e-12)


@pytest.mark.parametrize("x", [0.01, 0.7, 3.0, 40.0])
def test_reflection_to_order_minus_one(x):
    assert bessel("I", -1, x) == pytest.approx(bessel("I", 1, x), rel=1e-14)
    assert bessel("K", -1, x) == pytest.approx(bessel("K", 1, x), rel=1e-14)
    assert bessel("J", -1, x) == pytest.approx(-bessel("J", 1, x), rel=1e-14)
    assert bessel("Y", -1, x) == pytest.approx(-bessel("Y", 1, x), rel=1e-14)


def test_argument_and_order_errors():
    with pytest.raises(DomainError):
        bessel("J", 0, 0.0)
    with pytest.raises(DomainError):
        bessel("K", 0, -1.0)
    with pytest.raises(DomainError):
        bessel("I", 0.3, 1.0)
    with pytest.raises(DomainError):
        bessel("I", -1.5, 1.0)
    with pytest.raises(DomainError):
        bessel("Q", 0, 1.0)


def test_overflow_is_signalled():
    with pytest.raises(BesselOverflowError):
        bessel("I", 0, 800.0)
    with pytest.raises(BesselOverflowError):
        bessel("K", 60, 1e-6)
    # the scaled variant stays finite where the plain one overflows
    assert specfun.bessel_scaled("I", 0, 800.0) == pytest.approx(1 / math.sqrt(2 * math.pi * 800), rel=1e-3)


WRONSKIAN_X = np.logspace(-4, math.log10(40), 40)
WRONSKIAN_NU = [0.5 * n for n in range(41)]


def test_modified_wronskian():
    worst = 0.0
    for nu in WRONSKIAN_NU:
        for x in WRONSKIAN_X:
            i, k = bessel("I", nu, x), bessel("K", nu, x)
            ip, kp = bessel_derivative("I", nu, x), bessel_derivative("K", nu, x)
            worst = max(worst, abs((i * kp - ip * k) * x + 1))
    assert worst <= 1e-10


def test_ordinary_wronskian():
    worst = 0.0
    for nu in WRONSKIAN_NU:
        for x in WRONSKIAN_X:
            j, y = bessel("J", nu, x), bessel("Y", nu, x)
            jp, yp = bessel_derivative("J", nu, x), bessel_derivative("Y", nu, x)
            worst = max(worst, abs((j * yp - jp * y) * math.pi * x / 2 - 1))
    assert worst <= 1e-10


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 80), st.floats(1e-3, 45.0), st.sampled_from("JYIK"))
def test_three_term_recurrence(n2, x, kind):
    nu = 0.5 * n2
    lower, mid, upper = bessel(kind, nu - 1, x), bessel(kind, nu, x), bessel(kind, nu + 1, x)
    if kind in "JY":
        lhs = lower + upper
        rhs = 2 * nu / x * mid
    elif kind == "I":
        lhs = lower - upper
        rhs = 2 * nu / x * mid
    else:
        lhs = lower - upper
        rhs = -2 * nu / x * mid
    scale = max(abs(lower), abs(upper), abs(rhs))
    assert abs(lhs - rhs) <= 1e-10 * scale


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.floats(1e-3, 300.0))
def test_turan_inequalities(n, x):
    k = [special.kve(n + j, x) for j in (-1, 0, 1)]
    i = [special.ive(n + j, x) for j in (-1, 0, 1)]
    # compare as (C_{n-1}/C_n)(C_{n+1}/C_n) against 1 so nothing overflows
    if all(np.isfinite(k)):
        assert (k[0] / k[1]) * (k[2] / k[1]) > 1
    if i[1] > 1e-290 and i[2] > 0:
        assert (i[0] / i[1]) * (i[2] / i[1]) < 1


def test_half_integer_paths_agree():
    worst = 0.0
    for n in range(-1, 30):
        nu = n + 0.5
        for x in np.logspace(-3, math.log10(50), 25):
            for kind in "JYIK":
                try:
                    general = bessel(kind, nu, x)
                except BesselOverflowError:
                    continue
                if not 1e-280 < abs(general) < 1e280:
                    continue
                closed = half_integer_bessel(kind, nu, x)
                if kind in "JY":
                    scale = math.hypot(bessel("J", nu, x), bessel("Y", nu, x))
                else:
                    scale = abs(general)
                worst = max(worst, abs(closed - general) / scale)
    assert worst <= 1e-12


def test_half_integer_rejects_integer_order():
    with pytest.raises(DomainError):
        half_integer_bessel("J", 1.0, 1.0)


@pytest.mark.parametrize("mu,y", [(0.0, 1e-250), (3.0, 1e-200), (60.0, 0.5), (0.5, 600.0), (10.0, 650.0), (7.5, 1e-5)])
def test_ratios_in_extreme_regimes(mu, y):
    i_ref = mpmath.besseli(mu + 1, y) / mpmath.besseli(mu, y)
    k_ref = mpmath.besselk(mu - 1, y) / mpmath.besselk(mu, y)
    assert specfun.iv_ratio(mu, y) == pytest.approx(float(i_ref), rel=1e-12)
    assert specfun.kv_ratio(mu, y) == pytest.approx(float(k_ref), rel=1e-12)


@pytest.mark.parametrize("mu,y", [(0.0, 1e-300), (40.0, 1e-8), (2.5, 700.0), (12.0, 3.0)])
def test_log_values(mu, y):
    assert specfun.log_iv(mu, y) == pytest.approx(float(mpmath.log(mpmath.besseli(mu, y))), rel=1e-12)
    assert specfun.log_kv(mu, y) == pytest.approx(float(mpmath.log(mpmath.besselk(mu, y))), rel=1e-12)


@pytest.mark.parametrize("kappa,x0", [(0.3, 1.0), (2.0, 0.5), (10.0, 3.0)])
def test_log_derivative_k_three_dimensions(kappa, x0):
    expected = -kappa * (1 + 1 / (kappa * x0))
    assert log_derivative(BesselKind.K, 0, 3, kappa, x0) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("d,ell", [(2, 0), (2, 3), (3, 1), (5, 2)])
def test_log_derivative_small_kappa_limits(d, ell):
    x0 = 1.7
    assert log_derivative("I", ell, d, 1e-9, x0) == pytest.approx(ell / x0, abs=1e-9)
    if d + 2 * ell - 2 > 0:
        # d = 2, ell = 0 approaches its limit only logarithmically
        assert log_derivative("K", ell, d, 1e-9, x0) == pytest.approx(-(d + ell - 2) / x0, abs=1e-6)


@pytest.mark.parametrize("d,ell,kappa,x0", [(3, 2, 0.8, 1.3), (4, 1, 2.5, 0.4), (2, 0, 1.1, 2.0)])
def test_log_derivative_against_mpmath(d, ell, kappa, x0):
    nu = mpmath.mpf(d - 2) / 2
    for kind, fn in (("I", mpmath.besseli), ("K", mpmath.besselk), ("J", mpmath.besselj), ("Y", mpmath.bessely)):
        f = lambda x: (kappa * x) ** (-nu) * fn(ell + nu, kappa * x)  # noqa: E731
        ref = mpmath.diff(f, x0) / f(x0)
        assert log_derivative(kind, ell, d, kappa, x0) == pytest.approx(float(ref), rel=1e-11)


def test_log_derivative_pole():
    z = float(mpmath.besseljzero(0, 1))
    with pytest.raises(PoleError):
        log_derivative("J", 0, 2, z, 1.0)
