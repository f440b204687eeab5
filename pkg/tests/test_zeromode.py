import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from hypershell import bound, model, zeromode
from hypershell.errors import BranchError, NoZeroModeError
from hypershell.model import BoundaryData, PotentialParams

# (d, ell) channels with eta = 5 - d - 2 ell <= 0
NONPOSITIVE = [(d, ell) for d in range(2, 8) for ell in range(0, 6) if model.eta(d, ell) <= 0]
POSITIVE = [(d, ell) for d in range(2, 5) for ell in range(0, 2) if model.eta(d, ell) > 0]


def test_eta_positive_channels_have_none():
    for d, ell in POSITIVE:
        for w0 in np.linspace(-20, 20, 41):
            assert not zeromode.zero_mode_exists(PotentialParams(d, w0, 0.3, 1.2), ell)
        with pytest.raises(NoZeroModeError):
            zeromode.zero_mode_w0(d, ell, 0.3, 1.2)


def test_three_dimensions_p_wave_example():
    assert zeromode.zero_mode_w0(3, 1, 0.0, 1.0) == pytest.approx(-3.0, rel=1e-15)
    assert zeromode.zero_mode_exists(PotentialParams(3, -3.0, 0.0, 1.0), 1)
    assert not zeromode.zero_mode_exists(PotentialParams(3, -3.0 + 1e-9, 0.0, 1.0), 1)
    lm = model.l_max(PotentialParams(3, -3.0, 0.0, 1.0))
    assert lm.value == 1.0 and lm.on_boundary


def test_singular_branch_rejected():
    with pytest.raises(BranchError):
        zeromode.zero_mode_exists(PotentialParams(4, -1.0, 1.0, 1.0), 1)


def test_wavefunction_requires_surface():
    with pytest.raises(NoZeroModeError):
        zeromode.zero_mode_wavefunction(PotentialParams(4, -1.0, 0.2, 1.0), 1)


def test_exponents_for_eta_minus_one():
    # d = 4, ell = 1
    p = PotentialParams(4, zeromode.zero_mode_w0(4, 1, 0.0, 2.0), 0.0, 2.0)
    zm = zeromode.zero_mode_wavefunction(p, 1)
    assert zm.eta == -1
    x = np.array([0.5, 1.0])
    assert zm(x) == pytest.approx(zm.c2 * x**2.5)
    x = np.array([3.0, 7.0])
    assert zm(x) == pytest.approx(zm.c1 * x**-1.5)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(NONPOSITIVE), st.floats(-0.95, 0.95), st.floats(0.1, 10))
def test_matching_at_the_shell(channel, w1, x0):
    d, ell = channel
    p = PotentialParams(d, zeromode.zero_mode_w0(d, ell, w1, x0), w1, x0)
    zm = zeromode.zero_mode_wavefunction(p, ell)
    c = model.couplings(p)
    below = BoundaryData(float(zm(np.nextafter(x0, 0))), 0.0)
    # evaluate the pieces exactly at x0 rather than one ulp away
    inner = BoundaryData(
        zm.c2 * x0 ** (0.5 * (4 - zm.eta)), 0.5 * (4 - zm.eta) * zm.c2 * x0 ** (0.5 * (2 - zm.eta))
    )
    outer = BoundaryData(zm.c1 * x0 ** (0.5 * (zm.eta - 2)), 0.5 * (zm.eta - 2) * zm.c1 * x0 ** (0.5 * (zm.eta - 4)))
    glued = model.apply_matching(c, inner, reduced=True)
    assert glued.value == pytest.approx(outer.value, rel=1e-12)
    # the glued slope is a difference of terms that can dwarf it; measure against the largest
    terms = abs(c.beta * inner.value) + max(c.alpha, 1 / c.alpha) * abs(inner.slope)
    assert abs(glued.slope - outer.slope) <= 1e-12 * max(terms, abs(outer.slope))
    assert below.value == pytest.approx(inner.value, rel=1e-12)
    assert zm.c2 == pytest.approx(x0 ** (zm.eta - 3) * zm.c1 / c.alpha, rel=1e-14)


@pytest.mark.parametrize("d,ell", [(4, 1), (3, 1), (6, 0), (2, 3), (5, 2)])
@pytest.mark.parametrize("w1", [-0.6, 0.0, 0.8])
def test_normalisation_by_quadrature(d, ell, w1):
    x0 = 1.7
    p = PotentialParams(d, zeromode.zero_mode_w0(d, ell, w1, x0), w1, x0)
    zm = zeromode.zero_mode_wavefunction(p, ell)
    inner, _ = integrate.quad(lambda x: float(zm(x)) ** 2, 0, x0, epsabs=0, epsrel=1e-13)
    # x = x0 / t maps the exterior onto (0, 1]
    outer, _ = integrate.quad(lambda t: float(zm(x0 / t)) ** 2 * x0 / t**2, 0, 1, epsabs=0, epsrel=1e-13)
    assert inner + outer == pytest.approx(1.0, abs=1e-10)
    assert float(zm(1e-12)) == pytest.approx(0.0, abs=1e-12)
    assert zm.c1 > 0 and zm.normalized


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.integers(0, 6), st.floats(-0.95, 0.95), st.floats(0.1, 10))
def test_surface_is_l_max_equal_ell(d, ell, w1, x0):
    if model.eta(d, ell) > 0:
        return
    w0 = zeromode.zero_mode_w0(d, ell, w1, x0)
    p = PotentialParams(d, w0, w1, x0)
    assert zeromode.zero_mode_exists(p, ell)
    assert model.l_max(p).value == pytest.approx(ell, rel=1e-12, abs=1e-12)
    for shift in (1e-6, -1e-6):
        assert not zeromode.zero_mode_exists(p.replace(w0=w0 + shift * (1 + abs(w0))), ell)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(POSITIVE), st.floats(-0.95, 0.95), st.floats(0.1, 10), st.floats(-20, 20))
def test_case_one_only_trivial_solution(channel, w1, x0, w0):
    # The exterior solutions are x^((eta-2)/2) and x^((4-eta)/2); neither is
    # square integrable at infinity for eta >= 1.  Gluing a regular interior to
    # either therefore gives no admissible state, whatever the couplings.
    d, ell = channel
    eta = model.eta(d, ell)
    for exponent in (0.5 * (eta - 2), 0.5 * (4 - eta)):
        assert 2 * exponent >= -1
    # the glued data is never identically zero, so the only admissible solution is zero
    c = model.couplings(PotentialParams(d, w0, w1, x0))
    a = 0.5 * (4 - eta)
    glued = model.apply_matching(c, BoundaryData(x0**a, a * x0 ** (a - 1)), reduced=True)
    assert (glued.value, glued.slope) != (0.0, 0.0)


@pytest.mark.parametrize("d,ell", [(4, 1), (3, 1), (6, 0), (2, 3), (3, 2)])
@pytest.mark.parametrize("w1", [-0.5, 0.0, 0.7])
def test_bound_state_disappears_on_surface(d, ell, w1):
    x0 = 1.3
    w0_star = zeromode.zero_mode_w0(d, ell, w1, x0)
    # bisect the w0 at which kappa_ell drops below 1e-6
    lo, hi = w0_star - 1.0, w0_star + 1.0
    assert bound.find_bound_state(PotentialParams(d, lo, w1, x0), ell) is not None
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        state = bound.find_bound_state(PotentialParams(d, mid, w1, x0), ell)
        if state is not None and state.kappa > 1e-6:
            lo = mid
        else:
            hi = mid
    assert abs(lo - w0_star) < 1e-8 * (1 + abs(w0_star))
    # on the rounded surface the state is absent or sits at vanishing momentum
    state = bound.find_bound_state(PotentialParams(d, w0_star, w1, x0), ell)
    assert state is None or state.kappa * x0 < 1e-6
    assert bound.w0_for_kappa(d, ell, w1, x0, 1e-9) == pytest.approx(w0_star, rel=1e-8, abs=1e-8)
