"""Scattering phase shifts and S-matrix eigenvalues.

With the interior solution ``J``-type only, matching at ``x0`` and reading off
the exterior ``J``/``Y`` coefficients gives ``tan(delta) = N / D`` with

    N = -J (( 1 - alpha^2) J' + alpha beta_tilde J)
    D = -J' Y + J (alpha^2 Y' - alpha beta_tilde Y)

where ``J = z^-nu J_{ell+nu}(z)`` etc. at ``z = k x0`` and primes are
``x``-derivatives.  The common ``z^-nu`` factor cancels in the ratio, so the
plain Bessel functions are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import model
from .errors import DomainError, EvaluationError
from .model import Branch, PotentialParams

__all__ = [
    "PhaseShift",
    "phase_shift",
    "phase_shift_value",
    "phase_shift_delta_only",
    "phase_shift_hard_hypersphere",
    "phase_shift_robin",
    "phase_shift_pure_delta_prime",
    "s_matrix_eigenvalue",
    "unwrap",
    "continued_denominator",
]

_VANISHING = 1e-300


@dataclass(frozen=True)
class PhaseShift:
    ell: int
    k: float
    delta: float
    s_eigenvalue: complex


def _principal(numerator: float, denominator: float) -> float:
    """``atan(numerator/denominator)`` folded into ``(-pi/2, pi/2]``; poles give ``pi/2``."""
    if abs(numerator) < _VANISHING and abs(denominator) < _VANISHING:
        raise EvaluationError("phase-shift numerator and denominator both vanish")
    theta = math.atan2(numerator, denominator)
    if theta > 0.5 * math.pi:
        theta -= math.pi
    elif theta <= -0.5 * math.pi:
        theta += math.pi
    return theta


def _check(ell: int, k: float, x0: float) -> None:
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"angular momentum must be a non-negative integer, got {ell!r}")
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"momentum must be positive and finite, got {k!r}")
    if not x0 > 0:
        raise DomainError(f"radius must be positive, got {x0!r}")


def _cylinder(d: int, ell: int, k: float, x0: float):
    """``(J, J', Y, Y')`` of ``J_mu(kx)``-type functions at ``x0``, primes in ``x``.

    The derivatives are those of ``z^-nu C_mu(z)`` up to the shared ``z^-nu``:
    ``k (-C_{mu+1}(z) + ell C_mu(z) / z)``.
    """
    mu = ell + 0.5 * (d - 2)
    z = k * x0
    j0, j1 = special.jv(mu, z), special.jv(mu + 1, z)
    y0, y1 = special.yv(mu, z), special.yv(mu + 1, z)
    # an overflowed Y gives inf - inf here; callers test for it
    with np.errstate(invalid="ignore", over="ignore"):
        jp = k * (-j1 + ell * j0 / z)
        yp = k * (-y1 + ell * y0 / z)
    return j0, jp, y0, yp


def _overflowed(*values: float) -> bool:
    return not all(math.isfinite(v) for v in values)


def phase_shift_value(p: PotentialParams, ell: int, k: float) -> float:
    """``delta_ell(k)`` on ``(-pi/2, pi/2]``.

    On the ``w1 = -1`` branch this is the hard-hypersphere shift and on
    ``w1 = +1`` the exterior Robin shift with coupling ``w0_tilde / 4``.
    """
    _check(ell, k, p.x0)
    c = model.couplings(p)
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        return phase_shift_hard_hypersphere(p.d, ell, k, p.x0)
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        return phase_shift_robin(p.d, ell, 0.25 * c.w0_tilde, k, p.x0)
    j, jp, y, yp = _cylinder(p.d, ell, k, p.x0)
    if _overflowed(y, yp):
        # |Y| beyond double range means tan(delta) ~ J/Y is below it
        return 0.0
    a, bt = c.alpha, c.beta_tilde
    numerator = -j * ((1.0 - a * a) * jp + a * bt * j)
    denominator = -jp * y + j * (a * a * yp - a * bt * y)
    return _principal(numerator, denominator)


def phase_shift(p: PotentialParams, ell: int, k: float) -> PhaseShift:
    delta = phase_shift_value(p, ell, k)
    return PhaseShift(ell=int(ell), k=float(k), delta=delta, s_eigenvalue=s_matrix_eigenvalue(delta))


def phase_shift_delta_only(d: int, ell: int, w0: float, k: float, x0: float) -> float:
    """Pure ``delta`` shell (``w1 = 0``).

    ``tan(delta) = pi w0 x0 J^2 / (pi w0 x0 J Y - 2)`` with ``J, Y`` of order ``ell + nu`` at ``k x0``.
    """
    _check(ell, k, x0)
    mu = ell + 0.5 * (d - 2)
    z = k * x0
    j, y = special.jv(mu, z), special.yv(mu, z)
    if _overflowed(y):
        return 0.0
    g = math.pi * w0 * x0
    return _principal(g * j * j, g * j * y - 2.0)


def phase_shift_hard_hypersphere(d: int, ell: int, k: float, x0: float) -> float:
    """Impenetrable core of radius ``x0``: ``tan(delta) = J_{ell+nu}(k x0) / Y_{ell+nu}(k x0)``."""
    _check(ell, k, x0)
    mu = ell + 0.5 * (d - 2)
    z = k * x0
    j, y = special.jv(mu, z), special.yv(mu, z)
    if _overflowed(y):
        return 0.0
    return _principal(j, y)


def phase_shift_robin(d: int, ell: int, gamma: float, k: float, x0: float) -> float:
    """Exterior Robin wall ``R'(x0+) = gamma R(x0+)``.

    ``tan(delta) = (J' - gamma J) / (Y' - gamma Y)`` with ``x``-derivatives of
    the hyperspherical functions; the shared ``z^-nu`` factor cancels.
    """
    _check(ell, k, x0)
    j, jp, y, yp = _cylinder(d, ell, k, x0)
    if _overflowed(y, yp):
        return 0.0
    return _principal(jp - gamma * j, yp - gamma * y)


def phase_shift_pure_delta_prime(d: int, ell: int, w1: float, k: float, x0: float) -> float:
    """Pure ``delta'`` shell (``w0 = 0``), written in ``z0 = k x0`` alone.

    Depends on ``k`` and ``x0`` only through ``z0``, so it is invariant under
    ``x0 -> L x0, k -> k / L``.
    """
    _check(ell, k, x0)
    if w1 in (1.0, -1.0):
        raise DomainError("pure delta' closed form needs w1 != +/-1")
    alpha = (1.0 + w1) / (1.0 - w1)
    mu = ell + 0.5 * (d - 2)
    z = k * x0
    j, y = special.jv(mu, z), special.yv(mu, z)
    # z-derivatives of z^-nu C_mu(z), without the z^-nu factor
    jd = -special.jv(mu + 1, z) + ell * j / z
    yd = -special.yv(mu + 1, z) + ell * y / z
    if _overflowed(y, yd):
        return 0.0
    a2 = alpha * alpha
    numerator = -(1.0 - a2) * j * ((d - 1) * j + 2.0 * z * jd)
    denominator = (a2 - 1.0) * (d - 1) * j * y + 2.0 * z * (a2 * yd * j - jd * y)
    return _principal(numerator, denominator)


def s_matrix_eigenvalue(delta: float) -> complex:
    """``exp(2 i delta)``; equal to ``(1 + 2i t - t^2)/(1 + t^2)`` with ``t = tan(delta)``."""
    return complex(math.cos(2.0 * delta), math.sin(2.0 * delta))


def unwrap(deltas) -> np.ndarray:
    """Remove the jumps of ``pi`` from principal-branch shifts on an ordered ``k`` grid."""
    return np.unwrap(np.asarray(deltas, dtype=float), period=math.pi)


def continued_denominator(p: PotentialParams, ell: int, kappa: float) -> float:
    """S-matrix denominator continued to ``k = i kappa``.

    ``J`` and ``Y`` become the interior ``I`` and the decaying ``K``; the
    exterior coefficient of the growing solution is then proportional to

        alpha I K' - beta_tilde I K - I' K / alpha

    (``x``-derivatives of the hyperspherical forms) which vanishes exactly at
    a bound state.  Exponentially scaled Bessel functions keep the product
    ``I K`` finite; the positive factor ``exp(0)`` from ``ive * kve`` is exact.
    """
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    c = model.couplings(p)
    mu = ell + 0.5 * (p.d - 2)
    z = kappa * p.x0
    i0, i1 = special.ive(mu, z), special.ive(mu + 1, z)
    k0, km = special.kve(mu, z), special.kve(mu - 1, z)
    # x-derivatives of z^-nu I_mu and z^-nu K_mu, shared z^-nu dropped
    ip = kappa * (i1 + ell * i0 / z)
    kp = kappa * (-km - (ell + p.d - 2) * k0 / z)
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        return kp - 0.25 * c.w0_tilde * k0
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        return ip + 0.25 * c.w0_tilde * i0
    return c.alpha * i0 * kp - c.beta_tilde * i0 * k0 - ip * k0 / c.alpha
