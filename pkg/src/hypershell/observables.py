"""Mean radius of bound states.

For ``u = sqrt(x) I_mu(kappa x)`` inside and ``alpha I_mu(y0)/K_mu(y0) sqrt(x) K_mu(kappa x)``
outside (``y0 = kappa x0``, ``mu = ell + nu``)

    <x> = (1/kappa) (int_0^y0 z^2 I^2 + A^2 int_y0^inf z^2 K^2) / (int_0^y0 z I^2 + A^2 int_y0^inf z K^2)

with ``A = alpha I(y0)/K(y0)``.  The integrals are evaluated with the
integrands divided by ``I(y0)^2`` and ``K(y0)^2`` so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, special

from . import model
from .errors import DomainError, QuadratureError
from .model import Branch, PotentialParams
from .specfun import log_iv

__all__ = [
    "INF",
    "Infinity",
    "MeanRadius",
    "RadiusIntegrals",
    "radius_integrals",
    "mean_radius",
    "mean_radius_zero_limit",
    "zero_mode_radius_ratio",
]

QUAD_RTOL = 1e-8
TAIL_RTOL = 1e-18


class Infinity:
    """Explicit marker for a divergent mean radius."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


@dataclass(frozen=True)
class MeanRadius:
    ell: int
    kappa: float
    value: Union[float, Infinity]
    ratio: Union[float, Infinity]


@dataclass(frozen=True)
class RadiusIntegrals:
    """Normalised interior/exterior moments and their summed error estimate.

    ``inner_p = int_0^y0 z^p (I(z)/I(y0))^2 dz`` and
    ``outer_p = int_y0^inf z^p (K(z)/K(y0))^2 dz`` for ``p = 1, 2``.
    ``error`` is the largest relative error estimate of the four.
    """

    y0: float
    inner1: float
    inner2: float
    outer1: float
    outer2: float
    error: float


def _quad(f, a, b):
    """Vector quadrature returning values and the largest relative error estimate.

    ``quad_vec`` estimates one error norm for all components, which says little
    about a component many orders smaller than the rest; in that case the
    integral is redone with the components rescaled to unit size.
    """
    value, err = integrate.quad_vec(f, a, b, epsabs=0.0, epsrel=1e-11, limit=400)
    value = np.asarray(value)
    smallest = float(np.min(np.abs(value)))
    if smallest > 0 and err <= 1e-11 * smallest:
        return value, float(err) / smallest
    weights = 1.0 / np.where(value != 0, np.abs(value), 1.0)
    scaled, err = integrate.quad_vec(lambda t: f(t) * weights, a, b, epsabs=0.0, epsrel=1e-11, limit=400)
    value = np.asarray(scaled) / weights
    return value, float(err)


def _inner(mu: float, y0: float):
    # z = y0 t; (I(y0 t)/I(y0))^2 from scaled values, t in [0, 1]
    scale = special.ive(mu, y0)
    if scale > 1e-290:
        def ratio(t):
            return special.ive(mu, y0 * t) / scale * np.exp(y0 * (t - 1.0))
    else:
        base = log_iv(mu, y0)

        def ratio(t):
            t = np.maximum(t, 1e-300)
            return np.exp(np.vectorize(lambda s: log_iv(mu, y0 * s))(t) - base)

    def f(t):
        r2 = ratio(t) ** 2
        return np.array([y0**2 * t * r2, y0**3 * t * t * r2])

    return _quad(f, 0.0, 1.0)


def _outer_tail(p: int, y0: float, z_max: float) -> float:
    # (K(z)/K(y0))^2 <= exp(-2 (z - y0)) because exp(z) K(z) decreases, and
    # int_zm^inf z^p exp(-2z) dz <= zm^p exp(-2 zm) for zm > p
    return z_max**p * math.exp(-2.0 * (z_max - y0))


def _outer(mu: float, y0: float):
    # z = y0 exp(s) over [y0, z_max]; integrand z^(p+1) (K(z)/K(y0))^2 ds
    scale = special.kve(mu, y0)

    def f(s):
        z = y0 * np.exp(s)
        r2 = (special.kve(mu, z) / scale) ** 2 * np.exp(-2.0 * (z - y0))
        return np.array([z * z * r2, z**3 * r2])

    extra = 20.0
    while True:
        z_max = y0 + extra
        values, err = _quad(f, 0.0, math.log(z_max / y0))
        tails = [_outer_tail(1, y0, z_max), _outer_tail(2, y0, z_max)]
        rel_tails = [t / max(v, 1e-300) for t, v in zip(tails, values)]
        if max(rel_tails) <= TAIL_RTOL:
            return values, err + max(rel_tails)
        extra *= 2.0
        if extra > 1e4:
            raise QuadratureError(f"exterior tail did not fall below tolerance (mu={mu}, y0={y0})")


def radius_integrals(p: PotentialParams, ell: int, kappa: float) -> RadiusIntegrals:
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    mu = ell + 0.5 * (p.d - 2)
    y0 = kappa * p.x0
    (i1, i2), err_in = _inner(mu, y0)
    (o1, o2), err_out = _outer(mu, y0)
    return RadiusIntegrals(y0, float(i1), float(i2), float(o1), float(o2), max(err_in, err_out))


def _ratio_from(c: model.Couplings, ints: RadiusIntegrals) -> tuple[float, float, float]:
    """``(numerator, denominator, relative error)`` of ``<x> kappa``, weights set by the branch."""
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        w_in, w_out = 0.0, 1.0
    elif c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        w_in, w_out = 1.0, 0.0
    else:
        w_in, w_out = 1.0, c.alpha**2
    num = w_in * ints.inner2 + w_out * ints.outer2
    den = w_in * ints.inner1 + w_out * ints.outer1
    # positive weighted sums keep the worst relative error of their terms
    return num, den, 2.0 * ints.error


def mean_radius(p: PotentialParams, ell: int, kappa: float) -> MeanRadius:
    """``<x>`` for the bound state of channel ``ell`` at momentum ``kappa``.

    The caller supplies ``kappa`` (normally from :func:`hypershell.bound.find_bound_state`).
    Raises :class:`QuadratureError` when the estimated relative error exceeds 1e-8.
    """
    c = model.couplings(p)
    ints = radius_integrals(p, ell, kappa)
    num, den, rel = _ratio_from(c, ints)
    if not rel <= QUAD_RTOL:
        raise QuadratureError(f"mean-radius quadrature error {rel:.2e} above {QUAD_RTOL}")
    value = num / den / kappa
    return MeanRadius(ell=int(ell), kappa=float(kappa), value=value, ratio=value / p.x0)


def norm_integral(p: PotentialParams, ell: int, kappa: float) -> float:
    """``int_0^inf u^2 dx`` for ``u = sqrt(x) I_mu(kappa x)`` inside (weight ``alpha`` across ``x0``)."""
    c = model.couplings(p)
    ints = radius_integrals(p, ell, kappa)
    _, den, _ = _ratio_from(c, ints)
    mu = ell + 0.5 * (p.d - 2)
    return den * math.exp(2.0 * log_iv(mu, ints.y0)) / kappa**2


def mean_radius_zero_limit(alpha: float, eta: int) -> Union[float, Infinity]:
    """``lim <x>/x0`` as the bound state reaches zero energy.

    ``((eta-1)/eta) (1 - |2(eta-3) / ((eta-6)(alpha^2 (eta-5) + eta - 1))|)`` for
    ``eta <= -1`` and :data:`INF` for ``eta`` in {0, 1, 2, 3}.  ``alpha = inf``
    gives the ``w1 -> 1`` value ``(eta-1)/eta``.
    """
    if int(eta) != eta or eta > 3:
        raise DomainError(f"eta must be an integer <= 3, got {eta!r}")
    if eta >= 0:
        return INF
    if math.isinf(alpha):
        return (eta - 1) / eta
    correction = abs(2.0 * (eta - 3) / ((eta - 6) * (alpha * alpha * (eta - 5) + eta - 1)))
    return (eta - 1) / eta * (1.0 - correction)


def zero_mode_radius_ratio(alpha: float, eta: int) -> float:
    """``<x>/x0`` of the zero mode itself, from the power-law integrals (``eta <= -1``)."""
    if eta > -1:
        raise DomainError("the zero-mode mean radius is finite only for eta <= -1")
    a2 = alpha * alpha
    first = 1.0 / (a2 * (6 - eta)) - 1.0 / eta
    norm = 1.0 / (a2 * (5 - eta)) + 1.0 / (1 - eta)
    return first / norm
