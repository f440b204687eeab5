"""Bessel functions J, Y, I, K of real order nu >= -1 and positive argument.

Values come from the AMOS/Cephes kernels in :mod:`scipy.special`; this module
adds the argument checks, explicit overflow signalling, exponentially scaled
variants, and ratio/log-derivative helpers that stay finite where the raw
functions under- or overflow.  An independent closed-form path for
half-integer orders lives in :mod:`hypershell._spherical`.
"""

from __future__ import annotations

import enum
import math

from scipy import special

from .errors import BesselOverflowError, DomainError, PoleError

__all__ = [
    "BesselKind",
    "bessel",
    "bessel_scaled",
    "bessel_derivative",
    "iv_ratio",
    "kv_ratio",
    "log_iv",
    "log_kv",
    "log_derivative",
]

# Smallest value treated as a faithfully represented (normal) double.
_TINY = 1e-290
_HUGE = 1e290
_CF_MAX_TERMS = 100_000


class BesselKind(str, enum.Enum):
    J = "J"
    Y = "Y"
    I = "I"  # noqa: E741
    K = "K"


_UNSCALED = {
    BesselKind.J: special.jv,
    BesselKind.Y: special.yv,
    BesselKind.I: special.iv,
    BesselKind.K: special.kv,
}


def _kind(kind) -> BesselKind:
    try:
        return BesselKind(kind)
    except ValueError:
        raise DomainError(f"unknown Bessel kind {kind!r}") from None


def _check_args(nu: float, x: float) -> None:
    if not x > 0 or math.isinf(x):
        raise DomainError(f"Bessel argument must be positive and finite, got x={x!r}")
    if nu < -1 or (2 * nu) != round(2 * nu):
        raise DomainError(f"order must be a multiple of 1/2 not below -1, got nu={nu!r}")


def _finite(value: float, kind: BesselKind, nu: float, x: float) -> float:
    if math.isnan(value):
        raise BesselOverflowError(f"{kind.value}_{nu}({x}) could not be evaluated")
    if math.isinf(value):
        raise BesselOverflowError(f"{kind.value}_{nu}({x}) overflows double precision")
    return float(value)


def bessel(kind, nu: float, x: float) -> float:
    """Evaluate ``C_nu(x)`` for ``C`` in {J, Y, I, K}.

    Raises :class:`BesselOverflowError` instead of returning an infinity
    (I grows like ``exp(x)``, Y and K blow up as ``x -> 0``).  Results that
    underflow are returned as ``0.0``.
    """
    kind = _kind(kind)
    _check_args(nu, x)
    return _finite(_UNSCALED[kind](nu, x), kind, nu, x)


def bessel_scaled(kind, nu: float, x: float) -> float:
    """``exp(-x) I_nu(x)`` or ``exp(x) K_nu(x)``; J and Y are returned unscaled."""
    kind = _kind(kind)
    _check_args(nu, x)
    if kind is BesselKind.I:
        value = special.ive(nu, x)
    elif kind is BesselKind.K:
        value = special.kve(nu, x)
    else:
        value = _UNSCALED[kind](nu, x)
    return _finite(value, kind, nu, x)


def bessel_derivative(kind, nu: float, x: float) -> float:
    """First derivative in ``x`` via the raising recurrence."""
    kind = _kind(kind)
    value = bessel(kind, nu, x)
    upper = bessel(kind, nu + 1, x)
    if kind is BesselKind.I:
        return upper + nu / x * value
    return -upper + nu / x * value


def iv_ratio(mu: float, y: float) -> float:
    """Return ``I_{mu+1}(y) / I_mu(y)`` for ``mu >= -1``, ``y > 0``.

    Uses scaled values when both are normal doubles and otherwise the
    Gauss continued fraction, which converges quickly exactly where the
    scaled values underflow (``y << mu``).
    """
    _check_args(mu, y)
    if mu >= 0:
        top = special.ive(mu + 1, y)
        bottom = special.ive(mu, y)
        if bottom > _TINY and top > _TINY:
            return float(top / bottom)
    elif mu == -0.5:
        # I_{1/2}/I_{-1/2} = tanh(y)
        return math.tanh(y)
    elif mu == -1:
        # I_0/I_{-1} = I_0/I_1
        return 1.0 / iv_ratio(0.0, y)
    return _iv_ratio_cf(mu, y)


def _iv_ratio_cf(mu: float, y: float) -> float:
    # I_{mu+1}/I_mu = 1/(b1 + 1/(b2 + ...)), b_j = 2(mu+j)/y; modified Lentz
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for j in range(1, _CF_MAX_TERMS):
        b = 2.0 * (mu + j) / y
        d = b + d
        d = tiny if d == 0 else d
        c = b + 1.0 / c
        c = tiny if c == 0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f
    raise BesselOverflowError(f"continued fraction for I ratio did not converge (mu={mu}, y={y})")


def kv_ratio(mu: float, y: float) -> float:
    """Return ``K_{mu-1}(y) / K_mu(y)`` for ``mu >= 0``, ``y > 0``.

    Falls back to the forward ratio recurrence
    ``K_n/K_{n+1} = 1 / (K_{n-1}/K_n + 2n/y)`` from the lowest order when
    the scaled values overflow.
    """
    _check_args(mu, y)
    if mu < 0:
        raise DomainError(f"kv_ratio requires mu >= 0, got {mu}")
    top = special.kve(mu - 1, y)
    bottom = special.kve(mu, y)
    if math.isfinite(bottom) and bottom < _HUGE and math.isfinite(top):
        return float(top / bottom)
    order, rho = _kv_ratio_base(mu, y)
    while order < mu:
        rho = 1.0 / (rho + 2.0 * order / y)
        order += 1
    return rho


def _kv_ratio_base(mu: float, y: float) -> tuple[float, float]:
    if mu != math.floor(mu):
        return 0.5, 1.0  # K_{-1/2} = K_{1/2}
    k0 = special.kve(0, y)
    k1 = special.kve(1, y)
    if not math.isfinite(k1):
        raise BesselOverflowError(f"K_1({y}) overflows double precision")
    return 1.0, float(k0 / k1)


def log_iv(mu: float, y: float) -> float:
    """Natural log of ``I_mu(y)`` for ``mu >= 0``, finite over the full double range."""
    _check_args(mu, y)
    scaled = special.ive(mu, y)
    if scaled > _TINY:
        return math.log(scaled) + y
    # ascending series; only reached for y << mu where it converges fast
    q = 0.25 * y * y
    term = 1.0
    total = 1.0
    k = 0
    while term > 1e-17 * total:
        k += 1
        term *= q / (k * (mu + k))
        total += term
    return mu * math.log(0.5 * y) - math.lgamma(mu + 1.0) + math.log(total)


def log_kv(mu: float, y: float) -> float:
    """Natural log of ``K_mu(y)`` for ``mu >= 0``, finite over the full double range."""
    _check_args(mu, y)
    scaled = special.kve(mu, y)
    if math.isfinite(scaled) and _TINY < scaled < _HUGE:
        return math.log(scaled) - y
    # K_n = K_{n-1} / rho_n with rho_n = K_{n-1}/K_n
    if mu != math.floor(mu):
        order = 0.5
        log_value = math.log(special.kve(0.5, y)) - y
        rho = 1.0
    else:
        order = 1.0
        log_value = math.log(special.kve(1, y)) - y
        rho = float(special.kve(0, y) / special.kve(1, y))
    while order < mu:
        rho = 1.0 / (rho + 2.0 * order / y)
        order += 1
        log_value -= math.log(rho)
    return log_value


def log_derivative(kind, ell: int, d: int, kappa_or_k: float, x0: float) -> float:
    """``d/dx log[z^-nu C_{ell+nu}(z)]`` at ``x = x0`` with ``z = kappa_or_k * x``.

    ``nu = (d - 2)/2``.  The derivative is taken through the raising
    recurrences, e.g. for I::

        kappa * I_{mu+1}(z)/I_mu(z) + ell/x0,   mu = ell + nu

    so no cancellation occurs as ``kappa -> 0`` (the I and K forms tend to
    ``ell/x0`` and ``-(d+ell-2)/x0``).
    """
    kind = _kind(kind)
    if d < 2 or ell < 0:
        raise DomainError(f"need d >= 2 and ell >= 0, got d={d}, ell={ell}")
    if not (kappa_or_k > 0 and x0 > 0):
        raise DomainError("momentum and radius must be positive")
    mu = ell + 0.5 * (d - 2)
    z = kappa_or_k * x0
    if kind is BesselKind.I:
        return kappa_or_k * iv_ratio(mu, z) + ell / x0
    if kind is BesselKind.K:
        return -kappa_or_k * kv_ratio(mu, z) - (ell + d - 2) / x0
    value = bessel(kind, mu, z)
    if abs(value) < 1e-14:
        raise PoleError(f"{kind.value}_{mu}({z}) vanishes; log-derivative has a pole")
    return -kappa_or_k * bessel(kind, mu + 1, z) / value + ell / x0
