"""Half-integer Bessel functions from elementary closed forms and recursions.

Kept separate from :mod:`hypershell.specfun` so the two paths can check each
other: nothing here calls :mod:`scipy.special`.

``K`` uses the terminating sum
``K_{n+1/2}(x) = sqrt(pi/2x) e^-x sum_k (n+k)!/(k!(n-k)!) (2x)^-k``,
``Y`` the upward recurrence (Y is dominant upward), and ``J``/``I`` Miller's
downward recurrence normalised against the order -1/2 and 1/2 closed forms.
"""

from __future__ import annotations

import math

from .errors import DomainError

_RESCALE = 1e200


def half_integer_bessel(kind: str, nu: float, x: float, scaled: bool = False) -> float:
    """``C_nu(x)`` for half-integer ``nu >= -1/2``.

    With ``scaled=True`` I is multiplied by ``exp(-x)`` and K by ``exp(x)``.
    """
    n2 = 2 * nu
    if n2 != round(n2) or round(n2) % 2 == 0 or nu < -0.5:
        raise DomainError(f"order must be a half-integer >= -1/2, got {nu}")
    if not x > 0:
        raise DomainError(f"argument must be positive, got {x}")
    n = int(round(nu - 0.5))  # nu = n + 1/2, n >= -1
    kind = str(getattr(kind, "value", kind))
    if kind == "K":
        return _k(max(n, -1 - n), x, scaled)
    if kind == "Y":
        return _y(n, x)
    if kind == "J":
        return _j(n, x)
    if kind == "I":
        return _i(n, x, scaled)
    raise DomainError(f"unknown Bessel kind {kind!r}")


def _k(n: int, x: float, scaled: bool) -> float:
    # K_{-1/2} = K_{1/2}; caller maps n = -1 to n = 0
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        if k:
            term *= (n + k) * (n - k + 1) / (k * 2.0 * x)
        total += term
    prefactor = math.sqrt(math.pi / (2.0 * x))
    if not scaled:
        prefactor *= math.exp(-x)
    return prefactor * total


def _y(n: int, x: float) -> float:
    root = math.sqrt(2.0 / (math.pi * x))
    previous = root * math.sin(x)  # Y_{-1/2}
    if n == -1:
        return previous
    current = -root * math.cos(x)  # Y_{1/2}
    for m in range(n):
        order = m + 0.5
        previous, current = current, (2.0 * order / x) * current - previous
    return current


def _miller_start(n: int, x: float) -> int:
    top = max(n, x)
    return int(top + 30 + 6 * math.sqrt(top)) + 1


def _downward(n: int, x: float, sign: float) -> tuple[float, float, float]:
    """Unnormalised minimal solution of C_{v-1} = (2v/x) C_v + sign*C_{v+1}.

    Returns the values at orders n+1/2, -1/2 and 1/2.  ``sign=-1`` gives the
    J recurrence, ``sign=+1`` the I recurrence.
    """
    start = _miller_start(n, x)
    upper = 0.0
    current = 1e-300
    at_n = current if start == n else 0.0
    # orders v = start + 1/2 down to -1/2
    for m in range(start, -1, -1):
        order = m + 0.5
        lower = (2.0 * order / x) * current + sign * upper
        upper, current = current, lower
        if m - 1 == n:
            at_n = current
        if abs(current) > _RESCALE:
            upper /= _RESCALE
            current /= _RESCALE
            at_n /= _RESCALE
    # current holds order -1/2, upper holds order 1/2
    if n == -1:
        at_n = current
    return at_n, current, upper


def _j(n: int, x: float) -> float:
    at_n, minus_half, plus_half = _downward(n, x, sign=-1.0)
    root = math.sqrt(2.0 / (math.pi * x))
    cos_x, sin_x = math.cos(x), math.sin(x)
    # normalise against whichever of J_{-1/2}, J_{1/2} is better conditioned
    if abs(cos_x) >= abs(sin_x):
        return at_n * (root * cos_x) / minus_half
    return at_n * (root * sin_x) / plus_half


def _i(n: int, x: float, scaled: bool) -> float:
    at_n, minus_half, _ = _downward(n, x, sign=1.0)
    root = math.sqrt(2.0 / (math.pi * x))
    # exp(-x) I_{-1/2}(x) = root * (1 + exp(-2x)) / 2
    scaled_minus_half = root * 0.5 * (1.0 + math.exp(-2.0 * x))
    value = at_n * scaled_minus_half / minus_half
    return value if scaled else value * math.exp(x)
