"""Bound states: secular equation, per-channel root finding, full spectrum.

For ``lambda = -kappa^2`` the interior solution is ``I``-type and the exterior
``K``-type; gluing them with the matching matrix gives the secular residual

    S(kappa) = alpha * L_K - beta_tilde - L_I / alpha,

with ``L_C`` the log-derivative of ``x -> (kappa x)^-nu C_{ell+nu}(kappa x)``
at ``x0``.  ``S`` is strictly monotone in ``kappa`` (decreasing for
``alpha > 0``, increasing for ``alpha < 0``), so each channel has at most one
bound state, and one exists exactly when ``ell < L_max``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from scipy import optimize

from . import model
from .errors import BranchError, ConvergenceError, DomainError
from .model import Branch, PotentialParams
from .specfun import iv_ratio, kv_ratio

__all__ = [
    "BoundState",
    "Spectrum",
    "secular_residual",
    "secular_F",
    "secular_rhs",
    "find_bound_state",
    "spectrum",
    "w0_for_kappa",
]

# bracket search limits in y = kappa * x0
Y_START = 1e-8
Y_CEILING = 700.0
Y_FLOOR = 1e-300
KAPPA_RTOL = 1e-12
_EULER_GAMMA = 0.5772156649015329

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundState:
    """One channel's bound state, ``lam = -kappa**2``.

    ``log_kappa`` is carried separately because in the ``d = 2, ell = 0``
    channel the momentum approaches zero like ``exp(-c / (L_max))`` and can
    fall below the smallest double; ``kappa`` is then ``0.0``.
    """

    ell: int
    kappa: float
    lam: float
    degeneracy: int
    log_kappa: float


@dataclass(frozen=True)
class Spectrum:
    params: PotentialParams
    states: tuple = ()
    total_count: int = 0
    zero_mode_channel: Optional[int] = None
    l_max: Optional[model.LMax] = field(default=None, compare=False)

    def energies(self) -> list[float]:
        return [s.lam for s in self.states]


def _mu(p: PotentialParams, ell: int) -> float:
    return ell + 0.5 * (p.d - 2)


def _log_derivatives(p: PotentialParams, ell: int, kappa: float) -> tuple[float, float]:
    mu = _mu(p, ell)
    y = kappa * p.x0
    l_i = kappa * iv_ratio(mu, y) + ell / p.x0
    l_k = -kappa * kv_ratio(mu, y) - (ell + p.d - 2) / p.x0
    return l_i, l_k


def secular_residual(p: PotentialParams, ell: int, kappa: float) -> float:
    """Residual whose zero in ``kappa > 0`` is the bound-state momentum.

    On the Robin-Dirichlet branches the one-sided conditions apply:
    ``w1 = +1`` couples only the exterior solution, ``L_K = w0_tilde/4``;
    ``w1 = -1`` only the interior one, ``L_I = -w0_tilde/4``.
    """
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"angular momentum must be a non-negative integer, got {ell!r}")
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    c = model.couplings(p)
    l_i, l_k = _log_derivatives(p, ell, kappa)
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        return l_k - 0.25 * c.w0_tilde
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        return l_i + 0.25 * c.w0_tilde
    return c.alpha * l_k - c.beta_tilde - l_i / c.alpha


def secular_F(alpha: float, nu: float, ell: int, y0: float) -> float:
    """Left-hand side ``F(y0)`` of the rescaled secular equation ``F(kappa x0) = rhs``.

    ``F(y) = -y (I_{mu-1}/(alpha I_mu) + alpha K_{mu-1}/K_mu) - (alpha - 1/alpha) ell``
    with ``mu = nu + ell``.  ``y I_{mu-1}/I_mu`` is evaluated as
    ``2 mu + y I_{mu+1}/I_mu`` to avoid cancellation at small ``y``.
    """
    if alpha == 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite and nonzero, got {alpha!r}")
    if not y0 > 0:
        raise DomainError(f"y0 must be positive, got {y0!r}")
    mu = nu + ell
    y_ri = 2.0 * mu + y0 * iv_ratio(mu, y0)
    y_rk = y0 * kv_ratio(mu, y0)
    return -(y_ri / alpha + alpha * y_rk) - (alpha - 1.0 / alpha) * ell


def secular_rhs(p: PotentialParams) -> float:
    """Energy- and ``ell``-independent right-hand side ``2 nu (alpha - 1/alpha) + beta_tilde x0``."""
    c = model.couplings(p)
    if not c.regular:
        raise BranchError("the rescaled secular equation needs w1 != +/-1")
    # alpha - 1/alpha = 4 w1 / (1 - w1^2)
    return 8.0 * p.nu * p.w1 / (1.0 - p.w1 * p.w1) + c.beta_tilde * p.x0


def _large_kappa_sign(c: model.Couplings) -> float:
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        return -1.0
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        return 1.0
    return -1.0 if c.alpha > 0 else 1.0


def _sign(value: float) -> float:
    return math.copysign(1.0, value) if value != 0 else 0.0


def find_bound_state(p: PotentialParams, ell: int) -> Optional[BoundState]:
    """The unique bound state in channel ``ell``, or ``None``.

    Existence is decided by ``L_max``; the root is bracketed geometrically
    in ``y = kappa x0`` starting from ``1e-8`` (upwards to ``700``, downwards
    to ``1e-300``) and refined with Brent's method to relative ``1e-12``.
    """
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"angular momentum must be a non-negative integer, got {ell!r}")
    ell = int(ell)
    lm = model.l_max(p)
    if lm.ell_max is None or ell > lm.ell_max or (ell == lm.ell_max and lm.on_boundary):
        return None
    c = model.couplings(p)
    x0 = p.x0
    far_sign = _large_kappa_sign(c)

    def residual(y: float) -> float:
        return secular_residual(p, ell, y / x0)

    y_lo = y_hi = probe = Y_START
    s = residual(probe)
    if _sign(s) == -far_sign:
        while s != 0 and _sign(s) == -far_sign:
            y_lo, y_hi = y_hi, 2.0 * y_hi
            if y_hi > Y_CEILING:
                raise ConvergenceError(
                    f"no sign change of the secular residual up to kappa*x0={Y_CEILING} "
                    f"(d={p.d}, ell={ell}, w0={p.w0}, w1={p.w1}, x0={x0})"
                )
            probe = y_hi
            s = residual(probe)
    elif s != 0:
        while s != 0 and _sign(s) == far_sign:
            y_hi, y_lo = y_lo, y_lo * 1e-3
            if y_lo < Y_FLOOR:
                return _underflowed_state(p, ell, c)
            probe = y_lo
            s = residual(probe)
    if s == 0:
        y_root = probe
    else:
        y_root = optimize.brentq(
            residual, y_lo, y_hi, xtol=1e-300, rtol=KAPPA_RTOL * 0.1, maxiter=500
        )
    kappa = y_root / x0
    tol = 1e-9 * (1.0 + abs(c.beta_tilde if c.regular else c.w0_tilde))
    if abs(secular_residual(p, ell, kappa)) > tol:
        raise ConvergenceError(
            f"secular residual {secular_residual(p, ell, kappa):.3e} above tolerance at "
            f"kappa={kappa} (d={p.d}, ell={ell}, w0={p.w0}, w1={p.w1}, x0={x0})"
        )
    return _state(p, ell, math.log(kappa))


def _state(p: PotentialParams, ell: int, log_kappa: float) -> BoundState:
    kappa = math.exp(log_kappa)
    return BoundState(ell, kappa, -kappa * kappa, model.degeneracy(p.d, ell), log_kappa)


def _underflowed_state(p: PotentialParams, ell: int, c: model.Couplings) -> Optional[BoundState]:
    # Only the mu = 0 channel (d = 2, ell = 0) approaches its threshold slowly
    # enough (logarithmically) for the root to drop below the double range.
    # There y K_1/K_0 -> 1/(ln(2/y) - gamma) and y I_1/I_0 -> 0, so the
    # rescaled equation -alpha / (ln 2 - gamma - t) = rhs solves for t = ln y.
    if _mu(p, ell) != 0:
        # Power-law thresholds put any resolvable root above y ~ 1e-16; getting
        # here means L_max - ell is at rounding level, i.e. on the zero-mode surface.
        log.debug("channel ell=%d treated as on the L_max = ell surface (d=%d)", ell, p.d)
        return None
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        # L_K = w0_tilde/4  ->  -1/(x0 (ln 2 - gamma - t)) = w0_tilde/4
        rhs, alpha = 0.25 * c.w0_tilde * p.x0, 1.0
    elif c.branch is Branch.REGULAR:
        rhs, alpha = secular_rhs(p), c.alpha
    else:
        raise ConvergenceError("interior-only branch cannot approach threshold logarithmically")
    t = math.log(2.0) - _EULER_GAMMA + alpha / rhs
    return _state(p, ell, t - math.log(p.x0))


def w0_for_kappa(d: int, ell: int, w1: float, x0: float, kappa: float) -> float:
    """The ``w0`` for which channel ``ell`` has its bound state at ``kappa``.

    The secular equation is linear in ``beta_tilde``, hence in ``w0``.
    """
    probe = PotentialParams(d, 0.0, w1, x0)
    c = model.couplings(probe)
    if not c.regular:
        raise BranchError("w0_for_kappa needs w1 != +/-1")
    l_i, l_k = _log_derivatives(probe, ell, kappa)
    beta_tilde = c.alpha * l_k - l_i / c.alpha
    beta = beta_tilde + (c.alpha**2 - 1.0) * (d - 1) / (2.0 * c.alpha * x0)
    return beta * (1.0 - w1 * w1)


def spectrum(p: PotentialParams) -> Spectrum:
    """All bound states, one per channel ``ell = 0 .. ell_max``."""
    lm = model.l_max(p)
    if lm.ell_max is None:
        return Spectrum(p, (), 0, None, lm)
    states = []
    for ell in range(lm.ell_max + 1):
        try:
            state = find_bound_state(p, ell)
        except ConvergenceError as exc:
            raise ConvergenceError(f"channel ell={ell}: {exc}") from exc
        if state is not None:
            states.append(state)
    total = sum(s.degeneracy for s in states)
    zero_mode = lm.ell_max if lm.on_boundary else None
    return Spectrum(p, tuple(states), total, zero_mode, lm)
