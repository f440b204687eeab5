"""Brute-force verification path: direct integration of the reduced radial equation.

    u'' = ((d + 2l - 3)(d + 2l - 1) / (4 x^2) - lambda) u,   u = x^((d-1)/2) R

The interior solution starts off the origin from its regular power series,
the exterior one from the asymptotic series of the decaying (bound) solution
or is fitted to the Hankel asymptotic forms (scattering).  The two sides are
joined with the matching matrix acting on ``u`` (plain ``beta``, not
``beta_tilde``).  No Bessel-function evaluations are used anywhere here, so
the results are independent of :mod:`hypershell.specfun` and of the secular
equation.  Slow by design.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, optimize

from . import model
from .errors import ConvergenceError, EvaluationError
from .model import Branch, PotentialParams

__all__ = [
    "Side",
    "RadialSolution",
    "radial_solution",
    "interior_solution",
    "exterior_bound_solution",
    "scattering_solution",
    "matching_defect",
    "shoot_bound_state",
    "fit_asymptotic_phase",
    "bound_state_moments",
]

RTOL = 1e-10
ATOL = 1e-12
START_FRACTION = 1e-3
DECAY_LENGTHS = 40.0
SHOOT_Y_MIN = 1e-20
SHOOT_Y_MAX = 300.0


class Side(str, enum.Enum):
    INTERIOR = "Interior"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class RadialSolution:
    """Samples of the reduced radial function ``u`` on one side of ``x0``.

    ``lam`` is the energy (``-kappa^2`` or ``k^2``); ``kappa_or_k`` its root.
    Normalisation is arbitrary unless stated by the producer.
    """

    grid: np.ndarray
    u: np.ndarray
    u_prime: np.ndarray
    kappa_or_k: float
    lam: float
    side: Side
    ell: int
    d: int

    def radial(self) -> np.ndarray:
        """``R = x^((1-d)/2) u`` on the same grid."""
        return self.grid ** (0.5 * (1 - self.d)) * self.u


def _centrifugal(d: int, ell: int) -> float:
    return 0.25 * (d + 2 * ell - 3) * (d + 2 * ell - 1)


def _rhs(q: float, lam: float):
    def f(x, y):
        u, du = y[0], y[1]
        out = [du, (q / (x * x) - lam) * u]
        if len(y) > 2:
            out += [u * u, x * u * u]
        return out

    return f


def _solve(f, x_from, x_to, y0, t_eval=None, rtol=RTOL, atol=ATOL):
    sol = integrate.solve_ivp(
        f, (x_from, x_to), y0, method="DOP853", rtol=rtol, atol=atol, t_eval=t_eval
    )
    if sol.status != 0:
        raise EvaluationError(f"radial integration failed between {x_from} and {x_to}: {sol.message}")
    return sol


def _series_start(d: int, ell: int, lam: float, x: float) -> tuple[float, float]:
    # u = x^s (1 + a1 x^2 + a2 x^4), s = (d-1)/2 + ell, normalised to u(x) ~ 1
    s = 0.5 * (d - 1) + ell
    a1 = -lam / (2.0 * (2.0 * s + 1.0))
    a2 = -lam * a1 / (4.0 * (2.0 * s + 3.0))
    x2 = x * x
    poly = 1.0 + a1 * x2 + a2 * x2 * x2
    dpoly = 2.0 * a1 * x + 4.0 * a2 * x2 * x
    return poly, s / x * poly + dpoly


def interior_solution(
    p: PotentialParams, ell: int, lam: float, grid=None, moments: bool = False, rtol: float = RTOL
):
    """Regular solution on ``(0, x0]``, normalised so ``u(x) ~ (x/x_start)^s`` near the origin.

    Returns the ``solve_ivp`` result; with ``moments=True`` the state carries
    ``int u^2`` and ``int x u^2`` from 0 (the ``[0, x_start]`` piece is added
    from the leading power).
    """
    x_start = START_FRACTION * p.x0
    u, du = _series_start(p.d, ell, lam, x_start)
    y0 = [u, du]
    if moments:
        s = 0.5 * (p.d - 1) + ell
        y0 += [x_start / (2 * s + 1), x_start**2 / (2 * s + 2)]
    f = _rhs(_centrifugal(p.d, ell), lam)
    return _solve(f, x_start, p.x0, y0, t_eval=grid, rtol=rtol)


def _decaying_start(q: float, kappa: float, x: float) -> tuple[float, float]:
    # u = e^{-kappa x} sum b_j x^-j, b_{j+1} = (q - j(j+1)) b_j / (2 kappa (j+1)); scaled by e^{kappa x}
    # Asymptotic only: stop at the smallest term.  Inward integration damps
    # the admixed growing solution by exp(-80), so this is ample.
    total, dtotal = 1.0, 0.0
    term = 1.0
    for j in range(0, 60):
        nxt = term * (q - j * (j + 1)) / (2.0 * kappa * (j + 1) * x)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-17 * abs(total):
            break
        term = nxt
        total += term
        dtotal += -(j + 1) * term / x
    return total, dtotal - kappa * total


def _rhs_log(q: float, lam: float):
    # same system in s = ln x: d/ds = x d/dx
    def f(s, y):
        x = math.exp(s)
        u, du = y[0], y[1]
        out = [x * du, x * (q / (x * x) - lam) * u]
        if len(y) > 2:
            out += [x * u * u, x * x * u * u]
        return out

    return f


def exterior_bound_solution(
    p: PotentialParams, ell: int, kappa: float, grid=None, moments: bool = False, rtol: float = RTOL
):
    """Decaying solution integrated inwards from ``x0 + 40/kappa`` to ``x0``.

    The integration variable is ``ln x`` (so ``sol.t`` holds logarithms) because
    ``x0 + 40/kappa`` can exceed ``x0`` by twenty orders of magnitude.
    """
    x_far = p.x0 + DECAY_LENGTHS / kappa
    q = _centrifugal(p.d, ell)
    u, du = _decaying_start(q, kappa, x_far)
    y0 = [u, du]
    if moments:
        # tail beyond x_far is below e^-80 of the bulk; start the moments at zero
        y0 += [0.0, 0.0]
    f = _rhs_log(q, -kappa * kappa)
    t_eval = None if grid is None else np.log(np.asarray(grid)[::-1])
    return _solve(f, math.log(x_far), math.log(p.x0), y0, t_eval=t_eval, rtol=rtol)


def radial_solution(p: PotentialParams, ell: int, kappa: float, grid, side: Side = Side.INTERIOR) -> RadialSolution:
    """Bound-state-energy solution ``u`` sampled on ``grid`` (ascending) on one side of ``x0``.

    Interior points must lie in ``[x0 * 1e-3, x0]``, exterior ones in
    ``[x0, x0 + 40/kappa]``.  Each side keeps its own arbitrary normalisation.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise EvaluationError("grid must be a non-empty strictly increasing 1-d array")
    side = Side(side)
    lam = -kappa * kappa
    if side is Side.INTERIOR:
        sol = interior_solution(p, ell, lam, grid=grid)
        u, du = sol.y[0], sol.y[1]
    else:
        sol = exterior_bound_solution(p, ell, kappa, grid=grid)
        # integrated inwards: reverse back to ascending x
        u, du = sol.y[0][::-1], sol.y[1][::-1]
    return RadialSolution(grid, u, du, float(kappa), lam, side, int(ell), p.d)


def _target_outer_log_derivative(c: model.Couplings, p: PotentialParams, w_in: float) -> float:
    if c.branch is Branch.REGULAR:
        # u-level matching: (u, u')+ = [[alpha, 0], [beta, 1/alpha]] (u, u')-
        return (c.beta + w_in / c.alpha) / c.alpha
    # w1 = +1: Robin on R outside, u'/u = (d-1)/(2 x0) + R'/R
    return 0.5 * (p.d - 1) / p.x0 + 0.25 * c.w0_tilde


def matching_defect(p: PotentialParams, ell: int, kappa: float, rtol: float = RTOL) -> float:
    """Outer log-derivative implied by the interior solution minus that of the decaying solution.

    Increasing in ``kappa``; its zero is the bound-state momentum.  On the
    ``w1 = -1`` branch only the interior Robin condition remains.
    """
    c = model.couplings(p)
    lam = -kappa * kappa
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        inner = interior_solution(p, ell, lam, rtol=rtol)
        w_in = inner.y[1, -1] / inner.y[0, -1]
        return w_in - (0.5 * (p.d - 1) / p.x0 - 0.25 * c.w0_tilde)
    outer = exterior_bound_solution(p, ell, kappa, rtol=rtol)
    w_out = outer.y[1, -1] / outer.y[0, -1]
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        return _target_outer_log_derivative(c, p, 0.0) - w_out
    inner = interior_solution(p, ell, lam, rtol=rtol)
    w_in = inner.y[1, -1] / inner.y[0, -1]
    return _target_outer_log_derivative(c, p, w_in) - w_out


def shoot_bound_state(p: PotentialParams, ell: int, rtol: float = RTOL) -> Optional[float]:
    """Bound-state momentum by shooting, or ``None``.

    Scans ``kappa x0`` over ``[1e-20, 300]``; the defect is monotone, so a
    sign change between the ends decides existence.
    """
    x0 = p.x0

    def defect(t: float) -> float:
        return matching_defect(p, ell, math.exp(t) / x0, rtol=rtol)

    t_lo, t_hi = math.log(SHOOT_Y_MIN), math.log(SHOOT_Y_MAX)
    d_lo = defect(t_lo)
    if d_lo >= 0:
        return None
    d_hi = defect(t_hi)
    if d_hi <= 0:
        raise ConvergenceError(f"matching defect still negative at kappa*x0={SHOOT_Y_MAX}")
    t_root = optimize.brentq(defect, t_lo, t_hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    kappa = math.exp(t_root) / x0
    residual = abs(matching_defect(p, ell, kappa, rtol=rtol)) * x0
    if residual > 1e-10 * (1.0 + abs(_target_scale(p))):
        raise ConvergenceError(f"matched log-derivative defect {residual:.2e} above 1e-10")
    return kappa


def _target_scale(p: PotentialParams) -> float:
    c = model.couplings(p)
    return c.beta * p.x0 if c.regular else c.w0_tilde * p.x0


def bound_state_moments(p: PotentialParams, ell: int, kappa: float) -> tuple[float, float]:
    """``(int u^2 dx, int x u^2 dx)`` over ``(0, inf)`` for the bound state at ``kappa``.

    ``u`` is normalised so that ``u(x) = x^s (kappa/2)^mu / Gamma(mu + 1) (1 + O(x^2))``
    near the origin, which is the small-argument form of ``sqrt(x) I_mu(kappa x)``.
    On the ``w1 = +1`` branch the interior vanishes and the exterior is
    normalised to ``u(x0) = 1`` instead.
    """
    c = model.couplings(p)
    lam = -kappa * kappa
    mu = ell + 0.5 * (p.d - 2)
    s = mu + 0.5
    x_start = START_FRACTION * p.x0
    # interior_solution normalises u(x_start) ~ 1; rescale to the sqrt(x) I_mu convention
    log_scale = s * math.log(x_start) + mu * math.log(0.5 * kappa) - math.lgamma(mu + 1.0)
    scale = math.exp(log_scale)
    if c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        inner_norm, inner_first, u_in = 0.0, 0.0, 0.0
        outer_factor_value = 1.0
    else:
        inner = interior_solution(p, ell, lam, moments=True)
        u_in = inner.y[0, -1] * scale
        inner_norm = inner.y[2, -1] * scale**2
        inner_first = inner.y[3, -1] * scale**2
        outer_factor_value = c.alpha * u_in if c.regular else 0.0
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        return inner_norm, inner_first
    outer = exterior_bound_solution(p, ell, kappa, moments=True)
    factor = outer_factor_value / outer.y[0, -1]
    # integrated inwards, so the accumulated moments are negative
    outer_norm = -outer.y[2, -1] * factor**2
    outer_first = -outer.y[3, -1] * factor**2
    return inner_norm + outer_norm, inner_first + outer_first


# -- scattering -------------------------------------------------------------


def _hankel_pq(mu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Asymptotic P, Q with sqrt(pi z / 2) (J, Y) = (P cos chi - Q sin chi, P sin chi + Q cos chi)."""
    m = 4.0 * mu * mu
    p_sum = np.ones_like(z)
    q_sum = np.zeros_like(z)
    a = 1.0  # a_k(mu) / z^k accumulated as a scalar coefficient times z^-k
    zk = np.ones_like(z)
    for k in range(1, 60):
        a *= (m - (2 * k - 1) ** 2) / (k * 8.0)
        zk = zk / z
        term = a * zk
        # a_k z^-k enters P (even k) or Q (odd k) with sign (-1)^floor(k/2)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q_sum = q_sum + sign * term
        else:
            p_sum = p_sum + sign * term
        if np.max(np.abs(term)) < 1e-17:
            break
    return p_sum, q_sum


def scattering_solution(p: PotentialParams, ell: int, k: float, x_end: float, grid=None):
    """Regular interior solution continued through ``x0`` with the matching conditions.

    Returns ``(inner, outer)`` ``solve_ivp`` results.
    """
    c = model.couplings(p)
    lam = k * k
    q = _centrifugal(p.d, ell)
    f = _rhs(q, lam)
    if c.branch is Branch.ROBIN_DIRICHLET_MINUS:
        inner = None
        u_plus, du_plus = 0.0, 1.0
    elif c.branch is Branch.ROBIN_DIRICHLET_PLUS:
        inner = None
        u_plus = 1.0
        du_plus = _target_outer_log_derivative(c, p, 0.0)
    else:
        inner = interior_solution(p, ell, lam)
        u_minus, du_minus = inner.y[0, -1], inner.y[1, -1]
        norm = max(abs(u_minus), abs(du_minus) * p.x0)
        u_minus, du_minus = u_minus / norm, du_minus / norm
        u_plus = c.alpha * u_minus
        du_plus = c.beta * u_minus + du_minus / c.alpha
    outer = _solve(f, p.x0, x_end, [u_plus, du_plus], t_eval=grid)
    return inner, outer


def fit_asymptotic_phase(p: PotentialParams, ell: int, k: float, samples: int = 240) -> float:
    """Phase shift from a least-squares fit of the exterior solution.

    Fits ``u = A c(x) + B s(x)`` on ``[a, a + 30/k]`` with ``a = max(50/k, 2 x0)``,
    where ``c, s`` are the Hankel asymptotic forms of ``sqrt(pi k x/2) (J_mu, Y_mu)(k x)``,
    and returns ``atan(-B/A)`` on ``(-pi/2, pi/2]``.
    """
    if not k > 0:
        raise EvaluationError(f"k must be positive, got {k}")
    mu = ell + 0.5 * (p.d - 2)
    a = max(50.0 / k, 2.0 * p.x0)
    b = a + 30.0 / k
    grid = np.linspace(a, b, samples)
    _, outer = scattering_solution(p, ell, k, b, grid=grid)
    u = outer.y[0]
    z = k * grid
    chi = z - 0.5 * math.pi * (mu + 0.5)
    pp, qq = _hankel_pq(mu, z)
    basis = np.column_stack([pp * np.cos(chi) - qq * np.sin(chi), pp * np.sin(chi) + qq * np.cos(chi)])
    gram_cond = np.linalg.cond(basis.T @ basis)
    if gram_cond > 1e8:
        raise EvaluationError(f"asymptotic fit is ill-conditioned (Gram condition {gram_cond:.2e})")
    (coef_a, coef_b), *_ = np.linalg.lstsq(basis, u, rcond=None)
    if coef_a == 0:
        return 0.5 * math.pi
    delta = math.atan(-coef_b / coef_a)
    return 0.5 * math.pi if delta == -0.5 * math.pi else delta
