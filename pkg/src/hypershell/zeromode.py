"""Zero-energy states.

At ``lambda = 0`` the reduced equation has the power solutions
``x^((eta-2)/2)`` and ``x^((4-eta)/2)`` with ``eta = 5 - d - 2 ell``.  A
normalisable solution needs the growing power inside and the decaying one
outside, which is only square integrable for ``eta <= 0``; the matching
condition then fixes ``beta`` to

    beta* = (alpha^2 (eta - 2) + eta - 4) / (2 alpha x0).

That surface is exactly the ``L_max = ell`` threshold of the bound-state
count.  For ``eta`` in {1, 2, 3} nothing survives matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import BranchError, NoZeroModeError
from .model import PotentialParams

__all__ = [
    "ZeroMode",
    "surface_beta",
    "zero_mode_exists",
    "zero_mode_w0",
    "zero_mode_wavefunction",
]

SURFACE_RTOL = 1e-12


@dataclass(frozen=True)
class ZeroMode:
    """``v(x) = c2 x^((4-eta)/2)`` for ``x < x0`` and ``c1 x^((eta-2)/2)`` beyond."""

    ell: int
    eta: int
    c1: float
    c2: float
    normalized: bool
    x0: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inner = self.c2 * x ** (0.5 * (4 - self.eta))
        outer = self.c1 * x ** (0.5 * (self.eta - 2))
        return np.where(x < self.x0, inner, outer)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        inner = 0.5 * (4 - self.eta) * self.c2 * x ** (0.5 * (2 - self.eta))
        outer = 0.5 * (self.eta - 2) * self.c1 * x ** (0.5 * (self.eta - 4))
        return np.where(x < self.x0, inner, outer)


def _regular(p: PotentialParams) -> model.Couplings:
    c = model.couplings(p)
    if not c.regular:
        raise BranchError("zero modes are only classified for w1 != +/-1")
    return c


def surface_beta(alpha: float, eta: int, x0: float) -> float:
    """``beta`` on the zero-mode surface for given ``alpha``, ``eta`` and radius."""
    return (alpha * alpha * (eta - 2) + eta - 4) / (2.0 * alpha * x0)


def zero_mode_exists(p: PotentialParams, ell: int) -> bool:
    """Exact predicate: ``eta <= 0`` and ``beta`` on the surface to relative 1e-12."""
    c = _regular(p)
    eta = model.eta(p.d, ell)
    if eta > 0:
        return False
    target = surface_beta(c.alpha, eta, p.x0)
    return abs(c.beta - target) <= SURFACE_RTOL * abs(target)


def zero_mode_w0(d: int, ell: int, w1: float, x0: float) -> float:
    """The unique ``w0`` putting channel ``ell`` on the zero-mode surface.

    Raises :class:`NoZeroModeError` when ``eta > 0``.
    """
    eta = model.eta(d, ell)
    if eta > 0:
        raise NoZeroModeError(f"no zero modes for eta = {eta} > 0 (d={d}, ell={ell})")
    c = _regular(PotentialParams(d, 0.0, w1, x0))
    return surface_beta(c.alpha, eta, x0) * (1.0 - w1 * w1)


def zero_mode_wavefunction(p: PotentialParams, ell: int) -> ZeroMode:
    """Normalised zero mode, ``int_0^inf v^2 dx = 1`` with ``c1 > 0``."""
    if not zero_mode_exists(p, ell):
        raise NoZeroModeError(
            f"channel ell={ell} has no zero mode at d={p.d}, w0={p.w0}, w1={p.w1}, x0={p.x0}"
        )
    c = model.couplings(p)
    eta = model.eta(p.d, ell)
    x0 = p.x0
    # int_0^x0 x^(4-eta) dx and int_x0^inf x^(eta-2) dx, with c2 = x0^(eta-3) c1 / alpha
    norm = x0 ** (eta - 1) * (1.0 / (c.alpha**2 * (5 - eta)) + 1.0 / (1 - eta))
    c1 = 1.0 / math.sqrt(norm)
    c2 = x0 ** (eta - 3) * c1 / c.alpha
    return ZeroMode(ell=ell, eta=eta, c1=c1, c2=c2, normalized=True, x0=x0)
