"""Problem definition for the hyperspherical delta-delta' contact interaction.

Everything is in the dimensionless variables ``x = m c r / hbar`` in which
the Hamiltonian reads ``h = -Laplacian_d + w0 delta(x - x0) + 2 w1 delta'(x - x0)``.
The interaction is defined by the matching matrix ``[[alpha, 0], [beta, 1/alpha]]``
acting on the reduced radial function ``u = x^((d-1)/2) R`` at ``x0``; for
``R`` itself ``beta`` is replaced by the effective ``beta_tilde``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import BranchError, DomainError

__all__ = [
    "Branch",
    "PotentialParams",
    "Couplings",
    "Channel",
    "BoundaryData",
    "LMax",
    "nondimensionalize",
    "couplings",
    "apply_matching",
    "invert_matching",
    "degeneracy",
    "l_max",
    "eta",
    "channel",
]


class Branch(str, enum.Enum):
    REGULAR = "Regular"
    ROBIN_DIRICHLET_PLUS = "RobinDirichletPlus"
    ROBIN_DIRICHLET_MINUS = "RobinDirichletMinus"


@dataclass(frozen=True)
class PotentialParams:
    """Dimension ``d``, couplings ``w0`` (delta) and ``w1`` (delta'), radius ``x0``."""

    d: int
    w0: float
    w1: float
    x0: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d!r}")
        if not (self.x0 > 0 and math.isfinite(self.x0)):
            raise DomainError(f"radius x0 must be positive and finite, got {self.x0!r}")
        if not (math.isfinite(self.w0) and math.isfinite(self.w1)):
            raise DomainError("couplings must be finite")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "w0", float(self.w0))
        object.__setattr__(self, "w1", float(self.w1))
        object.__setattr__(self, "x0", float(self.x0))

    @property
    def nu(self) -> float:
        return 0.5 * (self.d - 2)

    def replace(self, **changes) -> "PotentialParams":
        fields = {"d": self.d, "w0": self.w0, "w1": self.w1, "x0": self.x0}
        fields.update(changes)
        return PotentialParams(**fields)


@dataclass(frozen=True)
class Couplings:
    """Matching data derived from :class:`PotentialParams`.

    On the Robin-Dirichlet branches (``w1 = +1`` / ``-1``) ``alpha`` is
    ``inf`` / ``0`` and ``beta``, ``beta_tilde`` are NaN; ``w0_tilde`` then
    holds the one-sided coupling ``w0 +/- 2(1-d)/x0``.
    """

    alpha: float
    beta: float
    beta_tilde: float
    w0_tilde: float
    branch: Branch

    @property
    def regular(self) -> bool:
        return self.branch is Branch.REGULAR


@dataclass(frozen=True)
class Channel:
    ell: int
    nu: float
    eta: int
    degeneracy: int


@dataclass(frozen=True)
class BoundaryData:
    """Value and slope of a radial function on one side of ``x0``."""

    value: float
    slope: float


class LMax(NamedTuple):
    value: float
    ell_max: Optional[int]
    on_boundary: bool


def nondimensionalize(
    a: float, b: float, r0: float, m: float, hbar: float, c: float, d: int = 3
) -> PotentialParams:
    """Convert physical strengths to ``w0 = 2a/(hbar c)``, ``w1 = b m / hbar^2``, ``x0 = m c r0 / hbar``."""
    for name, value in (("m", m), ("r0", r0), ("hbar", hbar), ("c", c)):
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value!r}")
    return PotentialParams(d=d, w0=2.0 * a / (hbar * c), w1=b * m / hbar**2, x0=m * c * r0 / hbar)


def couplings(p: PotentialParams) -> Couplings:
    d, w0, w1, x0 = p.d, p.w0, p.w1, p.x0
    w0_tilde = 2.0 * (1 - d) * w1 / x0 + w0
    # exact comparison: w1 = +/-1 is a structural branch, not a tolerance question
    if w1 == 1.0:
        return Couplings(math.inf, math.nan, math.nan, w0_tilde, Branch.ROBIN_DIRICHLET_PLUS)
    if w1 == -1.0:
        return Couplings(0.0, math.nan, math.nan, w0_tilde, Branch.ROBIN_DIRICHLET_MINUS)
    alpha = (1.0 + w1) / (1.0 - w1)
    beta = w0 / (1.0 - w1 * w1)
    # beta - (alpha^2 - 1)(d - 1)/(2 alpha x0) written without the cancellation
    # in alpha^2 - 1, which loses w1 entirely once 1 + w1 rounds to 1
    beta_tilde = w0_tilde / (1.0 - w1 * w1)
    return Couplings(alpha, beta, beta_tilde, w0_tilde, Branch.REGULAR)


def _matrix(c: Couplings, reduced: bool) -> tuple[float, float, float]:
    if not c.regular:
        raise BranchError(
            f"matching matrix is undefined on the {c.branch.value} branch; "
            "each side carries its own boundary condition"
        )
    return c.alpha, (c.beta if reduced else c.beta_tilde), 1.0 / c.alpha


def apply_matching(c: Couplings, inner: BoundaryData, reduced: bool = False) -> BoundaryData:
    """Map boundary data at ``x0-`` to ``x0+``.

    By default the data are those of the radial function ``R`` and the
    lower-left entry is ``beta_tilde``; ``reduced=True`` treats them as data of
    ``u = x^((d-1)/2) R`` and uses ``beta``.
    """
    a, b, a_inv = _matrix(c, reduced)
    return BoundaryData(a * inner.value, b * inner.value + a_inv * inner.slope)


def invert_matching(c: Couplings, outer: BoundaryData, reduced: bool = False) -> BoundaryData:
    """Inverse of :func:`apply_matching` (the matrix has unit determinant)."""
    a, b, a_inv = _matrix(c, reduced)
    return BoundaryData(a_inv * outer.value, -b * outer.value + a * outer.slope)


def degeneracy(d: int, ell: int) -> int:
    """Multiplicity of the hyperspherical harmonics of degree ``ell`` on S^(d-1)."""
    if d < 2 or ell < 0:
        raise DomainError(f"need d >= 2 and ell >= 0, got d={d}, ell={ell}")
    if ell == 0:
        return 1
    if d == 2:
        return 2
    numerator = math.factorial(d + ell - 3) * (d + 2 * ell - 2)
    return numerator // (math.factorial(d - 2) * math.factorial(ell))


def eta(d: int, ell: int) -> int:
    if d < 2 or ell < 0:
        raise DomainError(f"need d >= 2 and ell >= 0, got d={d}, ell={ell}")
    return 5 - d - 2 * ell


def channel(d: int, ell: int) -> Channel:
    return Channel(ell=ell, nu=0.5 * (d - 2), eta=eta(d, ell), degeneracy=degeneracy(d, ell))


def l_max(p: PotentialParams) -> LMax:
    """Angular-momentum threshold for bound states.

    ``L_max = (w1 - x0 w0/2)/(w1^2 + 1) + (2 - d)/2``; channels
    ``0 <= ell < L_max`` carry exactly one bound state.  ``ell_max`` is
    ``None`` when ``L_max < 0``.  ``on_boundary`` flags ``L_max`` being an
    integer exactly, in which case channel ``ell_max`` has a zero-energy
    solution instead of a bound state.
    """
    value = (p.w1 - 0.5 * p.x0 * p.w0) / (p.w1 * p.w1 + 1.0) + 0.5 * (2 - p.d)
    if value < 0:
        return LMax(value, None, False)
    ell_max = math.floor(value)
    return LMax(value, ell_max, ell_max == value)
