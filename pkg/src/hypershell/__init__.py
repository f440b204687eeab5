"""Bound states, zero modes, phase shifts and mean radii for the
hyperspherical delta-delta' shell interaction in d >= 2 dimensions."""

from .bound import BoundState, Spectrum, find_bound_state, spectrum
from .model import PotentialParams, couplings, degeneracy, l_max, nondimensionalize
from .observables import INF, mean_radius, mean_radius_zero_limit
from .scatter import phase_shift, s_matrix_eigenvalue
from .zeromode import zero_mode_exists, zero_mode_w0, zero_mode_wavefunction

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "Spectrum",
    "PotentialParams",
    "INF",
    "couplings",
    "degeneracy",
    "find_bound_state",
    "l_max",
    "mean_radius",
    "mean_radius_zero_limit",
    "nondimensionalize",
    "phase_shift",
    "s_matrix_eigenvalue",
    "spectrum",
    "zero_mode_exists",
    "zero_mode_w0",
    "zero_mode_wavefunction",
]
