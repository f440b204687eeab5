"""Cross-path consistency checks behind ``hypershell verify``.

Each check draws seeded random parameters, compares two independent
evaluations and yields a :class:`CheckResult`.  The expensive paths are the
ODE oracle ones; ``trials`` bounds how many parameter sets they see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy import special

from . import bound, model, observables, oracle, scatter, zeromode
from ._spherical import half_integer_bessel
from .model import PotentialParams
from .specfun import bessel

__all__ = ["CheckResult", "random_params", "run_checks", "CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: worst {self.worst:.3e} (tolerance {self.tolerance:.0e})"
        return f"{text} {self.detail}".rstrip()


def random_params(rng: np.random.Generator) -> tuple[PotentialParams, int]:
    """``d`` in 2..6, ``w0`` in [-10, 10], ``w1`` in [-0.95, 0.95], ``x0`` in [0.1, 10], ``ell`` in 0..5."""
    d = int(rng.integers(2, 7))
    w0 = float(rng.uniform(-10, 10))
    w1 = float(rng.uniform(-0.95, 0.95))
    x0 = float(rng.uniform(0.1, 10))
    ell = int(rng.integers(0, 6))
    return PotentialParams(d, w0, w1, x0), ell


def _result(name, errors, tol, detail=""):
    worst = max(errors, default=0.0)
    return CheckResult(name, bool(worst <= tol), worst, tol, detail)


def check_wronskians(rng, trials):
    errors = []
    for _ in range(trials * 10):
        nu = 0.5 * int(rng.integers(0, 81))
        x = float(10 ** rng.uniform(-1, 2))
        jy = bessel("J", nu + 1, x) * bessel("Y", nu, x) - bessel("J", nu, x) * bessel("Y", nu + 1, x)
        errors.append(abs(jy * math.pi * x / 2 - 1))
        ik = special.ive(nu, x) * special.kve(nu + 1, x) + special.ive(nu + 1, x) * special.kve(nu, x)
        errors.append(abs(ik * x - 1))
    return _result("bessel wronskians", errors, 1e-10)


def check_half_integer(rng, trials):
    errors = []
    for _ in range(trials * 10):
        nu = 0.5 + int(rng.integers(0, 20))
        x = float(10 ** rng.uniform(-1, 1.5))
        for kind in "IK":
            a = half_integer_bessel(kind, nu, x, scaled=True)
            b = special.ive(nu, x) if kind == "I" else special.kve(nu, x)
            errors.append(abs(a / b - 1))
        for kind in "JY":
            a = half_integer_bessel(kind, nu, x)
            b = bessel(kind, nu, x)
            scale = math.hypot(bessel("J", nu, x), bessel("Y", nu, x))
            errors.append(abs(a - b) / scale)
    return _result("half-integer closed forms", errors, 1e-12)


def check_bound_vs_oracle(rng, trials):
    errors, mismatches = [], 0
    for _ in range(trials):
        p, ell = random_params(rng)
        state = bound.find_bound_state(p, ell)
        kappa = oracle.shoot_bound_state(p, ell)
        if (state is None) != (kappa is None):
            mismatches += 1
            errors.append(math.inf)
        elif state is not None:
            errors.append(abs(kappa / state.kappa - 1))
    return _result("secular roots vs shooting", errors, 1e-6, f"({mismatches} existence mismatches)")


def check_pole_correspondence(rng, trials):
    errors = []
    for _ in range(trials * 5):
        p, ell = random_params(rng)
        state = bound.find_bound_state(p, ell)
        if state is None:
            continue
        lo = scatter.continued_denominator(p, ell, state.kappa * (1 - 1e-8))
        hi = scatter.continued_denominator(p, ell, state.kappa * (1 + 1e-8))
        errors.append(0.0 if lo * hi < 0 else math.inf)
    return _result("S-matrix pole at bound state", errors, 0.0)


def check_phase_vs_fit(rng, trials):
    errors = []
    for _ in range(trials):
        p, ell = random_params(rng)
        k = float(10 ** rng.uniform(-1, 0.5)) / p.x0
        a = scatter.phase_shift_value(p, ell, k)
        b = oracle.fit_asymptotic_phase(p, ell, k)
        diff = abs(a - b)
        errors.append(min(diff, math.pi - diff))
    return _result("phase shift vs asymptotic fit", errors, 1e-6)


def check_closed_forms(rng, trials):
    errors = []
    for _ in range(trials * 10):
        p, ell = random_params(rng)
        k = float(10 ** rng.uniform(-1, 1)) / p.x0
        pairs = [
            (
                scatter.phase_shift_value(p.replace(w1=0.0), ell, k),
                scatter.phase_shift_delta_only(p.d, ell, p.w0, k, p.x0),
            ),
            (
                scatter.phase_shift_value(p.replace(w0=0.0), ell, k),
                scatter.phase_shift_pure_delta_prime(p.d, ell, p.w1, k, p.x0),
            ),
        ]
        for a, b in pairs:
            diff = abs(a - b)
            errors.append(min(diff, math.pi - diff))
    return _result("delta-only and pure delta' closed forms", errors, 1e-12)


def check_mean_radius(rng, trials):
    errors = []
    for _ in range(trials * 3):
        p, ell = random_params(rng)
        state = bound.find_bound_state(p, ell)
        if state is None or state.kappa * p.x0 > 50:
            continue
        value = observables.mean_radius(p, ell, state.kappa).value
        norm, first = oracle.bound_state_moments(p, ell, state.kappa)
        errors.append(abs(first / norm / value - 1))
        if len(errors) >= trials:
            break
    return _result("mean radius vs ODE moments", errors, 1e-5)


def check_zero_mode_surface(rng, trials):
    errors = []
    for _ in range(trials * 10):
        d = int(rng.integers(2, 7))
        ell = int(rng.integers(0, 6))
        if model.eta(d, ell) > 0:
            continue
        w1 = float(rng.uniform(-0.95, 0.95))
        x0 = float(rng.uniform(0.1, 10))
        p = PotentialParams(d, zeromode.zero_mode_w0(d, ell, w1, x0), w1, x0)
        errors.append(abs(model.l_max(p).value - ell) / (1 + ell))
        errors.append(0.0 if zeromode.zero_mode_exists(p, ell) else math.inf)
    return _result("zero-mode surface is L_max = ell", errors, 1e-12)


CHECKS: dict[str, Callable] = {
    "wronskians": check_wronskians,
    "half_integer": check_half_integer,
    "bound_vs_oracle": check_bound_vs_oracle,
    "pole": check_pole_correspondence,
    "phase_vs_fit": check_phase_vs_fit,
    "closed_forms": check_closed_forms,
    "mean_radius": check_mean_radius,
    "zero_mode_surface": check_zero_mode_surface,
}


def run_checks(trials: int = 20, seed: int = 0) -> Iterator[CheckResult]:
    for offset, check in enumerate(CHECKS.values()):
        rng = np.random.default_rng([seed, offset])
        yield check(rng, trials)
