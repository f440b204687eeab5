"""Parameter sweeps over one or two of ``w0, w1, x0, k`` and their CSV form.

Cells hold a float or one of the literal markers ``NOSTATE`` (channel has
no bound state), ``INF`` (divergent mean radius) and ``FAIL`` (the numerics
for that cell raised; the message goes to the log).
"""

from __future__ import annotations

import enum
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from . import bound, model, observables, scatter, zeromode
from .errors import DomainError, HypershellError
from .model import PotentialParams

__all__ = [
    "NOSTATE",
    "FAIL",
    "Quantity",
    "Axis",
    "ScanGrid",
    "parse_range",
    "evaluate_cell",
    "run_scan",
    "format_value",
    "parse_value",
    "write_csv",
    "read_csv",
]

log = logging.getLogger(__name__)

NOSTATE = "NOSTATE"
FAIL = "FAIL"
INF_TOKEN = "INF"
SWEEPABLE = ("w0", "w1", "x0", "k")

Cell = Union[float, str]


class Quantity(str, enum.Enum):
    ENERGY = "energy"
    COUNT = "count"
    MEAN_RADIUS_RATIO = "mean_radius_ratio"
    PHASE_SHIFT = "phase_shift"
    LMAX = "lmax"
    ZERO_MODE_BOUNDARY = "zero_mode_boundary"


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise DomainError(f"cannot sweep {self.name!r}; choose from {', '.join(SWEEPABLE)}")
        if not self.step > 0:
            raise DomainError(f"step must be positive, got {self.step}")
        if not self.stop > self.start:
            raise DomainError(f"stop must exceed start, got {self.start}:{self.stop}")

    @property
    def size(self) -> int:
        # inclusive of stop within half a step
        return int(math.floor((self.stop - self.start) / self.step + 0.5)) + 1

    def values(self) -> list[float]:
        return [self.start + i * self.step for i in range(self.size)]

    def spec(self) -> str:
        return f"{self.name}={format_value(self.start)}:{format_value(self.stop)}:{format_value(self.step)}"


@dataclass
class ScanGrid:
    """A one- or two-axis sweep; ``cells`` are row-major (first axis slowest)."""

    axes: tuple
    fixed: dict
    quantity: Quantity
    cells: list = field(default_factory=list)

    @property
    def shape(self) -> tuple:
        return tuple(a.size for a in self.axes)

    def points(self) -> list[dict]:
        out = [{}]
        for axis in self.axes:
            out = [dict(pt, **{axis.name: v}) for pt in out for v in axis.values()]
        return out


def parse_range(text: str) -> tuple[float, float, float]:
    """``START:STOP:STEP`` to floats."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"range must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise DomainError(f"range must be numeric, got {text!r}") from None
    return start, stop, step


def range_values(text: str) -> list[float]:
    start, stop, step = parse_range(text)
    return Axis("k", start, stop, step).values()


def _channel_value(p: PotentialParams, ell: int, quantity: Quantity) -> Cell:
    lm = model.l_max(p)
    if quantity is Quantity.MEAN_RADIUS_RATIO and lm.ell_max == ell and lm.on_boundary:
        # exactly on the zero-mode surface: the zero-energy limit
        c = model.couplings(p)
        limit = observables.mean_radius_zero_limit(c.alpha, model.eta(p.d, ell))
        return INF_TOKEN if limit is observables.INF else limit
    state = bound.find_bound_state(p, ell)
    if state is None:
        return NOSTATE
    if quantity is Quantity.ENERGY:
        return state.lam
    return observables.mean_radius(p, ell, state.kappa).ratio


def evaluate_cell(quantity: Quantity, point: dict) -> Cell:
    """Value of ``quantity`` at one parameter point (``d``, ``l`` and the four sweepables)."""
    quantity = Quantity(quantity)
    d, ell = point["d"], point.get("l", 0)
    try:
        if quantity is Quantity.ZERO_MODE_BOUNDARY:
            if model.eta(d, ell) > 0:
                return NOSTATE
            return zeromode.zero_mode_w0(d, ell, point["w1"], point["x0"])
        p = PotentialParams(d, point["w0"], point["w1"], point["x0"])
        if quantity is Quantity.LMAX:
            return model.l_max(p).value
        if quantity is Quantity.COUNT:
            return float(bound.spectrum(p).total_count)
        if quantity is Quantity.PHASE_SHIFT:
            return scatter.phase_shift_value(p, ell, point["k"])
        return _channel_value(p, ell, quantity)
    except HypershellError as exc:
        log.warning("cell %s failed: %s", point, exc)
        return FAIL


def _evaluate_star(args):
    return evaluate_cell(*args)


def run_scan(
    quantity: Quantity,
    axes: Sequence[Axis],
    fixed: dict,
    jobs: Optional[int] = 1,
    chunksize: int = 64,
) -> ScanGrid:
    """Evaluate every cell, with at most ``jobs`` worker processes.

    The output order is row-major regardless of completion order.
    """
    quantity = Quantity(quantity)
    if not 1 <= len(axes) <= 2:
        raise DomainError("a scan needs one or two axes")
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise DomainError("the same parameter cannot be swept twice")
    grid = ScanGrid(tuple(axes), dict(fixed), quantity)
    tasks = [(quantity, dict(fixed, **pt)) for pt in grid.points()]
    for _, pt in tasks[:1]:
        missing = [n for n in ("w0", "w1", "x0") if n not in pt]
        if quantity is Quantity.PHASE_SHIFT and "k" not in pt:
            missing.append("k")
        if quantity is Quantity.ZERO_MODE_BOUNDARY and "w0" in missing:
            missing.remove("w0")
        if missing:
            raise DomainError(f"missing parameter(s) for the scan: {', '.join(missing)}")
    if jobs is not None and jobs <= 1:
        grid.cells = [_evaluate_star(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            grid.cells = list(pool.map(_evaluate_star, tasks, chunksize=chunksize))
    return grid


def format_value(value: Cell) -> str:
    if isinstance(value, str):
        return value
    if value is observables.INF:
        return INF_TOKEN
    return format(float(value), ".17g")


def parse_value(token: str) -> Cell:
    token = token.strip()
    if token in (NOSTATE, INF_TOKEN, FAIL):
        return token
    return float(token)


def _params_line(grid: ScanGrid) -> str:
    fixed = " ".join(f"{k}={format_value(v) if isinstance(v, float) else v}" for k, v in sorted(grid.fixed.items()))
    sweeps = " ".join(f"sweep={a.spec()}" for a in grid.axes)
    return f"# params: quantity={grid.quantity.value} {fixed} {sweeps}".rstrip()


def write_csv(grid: ScanGrid, stream: Optional[io.TextIOBase] = None) -> str:
    """Long-format CSV, one row per cell in row-major order; returns the text."""
    lines = [_params_line(grid), ",".join([a.name for a in grid.axes] + [grid.quantity.value])]
    for pt, value in zip(grid.points(), grid.cells):
        coords = [format_value(pt[a.name]) for a in grid.axes]
        lines.append(",".join(coords + [format_value(value)]))
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def read_csv(text: str) -> ScanGrid:
    """Inverse of :func:`write_csv`."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# params:"):
        raise DomainError("missing '# params:' line")
    meta = lines[0][len("# params:"):].split()
    fixed: dict = {}
    axes = []
    quantity = None
    for item in meta:
        key, _, value = item.partition("=")
        if key == "quantity":
            quantity = Quantity(value)
        elif key == "sweep":
            name, _, rng = value.partition("=")
            axes.append(Axis(name, *parse_range(rng)))
        elif key in ("d", "l"):
            fixed[key] = int(value)
        else:
            fixed[key] = float(value)
    header = lines[1].split(",")
    if quantity is None or header[-1] != quantity.value:
        raise DomainError("header does not match the params line")
    cells = [parse_value(row.split(",")[-1]) for row in lines[2:] if row]
    grid = ScanGrid(tuple(axes), fixed, quantity, cells)
    if len(cells) != math.prod(grid.shape):
        raise DomainError(f"expected {math.prod(grid.shape)} cells, found {len(cells)}")
    return grid
