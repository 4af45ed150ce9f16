"""Trajectory replay and coverage-multiplicity grids."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidScenario, ResolutionTooCoarse
from .geometry import GroupId, HumanSpec, Layout, Point2, Rect, RobotSpec, SensorModel, build_layout
from .partition import (
    CenterArea,
    CenterRegion,
    CornerArea,
    LockMode,
    LockState,
    Region,
    assign,
    lock_state,
)


@dataclass(frozen=True)
class Scenario:
    """A human trajectory in the robot body frame.

    ``trajectory`` holds (t, x, y) samples of the human-rectangle center.
    """

    robot: RobotSpec
    human: HumanSpec
    model: SensorModel
    trajectory: Tuple[Tuple[float, float, float], ...]
    lock_mode: LockMode = LockMode.CONTAINMENT

    def __post_init__(self) -> None:
        traj = tuple(tuple(float(v) for v in s) for s in self.trajectory)
        object.__setattr__(self, "trajectory", traj)
        if not traj:
            raise InvalidScenario("trajectory is empty")
        for i, sample in enumerate(traj):
            if len(sample) != 3 or not all(math.isfinite(v) for v in sample):
                raise InvalidScenario(f"sample {i} is not a finite (t, x, y) triple: {sample!r}")
        for i in range(1, len(traj)):
            if not traj[i][0] > traj[i - 1][0]:
                raise InvalidScenario(
                    f"timestamps must strictly increase: t[{i - 1}]={traj[i - 1][0]!r}, t[{i}]={traj[i][0]!r}"
                )


@dataclass(frozen=True)
class StepRecord:
    t: float
    x: float
    y: float
    region: str
    lock: LockState
    groups: Tuple[GroupId, ...]
    double_detected: bool


@dataclass(frozen=True)
class Transition:
    t: float
    before: LockState
    after: LockState


@dataclass(frozen=True)
class SimReport:
    records: Tuple[StepRecord, ...]
    transitions: Tuple[Transition, ...]

    @property
    def locked_fraction(self) -> float:
        locked = sum(1 for r in self.records if r.lock is LockState.LOCKED)
        return locked / len(self.records)

    @property
    def summary(self) -> Dict[str, float]:
        return {
            "steps": len(self.records),
            "locked_fraction": self.locked_fraction,
            "transitions": len(self.transitions),
        }


def run_scenario(scenario: Scenario, layout: Optional[Layout] = None) -> SimReport:
    """Replay the trajectory sample by sample; no interpolation in between."""
    if layout is None:
        layout = build_layout(scenario.robot, scenario.human, scenario.model)
    records = []
    transitions = []
    prev = None
    for t, x, y in scenario.trajectory:
        a = assign(layout, (x, y))
        state = lock_state(layout, scenario.human.rect_at(x, y), scenario.lock_mode)
        records.append(StepRecord(t, x, y, a.region.label, state, a.groups, a.double_detected))
        if prev is not None and state is not prev:
            transitions.append(Transition(t, prev, state))
        prev = state
    return SimReport(tuple(records), tuple(transitions))


# --- coverage --------------------------------------------------------------

OVERLAP = "overlap"
SEPARATE = "separate"
BOUNDARY = "boundary"
INTERIOR = "interior"
CATEGORIES = (OVERLAP, SEPARATE, BOUNDARY, INTERIOR)


def region_category(region: Region, n_groups: int) -> str:
    """Coverage category of a classified point.

    Exterior points off every dividing line are ``overlap`` when two LRF
    groups share them and ``separate`` when one group does.  In the corner
    model every wedge is shared by two groups, so its exterior is all overlap.
    """
    if region.area in (CornerArea.INTERIOR, CenterArea.INTERIOR):
        return INTERIOR
    if region.area in (CornerArea.DIAGONAL, CenterArea.BOUNDARY):
        return BOUNDARY
    return OVERLAP if n_groups >= 2 else SEPARATE


@dataclass(frozen=True)
class CoverageGrid:
    """Cell-center samples of a window.

    ``labels`` and ``multiplicity`` are indexed [row, col] with rows running
    from the window's ymin upward.  ``dx``/``dy`` are the effective cell sizes
    (the window is split into whole cells, so they can be slightly below the
    requested resolution).
    """

    window: Rect
    resolution: float
    dx: float
    dy: float
    xs: np.ndarray
    ys: np.ndarray
    labels: np.ndarray
    multiplicity: np.ndarray
    categories: np.ndarray
    areas: Dict[str, float] = field(default_factory=dict)

    @property
    def cell_count(self) -> int:
        return int(self.multiplicity.size)

    @property
    def overlap_ratio(self) -> float:
        sep = self.areas[SEPARATE]
        return self.areas[OVERLAP] / sep if sep > 0 else math.inf

    def summary(self) -> Dict[str, float]:
        out = {f"{k}_area": self.areas[k] for k in CATEGORIES}
        out["window_area"] = self.window.area
        out["cells"] = self.cell_count
        out["overlap_to_separate_ratio"] = self.overlap_ratio
        return out


def default_window(layout: Layout) -> Rect:
    """Square of half-width 3 * max(vwrfb, vwrlr) around the virtual center."""
    exp = layout.expansion
    half = 3.0 * max(exp.vwrfb, exp.vwrlr)
    c = layout.virtual_rect.center
    return Rect(c.x - half, c.x + half, c.y - half, c.y + half)


def _cells(extent: float, resolution: float) -> int:
    # guard against 6/0.05 -> 120.00000000000001 style rounding
    return max(1, math.ceil(round(extent / resolution, 9)))


def coverage_map(layout: Layout, window: Optional[Rect] = None, resolution: float = 0.05) -> CoverageGrid:
    """Sample ``assign`` at every cell center of ``window``."""
    if window is None:
        window = default_window(layout)
    if not (math.isfinite(resolution) and resolution > 0):
        raise ResolutionTooCoarse(f"resolution must be positive, got {resolution!r}")
    nx = _cells(window.width, resolution)
    ny = _cells(window.height, resolution)
    if nx * ny < 4:
        raise ResolutionTooCoarse(
            f"resolution {resolution!r} gives {nx}x{ny} cells on a {window.width:g} x {window.height:g} window"
        )
    dx = window.width / nx
    dy = window.height / ny
    xs = np.array([window.xmin + (i + 0.5) * dx for i in range(nx)])
    ys = np.array([window.ymin + (j + 0.5) * dy for j in range(ny)])

    labels = np.empty((ny, nx), dtype=object)
    mult = np.zeros((ny, nx), dtype=np.int8)
    cats = np.empty((ny, nx), dtype=object)
    counts = dict.fromkeys(CATEGORIES, 0)
    for j in range(ny):
        y = float(ys[j])
        for i in range(nx):
            a = assign(layout, Point2(float(xs[i]), y))
            n = len(a.groups)
            cat = region_category(a.region, n)
            labels[j, i] = a.region.label
            mult[j, i] = n
            cats[j, i] = cat
            counts[cat] += 1
    cell_area = dx * dy
    areas = {k: counts[k] * cell_area for k in CATEGORIES}
    return CoverageGrid(window, resolution, dx, dy, xs, ys, labels, mult, cats, areas)


def grid_rows(grid: CoverageGrid) -> Sequence[Tuple[float, float, str, int]]:
    """(cell_x, cell_y, region, multiplicity) rows, y-major from ymin."""
    return [
        (float(grid.xs[i]), float(grid.ys[j]), grid.labels[j, i], int(grid.multiplicity[j, i]))
        for j in range(grid.ys.size)
        for i in range(grid.xs.size)
    ]
