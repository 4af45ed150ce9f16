"""Scale expansion and coordinate construction for the two LRF layouts.

Frame convention: +Y points forward, +X to the right, and the origin is
the geometric center of the *real* robot rectangle.  The virtual robot is
raised by ``shift = (vwrfb - wrfb) / 2`` so that its rear edge lies on
the real robot's rear edge; the restricted area sits flush behind it.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, NamedTuple, Tuple

from .errors import DegenerateHuman, DomainError, InvalidExpansion, NonPositiveDimension

log = logging.getLogger(__name__)

# absolute tolerance (meters) for invariant checks on closed-form coordinates
TOL = 1e-9


def _require_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise NonPositiveDimension(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class RobotSpec:
    """Physical and calibration constants of one robot.

    Attributes:
        wrfb: real robot front-back width (m).
        wrlr: real robot left-right width (m).
        xi: offset added to k2 to obtain the expansion factor p.
        epsilon: depth/width ratio of the restricted area.
        k2_threshold: expansion is applied when k2 <= this value.
        p_min, p_max: clamp bounds for p.
    """

    wrfb: float
    wrlr: float
    xi: float
    epsilon: float
    k2_threshold: float = 1.2
    p_min: float = 1.2
    p_max: float = 2.0

    def __post_init__(self) -> None:
        _require_positive("wrfb", self.wrfb)
        _require_positive("wrlr", self.wrlr)
        _require_positive("epsilon", self.epsilon)
        if not math.isfinite(self.xi):
            raise DomainError(f"xi must be finite, got {self.xi!r}")
        if not math.isfinite(self.k2_threshold):
            raise DomainError(f"k2_threshold must be finite, got {self.k2_threshold!r}")
        if not (1.0 <= self.p_min <= self.p_max < math.inf):
            raise DomainError(
                f"expected 1 <= p_min <= p_max, got p_min={self.p_min!r}, p_max={self.p_max!r}"
            )


@dataclass(frozen=True)
class HumanSpec:
    """Axis-aligned footprint of the followed person (m)."""

    whfb: float
    whlr: float

    def __post_init__(self) -> None:
        if self.whlr == 0:
            raise DegenerateHuman("whlr is zero; k2 = wrlr / whlr is undefined")
        _require_positive("whfb", self.whfb)
        _require_positive("whlr", self.whlr)

    def rect_at(self, x: float, y: float) -> "Rect":
        """Human rectangle centered at (x, y): whlr across, whfb deep."""
        return Rect.from_center(x, y, self.whlr, self.whfb)


@dataclass(frozen=True)
class ExpansionResult:
    p: float
    k1: float
    k2: float
    expanded: bool
    vwrfb: float
    vwrlr: float
    wfb: float
    wlr: float
    clamped: bool


class Point2(NamedTuple):
    x: float
    y: float

    def mirrored(self) -> "Point2":
        return Point2(-self.x, self.y)


@dataclass(frozen=True)
class Rect:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self) -> None:
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DomainError(f"degenerate rectangle {self!r}")

    @classmethod
    def from_center(cls, cx: float, cy: float, width: float, height: float) -> "Rect":
        hw, hh = 0.5 * width, 0.5 * height
        return cls(cx - hw, cx + hw, cy - hh, cy + hh)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Point2:
        return Point2(0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))

    def contains(self, p: Tuple[float, float]) -> bool:
        """Closed point membership."""
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    def contains_rect(self, other: "Rect") -> bool:
        """Closed containment: shared edges count as inside."""
        return (
            self.xmin <= other.xmin
            and other.xmax <= self.xmax
            and self.ymin <= other.ymin
            and other.ymax <= self.ymax
        )

    def corners(self) -> Tuple[Point2, Point2, Point2, Point2]:
        """Front-left, front-right, back-left, back-right."""
        return (
            Point2(self.xmin, self.ymax),
            Point2(self.xmax, self.ymax),
            Point2(self.xmin, self.ymin),
            Point2(self.xmax, self.ymin),
        )


class SensorModel(Enum):
    FOUR_CORNER = "corner"
    FOUR_SIDE_CENTER = "center"


class GroupId(Enum):
    FRONT_LEFT_CORNER = "front_left_corner"
    FRONT_RIGHT_CORNER = "front_right_corner"
    BACK_LEFT_CORNER = "back_left_corner"
    BACK_RIGHT_CORNER = "back_right_corner"
    FRONT = "front"
    RIGHT = "right"
    BACK = "back"
    LEFT = "left"

    @property
    def mirror(self) -> "GroupId":
        return _GROUP_MIRROR.get(self, self)


_GROUP_MIRROR = {
    GroupId.FRONT_LEFT_CORNER: GroupId.FRONT_RIGHT_CORNER,
    GroupId.FRONT_RIGHT_CORNER: GroupId.FRONT_LEFT_CORNER,
    GroupId.BACK_LEFT_CORNER: GroupId.BACK_RIGHT_CORNER,
    GroupId.BACK_RIGHT_CORNER: GroupId.BACK_LEFT_CORNER,
    GroupId.LEFT: GroupId.RIGHT,
    GroupId.RIGHT: GroupId.LEFT,
}

CORNER_GROUPS = (
    GroupId.FRONT_LEFT_CORNER,
    GroupId.FRONT_RIGHT_CORNER,
    GroupId.BACK_LEFT_CORNER,
    GroupId.BACK_RIGHT_CORNER,
)
CENTER_GROUPS = (GroupId.FRONT, GroupId.RIGHT, GroupId.BACK, GroupId.LEFT)

# key point -> its mirror partner about the Y axis
KEY_POINT_MIRROR = {
    SensorModel.FOUR_CORNER: {"P1": "P2", "P2": "P1", "P3": "P4", "P4": "P3", "Pa": "Pb", "Pb": "Pa"},
    SensorModel.FOUR_SIDE_CENTER: {"P1": "P1", "P2": "P4", "P3": "P3", "P4": "P2", "Pa": "Pb", "Pb": "Pa"},
}


@dataclass(frozen=True)
class LrfUnit:
    """One LRF. Both units of a group share a 2D mounting point."""

    group: GroupId
    index: int
    position: Point2
    real_position: Point2

    @property
    def name(self) -> str:
        return f"{self.group.value}.{self.index}"


@dataclass(frozen=True)
class Layout:
    """Final (post-shift) geometry of one sensor model.

    ``key_points`` uses corner labels P1..P4 (front-left, front-right,
    back-left, back-right) for the corner model and side-midpoint labels
    (P1 front, P2 right, P3 back, P4 left) for the center model.  Pa/Pb are
    the rear-left/rear-right corners of the restricted area in both.
    """

    model: SensorModel
    expansion: ExpansionResult
    virtual_rect: Rect
    real_rect: Rect
    restricted_rect: Rect
    lrf_units: Tuple[LrfUnit, ...]
    shift: float
    key_points: Dict[str, Point2] = field(default_factory=dict)

    @property
    def groups(self) -> Tuple[GroupId, ...]:
        return CORNER_GROUPS if self.model is SensorModel.FOUR_CORNER else CENTER_GROUPS

    def unit(self, group: GroupId, index: int) -> LrfUnit:
        for u in self.lrf_units:
            if u.group is group and u.index == index:
                return u
        raise KeyError((group, index))

    def units_of(self, group: GroupId) -> Tuple[LrfUnit, ...]:
        return tuple(u for u in self.lrf_units if u.group is group)


def compute_expansion(robot: RobotSpec, human: HumanSpec) -> ExpansionResult:
    """Resolve the expansion factor and the derived widths.

    p = xi + k2 (clamped to [p_min, p_max]) when k2 <= k2_threshold;
    otherwise the robot is already wide enough and p = 1.
    """
    for name, value in (("wrfb", robot.wrfb), ("wrlr", robot.wrlr), ("whfb", human.whfb)):
        _require_positive(name, value)
    if human.whlr == 0:
        raise DegenerateHuman("whlr is zero; k2 = wrlr / whlr is undefined")
    _require_positive("whlr", human.whlr)

    k1 = robot.wrfb / human.whfb
    k2 = robot.wrlr / human.whlr
    expanded = k2 <= robot.k2_threshold
    clamped = False
    if expanded:
        raw = robot.xi + k2
        p = min(max(raw, robot.p_min), robot.p_max)
        clamped = p != raw
        if clamped:
            log.warning("p = xi + k2 = %.6g clamped to %.6g", raw, p)
    else:
        p = 1.0
    vwrfb = p * robot.wrfb
    vwrlr = p * robot.wrlr
    wlr = vwrlr
    wfb = robot.epsilon * wlr
    return ExpansionResult(p, k1, k2, expanded, vwrfb, vwrlr, wfb, wlr, clamped)


def _check_expansion(robot: RobotSpec, exp: ExpansionResult) -> None:
    def close(a: float, b: float) -> bool:
        return abs(a - b) <= TOL

    problems = []
    if not exp.p >= 1.0:
        problems.append(f"p={exp.p!r} < 1")
    if not close(exp.vwrfb, exp.p * robot.wrfb):
        problems.append("vwrfb != p*wrfb")
    if not close(exp.vwrlr, exp.p * robot.wrlr):
        problems.append("vwrlr != p*wrlr")
    if not close(exp.wlr, exp.vwrlr):
        problems.append("wlr != vwrlr")
    if not close(exp.wfb, robot.epsilon * exp.wlr):
        problems.append("wfb != epsilon*wlr")
    if problems:
        raise InvalidExpansion("expansion does not match robot: " + "; ".join(problems))


def _frame(robot: RobotSpec, exp: ExpansionResult):
    # closed form of "initial coordinates + shift": rear edge pinned at -wrfb/2
    rear = -0.5 * robot.wrfb
    front = rear + exp.vwrfb
    back = rear - exp.wfb
    half_w = 0.5 * exp.wlr
    shift = 0.5 * (exp.vwrfb - robot.wrfb)
    virtual = Rect(-half_w, half_w, rear, front)
    real = Rect(-0.5 * robot.wrlr, 0.5 * robot.wrlr, rear, 0.5 * robot.wrfb)
    restricted = Rect(-half_w, half_w, back, rear)
    return virtual, real, restricted, shift


def corner_layout(robot: RobotSpec, exp: ExpansionResult) -> Layout:
    """Four-corner model: one LRF group at each virtual corner."""
    _check_expansion(robot, exp)
    virtual, real, restricted, shift = _frame(robot, exp)
    p1, p2, p3, p4 = virtual.corners()
    key_points = {
        "P1": p1,
        "P2": p2,
        "P3": p3,
        "P4": p4,
        "Pa": Point2(restricted.xmin, restricted.ymin),
        "Pb": Point2(restricted.xmax, restricted.ymin),
    }
    units = tuple(
        LrfUnit(g, i, v, r)
        for g, v, r in zip(CORNER_GROUPS, virtual.corners(), real.corners())
        for i in (0, 1)
    )
    return Layout(SensorModel.FOUR_CORNER, exp, virtual, real, restricted, units, shift, key_points)


def center_layout(robot: RobotSpec, exp: ExpansionResult) -> Layout:
    """Four-side-center model: one LRF group at each virtual side midpoint."""
    _check_expansion(robot, exp)
    virtual, real, restricted, shift = _frame(robot, exp)
    half_w = 0.5 * exp.vwrlr
    key_points = {
        "P1": Point2(0.0, virtual.ymax),
        "P2": Point2(half_w, shift),
        "P3": Point2(0.0, virtual.ymin),
        "P4": Point2(-half_w, shift),
        "Pa": Point2(restricted.xmin, restricted.ymin),
        "Pb": Point2(restricted.xmax, restricted.ymin),
    }
    virtual_mounts = (key_points["P1"], key_points["P2"], key_points["P3"], key_points["P4"])
    real_mounts = (
        Point2(0.0, real.ymax),
        Point2(real.xmax, 0.0),
        Point2(0.0, real.ymin),
        Point2(real.xmin, 0.0),
    )
    units = tuple(
        LrfUnit(g, i, v, r)
        for g, v, r in zip(CENTER_GROUPS, virtual_mounts, real_mounts)
        for i in (0, 1)
    )
    return Layout(SensorModel.FOUR_SIDE_CENTER, exp, virtual, real, restricted, units, shift, key_points)


def build_layout(robot: RobotSpec, human: HumanSpec, model: SensorModel) -> Layout:
    exp = compute_expansion(robot, human)
    if model is SensorModel.FOUR_CORNER:
        return corner_layout(robot, exp)
    return center_layout(robot, exp)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> Tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _mirror_ok(layout: Layout) -> bool:
    partners = KEY_POINT_MIRROR[layout.model]
    for name, pt in layout.key_points.items():
        other = layout.key_points[partners[name]]
        if abs(other.x + pt.x) > TOL or abs(other.y - pt.y) > TOL:
            return False
    for u in layout.lrf_units:
        m = layout.unit(u.group.mirror, u.index)
        for a, b in ((u.position, m.position), (u.real_position, m.real_position)):
            if abs(a.x + b.x) > TOL or abs(a.y - b.y) > TOL:
                return False
    return True


def validate_layout(layout: Layout, human: HumanSpec) -> ValidationReport:
    """Check the design intent of a layout.  Failures are logged, never raised."""
    exp = layout.expansion
    v, r, ra = layout.virtual_rect, layout.real_rect, layout.restricted_rect
    checks = (
        Check(
            "restricted_width",
            exp.wlr > human.whlr,
            f"wlr={exp.wlr:.6g} vs whlr={human.whlr:.6g}",
        ),
        Check(
            "restricted_depth",
            exp.wfb > human.whfb,
            f"wfb={exp.wfb:.6g} vs whfb={human.whfb:.6g}",
        ),
        Check(
            "rear_alignment",
            abs(v.ymin - r.ymin) <= TOL,
            f"virtual ymin={v.ymin:.12g}, real ymin={r.ymin:.12g}",
        ),
        Check(
            "restricted_flush",
            abs(ra.ymax - v.ymin) <= TOL
            and abs(ra.height - exp.wfb) <= TOL
            and abs(ra.width - exp.wlr) <= TOL,
            f"restricted {ra.width:.6g} x {ra.height:.6g} ending at y={ra.ymax:.12g}",
        ),
        Check("mirror_symmetry", _mirror_ok(layout), "key points and LRF units about x=0"),
    )
    report = ValidationReport(checks)
    for c in report.failures:
        log.warning("layout check %s failed: %s", c.name, c.detail)
    return report
