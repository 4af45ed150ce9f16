"""Region classification, LRF assignment and lock state.

All boundary tests are exact float comparisons.  A point that is merely
close to a dividing line belongs to whichever side it is numerically on.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from .geometry import GroupId, Layout, LrfUnit, Rect, SensorModel


class CornerArea(Enum):
    FRONT = "area1_front"
    RIGHT = "area2_right"
    BACK = "area3_back"
    LEFT = "area4_left"
    DIAGONAL = "on_diagonal"
    INTERIOR = "interior"


class CenterArea(Enum):
    FRONT = "area1_front"
    FRONT_RIGHT = "area2_front_right"
    RIGHT = "area3_right"
    BACK_RIGHT = "area4_back_right"
    BACK = "area5_back"
    BACK_LEFT = "area6_back_left"
    LEFT = "area7_left"
    FRONT_LEFT = "area8_front_left"
    BOUNDARY = "on_boundary"
    INTERIOR = "interior"

    @property
    def is_overlap(self) -> bool:
        return self in _OVERLAP

    @property
    def is_separate(self) -> bool:
        return self in _SEPARATE


_OVERLAP = frozenset({CenterArea.FRONT_RIGHT, CenterArea.BACK_RIGHT, CenterArea.BACK_LEFT, CenterArea.FRONT_LEFT})
_SEPARATE = frozenset({CenterArea.FRONT, CenterArea.RIGHT, CenterArea.BACK, CenterArea.LEFT})


class BoundaryLine(Enum):
    """Half-line extending a virtual-rectangle edge away from the robot.

    ``RIGHT_EDGE_FRONT`` is the right edge's extension ahead of the robot
    (x = xmax, y > ymax), and so on.
    """

    RIGHT_EDGE_FRONT = "right_edge_front"
    RIGHT_EDGE_BACK = "right_edge_back"
    LEFT_EDGE_FRONT = "left_edge_front"
    LEFT_EDGE_BACK = "left_edge_back"
    FRONT_EDGE_RIGHT = "front_edge_right"
    FRONT_EDGE_LEFT = "front_edge_left"
    BACK_EDGE_RIGHT = "back_edge_right"
    BACK_EDGE_LEFT = "back_edge_left"

    @property
    def mirror(self) -> "BoundaryLine":
        return BoundaryLine(self.value.replace("left", "@").replace("right", "left").replace("@", "right"))


@dataclass(frozen=True)
class CornerRegion:
    area: CornerArea
    corner: Optional[GroupId] = None

    @property
    def label(self) -> str:
        if self.area is CornerArea.DIAGONAL:
            return f"on_diagonal_{self.corner.value}"
        return self.area.value

    def mirrored(self) -> "CornerRegion":
        area = {CornerArea.LEFT: CornerArea.RIGHT, CornerArea.RIGHT: CornerArea.LEFT}.get(self.area, self.area)
        return CornerRegion(area, self.corner.mirror if self.corner else None)


@dataclass(frozen=True)
class CenterRegion:
    area: CenterArea
    line: Optional[BoundaryLine] = None

    @property
    def label(self) -> str:
        if self.area is CenterArea.BOUNDARY:
            return f"on_boundary_{self.line.value}"
        return self.area.value

    def mirrored(self) -> "CenterRegion":
        return CenterRegion(_CENTER_AREA_MIRROR.get(self.area, self.area), self.line.mirror if self.line else None)


_CENTER_AREA_MIRROR = {
    CenterArea.FRONT_RIGHT: CenterArea.FRONT_LEFT,
    CenterArea.FRONT_LEFT: CenterArea.FRONT_RIGHT,
    CenterArea.RIGHT: CenterArea.LEFT,
    CenterArea.LEFT: CenterArea.RIGHT,
    CenterArea.BACK_RIGHT: CenterArea.BACK_LEFT,
    CenterArea.BACK_LEFT: CenterArea.BACK_RIGHT,
}

Region = Union[CornerRegion, CenterRegion]


class LockState(Enum):
    LOCKED = "locked"
    DISENGAGED = "disengaged"


class LockMode(Enum):
    CONTAINMENT = "containment"
    CENTER_POINT = "center_point"


@dataclass(frozen=True)
class Assignment:
    region: Region
    units: Tuple[LrfUnit, ...]

    @property
    def groups(self) -> Tuple[GroupId, ...]:
        seen = []
        for u in self.units:
            if u.group not in seen:
                seen.append(u.group)
        return tuple(seen)

    @property
    def double_detected(self) -> bool:
        return len(self.groups) >= 2

    @property
    def interior(self) -> bool:
        return self.region.area in (CornerArea.INTERIOR, CenterArea.INTERIOR)


# --- four-corner model -----------------------------------------------------

def _corner_at(sx: float, sy: float) -> GroupId:
    if sy > 0:
        return GroupId.FRONT_RIGHT_CORNER if sx > 0 else GroupId.FRONT_LEFT_CORNER
    return GroupId.BACK_RIGHT_CORNER if sx > 0 else GroupId.BACK_LEFT_CORNER


def classify_corner(layout: Layout, point: Tuple[float, float]) -> CornerRegion:
    """45-degree partition around the virtual rectangle.

    With dx, dy the exterior distances of the point beyond the rectangle's
    x and y spans, the point is in the front/back wedge when dy > dx, in the
    right/left wedge when dx > dy, and on a corner ray when dx == dy > 0.
    Points on an edge-extension line fall into the wedge they border.
    """
    if layout.model is not SensorModel.FOUR_CORNER:
        raise ValueError("classify_corner needs a four-corner layout")
    x, y = point
    r = layout.virtual_rect
    dx = max(r.xmin - x, x - r.xmax, 0.0)
    dy = max(r.ymin - y, y - r.ymax, 0.0)
    sx = x - 0.5 * (r.xmin + r.xmax)
    sy = y - 0.5 * (r.ymin + r.ymax)
    if dx == 0 and dy == 0:
        if (x == r.xmin or x == r.xmax) and (y == r.ymin or y == r.ymax):
            return CornerRegion(CornerArea.DIAGONAL, _corner_at(sx, sy))
        return CornerRegion(CornerArea.INTERIOR)
    if dx == dy:
        return CornerRegion(CornerArea.DIAGONAL, _corner_at(sx, sy))
    if dy > dx:
        return CornerRegion(CornerArea.FRONT if y > r.ymax else CornerArea.BACK)
    return CornerRegion(CornerArea.RIGHT if x > r.xmax else CornerArea.LEFT)


# Unit 0 of every corner group watches the front/back wedge, unit 1 the side wedge.
_CORNER_AREA_UNITS = {
    CornerArea.FRONT: ((GroupId.FRONT_LEFT_CORNER, 0), (GroupId.FRONT_RIGHT_CORNER, 0)),
    CornerArea.RIGHT: ((GroupId.FRONT_RIGHT_CORNER, 1), (GroupId.BACK_RIGHT_CORNER, 1)),
    CornerArea.BACK: ((GroupId.BACK_LEFT_CORNER, 0), (GroupId.BACK_RIGHT_CORNER, 0)),
    CornerArea.LEFT: ((GroupId.FRONT_LEFT_CORNER, 1), (GroupId.BACK_LEFT_CORNER, 1)),
}


def corner_unit_area(group: GroupId, index: int) -> CornerArea:
    """The wedge a corner-model unit is dedicated to."""
    for area, units in _CORNER_AREA_UNITS.items():
        if (group, index) in units:
            return area
    raise KeyError((group, index))


# --- four-side-center model ------------------------------------------------

_CENTER_BY_SIGN = {
    (0, 1): CenterArea.FRONT,
    (1, 1): CenterArea.FRONT_RIGHT,
    (1, 0): CenterArea.RIGHT,
    (1, -1): CenterArea.BACK_RIGHT,
    (0, -1): CenterArea.BACK,
    (-1, -1): CenterArea.BACK_LEFT,
    (-1, 0): CenterArea.LEFT,
    (-1, 1): CenterArea.FRONT_LEFT,
}

_CENTER_AREA_GROUPS = {
    CenterArea.FRONT: (GroupId.FRONT,),
    CenterArea.FRONT_RIGHT: (GroupId.FRONT, GroupId.RIGHT),
    CenterArea.RIGHT: (GroupId.RIGHT,),
    CenterArea.BACK_RIGHT: (GroupId.RIGHT, GroupId.BACK),
    CenterArea.BACK: (GroupId.BACK,),
    CenterArea.BACK_LEFT: (GroupId.BACK, GroupId.LEFT),
    CenterArea.LEFT: (GroupId.LEFT,),
    CenterArea.FRONT_LEFT: (GroupId.FRONT, GroupId.LEFT),
    CenterArea.INTERIOR: (),
}

# a boundary point gets the union of the groups of the two areas it separates
_BOUNDARY_GROUPS = {
    BoundaryLine.RIGHT_EDGE_FRONT: (GroupId.FRONT, GroupId.RIGHT),
    BoundaryLine.RIGHT_EDGE_BACK: (GroupId.RIGHT, GroupId.BACK),
    BoundaryLine.LEFT_EDGE_FRONT: (GroupId.FRONT, GroupId.LEFT),
    BoundaryLine.LEFT_EDGE_BACK: (GroupId.BACK, GroupId.LEFT),
    BoundaryLine.FRONT_EDGE_RIGHT: (GroupId.FRONT, GroupId.RIGHT),
    BoundaryLine.FRONT_EDGE_LEFT: (GroupId.FRONT, GroupId.LEFT),
    BoundaryLine.BACK_EDGE_RIGHT: (GroupId.RIGHT, GroupId.BACK),
    BoundaryLine.BACK_EDGE_LEFT: (GroupId.BACK, GroupId.LEFT),
}


def _side(v: float, lo: float, hi: float) -> int:
    return -1 if v < lo else (1 if v > hi else 0)


def classify_center(layout: Layout, point: Tuple[float, float]) -> CenterRegion:
    """Eight-area partition by the infinite extensions of the virtual edges.

    The closed virtual rectangle (edges and corners included) is Interior.
    """
    if layout.model is not SensorModel.FOUR_SIDE_CENTER:
        raise ValueError("classify_center needs a four-side-center layout")
    x, y = point
    r = layout.virtual_rect
    sx = _side(x, r.xmin, r.xmax)
    sy = _side(y, r.ymin, r.ymax)
    if sx == 0 and sy == 0:
        return CenterRegion(CenterArea.INTERIOR)
    if sx == 0 and (x == r.xmin or x == r.xmax):
        edge = "RIGHT_EDGE" if x == r.xmax else "LEFT_EDGE"
        return CenterRegion(CenterArea.BOUNDARY, BoundaryLine[f"{edge}_{'FRONT' if sy > 0 else 'BACK'}"])
    if sy == 0 and (y == r.ymin or y == r.ymax):
        edge = "FRONT_EDGE" if y == r.ymax else "BACK_EDGE"
        return CenterRegion(CenterArea.BOUNDARY, BoundaryLine[f"{edge}_{'RIGHT' if sx > 0 else 'LEFT'}"])
    return CenterRegion(_CENTER_BY_SIGN[sx, sy])


# --- model-independent API -------------------------------------------------

def classify(layout: Layout, point: Tuple[float, float]) -> Region:
    if layout.model is SensorModel.FOUR_CORNER:
        return classify_corner(layout, point)
    return classify_center(layout, point)


def assign(layout: Layout, point: Tuple[float, float]) -> Assignment:
    """Classify ``point`` and list the LRF units responsible for it."""
    region = classify(layout, point)
    if isinstance(region, CornerRegion):
        if region.area is CornerArea.INTERIOR:
            keys = ()
        elif region.area is CornerArea.DIAGONAL:
            # both units of the corner's own group share the point
            keys = ((region.corner, 0), (region.corner, 1))
        else:
            keys = _CORNER_AREA_UNITS[region.area]
        units = tuple(layout.unit(g, i) for g, i in keys)
    else:
        if region.area is CenterArea.BOUNDARY:
            groups = _BOUNDARY_GROUPS[region.line]
        else:
            groups = _CENTER_AREA_GROUPS[region.area]
        units = tuple(u for g in groups for u in layout.units_of(g))
    return Assignment(region, units)


def lock_state(layout: Layout, human_rect: Rect, mode: LockMode = LockMode.CONTAINMENT) -> LockState:
    """Locked when the person is inside the restricted area.

    CONTAINMENT requires the whole human rectangle inside (closed);
    CENTER_POINT only its center.
    """
    restricted = layout.restricted_rect
    if mode is LockMode.CENTER_POINT:
        inside = restricted.contains(human_rect.center)
    else:
        inside = restricted.contains_rect(human_rect)
    return LockState.LOCKED if inside else LockState.DISENGAGED
