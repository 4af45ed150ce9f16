"""Sensor-layout geometry for front-following robots.

Two layouts of eight laser range finders (four groups of two) are modeled:
groups at the corners of the robot rectangle, or at the midpoints of its
sides.  A narrow robot is replaced by a proportionally expanded virtual
robot so that a restricted area behind it can hold the followed person.
"""
from .errors import (
    DegenerateHuman,
    DomainError,
    InvalidExpansion,
    InvalidScenario,
    NonPositiveDimension,
    ResolutionTooCoarse,
)
from .geometry import (
    ExpansionResult,
    GroupId,
    HumanSpec,
    Layout,
    LrfUnit,
    Point2,
    Rect,
    RobotSpec,
    SensorModel,
    ValidationReport,
    build_layout,
    center_layout,
    compute_expansion,
    corner_layout,
    validate_layout,
)
from .partition import (
    Assignment,
    BoundaryLine,
    CenterArea,
    CenterRegion,
    CornerArea,
    CornerRegion,
    LockMode,
    LockState,
    assign,
    classify,
    classify_center,
    classify_corner,
    lock_state,
)
from .simulation import CoverageGrid, Scenario, SimReport, coverage_map, run_scenario

__version__ = "0.1.0"
