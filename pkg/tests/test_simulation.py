import math

import numpy as np
import pytest

from lrfzones import (
    HumanSpec,
    InvalidScenario,
    LockMode,
    LockState,
    Rect,
    ResolutionTooCoarse,
    RobotSpec,
    Scenario,
    SensorModel,
    assign,
    build_layout,
    coverage_map,
    run_scenario,
)
from lrfzones.simulation import default_window, grid_rows

from oracles import BASELINE, CENTER_GROUPS_BY_LABEL, center_labels, only

SIX = Rect(-3.0, 3.0, -3.0, 3.0)


def scenario(traj, model=SensorModel.FOUR_CORNER, mode=LockMode.CONTAINMENT):
    return Scenario(
        RobotSpec(**BASELINE["robot"]), HumanSpec(**BASELINE["human"]), model, tuple(traj), mode
    )


# --- run_scenario -----------------------------------------------------------

def test_two_locked_steps():
    report = run_scenario(scenario([(0, 0, -0.6), (1, 0, -0.6)]))
    assert len(report.records) == 2
    assert all(r.lock is LockState.LOCKED for r in report.records)
    assert report.transitions == ()
    assert report.summary == {"steps": 2, "locked_fraction": 1.0, "transitions": 0}


def test_lock_break():
    report = run_scenario(scenario([(0, 0, -0.6), (1, 0, 0.9)]))
    assert [(t.t, t.before, t.after) for t in report.transitions] == [
        (1.0, LockState.LOCKED, LockState.DISENGAGED)
    ]
    assert report.locked_fraction == 0.5


@pytest.mark.parametrize("y, fraction", [(-0.6, 1.0), (2.0, 0.0)])
def test_single_sample(y, fraction):
    report = run_scenario(scenario([(0.0, 0.0, y)]))
    assert report.locked_fraction == fraction
    assert report.transitions == ()


def test_records_carry_region_and_groups():
    report = run_scenario(scenario([(0, 0, -0.6), (0.5, 1.0, 1.0)], model=SensorModel.FOUR_SIDE_CENTER))
    first, second = report.records
    assert first.region == "area5_back"
    assert [g.value for g in first.groups] == ["back"] and not first.double_detected
    assert second.region == "area2_front_right"
    assert second.double_detected


def test_center_point_mode_in_scenario():
    # 0.8 m wide person centered in the restricted area: only the center fits
    s = Scenario(
        RobotSpec(**BASELINE["robot"]), HumanSpec(0.3, 0.8), SensorModel.FOUR_CORNER,
        ((0, 0, -0.6),), LockMode.CENTER_POINT,
    )
    assert run_scenario(s).records[0].lock is LockState.LOCKED
    s2 = Scenario(s.robot, s.human, s.model, s.trajectory, LockMode.CONTAINMENT)
    assert run_scenario(s2).records[0].lock is LockState.DISENGAGED


def test_summary_recomputable():
    traj = [(i * 0.1, 0.0, -0.6 + 0.2 * math.sin(i)) for i in range(40)]
    report = run_scenario(scenario(traj))
    locks = [r.lock for r in report.records]
    changes = [(report.records[i].t, locks[i - 1], locks[i]) for i in range(1, len(locks)) if locks[i] != locks[i - 1]]
    assert [(t.t, t.before, t.after) for t in report.transitions] == changes
    assert report.locked_fraction == locks.count(LockState.LOCKED) / len(locks)
    assert report.transitions  # the sinusoid does leave the restricted area


@pytest.mark.parametrize(
    "traj",
    [[], [(0, 0, 0), (0, 1, 1)], [(1, 0, 0), (0.5, 0, 0)], [(0, 0, math.nan)]],
    ids=["empty", "repeated-t", "decreasing-t", "nan"],
)
def test_invalid_scenarios(traj):
    with pytest.raises(InvalidScenario):
        scenario(traj)


# --- coverage_map -----------------------------------------------------------

@pytest.fixture(scope="module")
def center_grid(center):
    return coverage_map(center, SIX, 0.05)


def test_cell_count(center_grid):
    assert center_grid.cell_count == 120 * 120
    assert center_grid.dx == 0.05 and center_grid.dy == 0.05


def test_multiplicity_matches_strip_oracle(center, center_grid):
    v = center.virtual_rect
    for x, y, label, mult in grid_rows(center_grid):
        expected = only(center_labels(v.xmin, v.xmax, v.ymin, v.ymax, x, y))
        assert label == expected
        if expected in CENTER_GROUPS_BY_LABEL:
            assert mult == len(CENTER_GROUPS_BY_LABEL[expected])
        else:
            assert mult == 2  # edge extensions are double-detected
        if abs(x) > 0.375 and (y > 0.6 or y < -0.3):
            assert mult == 2


def test_grid_agrees_with_assign(center, center_grid):
    for x, y, label, mult in grid_rows(center_grid)[::37]:
        a = assign(center, (x, y))
        assert a.region.label == label and len(a.groups) == mult


def test_overlap_exceeds_separate(center_grid):
    areas = center_grid.areas
    assert areas["overlap"] > areas["separate"]
    # 5.25 * 5.1 vs 0.75 * 5.1 + 0.9 * 5.25 in the continuum
    assert center_grid.overlap_ratio == pytest.approx(26.775 / 8.55, rel=0.05)


def test_areas_sum_to_window(center_grid):
    assert sum(center_grid.areas.values()) == pytest.approx(36.0, abs=1e-9)


def test_corner_wedges_have_two_units(corner):
    grid = coverage_map(corner, SIX, 0.05)
    for x, y, label, mult in grid_rows(grid)[::11]:
        if label.startswith("area"):
            a = assign(corner, (x, y))
            assert mult == 2 and len(a.units) == 2


def test_coarse_resolution_rejected(center):
    with pytest.raises(ResolutionTooCoarse):
        coverage_map(center, SIX, 10.0)
    with pytest.raises(ResolutionTooCoarse):
        coverage_map(center, SIX, 0.0)
    # 2 x 2 cells is the smallest accepted grid
    assert coverage_map(center, SIX, 3.0).cell_count == 4


def test_tiles_add_up(center):
    # binary-exact window and resolution so tile cells coincide with whole-window cells
    whole = coverage_map(center, Rect(-2.0, 2.0, -2.0, 2.0), 0.125)
    tiles = [
        coverage_map(center, Rect(x0, x0 + 2.0, y0, y0 + 2.0), 0.125)
        for x0 in (-2.0, 0.0)
        for y0 in (-2.0, 0.0)
    ]
    for key, value in whole.areas.items():
        assert sum(t.areas[key] for t in tiles) == value


def test_interior_area_converges(center):
    # Window chosen so the y edges of the virtual rect (-0.3, 0.6) fall on cell
    # boundaries and the x edges (+-0.375) sit 1/3 and 2/3 into a cell at
    # r = 0.09.  Cell-center sampling then over-counts each x edge by r/3:
    # width 0.75 + 2*0.03 = 0.81, area 0.729 (+8 %).  At r/2 the offsets flip to
    # 2/3 and 1/3 and each edge under-counts by r/6: width 0.72, area 0.648 (-4 %).
    window = Rect(-1.305, 1.305, -1.2, 1.5)
    exact = 0.9 * 0.75
    coarse = coverage_map(center, window, 0.09).areas["interior"]
    fine = coverage_map(center, window, 0.045).areas["interior"]
    assert coarse == pytest.approx(0.729, abs=1e-9)
    assert fine == pytest.approx(0.648, abs=1e-9)
    err_coarse = abs(coarse - exact) / exact
    err_fine = abs(fine - exact) / exact
    assert err_fine / err_coarse == pytest.approx(0.5, abs=1e-6)


def test_default_window(center):
    w = default_window(center)
    assert w.width == pytest.approx(6 * 0.9)
    assert w.center.y == pytest.approx(0.15)
    grid = coverage_map(center)
    assert grid.areas["overlap"] > grid.areas["separate"]


def test_coverage_is_deterministic(center):
    a = coverage_map(center, SIX, 0.1)
    b = coverage_map(center, SIX, 0.1)
    assert np.array_equal(a.multiplicity, b.multiplicity)
    assert (a.labels == b.labels).all()
    assert a.areas == b.areas
