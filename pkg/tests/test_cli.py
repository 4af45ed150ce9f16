import json
import subprocess
import sys

import pytest

from lrfzones import build_layout, classify
from lrfzones.cli import main
from lrfzones.serialize import layout_from_dict

from oracles import grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_scenario(tmp_path, traj, name="scenario.json"):
    from oracles import BASELINE

    path = tmp_path / name
    config = {"robot": BASELINE["robot"], "human": BASELINE["human"], "model": "corner"}
    path.write_text(json.dumps({"config": config, "trajectory": traj}))
    return str(path)


# --- expand -----------------------------------------------------------------

def test_expand(capsys, baseline_config):
    code, out, _ = run(capsys, "expand", baseline_config())
    assert code == 0
    data = json.loads(out)
    assert data["p"] == 1.5 and data["k2"] == 1.0 and data["expanded"] is True
    assert data["wlr"] == 0.75 and data["wfb"] == 0.6 and data["vwrfb"] == 0.9
    assert set(data) == {"p", "k1", "k2", "expanded", "clamped", "vwrfb", "vwrlr", "wfb", "wlr"}


def test_missing_field_names_it(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({
        "robot": {"wrfb": 0.6, "wrlr": 0.5, "xi": 0.5, "epsilon": 0.8},
        "human": {"whfb": 0.3},
        "model": "center",
    }))
    code, _, err = run(capsys, "expand", str(path))
    assert code == 2
    assert "whlr" in err


def test_zero_width_is_domain_error(capsys, baseline_config):
    code, _, err = run(capsys, "expand", baseline_config(robot={"wrlr": 0}))
    assert code == 3
    assert "NonPositiveDimension" in err


def test_malformed_json_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "robot": {"wrfb": 0.6,,}\n}')
    code, _, err = run(capsys, "expand", str(path))
    assert code == 2
    assert "line 2" in err


@pytest.mark.parametrize(
    "kwargs, needle",
    [
        (dict(robot={"height": 1.0}), "height"),
        (dict(extra=1), "extra"),
        (dict(model="triangle"), "model"),
        (dict(robot={"xi": "0.5"}), "xi"),
        (dict(lock_mode="sometimes"), "lock_mode"),
    ],
)
def test_schema_errors(capsys, baseline_config, kwargs, needle):
    code, _, err = run(capsys, "expand", baseline_config(**kwargs))
    assert code == 2
    assert needle in err


def test_optional_robot_keys(capsys, baseline_config):
    code, out, _ = run(capsys, "expand", baseline_config(robot={"xi": 0.05, "p_min": 1.0}))
    assert code == 0
    assert json.loads(out)["p"] == 1.05


def test_missing_config_file_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "expand", str(tmp_path / "nope.json"))
    assert code == 4


# --- layout -----------------------------------------------------------------

def test_layout_center_json(capsys, baseline_config):
    code, out, _ = run(capsys, "layout", baseline_config("center"))
    assert code == 0
    data = json.loads(out)
    assert data["key_points"]["P1"] == [0.0, 0.6]
    assert data["key_points"]["P3"] == [0.0, -0.3]
    assert all(data["checks"].values())


def test_layout_corner_csv(capsys, baseline_config):
    code, out, _ = run(capsys, "layout", baseline_config("corner"), "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name,x,y"
    unit_rows = [l for l in lines if "_corner." in l]
    assert len(unit_rows) == 8
    assert "P1,-0.375,0.6" in lines
    assert "\r" not in out


def test_layout_round_trip(capsys, baseline_config):
    for model in ("corner", "center"):
        _, out, _ = run(capsys, "layout", baseline_config(model))
        restored = layout_from_dict(json.loads(out))
        from lrfzones.serialize import load_config

        cfg = load_config(baseline_config(model))
        original = build_layout(cfg.robot, cfg.human, cfg.model)
        pts = [(x, y) for x in grid(61) for y in grid(61)]
        assert [classify(restored, p) for p in pts] == [classify(original, p) for p in pts]


# --- classify ---------------------------------------------------------------

def test_classify_center(capsys, baseline_config):
    code, out, _ = run(capsys, "classify", baseline_config("center"), "--point", "1.0,1.0")
    assert code == 0
    data = json.loads(out)
    assert data["region"] == "area2_front_right"
    assert data["groups"] == ["front", "right"]
    assert data["double"] is True


def test_classify_corner(capsys, baseline_config):
    code, out, _ = run(capsys, "classify", baseline_config("corner"), "--point", "0,1.5")
    assert code == 0
    data = json.loads(out)
    assert data["region"] == "area1_front" and data["double"] is True


@pytest.mark.parametrize("point", ["1.0", "a,b", "1,2,3"])
def test_classify_bad_point(capsys, baseline_config, point):
    code, _, _ = run(capsys, "classify", baseline_config(), "--point", point)
    assert code == 2


# --- simulate ---------------------------------------------------------------

def test_simulate_locked(capsys, tmp_path):
    path = write_scenario(tmp_path, [[0, 0, -0.6], [1, 0, -0.6]])
    out_json, out_csv = tmp_path / "r.json", tmp_path / "s.csv"
    code, _, _ = run(capsys, "simulate", path, "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0
    report = json.loads(out_json.read_text())
    assert report["summary"]["locked_fraction"] == 1.0
    assert report["summary"]["transitions"] == 0
    rows = out_csv.read_text().splitlines()
    assert rows[0] == "t,x,y,region,lock,groups,double"
    assert len(rows) == 3
    assert rows[1].split(",")[4] == "locked"


def test_simulate_lock_break_to_stdout(capsys, tmp_path):
    path = write_scenario(tmp_path, [[0, 0, -0.6], [1, 0, 0.9]])
    code, out, _ = run(capsys, "simulate", path)
    assert code == 0
    report = json.loads(out)
    assert report["transitions"] == [{"t": 1.0, "from": "locked", "to": "disengaged"}]


def test_simulate_empty_trajectory(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", write_scenario(tmp_path, []))
    assert code == 3
    assert "InvalidScenario" in err


def test_simulate_malformed_sample(capsys, tmp_path):
    code, _, _ = run(capsys, "simulate", write_scenario(tmp_path, [[0, 0]]))
    assert code == 2


def test_simulate_unwritable(capsys, tmp_path):
    path = write_scenario(tmp_path, [[0, 0, -0.6]])
    code, _, _ = run(capsys, "simulate", path, "--out", str(tmp_path / "missing" / "r.json"))
    assert code == 4


# --- coverage ---------------------------------------------------------------

def test_coverage(capsys, baseline_config, tmp_path):
    out_csv = tmp_path / "grid.csv"
    code, out, _ = run(capsys, "coverage", baseline_config("center"), "--window", "6",
                       "--resolution", "0.05", "--out", str(out_csv))
    assert code == 0
    summary = json.loads(out)
    assert summary["cells"] == 14400
    assert summary["overlap_to_separate_ratio"] > 1
    assert summary["overlap_area"] > summary["separate_area"]
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "cell_x,cell_y,region,multiplicity"
    assert len(lines) == 14401


def test_coverage_corner_ratio_undefined(capsys, baseline_config):
    code, out, _ = run(capsys, "coverage", baseline_config("corner"), "--window", "6", "--resolution", "0.5")
    assert code == 0
    summary = json.loads(out)
    assert summary["separate_area"] == 0 and summary["overlap_to_separate_ratio"] is None


def test_coverage_too_coarse(capsys, baseline_config):
    code, _, err = run(capsys, "coverage", baseline_config(), "--window", "6", "--resolution", "10")
    assert code == 3
    assert "ResolutionTooCoarse" in err


def test_coverage_negative_resolution(capsys, baseline_config):
    code, _, _ = run(capsys, "coverage", baseline_config(), "--resolution", "-1")
    assert code == 2


def test_module_entry_point(baseline_config):
    proc = subprocess.run(
        [sys.executable, "-m", "lrfzones", "expand", baseline_config()],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["p"] == 1.5
