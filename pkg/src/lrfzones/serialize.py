"""JSON config/scenario loading and report serialization.

Numbers are written with at most 12 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence

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
)
from .partition import Assignment, LockMode
from .simulation import CoverageGrid, Scenario, SimReport, grid_rows


class ConfigError(ValueError):
    """Malformed input file: bad JSON, missing/unknown keys, wrong types."""


_ROBOT_REQUIRED = ("wrfb", "wrlr", "xi", "epsilon")
_ROBOT_OPTIONAL = ("k2_threshold", "p_min", "p_max")
_HUMAN_REQUIRED = ("whfb", "whlr")
_CONFIG_REQUIRED = ("robot", "human", "model")
_CONFIG_OPTIONAL = ("lock_mode",)


@dataclass(frozen=True)
class Config:
    robot: RobotSpec
    human: HumanSpec
    model: SensorModel
    lock_mode: LockMode = LockMode.CONTAINMENT


def num(v: float) -> float:
    """Round to 12 significant digits for output."""
    if not math.isfinite(v):
        return v
    return float(f"{v:.12g}")


def fmt(v: float) -> str:
    return f"{v:.12g}"


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _section(data: Any, where: str, required: Sequence[str], optional: Sequence[str]) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    unknown = sorted(set(data) - set(required) - set(optional))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")
    for key in required:
        if key not in data:
            raise ConfigError(f"{where}: missing required field '{key}'")
    return data


def _number(section: Mapping[str, Any], key: str, where: str) -> float:
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {v!r}")
    return float(v)


def parse_config(data: Any, where: str = "config") -> Config:
    """Build a Config from decoded JSON.

    Raises ConfigError for schema problems; dimension checks happen in the
    domain constructors and surface as DomainError.
    """
    top = _section(data, where, _CONFIG_REQUIRED, _CONFIG_OPTIONAL)
    r = _section(top["robot"], f"{where}.robot", _ROBOT_REQUIRED, _ROBOT_OPTIONAL)
    h = _section(top["human"], f"{where}.human", _HUMAN_REQUIRED, ())
    robot_kw = {k: _number(r, k, f"{where}.robot") for k in r}
    human_kw = {k: _number(h, k, f"{where}.human") for k in h}
    try:
        model = SensorModel(top["model"])
    except ValueError:
        raise ConfigError(f"{where}.model: expected 'corner' or 'center', got {top['model']!r}") from None
    try:
        lock_mode = LockMode(top.get("lock_mode", LockMode.CONTAINMENT.value))
    except ValueError:
        raise ConfigError(
            f"{where}.lock_mode: expected 'containment' or 'center_point', got {top['lock_mode']!r}"
        ) from None
    return Config(RobotSpec(**robot_kw), HumanSpec(**human_kw), model, lock_mode)


def load_config(path: str) -> Config:
    return parse_config(_read_json(path), "config")


def load_scenario(path: str) -> Scenario:
    data = _section(_read_json(path), "scenario", ("config", "trajectory"), ())
    cfg = parse_config(data["config"], "scenario.config")
    traj = data["trajectory"]
    if not isinstance(traj, list):
        raise ConfigError("scenario.trajectory: expected an array of [t, x, y]")
    samples = []
    for i, s in enumerate(traj):
        if (
            not isinstance(s, list)
            or len(s) != 3
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in s)
        ):
            raise ConfigError(f"scenario.trajectory[{i}]: expected [t, x, y] numbers, got {s!r}")
        samples.append(tuple(float(v) for v in s))
    return Scenario(cfg.robot, cfg.human, cfg.model, tuple(samples), cfg.lock_mode)


# --- serialization ---------------------------------------------------------

def expansion_to_dict(exp: ExpansionResult) -> Dict[str, Any]:
    return {
        "p": num(exp.p),
        "k1": num(exp.k1),
        "k2": num(exp.k2),
        "expanded": exp.expanded,
        "clamped": exp.clamped,
        "vwrfb": num(exp.vwrfb),
        "vwrlr": num(exp.vwrlr),
        "wfb": num(exp.wfb),
        "wlr": num(exp.wlr),
    }


def _rect_to_dict(r: Rect) -> Dict[str, float]:
    return {"xmin": num(r.xmin), "xmax": num(r.xmax), "ymin": num(r.ymin), "ymax": num(r.ymax)}


def layout_to_dict(layout: Layout, report: ValidationReport | None = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "model": layout.model.value,
        "expansion": expansion_to_dict(layout.expansion),
        "shift": num(layout.shift),
        "virtual_rect": _rect_to_dict(layout.virtual_rect),
        "real_rect": _rect_to_dict(layout.real_rect),
        "restricted_rect": _rect_to_dict(layout.restricted_rect),
        "key_points": {k: [num(p.x), num(p.y)] for k, p in layout.key_points.items()},
        "lrf_units": [
            {
                "group": u.group.value,
                "unit": u.index,
                "x": num(u.position.x),
                "y": num(u.position.y),
                "real_x": num(u.real_position.x),
                "real_y": num(u.real_position.y),
            }
            for u in layout.lrf_units
        ],
    }
    if report is not None:
        out["checks"] = {c.name: c.passed for c in report.checks}
    return out


def layout_from_dict(data: Mapping[str, Any]) -> Layout:
    """Inverse of layout_to_dict (the ``checks`` entry is ignored)."""
    def rect(d: Mapping[str, float]) -> Rect:
        return Rect(d["xmin"], d["xmax"], d["ymin"], d["ymax"])

    e = data["expansion"]
    exp = ExpansionResult(
        e["p"], e["k1"], e["k2"], e["expanded"], e["vwrfb"], e["vwrlr"], e["wfb"], e["wlr"], e["clamped"]
    )
    units = tuple(
        LrfUnit(GroupId(u["group"]), u["unit"], Point2(u["x"], u["y"]), Point2(u["real_x"], u["real_y"]))
        for u in data["lrf_units"]
    )
    return Layout(
        SensorModel(data["model"]),
        exp,
        rect(data["virtual_rect"]),
        rect(data["real_rect"]),
        rect(data["restricted_rect"]),
        units,
        data["shift"],
        {k: Point2(*v) for k, v in data["key_points"].items()},
    )


def layout_rows(layout: Layout) -> List[List[str]]:
    """(name, x, y) rows: key points first, then the virtual LRF mounts."""
    rows = [[k, fmt(p.x), fmt(p.y)] for k, p in layout.key_points.items()]
    rows += [[u.name, fmt(u.position.x), fmt(u.position.y)] for u in layout.lrf_units]
    return rows


def assignment_to_dict(a: Assignment) -> Dict[str, Any]:
    return {
        "region": a.region.label,
        "groups": [g.value for g in a.groups],
        "units": [u.name for u in a.units],
        "double": a.double_detected,
        "interior": a.interior,
    }


def report_to_dict(report: SimReport) -> Dict[str, Any]:
    s = report.summary
    return {
        "records": [
            {
                "t": num(r.t),
                "x": num(r.x),
                "y": num(r.y),
                "region": r.region,
                "lock": r.lock.value,
                "groups": [g.value for g in r.groups],
                "double": r.double_detected,
            }
            for r in report.records
        ],
        "transitions": [
            {"t": num(tr.t), "from": tr.before.value, "to": tr.after.value} for tr in report.transitions
        ],
        "summary": {
            "steps": s["steps"],
            "locked_fraction": num(s["locked_fraction"]),
            "transitions": s["transitions"],
        },
    }


def coverage_summary_dict(grid: CoverageGrid) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for k, v in grid.summary().items():
        if isinstance(v, float):
            # no separate area at all (corner model): ratio is undefined
            v = num(v) if math.isfinite(v) else None
        out[k] = v
    out["resolution"] = num(grid.resolution)
    out["cell_size"] = [num(grid.dx), num(grid.dy)]
    out["window"] = _rect_to_dict(grid.window)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def steps_csv(report: SimReport) -> str:
    rows = [
        [fmt(r.t), fmt(r.x), fmt(r.y), r.region, r.lock.value, ";".join(g.value for g in r.groups),
         "true" if r.double_detected else "false"]
        for r in report.records
    ]
    return to_csv(("t", "x", "y", "region", "lock", "groups", "double"), rows)


def grid_csv(grid: CoverageGrid) -> str:
    rows = [[fmt(x), fmt(y), label, m] for x, y, label, m in grid_rows(grid)]
    return to_csv(("cell_x", "cell_y", "region", "multiplicity"), rows)
