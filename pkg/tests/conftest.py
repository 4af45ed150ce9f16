import json
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lrfzones import HumanSpec, RobotSpec, SensorModel, build_layout  # noqa: E402
from oracles import BASELINE  # noqa: E402


@pytest.fixture(scope="session")
def robot():
    return RobotSpec(**BASELINE["robot"])


@pytest.fixture(scope="session")
def human():
    return HumanSpec(**BASELINE["human"])


@pytest.fixture(scope="session")
def corner(robot, human):
    return build_layout(robot, human, SensorModel.FOUR_CORNER)


@pytest.fixture(scope="session")
def center(robot, human):
    return build_layout(robot, human, SensorModel.FOUR_SIDE_CENTER)


@pytest.fixture
def baseline_config(tmp_path):
    """Writes a baseline config file; dict arguments override sections."""

    def make(model="center", robot=None, human=None, name=None, **extra):
        data = {
            "robot": {**BASELINE["robot"], **(robot or {})},
            "human": {**BASELINE["human"], **(human or {})},
            "model": model,
            **extra,
        }
        path = tmp_path / (name or f"{model}.json")
        path.write_text(json.dumps(data))
        return str(path)

    return make


# --- acceptance reporting ---------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    n, title = marker
    prev = _criteria.get(n, (title, True))
    _criteria[n] = (title, prev[1] and report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")
