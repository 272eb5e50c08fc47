import csv
from collections import defaultdict
from pathlib import Path

import pytest

from foon.fixtures import corpus_path
from foon.parser import load_foon, load_kitchen, load_motions, load_substitutions

DATA = corpus_path()
FOON_FILES = sorted(DATA.glob("*.foon"))
GOALS = [g.strip() for g in (DATA / "goals.txt").read_text().splitlines() if g.strip()]
ALGOS = ("ids", "gbfs-h1", "gbfs-h2")


def read_manifest(path: Path = DATA / "manifest.csv"):
    """record -> list of (subject, detail, value) from the committed manifest."""
    rows = defaultdict(list)
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows[row["record"]].append((row["subject"], row["detail"], row["value"]))
    return rows


@pytest.fixture(scope="session")
def manifest():
    return read_manifest()


@pytest.fixture(scope="session")
def corpus():
    """The bundled universe: merged FOON, kitchen, motions, substitutions."""
    return {
        "foon": load_foon(FOON_FILES),
        "kitchen": load_kitchen(DATA / "kitchen.json"),
        "motions": load_motions(DATA / "motions.txt"),
        "subs": load_substitutions(DATA / "substitutions.txt"),
    }


# -- acceptance reporting: one PASS/FAIL line per criterion -------------------

_criteria: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = f"{marker.args[0]} [{item.callspec.id}]" if hasattr(item, "callspec") else marker.args[0]
        _criteria.append(("PASS" if report.passed else "FAIL", label))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, label in _criteria:
        terminalreporter.write_line(f"{status}  {label}")
