from importlib import resources
from pathlib import Path

import pytest

from dialectdist import default_concept_list, load_concept_list

DATA = Path(__file__).parent / "data"
PACKAGE_DATA = Path(str(resources.files("dialectdist").joinpath("data")))

_acceptance = {}


@pytest.fixture(scope="session")
def swadesh():
    return default_concept_list()


@pytest.fixture(scope="session")
def fixture207():
    return DATA / "varieties207.tsv"


@pytest.fixture(scope="session")
def synthetic_concepts():
    return load_concept_list(PACKAGE_DATA / "synthetic_concepts.tsv")


@pytest.fixture(scope="session")
def synthetic_pair_path():
    return PACKAGE_DATA / "synthetic_pair.tsv"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    key = (number, title)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        state = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        previous = _acceptance.get(key)
        # a criterion fails if any of its tests fails; skips do not hide passes
        if previous in (None, "SKIP") or state == "FAIL":
            _acceptance[key] = state if previous != "FAIL" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), state in sorted(_acceptance.items()):
        terminalreporter.write_line(f"[{state}] criterion {number}: {title}")
