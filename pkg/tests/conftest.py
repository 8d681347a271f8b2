import json
from pathlib import Path

import pytest

from xwikire import pipeline
from xwikire.config import PipelineConfig
from xwikire.fixture import write_fixture

DATA = Path(__file__).parent / "data"

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, name): acceptance criterion number and name")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    n, name = marker
    _criteria[n] = (name, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        name, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n} {name}: {status}")


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("fixture")
    write_fixture(d)
    return d


@pytest.fixture(scope="session")
def fixture_cfg(fixture_dir) -> PipelineConfig:
    return PipelineConfig.from_file(fixture_dir / "fixture.cfg")


@pytest.fixture(scope="session")
def built(fixture_cfg, tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("build")
    pipeline.run_build(fixture_cfg, out)
    return out


@pytest.fixture(scope="session")
def built_examples(built):
    return pipeline.load_examples(built / pipeline.EXAMPLES)


@pytest.fixture(scope="session")
def built_contexts(built):
    with open(built / pipeline.CONTEXTS, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]


@pytest.fixture(scope="session")
def built_documents(built):
    with open(built / pipeline.DOCUMENTS, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]
