import json
from dataclasses import replace

import numpy as np
import pytest
from helpers.context import TestContext
from helpers.exception import assert_fail_with, timeout_after

from borelkit.config import BoundsArgs, VerifyArgs
from borelkit.config.utils_config import Suite
from borelkit.constants import COUNTEREXAMPLE_FILE_NAME
from borelkit.random import make_rng
from borelkit.verify import SUITES, rerun_counterexample, run_case, run_suite, suite_name

SMALL = BoundsArgs(depth=3, width=2, universe=4)
# topologies on one and on two points
EXHAUSTIVE_CASES = 1 + 4


@pytest.fixture
def directory():
    context = TestContext()
    yield context.get_auto_remove_tmp_dir()


@pytest.mark.parametrize("suite", list(Suite), ids=suite_name)
def test_suite_passes_on_a_few_cases(suite: Suite, directory):
    report = run_suite(VerifyArgs(suite, seed=0, cases=2, counterexample_dir=directory), SMALL, exhaustive_points=2)
    assert report.passed, report.failures
    expected = 2 + (EXHAUSTIVE_CASES if SUITES[suite].exhaustive is not None else 0)
    assert report.cases == expected
    assert report.counterexample_path is None
    assert not list(directory.iterdir())


def test_suite_names():
    assert suite_name(Suite.RT_ORACLE) == "rt-oracle"
    assert suite_name(Suite.ORDINAL) == "ordinal"
    assert set(SUITES) == set(Suite)


def test_failures_are_written_out(monkeypatch, directory):
    monkeypatch.setitem(SUITES, Suite.ORDINAL, replace(SUITES[Suite.ORDINAL], check=lambda **_: "always fails"))
    report = run_suite(VerifyArgs(Suite.ORDINAL, seed=5, cases=3, counterexample_dir=directory), SMALL)
    assert not report.passed
    assert report.failure_count == 3
    assert [f.case for f in report.failures] == [0, 1, 2]
    assert report.counterexample_path == directory / COUNTEREXAMPLE_FILE_NAME.format(suite="ordinal", seed=5)

    data = json.loads(report.counterexample_path.read_text())
    assert data["suite"] == "ordinal"
    assert data["case"] == 0
    assert data["message"] == "always fails"
    assert set(data["inputs"]) == {"a", "b", "c", "lam", "n"}

    assert rerun_counterexample(report.counterexample_path) == "always fails"
    monkeypatch.undo()
    assert rerun_counterexample(report.counterexample_path) is None


def test_report_to_dict(monkeypatch, directory):
    monkeypatch.setitem(SUITES, Suite.REINDEX, replace(SUITES[Suite.REINDEX], check=lambda **_: "wrong"))
    report = run_suite(VerifyArgs(Suite.REINDEX, seed=1, cases=2, counterexample_dir=directory), SMALL)
    assert report.to_dict() == {
        "suite": "reindex",
        "seed": 1,
        "cases": 2,
        "passed": False,
        "failures": 2,
        "first_failures": [{"case": 0, "message": "wrong"}, {"case": 1, "message": "wrong"}],
        "counterexample": str(report.counterexample_path),
    }


def test_errors_count_as_failures():
    def check(**_):
        raise ValueError("boom")

    spec = replace(SUITES[Suite.ORDINAL], check=check)
    assert run_case(spec, {}) == "raised ValueError('boom')"


def test_reports_are_reproducible(directory):
    args = VerifyArgs(Suite.TREES, seed=3, cases=4, counterexample_dir=directory)
    assert run_suite(args, SMALL).to_dict() == run_suite(args, SMALL).to_dict()


def test_make_rng_is_deterministic():
    first = make_rng(3, 1).integers(0, 2**32, size=10)
    assert np.array_equal(first, make_rng(3, 1).integers(0, 2**32, size=10))
    assert not np.array_equal(first, make_rng(3, 2).integers(0, 2**32, size=10))
    assert not np.array_equal(make_rng(3).integers(0, 2**32, size=10), make_rng(4).integers(0, 2**32, size=10))


def test_generated_inputs_only_depend_on_the_case():
    spec = SUITES[Suite.ORDINAL]
    assert spec.generate(make_rng(9, 2), SMALL) == spec.generate(make_rng(9, 2), SMALL)


def test_cases_should_be_positive():
    with assert_fail_with(ValueError, "cases should be a positive integer"):
        VerifyArgs(Suite.ORDINAL, cases=0)


@pytest.mark.slow
@pytest.mark.parametrize("suite", list(Suite), ids=suite_name)
def test_suite_at_acceptance_scale(suite: Suite, directory):
    report = run_suite(VerifyArgs(suite, seed=0, counterexample_dir=directory))
    assert report.passed, report.to_dict()


@pytest.mark.slow
@pytest.mark.parametrize(
    "suite,cases,seconds",
    [
        (Suite.CANONICAL_RANK, 10, 10),
        (Suite.RT_ORACLE, 1000, 60),
        (Suite.REGULAR, 1000, 120),
        (Suite.TOPOLOGY, 200, 120),
    ],
    ids=lambda v: suite_name(v) if isinstance(v, Suite) else str(v),
)
def test_suite_within_time(suite: Suite, cases: int, seconds: int, directory):
    with timeout_after(ms=seconds * 1000):
        report = run_suite(VerifyArgs(suite, seed=0, cases=cases, counterexample_dir=directory))
    assert report.passed, report.to_dict()
