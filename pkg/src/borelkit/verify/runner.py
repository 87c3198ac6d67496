from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from tqdm import tqdm

from borelkit import logging
from borelkit.config.config import BoundsArgs, VerifyArgs
from borelkit.config.utils_config import Suite, cast_str_to_suite
from borelkit.constants import COUNTEREXAMPLE_FILE_NAME, TOPOLOGY_EXHAUSTIVE_POINTS
from borelkit.random import make_rng
from borelkit.serialize.metadata import load_counterexample, save_counterexample
from borelkit.verify.suites import SUITES, Inputs, SuiteSpec

logger = logging.get_logger(__name__)

MAX_REPORTED_FAILURES = 10


def suite_name(suite: Suite) -> str:
    return suite.name.lower().replace("_", "-")


@dataclass
class CaseFailure:
    # exhaustive sweeps number their cases -1, -2, ...
    case: int
    message: str
    inputs: Inputs = field(repr=False)


@dataclass
class SuiteReport:
    suite: Suite
    seed: int
    cases: int
    failures: List[CaseFailure] = field(default_factory=list)
    failure_count: int = 0
    counterexample_path: Optional[Path] = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": suite_name(self.suite),
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failure_count,
            "first_failures": [{"case": f.case, "message": f.message} for f in self.failures],
            "counterexample": str(self.counterexample_path) if self.counterexample_path is not None else None,
        }


def run_case(spec: SuiteSpec, inputs: Inputs) -> Optional[str]:
    """The failure message of one case; errors raised by the code under test are failures too."""
    try:
        return spec.check(**inputs)
    except Exception as e:  # noqa: BLE001
        logger.debug(f"case raised {e!r}")
        return f"raised {e!r}"


def run_suite(
    args: VerifyArgs, bounds: Optional[BoundsArgs] = None, exhaustive_points: int = TOPOLOGY_EXHAUSTIVE_POINTS
) -> SuiteReport:
    """Run ``args.cases`` random cases (plus the exhaustive sweep of suites that have one).

    Case k draws its inputs from ``make_rng(seed, k)``, so reports are reproducible. The first failure is written
    to ``args.counterexample_dir``.
    """
    bounds = bounds if bounds is not None else BoundsArgs()
    spec = SUITES[args.suite]
    name = suite_name(args.suite)
    report = SuiteReport(args.suite, args.seed, cases=0)

    def record(case: int, inputs: Inputs):
        report.cases += 1
        message = run_case(spec, inputs)
        if message is None:
            return
        report.failure_count += 1
        if len(report.failures) < MAX_REPORTED_FAILURES:
            report.failures.append(CaseFailure(case, message, inputs))
        logger.warning(f"[{name}] case {case}: {message}")

    if spec.exhaustive is not None and exhaustive_points > 0:
        for index, inputs in enumerate(
            tqdm(spec.exhaustive(args.seed, exhaustive_points), desc=f"{name} (exhaustive)", disable=None)
        ):
            record(-1 - index, inputs)
    for case in tqdm(range(args.cases), desc=name, disable=None):
        record(case, spec.generate(make_rng(args.seed, case), bounds))

    if report.failures:
        first = report.failures[0]
        report.counterexample_path = save_counterexample(
            args.counterexample_dir,
            COUNTEREXAMPLE_FILE_NAME.format(suite=name, seed=args.seed),
            suite=name,
            seed=args.seed,
            case=first.case,
            message=first.message,
            inputs=first.inputs,
        )
    logger.info(
        f"[{name}] {report.cases - report.failure_count}/{report.cases} cases passed ({spec.description})"
    )
    return report


def rerun_counterexample(path: Path) -> Optional[str]:
    """Check a saved counterexample again; None once the property holds on it."""
    document, inputs = load_counterexample(path)
    spec = SUITES[cast_str_to_suite(document.suite)]
    return run_case(spec, inputs)
