"""
borelkit acceptance run: every property suite under one config.

Usage:
```
python run_borelkit.py --config-file configs/config_verify.yaml
python run_borelkit.py --config-file configs/config_verify.yaml --suites rt-oracle broom --cases 1000
```

The seed, the counterexample folder and the bounds come from the config file; without ``--suites`` every suite
runs, otherwise only the listed ones. Exits with 4 when any suite fails.
"""
import argparse
import sys
from dataclasses import replace

from borelkit import logging
from borelkit.config import Config, VerifyArgs, get_config_from_file
from borelkit.config.utils_config import Suite, cast_str_to_suite
from borelkit.exceptions import PropertyFailure
from borelkit.serialize.metadata import dumps
from borelkit.verify import run_suite, suite_name

logger = logging.get_logger(__name__)


def get_args():
    parser = argparse.ArgumentParser()
    parser.add_argument("--config-file", type=str, required=True, help="Path to the YAML config file")
    parser.add_argument("--suites", nargs="+", default=None, help="Suites to run, all of them by default")
    parser.add_argument("--cases", type=int, default=None)
    return parser.parse_args()


def run_all(config: Config, suites, cases=None) -> dict:
    base = config.verify if config.verify is not None else VerifyArgs(suite=Suite.ORDINAL)
    results = {}
    for suite in suites:
        args = replace(base, suite=suite, cases=cases if cases is not None else base.cases)
        report = run_suite(args, config.bounds)
        results[suite_name(suite)] = report.to_dict()
        status = "passed" if report.passed else f"FAILED ({report.failure_count}/{report.cases})"
        logger.info(f"[{suite_name(suite)}] {status}")
    return results


if __name__ == "__main__":
    args = get_args()
    config = get_config_from_file(args.config_file)
    logging.set_logger_verbosity_format(config.logging.log_level)

    suites = [cast_str_to_suite(s) for s in args.suites] if args.suites is not None else list(Suite)
    results = run_all(config, suites, args.cases)
    sys.stdout.write(dumps(results) + "\n")

    if not all(r["passed"] for r in results.values()):
        sys.exit(PropertyFailure.exit_code)
