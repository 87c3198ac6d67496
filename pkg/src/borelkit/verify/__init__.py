# flake8: noqa
from borelkit.verify.runner import CaseFailure, SuiteReport, rerun_counterexample, run_case, run_suite, suite_name
from borelkit.verify.suites import SUITES, SuiteSpec
