"""Generators, acceptance checks and the suite runner."""

from .checks import CHECKS, CheckOutcome, closure_cographs, run_check
from .generators import GENERATORS, GeneratedInstance, GeneratorSpec, generate, resolve_params
from .report import aggregate_frame, records_frame, report_lines, strip_timing, write_report
from .suite import (
    RunReport,
    SuiteConfig,
    SuiteEntry,
    TrialRecord,
    load_suite_config,
    parse_suite_config,
    run_suite,
    run_trial,
)

__all__ = [
    "CHECKS",
    "CheckOutcome",
    "closure_cographs",
    "run_check",
    "GENERATORS",
    "GeneratedInstance",
    "GeneratorSpec",
    "generate",
    "resolve_params",
    "aggregate_frame",
    "records_frame",
    "report_lines",
    "strip_timing",
    "write_report",
    "RunReport",
    "SuiteConfig",
    "SuiteEntry",
    "TrialRecord",
    "load_suite_config",
    "parse_suite_config",
    "run_suite",
    "run_trial",
]
