"""Suite files: parsing, parallel trial execution and the run report."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np
import yaml

from config.settings import GENERATOR_PARAMS, get_settings
from src.errors import BlockadeLabError, ConfigError

from .checks import CHECKS, run_check
from .generators import GeneratorSpec, generate

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteEntry:
    name: str
    check: str
    trials: int
    generator: Optional[dict[str, Any]] = None
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int
    suites: list[SuiteEntry]
    source: str = "<memory>"


def _entry_from_dict(raw: Any, i: int) -> SuiteEntry:
    where = f"suites[{i}]"
    if not isinstance(raw, dict):
        raise ConfigError("each suite must be a mapping", where)
    for key in ("name", "check"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}", where)
    if raw["check"] not in CHECKS:
        raise ConfigError(f"unknown check {raw['check']!r}", f"{where}.check")
    trials = raw.get("trials", 1)
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 0:
        raise ConfigError(f"trials must be a non-negative integer, got {trials!r}",
                          f"{where}.trials")
    generator = raw.get("generator")
    if generator is not None:
        if not isinstance(generator, dict) or "kind" not in generator:
            raise ConfigError("generator must be a mapping with a 'kind'", f"{where}.generator")
        if generator["kind"] not in GENERATOR_PARAMS:
            raise ConfigError(f"unknown generator kind {generator['kind']!r}",
                              f"{where}.generator.kind")
        generator = {"kind": generator["kind"], "params": dict(generator.get("params") or {})}
    params = raw.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError("params must be a mapping", f"{where}.params")
    return SuiteEntry(name=str(raw["name"]), check=raw["check"], trials=trials,
                      generator=generator, params=params)


def parse_suite_config(data: Any, source: str = "<memory>") -> SuiteConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("suite file must be a mapping", source)
    suites = data.get("suites") or []
    if not isinstance(suites, list):
        raise ConfigError("'suites' must be a list", "suites")
    seed = data.get("seed", get_settings().SEED)
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}", "seed")
    return SuiteConfig(
        seed=seed,
        suites=[_entry_from_dict(raw, i) for i, raw in enumerate(suites)],
        source=source,
    )


def load_suite_config(path: str | Path) -> SuiteConfig:
    """Parse a YAML suite file; syntax errors carry ``file:line:column``."""
    path = Path(path)
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read suite file: {e.strerror}", str(path)) from e
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        location = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else str(path)
        raise ConfigError(f"YAML syntax error: {e.problem}", location) from e
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML error: {e}", str(path)) from e
    return parse_suite_config(data, str(path))


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

@dataclass
class TrialRecord:
    suite: str
    check: str
    index: int
    seed: int
    stream: int
    status: str
    cases: int = 0
    generator: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Any] = None
    error: Optional[str] = None
    elapsed_s: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status in ("fail", "error")

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "trial",
            "suite": self.suite,
            "check": self.check,
            "index": self.index,
            "seed": self.seed,
            "stream": self.stream,
            "status": self.status,
            "cases": self.cases,
            "generator": self.generator,
            "details": self.details,
            "counterexample": self.counterexample,
            "error": self.error,
            "elapsed_s": self.elapsed_s,
        }


@dataclass
class RunReport:
    source: str
    seed: int
    records: list[TrialRecord] = field(default_factory=list)
    wall_clock_s: float = 0.0

    @property
    def failures(self) -> list[TrialRecord]:
        return [r for r in self.records if r.failed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def aggregate(self) -> dict[str, Any]:
        suites: dict[str, dict[str, int]] = {}
        for r in self.records:
            counts = suites.setdefault(r.suite, {"pass": 0, "fail": 0, "skip": 0, "error": 0,
                                                 "cases": 0})
            counts[r.status] += 1
            counts["cases"] += r.cases
        return {
            "type": "aggregate",
            "source": self.source,
            "seed": self.seed,
            "trials": len(self.records),
            "failures": len(self.failures),
            "suites": suites,
            "replay": [
                {"suite": r.suite, "seed": r.seed, "stream": r.stream, "index": r.index}
                for r in self.failures
            ],
            "wall_clock_s": self.wall_clock_s,
        }


def run_trial(entry: SuiteEntry, seed: int, stream: int, index: int) -> TrialRecord:
    """One (generator, check) pair; library errors become failed records."""
    record = TrialRecord(suite=entry.name, check=entry.check, index=index, seed=seed,
                         stream=stream, status="error")
    started = time.perf_counter()
    try:
        instance = None
        if entry.generator is not None:
            spec = GeneratorSpec(kind=entry.generator["kind"], params=entry.generator["params"],
                                 seed=seed, index=index, stream=stream)
            record.generator = spec.to_dict()
            instance = generate(spec)
        rng = np.random.default_rng([seed, stream, index, 1])
        outcome = run_check(entry.check, instance, entry.params, rng)
        record.status = outcome.status
        record.cases = outcome.cases
        record.details = outcome.details
        record.counterexample = outcome.counterexample
    except BlockadeLabError as e:
        logger.error("Trial %s[%s] failed: %s", entry.name, index, e)
        record.status = "fail"
        record.error = f"{type(e).__name__}: {e}"
        record.counterexample = getattr(e, "counterexample", None)
        if record.counterexample is not None and hasattr(record.counterexample, "to_dict"):
            record.counterexample = record.counterexample.to_dict()
    except Exception as e:
        logger.error("Trial %s[%s] raised: %s", entry.name, index, e)
        record.error = f"{type(e).__name__}: {e}"
    record.elapsed_s = time.perf_counter() - started
    return record


def run_suite(
    config: SuiteConfig | str | Path,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> RunReport:
    """Run every configured trial; records come back in (suite, index) order."""
    if not isinstance(config, SuiteConfig):
        config = load_suite_config(config)
    seed = config.seed if seed is None else seed
    workers = max_workers or get_settings().MAX_WORKERS
    tasks = [
        (entry, seed, stream, index)
        for stream, entry in enumerate(config.suites)
        for index in range(entry.trials if trials is None else trials)
    ]
    report = RunReport(source=config.source, seed=seed)
    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        report.records = list(executor.map(lambda task: run_trial(*task), tasks))
    report.wall_clock_s = time.perf_counter() - started
    logger.info("Ran %s trials from %s: %s failures", len(tasks), config.source,
                len(report.failures))
    return report
