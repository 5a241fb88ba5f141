"""Running checks over a corpus and assembling the JSON report."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .. import __version__
from .checks import CHECK_IDS, CHECKS, ERROR, FAIL, STATUSES, VerificationReport
from .config import Config

REPORT_VERSION = 1
# settings that cannot change any result, left out so reports compare byte for byte
RUNTIME_KEYS = ("jobs", "report_path")


def run_check(entry, check_id: str, config: Config = Config()) -> VerificationReport:
    """Run one check on one entry.

    A group that cannot be built, or a check that raises, gives an
    ``error`` report instead of an exception.
    """
    if check_id not in CHECKS:
        raise KeyError(f"unknown check id {check_id!r}; known: {', '.join(CHECK_IDS)}")
    try:
        G = entry.group
    except Exception as exc:
        return VerificationReport(entry.name, check_id, ERROR, f"group construction failed: {exc}")
    start = time.perf_counter()
    try:
        report = CHECKS[check_id](entry, G, config)
    except Exception as exc:
        report = VerificationReport(entry.name, check_id, ERROR, f"{type(exc).__name__}: {exc}")
    if config.timings:
        report.details["seconds"] = round(time.perf_counter() - start, 3)
    return report


def _run_entry(entry, config, check_ids):
    return [run_check(entry, c, config).to_dict() for c in check_ids]


@dataclass
class SuiteResult:
    config: Config
    entries: list = field(default_factory=list)

    @property
    def reports(self) -> list:
        return [r for e in self.entries for r in e["checks"]]

    @property
    def summary(self) -> dict:
        counts = dict.fromkeys(STATUSES, 0)
        for r in self.reports:
            counts[r["status"]] += 1
        return {"groups": len(self.entries), "checks": sum(counts.values()), **counts}

    @property
    def exit_code(self) -> int:
        summary = self.summary
        if summary[FAIL]:
            return 1
        if summary[ERROR]:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "tool_version": __version__,
            "config": {k: v for k, v in self.config.to_dict().items() if k not in RUNTIME_KEYS},
            "entries": self.entries,
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_suite(corpus, config: Config = Config(), check_ids=CHECK_IDS) -> SuiteResult:
    """Run every check on every entry; entries and checks come out sorted by name."""
    entries = sorted(corpus, key=lambda e: e.name)
    check_ids = sorted(check_ids)
    if config.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_entry, entries, [config] * len(entries), [check_ids] * len(entries)))
    else:
        results = [_run_entry(e, config, check_ids) for e in entries]
    result = SuiteResult(config)
    for entry, checks in zip(entries, results):
        result.entries.append({"group": entry.name, "checks": checks})
    return result
