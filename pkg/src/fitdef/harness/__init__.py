"""Corpus, verification checks, JSON reports and the command line."""

from .checks import CHECK_IDS, CHECKS, VerificationReport, replay
from .config import Config, ConfigError
from .corpus import CorpusEntry, default_corpus, entry_from_file, entry_from_text, load_corpus
from .report import SuiteResult, run_check, run_suite

__all__ = [
    "CHECK_IDS",
    "CHECKS",
    "Config",
    "ConfigError",
    "CorpusEntry",
    "SuiteResult",
    "VerificationReport",
    "default_corpus",
    "entry_from_file",
    "entry_from_text",
    "load_corpus",
    "replay",
    "run_check",
    "run_suite",
]
