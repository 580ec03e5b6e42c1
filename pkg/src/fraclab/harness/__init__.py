"""Configuration, corpus execution and reporting."""

from .config import CorpusConfig, default_config, load_config, parse_config
from .report import render_report, write_report
from .runner import RunReport, run_corpus

__all__ = [
    "CorpusConfig",
    "RunReport",
    "default_config",
    "load_config",
    "parse_config",
    "render_report",
    "run_corpus",
    "write_report",
]
