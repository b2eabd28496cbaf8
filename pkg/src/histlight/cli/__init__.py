"""Command-line surface: enhance, decompose, bench, metrics and gamma-sweep."""

from histlight.cli.commands import (
    COMMANDS,
    cmd_bench,
    cmd_decompose,
    cmd_enhance,
    cmd_gamma_sweep,
    cmd_metrics,
)
from histlight.cli.config import RunConfig, load_run_config, parse_resolutions, resolve_threads
from histlight.cli.main import main
from histlight.cli.reports import BenchRecord, ReportError

__all__ = [
    "COMMANDS",
    "BenchRecord",
    "ReportError",
    "RunConfig",
    "cmd_bench",
    "cmd_decompose",
    "cmd_enhance",
    "cmd_gamma_sweep",
    "cmd_metrics",
    "load_run_config",
    "main",
    "parse_resolutions",
    "resolve_threads",
]
