"""
Helpers shared by the subcommand handlers.
"""

import sys
from typing import Optional

from ..schemas import RtConfig, RunConfig, TestReport
from ..utils.logger import cli_logger as logger
from ..utils.storage import StorageService


def rt_config(cfg: RunConfig, k: Optional[int] = None) -> RtConfig:
    """Randomized-tester configuration from a run, optionally for another target degree"""
    return RtConfig(
        p=cfg.p,
        k=cfg.k if k is None else k,
        trials=cfg.trials,
        pit=cfg.pit,
        seed=cfg.seed,
        threads=cfg.threads,
        mem_mb=cfg.mem_mb,
        engine=cfg.engine,
        tags=cfg.tags,
    )


def emit(report: TestReport, cfg: RunConfig, storage: StorageService) -> int:
    """Print a report in the requested format, save it when -o is given, return the exit code"""
    if cfg.format == "json":
        sys.stdout.buffer.write(report.to_json())
        sys.stdout.flush()
    else:
        sys.stdout.write(report.to_text())
    if cfg.output:
        storage.save_report(report, cfg.output)
    logger.debug(f"{cfg.subcommand}: exit code {report.exit_code}")
    return report.exit_code
