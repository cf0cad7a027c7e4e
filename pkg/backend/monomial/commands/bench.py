"""
Bench Command Module

Times the testers over a corpus directory and fits the exponential growth
base of their running time in k.

Key Features:
- bench --generate N <dir>: write a seeded corpus
- rt_mlm over every circuit for k = 2..K (K from --k, default 6)
- bb_test, narrow_test and enum_test over every product instance, with
  bb_test leaf counts checked against 2^k
- Least-squares fit of log(seconds) against k per tester
"""

import glob
import os
import sys
import time
from collections import defaultdict
from typing import Callable, Dict, List, Optional

import numpy as np

from ..circuit.expansion import degree_bound
from ..schemas import BenchRecord, BenchReport, RunConfig, TestReport
from ..services.corpus import write_corpus
from ..services.randomized_tester import rt_mlm
from ..services.structured_tester import bb_test, enum_test, narrow_test
from ..utils.config import settings
from ..utils.errors import MonomialError
from ..utils.logger import bench_logger as logger
from ..utils.rng import resolve_seed
from ..utils.storage import StorageService
from .common import rt_config
from .structured import product_instance

DEFAULT_MAX_K = 6


def _timed(instance: str, tester: str, k: int, run: Callable[[], TestReport], repeats: int) -> BenchRecord:
    """Median wall time over repeats; failures are recorded, not raised"""
    seconds = []
    report = None
    try:
        for _ in range(repeats):
            t0 = time.perf_counter()
            report = run()
            seconds.append(time.perf_counter() - t0)
    except MonomialError as e:
        logger.warning(f"{tester} failed on {instance} (k={k}): {str(e)}")
        return BenchRecord(instance=instance, tester=tester, k=k, error=str(e))
    explored = report.stats.get("leaves") if report is not None else None
    return BenchRecord(instance=instance, tester=tester, k=k, seconds=float(np.median(seconds)),
                       answer=report.answer if report is not None else None, explored=explored)


def fit_growth(records: List[BenchRecord]) -> Dict[str, float]:
    """Per tester, exp of the slope of log(mean seconds) against k"""
    by_tester: Dict[str, Dict[int, List[float]]] = defaultdict(lambda: defaultdict(list))
    for record in records:
        if record.error is None and record.seconds > 0:
            by_tester[record.tester][record.k].append(record.seconds)
    growth = {}
    for tester, by_k in by_tester.items():
        if len(by_k) < 2:
            continue
        ks = np.array(sorted(by_k), dtype=float)
        means = np.array([np.mean(by_k[int(k)]) for k in ks])
        slope, _ = np.polyfit(ks, np.log(means), 1)
        growth[tester] = float(np.exp(slope))
    return growth


def run_bench(directory: str, cfg: RunConfig, storage: StorageService, max_k: Optional[int] = None,
              repeats: Optional[int] = None) -> BenchReport:
    max_k = max_k or cfg.k or DEFAULT_MAX_K
    repeats = repeats or settings.BENCH_REPEATS
    seed = resolve_seed(cfg.seed)
    records: List[BenchRecord] = []

    for path in sorted(glob.glob(os.path.join(directory, "*.circ"))):
        name = os.path.basename(path)
        circuit = storage.load_circuit(path)
        for k in range(2, min(max_k, degree_bound(circuit)) + 1):
            rt = rt_config(cfg, k=k).model_copy(update={"trials": 1, "seed": seed})
            records.append(_timed(name, "rt_mlm", k, lambda: rt_mlm(circuit, rt), repeats))

    for path in sorted(glob.glob(os.path.join(directory, "*.poly"))):
        name = os.path.basename(path)
        try:
            inst = product_instance(storage.load_structured(path))
        except MonomialError as e:
            records.append(BenchRecord(instance=name, tester="bb_test", k=0, error=str(e)))
            continue
        if inst.k > max_k:
            continue
        record = _timed(name, "bb_test", inst.k, lambda: bb_test(inst), repeats)
        if record.explored is not None and record.explored > 2 ** inst.k:
            record.error = f"explored {record.explored} leaves, bound {2 ** inst.k}"
        records.append(record)
        records.append(_timed(name, "narrow_test", inst.k, lambda: narrow_test(inst, seed=seed), repeats))
        records.append(_timed(name, "enum_test", inst.k, lambda: enum_test(inst), repeats))

    growth = fit_growth(records)
    logger.info(f"bench over {directory}: {len(records)} records, growth {growth}")
    return BenchReport(records=records, growth=growth,
                       config={"p": cfg.p, "max_k": max_k, "repeats": repeats, "seed": seed})


def cmd_bench(cfg: RunConfig, storage: StorageService) -> Optional[TestReport]:
    """Generate a corpus (--generate N) or benchmark one; the table goes to stdout or -o"""
    directory = cfg.inputs[0]
    if cfg.generate:
        written = write_corpus(directory, cfg.generate, seed=resolve_seed(cfg.seed), storage=storage)
        sys.stderr.write(f"wrote {sum(len(v) for v in written.values())} files to {directory}\n")
        return None
    report = run_bench(directory, cfg, storage)
    payload = report.to_json()
    if cfg.output:
        storage.save_report(report, cfg.output)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return None
