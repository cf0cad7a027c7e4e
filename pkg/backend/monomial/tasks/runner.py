"""
Parallel work runner for tester loops (trials, colorings, repetitions).
"""
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from ..utils.logger import tester_logger as logger

T = TypeVar("T")
R = TypeVar("R")

_SKIPPED = object()


def run_parallel(fn: Callable[[T], R], items: Sequence[T], threads: int = 1,
                 stop: Optional[Callable[[R], bool]] = None) -> List[R]:
    """
    Apply fn to items and return results in submission order.

    When stop is given, the returned list ends at the first item (in
    submission order) whose result satisfies it. Workers skip items once some
    result has requested a stop; skipped items before the first stopping
    item are recomputed, so the output equals a sequential run.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        results: List[R] = []
        for item in items:
            result = fn(item)
            results.append(result)
            if stop is not None and stop(result):
                break
        return results

    halt = threading.Event()

    def worker(item: T):
        if halt.is_set():
            return _SKIPPED
        result = fn(item)
        if stop is not None and stop(result):
            halt.set()
        return result

    with ThreadPoolExecutor(max_workers=threads) as executor:
        raw = list(executor.map(worker, items))

    results = []
    for item, result in zip(items, raw):
        if result is _SKIPPED:
            result = fn(item)
        results.append(result)
        if stop is not None and stop(result):
            break
    logger.debug(f"ran {len(results)} of {len(items)} work items on {threads} threads")
    return results
