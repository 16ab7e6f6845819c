"""Thread fan-out for verification sweeps.

Work is split into contiguous chunks; results are merged back in input
order so reports do not depend on the worker count.
"""

from __future__ import annotations

import concurrent.futures
import logging
import os
from typing import Callable, Optional, Sequence, TypeVar

from utils.constants import THREADS_ENV

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count(default: Optional[int] = None) -> int:
    """Threads to use: HWPL_THREADS when valid, else the processor count."""
    fallback = default or os.cpu_count() or 1
    raw = os.getenv(THREADS_ENV)
    if raw is None or raw == "":
        return fallback
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r: not an integer", THREADS_ENV, raw)
        return fallback
    if value < 1:
        logger.warning("ignoring %s=%r: must be at least 1", THREADS_ENV, raw)
        return fallback
    return value


def _run_chunk(fn: Callable[[T], R], chunk: Sequence[T]) -> list[R]:
    return [fn(item) for item in chunk]


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> list[R]:
    """[fn(x) for x in items], computed on a thread pool."""
    items = list(items)
    n = len(items)
    w = min(workers or worker_count(), n)
    if w <= 1:
        return _run_chunk(fn, items)
    results: list[Optional[list[R]]] = [None] * w
    with concurrent.futures.ThreadPoolExecutor(max_workers=w) as executor:
        tasks = {
            executor.submit(_run_chunk, fn, items[i * n // w : (i + 1) * n // w]): i
            for i in range(w)
        }
        for task in concurrent.futures.as_completed(tasks):
            results[tasks[task]] = task.result()
    logger.debug("merged %d items from %d workers", n, w)
    return [value for chunk in results for value in chunk]
