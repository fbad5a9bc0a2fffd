"""Deterministic parallel map honoring a thread cap."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

THREADS_ENV = "IGUSA_LAURENT_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, threads: int | None = None) -> list:
    """Map fn over items, results in input order regardless of worker scheduling."""
    items = list(items)
    threads = default_threads() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
