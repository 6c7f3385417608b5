"""Deterministic work distribution.

Tasks are indexed and results are merged in index order, so output is
identical for any worker count.  Chunk boundaries must never depend on the
pool size; callers pass task lists that are fixed by the input alone.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "PRSTAB_THREADS"


def resolve_threads(threads: int | None) -> int:
    """CLI-facing thread count: explicit value, else env var, else cores."""
    if threads is not None:
        n = int(threads)
    else:
        env = os.environ.get(ENV_THREADS)
        n = int(env) if env else (os.cpu_count() or 1)
    if n < 1:
        raise ValueError(f"thread count must be >= 1, got {n}")
    return n


def run_indexed(fn: Callable[[T], R], tasks: Sequence[T], threads: int = 1) -> list[R]:
    """Apply `fn` to each task, returning results in task order."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    """Split [0, total) into contiguous [lo, hi) ranges of fixed width."""
    if chunk < 1:
        raise ValueError("chunk must be >= 1")
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
