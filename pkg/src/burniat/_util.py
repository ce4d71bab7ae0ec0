"""Process-level parallelism, capped by the BURNIAT_THREADS variable."""

from __future__ import annotations

import os
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    raw = os.environ.get("BURNIAT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int | None = None) -> list[R]:
    """Order-preserving map, forked across processes when threads > 1.

    Work items and results must be picklable; with one thread (the
    default) this is a plain map, so results are bit-identical either way.
    """
    if threads is None:
        threads = thread_cap()
    items = list(items)
    if threads <= 1 or len(items) < 4:
        return [fn(item) for item in items]
    import multiprocessing

    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(threads, len(items))) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (threads * 4)))
