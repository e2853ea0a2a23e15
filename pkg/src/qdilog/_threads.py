"""Optional thread-pool helper, capped by the QDILOG_THREADS variable.

Results are always reduced in input order, so any thread count produces
identical output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("QDILOG_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        return 1
    return max(count, 1)


def map_ordered(fn, items):
    """Like map(fn, items) but fanned out over the configured workers."""
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
