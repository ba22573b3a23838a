"""Optional process-level parallelism for embarrassingly parallel checks.

The worker count comes from the DUNKLCMS_WORKERS environment variable
(default 1, meaning plain serial evaluation).  Results always come back in
input order, so reports stay deterministic regardless of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DUNKLCMS_WORKERS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Map preserving order; distributes across processes when configured."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * n))
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
