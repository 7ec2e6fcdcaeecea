"""Worker-count configuration for the bulk array kernels.

The scan engine may split its work into contiguous index blocks handled by a
thread pool.  All block combination steps use exact operations (integer sums,
float max/min selection), so results are byte-identical for every worker
count; the knob only affects how the work is scheduled.
"""

import os
import threading
from concurrent.futures import ThreadPoolExecutor

# Arrays shorter than this are always scanned as a single block; threading
# overhead dominates below it.
BLOCK_THRESHOLD = 2048

_lock = threading.Lock()
_workers = max(1, os.cpu_count() or 1)
_pools: dict[int, ThreadPoolExecutor] = {}


def get_workers() -> int:
    return _workers


def set_workers(count: int) -> None:
    global _workers
    if count < 1:
        raise ValueError(f"worker count must be >= 1, got {count}")
    _workers = int(count)


def get_pool(workers: int) -> ThreadPoolExecutor:
    """Shared executor per worker count; created lazily, reused forever."""
    with _lock:
        pool = _pools.get(workers)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=workers)
            _pools[workers] = pool
        return pool
