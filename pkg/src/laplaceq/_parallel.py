import os
from concurrent.futures import ThreadPoolExecutor


def max_threads() -> int:
    """Thread cap from ``LAPLACEQ_THREADS`` (default 1, i.e. sequential)."""
    raw = os.environ.get("LAPLACEQ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map; runs on a thread pool when more than one thread is allowed."""
    items = list(items)
    workers = min(max_threads(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
