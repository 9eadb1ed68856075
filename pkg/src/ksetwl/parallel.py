"""A small order-preserving worker pool.

Results always come back in submission order and every nondeterministic
reduction is forbidden by construction, so pipelines produce identical
output for any thread count.  Mutating shared state (notably the label
interner) stays outside pooled phases; only pure per-item computation is
submitted here.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


class DeterministicPool:
    """Order-preserving map over a fixed number of worker threads."""

    def __init__(self, threads: int = 1):
        if threads < 1:
            raise ValueError("threads must be at least 1")
        self.threads = int(threads)
        self._executor = (ThreadPoolExecutor(max_workers=self.threads)
                          if self.threads > 1 else None)

    def map_ordered(self, fn, items) -> list:
        if self._executor is None:
            return [fn(item) for item in items]
        return list(self._executor.map(fn, items))

    def close(self):
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
