"""Deterministic data-parallel map and a small wall-clock benchmark harness.

The map contract: for a pure per-index kernel, the output is bit-identical
to a serial loop for every thread count and chunk size.  Chunks are static
contiguous index ranges; each task writes its own output slice, so no
merge order can affect the result.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ParallelConfig:
    """threads and chunk may be a positive int or 'auto'."""

    threads: int | str = "auto"
    chunk: int | str = "auto"

    def __post_init__(self):
        for name in ("threads", "chunk"):
            v = getattr(self, name)
            if v != "auto" and (not isinstance(v, int) or v < 1):
                raise ValueError(f"{name} must be a positive integer or 'auto', got {v!r}")

    def resolve_threads(self) -> int:
        if self.threads == "auto":
            return os.cpu_count() or 1
        return self.threads

    def resolve_chunk(self, n: int, threads: int) -> int:
        if self.chunk == "auto":
            # a few chunks per thread smooths load without hurting determinism
            return max(1, -(-n // (threads * 4)))
        return self.chunk


@dataclass(frozen=True)
class BenchReport:
    label: str
    runs: int
    mean_seconds: float
    min_seconds: float
    max_seconds: float

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not (0 < self.min_seconds <= self.mean_seconds <= self.max_seconds):
            raise ValueError("timings must satisfy 0 < min <= mean <= max")

    def csv_row(self) -> str:
        return (
            f"{self.label},{self.runs},{self.mean_seconds!r},"
            f"{self.min_seconds!r},{self.max_seconds!r}"
        )


def parallel_map(
    n: int,
    kernel,
    config: ParallelConfig | None = None,
    *,
    vectorized: bool = False,
    width: int = 1,
    dtype=np.float64,
) -> np.ndarray:
    """Evaluate a pure per-index kernel over indices 0..n-1.

    kernel(i) -> value, or with vectorized=True kernel(index_array) ->
    (len, ) or (len, width) array.  If any task fails, the error raised
    is the one with the lowest failing index.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    config = config or ParallelConfig()
    out = np.empty((n, width) if width > 1 else n, dtype=dtype)
    if n == 0:
        return out

    def run_range(start: int, stop: int):
        if vectorized:
            out[start:stop] = kernel(np.arange(start, stop, dtype=np.intp))
        else:
            for i in range(start, stop):
                out[i] = kernel(i)

    threads = config.resolve_threads()
    chunk = config.resolve_chunk(n, threads)
    ranges = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]

    if threads == 1 or len(ranges) == 1:
        for s, e in ranges:
            run_range(s, e)
        return out

    def task(bounds):
        s, e = bounds
        try:
            run_range(s, e)
        except Exception as exc:  # re-raised in index order below
            return s, exc
        return None

    with ThreadPoolExecutor(max_workers=threads) as pool:
        failures = [f for f in pool.map(task, ranges) if f is not None]
    if failures:
        failures.sort(key=lambda f: f[0])
        raise failures[0][1]
    return out


def bench(label: str, runs: int, thunk) -> BenchReport:
    """Time a repeatable computation: one untimed warm-up, then `runs` runs."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    thunk()
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        thunk()
        times.append(time.perf_counter() - t0)
    return BenchReport(label, runs, sum(times) / runs, min(times), max(times))
