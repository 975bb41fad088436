"""Deterministic work partitioning.

Work is split into fixed chunks up front and merged in chunk order, so every
result is identical whatever the worker count; workers only change how chunks
are executed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .errors import UsageError


def split_chunks(items, n_chunks: int) -> list[list]:
    """Round-robin split preserving a deterministic chunk layout."""
    items = list(items)
    n_chunks = max(1, min(n_chunks, len(items) or 1))
    chunks = [[] for _ in range(n_chunks)]
    for i, item in enumerate(items):
        chunks[i % n_chunks].append(item)
    return chunks


def parallel_map(fn, chunks, workers: int = 1) -> list:
    """Apply fn to each chunk, preserving chunk order in the result list."""
    if workers < 1:
        raise UsageError(f"workers must be >= 1, got {workers}")
    if workers == 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))
