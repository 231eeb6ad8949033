"""Order-preserving process-pool map used by the oracles."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def parallel_map(fn, items, workers: int = 1):
    """``list(map(fn, items))``, optionally spread over a process pool.

    Results come back in input order, so combining them is independent of
    the worker count and of scheduling.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def chunked(seq, parts: int):
    """Split ``seq`` into at most ``parts`` contiguous, nonempty slices."""
    seq = list(seq)
    parts = max(1, min(parts, len(seq)))
    size, extra = divmod(len(seq), parts)
    out, start = [], 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        out.append(seq[start:end])
        start = end
    return out
