"""Chunking utilities for batched replications."""

from __future__ import annotations


def chunk_ranges(total: int, chunk_size: int = 1000) -> list[tuple[int, int]]:
    """Split range(total) into consecutive [start, stop) pieces.

    Args:
        total: Number of items to cover.
        chunk_size: Maximum items per chunk.

    Returns:
        A list of (start, stop) pairs, each spanning at most chunk_size items.
    """
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]
