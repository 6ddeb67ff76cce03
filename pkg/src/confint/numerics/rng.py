"""Seedable, splittable random streams."""

from __future__ import annotations

import numpy as np

_MAX_U64 = 2**64 - 1


class RngStream:
    """Deterministic random stream keyed by (seed, stream_id).

    Each stream is a PCG64 generator seeded from a SeedSequence whose spawn
    key is the stream id, so distinct ids give independent streams.
    A stream is owned by one task and never shared.
    """

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        if not 0 <= seed <= _MAX_U64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if not 0 <= stream_id <= _MAX_U64:
            raise ValueError(f"stream_id must be a 64-bit unsigned integer, got {stream_id}")
        self.seed = seed
        self.stream_id = stream_id
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream_id,)))
        )

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"

    def uniform(self) -> float:
        """One draw from [0, 1)."""
        return float(self._gen.random())

    def uniforms(self, size: int | tuple[int, ...]) -> np.ndarray:
        return self._gen.random(size)

    def choose(self, n: int) -> int:
        """Uniform integer in [0, n), free of modulo bias."""
        if n < 1:
            raise ValueError(f"choose needs n >= 1, got {n}")
        return int(self._gen.integers(0, n))

    def choices(self, n: int, size: int | tuple[int, ...]) -> np.ndarray:
        """Array of uniform integers in [0, n)."""
        if n < 1:
            raise ValueError(f"choose needs n >= 1, got {n}")
        return self._gen.integers(0, n, size=size)


def rng_uniform(stream: RngStream) -> float:
    return stream.uniform()


def rng_choose(stream: RngStream, n: int) -> int:
    return stream.choose(n)
