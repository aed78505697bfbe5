"""Seeded, splittable uniform random streams.

Every stochastic routine in this package draws its randomness from a
:class:`UniformStream`, a thin buffered wrapper around numpy's Philox
counter-based generator.  Philox is keyed with the pair ``(seed, index)``,
so substreams are cheap, statistically independent, and fully determined
by their key: the same ``(seed, index)`` always replays the same sequence,
regardless of platform or of how many other streams exist.  That is what
makes parallel sampling reproducible (one substream per sample) and what
lets tests replay recorded draws byte for byte.

Values are 53-bit-mantissa doubles on [0, 1).
"""

from __future__ import annotations

import math

import numpy as np

_LN2 = math.log(2.0)
_MASK64 = (1 << 64) - 1
_BLOCK_MIN = 64
_BLOCK_MAX = 4096


class UniformStream:
    """A single consumer-owned stream of uniforms on [0, 1).

    Not safe to share between concurrent consumers; spawn one substream
    per worker (or per sample) instead.
    """

    __slots__ = ("seed", "index", "position", "_gen", "_buf", "_i", "_block", "_state")

    def __init__(self, seed: int, index: int = 0):
        if index < 0:
            raise ValueError(f"substream index must be >= 0, got {index}")
        self.seed = int(seed) & _MASK64
        self.index = int(index)
        self.position = 0
        self._gen = np.random.Generator(
            np.random.Philox(key=(self.seed, self.index))
        )
        self._buf: list[float] = []
        self._i = 0
        # Buffered blocks grow with consumption so short-lived streams
        # (one per sample) never pay for a large unconsumed block.
        self._block = _BLOCK_MIN
        self._state = self._gen.bit_generator.state  # reusable template

    def next_uniform(self) -> float:
        """Return the next uniform on [0, 1) and advance the position."""
        i = self._i
        buf = self._buf
        if i >= len(buf):
            buf = self._gen.random(self._block).tolist()
            if self._block < _BLOCK_MAX:
                self._block *= 4
            self._buf = buf
            i = 0
        self._i = i + 1
        self.position += 1
        return buf[i]

    def uniforms(self, n: int) -> np.ndarray:
        """Return the next ``n`` uniforms as an array (same sequence as
        repeated :meth:`next_uniform` calls)."""
        out = np.empty(n)
        take = min(n, len(self._buf) - self._i)
        if take > 0:
            out[:take] = self._buf[self._i : self._i + take]
            self._i += take
        if take < n:
            out[take:] = self._gen.random(n - take)
            self._buf = []
            self._i = 0
        self.position += n
        return out

    def restart(self, index: int | None = None) -> "UniformStream":
        """Rewind to the start of this stream (optionally re-pointing it at
        another substream index).  Cheaper than constructing a fresh stream;
        the replayed sequence is identical to a freshly built one."""
        if index is not None:
            if index < 0:
                raise ValueError(f"substream index must be >= 0, got {index}")
            self.index = int(index)
        state = self._state
        state["state"]["counter"][:] = 0
        state["state"]["key"][0] = self.seed
        state["state"]["key"][1] = self.index
        state["buffer_pos"] = 4  # mark the Philox output buffer drained
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._gen.bit_generator.state = state
        self._buf = []
        self._i = 0
        self._block = _BLOCK_MIN
        self.position = 0
        return self

    def __repr__(self):
        return (
            f"UniformStream(seed={self.seed}, index={self.index}, "
            f"position={self.position})"
        )


class StreamFactory:
    """Spawns independent substreams of a common root seed."""

    __slots__ = ("root_seed",)

    def __init__(self, root_seed: int):
        self.root_seed = int(root_seed) & _MASK64

    def substream(self, index: int) -> UniformStream:
        """Deterministic, independent substream for the given index."""
        return UniformStream(self.root_seed, index)


def spawn_substream(factory: StreamFactory, index: int) -> UniformStream:
    """Functional alias for :meth:`StreamFactory.substream`."""
    return factory.substream(index)


def geometric_half(stream) -> int:
    """Draw G >= 1 with P(G = k) = 2^-k.

    Uses G = ceil(-ln(U) / ln 2).  A uniform equal to 0 (probability 2^-53
    per draw) is rejected and redrawn so the log is always defined and the
    geometric law is exact.
    """
    u = stream.next_uniform()
    while u == 0.0:
        u = stream.next_uniform()
    return math.ceil(-math.log(u) / _LN2)
