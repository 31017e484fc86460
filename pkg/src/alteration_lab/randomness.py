"""Reproducible randomness streams and binomial random (hyper)graph samplers.

A single 64-bit master seed fans out into independent substreams addressed
by a (purpose tag, trial index) pair.  Substream derivation is splittable,
not sequential, so results never depend on scheduling order: the same
(seed, tag, index) triple produces the identical value sequence on every
platform and in every run.
"""

from __future__ import annotations

import hashlib
import struct
import warnings
from itertools import combinations

import numpy as np

from .graphs import Graph, UniformHypergraph

_MASK64 = (1 << 64) - 1


def _tag_words(tag: str) -> tuple[int, int]:
    digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
    lo, hi = struct.unpack("<II", digest)
    return lo, hi


class RandomSource:
    """Master seed plus substream derivation for deterministic experiments.

    ``stream(tag, index)`` returns a fresh numpy Generator whose state is a
    pure function of (seed, tag, index).  Distinct (tag, index) pairs give
    statistically independent streams; a single stream is single-consumer.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64

    def stream(self, tag: str, index: int = 0) -> np.random.Generator:
        if index < 0:
            raise ValueError(f"stream index must be nonnegative, got {index}")
        lo, hi = _tag_words(tag)
        spawn = (lo, hi, index & 0xFFFFFFFF, (index >> 32) & 0xFFFFFFFF)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=spawn)
        return np.random.Generator(np.random.PCG64(seq))

    def key_bytes(self, tag: str, index: int = 0) -> bytes:
        """16-byte key derived from (seed, tag, index), for keyed-hash tables."""
        material = struct.pack("<Qq", self.seed, index) + tag.encode("utf-8")
        return hashlib.blake2b(material, digest_size=16).digest()

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Binomial random graph: each of the C(n,2) pairs is an edge with probability p."""
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    pairs = list(combinations(range(n), 2))
    if p == 0.0:
        return Graph(n)
    if p == 1.0:
        return Graph(n, pairs)
    hits = rng.random(len(pairs)) < p
    return Graph(n, [pairs[i] for i in np.flatnonzero(hits)])


def sample_uniform_hypergraph(
    n: int, r: int, p: float, rng: np.random.Generator
) -> UniformHypergraph:
    """Binomial r-uniform hypergraph: each r-subset appears with probability p."""
    if r < 2:
        raise ValueError(f"uniformity must be at least 2, got {r}")
    if n < r:
        raise ValueError(f"host too small: need n >= r, got n={n}, r={r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    tuples = list(combinations(range(n), r))
    if p == 0.0:
        return UniformHypergraph(n, r)
    if p == 1.0:
        return UniformHypergraph(n, r, tuples)
    hits = rng.random(len(tuples)) < p
    return UniformHypergraph(n, r, [tuples[i] for i in np.flatnonzero(hits)])


class EdgeLabelTable:
    """Uniform [0,1) labels on vertex pairs, fixed once drawn.

    Labels are materialized lazily from a keyed hash of the canonical pair,
    so querying order never matters and no quadratic preallocation happens.
    Thresholding at p yields a graph distributed as a G(n,p) sample, and
    threshold views are nested across p (monotone coupling).
    """

    def __init__(self, n: int, key: bytes):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        self._key = key
        self._cache: dict[tuple[int, int], float] = {}

    def label(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("labels exist only for distinct vertex pairs")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"pair {(u, v)} out of range for n={self.n}")
        pair = (u, v) if u < v else (v, u)
        got = self._cache.get(pair)
        if got is None:
            digest = hashlib.blake2b(
                struct.pack("<QQ", pair[0], pair[1]), key=self._key, digest_size=8
            ).digest()
            got = int.from_bytes(digest, "little") / 2**64
            self._cache[pair] = got
        return got

    def threshold_graph(self, p: float) -> Graph:
        """Graph of all pairs with label below p (materializes every pair)."""
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"threshold must lie in [0, 1], got {p}")
        edges = [
            (u, v) for u, v in combinations(range(self.n), 2) if self.label(u, v) < p
        ]
        return Graph(self.n, edges)


def derive_labels(n: int, rng: RandomSource, index: int = 0) -> EdgeLabelTable:
    """Deterministic edge-label table for a fixed n-vertex ground set."""
    return EdgeLabelTable(n, rng.key_bytes("edge-labels", index))


def clamp_probability(p: float, context: str = "") -> tuple[float, bool]:
    """Clamp a derived probability into [0, 1], warning when it overflows."""
    if p > 1.0:
        warnings.warn(
            f"derived edge probability {p:.6g} exceeds 1, clamping to 1"
            + (f" ({context})" if context else ""),
            stacklevel=2,
        )
        return 1.0, True
    if p < 0.0:
        raise ValueError(f"derived edge probability is negative: {p}")
    return p, False
