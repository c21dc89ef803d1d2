"""Exact uniform sampling of block sequences (recursive method over G = 1/(1 - F)).

Only the sequence of block lengths and types is drawn.  Every probability
is a ratio of exact counts, realised with ``randrange`` on big integers, so
the induced law equals the one of a uniformly random structure.
"""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterator

from .params import StructureParams
from .system import BLOCK_TYPES, block_type_series, other_block_series, solve_system

TYPE_TAGS = ("trivial",) + BLOCK_TYPES + ("other",)


@dataclass(frozen=True)
class BlockSequenceSample:
    blocks: tuple  # ((length, type tag), ...)
    total: int

    def __post_init__(self):
        if sum(k for k, _ in self.blocks) != self.total or any(k < 1 for k, _ in self.blocks):
            raise ValueError("block lengths must be >= 1 and sum to the total")

    @property
    def lengths(self) -> list[int]:
        return [k for k, _ in self.blocks]

    def longest(self) -> int:
        return max(self.lengths, default=0)

    def count(self, k: int, block_type: str | None = None) -> int:
        return sum(1 for ln, t in self.blocks if ln == k and (block_type is None or t == block_type))

    def format(self) -> str:
        return ";".join(f"{k}:{t}" for k, t in self.blocks)


class BlockSampler:
    """Sampler for lengths up to ``nmax`` with its own generator.

    One instance holds one random stream and must not be shared between
    threads; build one per worker instead.
    """

    def __init__(self, p: StructureParams, nmax: int, seed: int = 0):
        if nmax < 0:
            raise ValueError("nmax must be >= 0")
        self.params = p
        self.nmax = nmax
        self.rng = random.Random(seed)
        b = solve_system(p, nmax + 1)
        self._g = list(b.G)
        self._f = list(b.F)
        self._cum: dict[int, list[int]] = {}
        order = nmax + 1
        per_type = {t: block_type_series(p, t, order) for t in BLOCK_TYPES}
        per_type["other"] = other_block_series(p, order)
        self._type_cum = []
        for k in range(order):
            weights = [1 if k == 1 else 0] + [per_type[t][k] for t in TYPE_TAGS[1:]]
            cum = list(accumulate(weights))
            if cum[-1] != self._f[k]:
                raise RuntimeError(f"type counts at k={k} sum to {cum[-1]}, expected f(k)={self._f[k]}")
            self._type_cum.append(cum)

    def _length_table(self, m: int) -> list[int]:
        cum = self._cum.get(m)
        if cum is None:
            cum = list(accumulate(self._f[k] * self._g[m - k] for k in range(1, m + 1)))
            self._cum[m] = cum
        return cum

    def sample(self, n: int) -> BlockSequenceSample:
        if not 0 <= n <= self.nmax:
            raise ValueError(f"n={n} outside 0..{self.nmax}; rebuild the sampler with a larger nmax")
        blocks = []
        m = n
        while m:
            cum = self._length_table(m)
            k = bisect.bisect_right(cum, self.rng.randrange(cum[-1])) + 1
            tcum = self._type_cum[k]
            tag = TYPE_TAGS[bisect.bisect_right(tcum, self.rng.randrange(tcum[-1]))]
            blocks.append((k, tag))
            m -= k
        return BlockSequenceSample(tuple(blocks), n)

    def stream(self, n: int, count: int) -> Iterator[BlockSequenceSample]:
        for _ in range(count):
            yield self.sample(n)

    def sequence_distribution(self, n: int) -> dict:
        """Exact law of the block sequence this sampler draws at length ``n``.

        Walks every branch of :meth:`sample` with its probability; only
        feasible for small ``n``.
        """
        out: dict = {}

        def visit(m, prefix, w):
            if m == 0:
                key = tuple(prefix)
                out[key] = out.get(key, 0) + w
                return
            cum = self._length_table(m)
            prev = 0
            for k, c in enumerate(cum, start=1):
                wk, prev = c - prev, c
                if not wk:
                    continue
                tcum = self._type_cum[k]
                tprev = 0
                for tag, tc in zip(TYPE_TAGS, tcum):
                    wt, tprev = tc - tprev, tc
                    if wt:
                        visit(m - k, prefix + [(k, tag)], w * Fraction(wk, cum[-1]) * Fraction(wt, tcum[-1]))

        visit(n, [], Fraction(1))
        return out


def sample_block_sequence(p: StructureParams, n: int, seed: int) -> BlockSequenceSample:
    """One block sequence of a uniform random structure of length ``n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return BlockSampler(p, n, seed).sample(n)
