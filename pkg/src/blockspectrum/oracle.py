"""Exhaustive enumeration of gamma-structures for small n.

This is the ground truth every series and distribution is checked against.
It visits all partial matchings with arcs of length >= lambda and filters on
stack length and component genus, sharing one scan between all
``(gamma, r)`` with the same ``(n, lambda)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from ._kernels import TYPE_NAMES, walk
from .diagram import Diagram
from .params import StructureParams

DEFAULT_BOUND = 14


class EnumerationBoundError(ValueError):
    """Requested n is beyond exhaustive reach."""


@dataclass(frozen=True)
class Scan:
    n: int
    lam: int
    partners: np.ndarray
    min_stack: np.ndarray
    max_genus: np.ndarray
    blen: np.ndarray
    btype: np.ndarray
    nblocks: np.ndarray

    def mask(self, p: StructureParams) -> np.ndarray:
        return (self.min_stack >= p.r) & (self.max_genus <= p.gamma)

    def diagram(self, k: int) -> Diagram:
        row = self.partners[k]
        return Diagram(self.n, frozenset((i + 1, int(j) + 1) for i, j in enumerate(row) if j > i))


@lru_cache(maxsize=32)
def scan(n: int, lam: int) -> Scan:
    """Analyse every matching on ``n`` vertices with arcs of length >= ``lam``."""
    width = max(n, 1)
    dummy2 = np.zeros((1, width), np.int8)
    dummy1 = np.zeros(1, np.int64)
    count = walk(n, lam, False, dummy2, dummy1, dummy1, dummy2, dummy2, dummy1)
    partners = np.full((count, width), -1, np.int8)
    min_stack = np.zeros(count, np.int64)
    max_genus = np.zeros(count, np.int64)
    blen = np.zeros((count, width), np.int8)
    btype = np.zeros((count, width), np.int8)
    nblocks = np.zeros(count, np.int64)
    walk(n, lam, True, partners, min_stack, max_genus, blen, btype, nblocks)
    return Scan(n, lam, partners, min_stack, max_genus, blen, btype, nblocks)


@dataclass
class EnumerationStats:
    """Counts over all structures of one length.

    ``longest[m]``: structures whose longest block has length m.
    ``type_counts[k, t]``: blocks of length k and type code t (see ``TYPE_NAMES``),
    summed over all structures.
    ``per_b[k, b]``: structures with exactly b blocks of length k.
    ``typed_per_b[t][k, b]``: the same restricted to blocks of type t.
    ``sequences``: block sequences ``((length, type), ...)`` with multiplicity.
    """

    params: StructureParams
    n: int
    count: int
    longest: np.ndarray
    type_counts: np.ndarray
    per_b: np.ndarray
    typed_per_b: dict = field(default_factory=dict)
    sequences: Optional[Counter] = None

    def merge(self, other: "EnumerationStats") -> "EnumerationStats":
        """Combine disjoint partial enumerations of the same ``(params, n)``."""
        if (self.params, self.n) != (other.params, other.n):
            raise ValueError("can only merge statistics of the same params and n")
        seqs = None
        if self.sequences is not None and other.sequences is not None:
            seqs = self.sequences + other.sequences
        return EnumerationStats(
            self.params,
            self.n,
            self.count + other.count,
            self.longest + other.longest,
            self.type_counts + other.type_counts,
            self.per_b + other.per_b,
            {t: self.typed_per_b[t] + other.typed_per_b[t] for t in self.typed_per_b},
            seqs,
        )

    def longest_pmf(self) -> dict:
        from fractions import Fraction

        return {m: Fraction(int(c), self.count) for m, c in enumerate(self.longest) if c}


def _stats_from_rows(p, n, blen, btype, sequences: bool) -> EnumerationStats:
    count = blen.shape[0]
    size = n + 1
    longest = np.bincount(blen.max(axis=1) if n else np.zeros(count, np.int64), minlength=size)
    type_counts = np.zeros((size, len(TYPE_NAMES)), np.int64)
    used = blen > 0
    np.add.at(type_counts, (blen[used].astype(np.int64), btype[used].astype(np.int64)), 1)
    per_b = np.zeros((size, size), np.int64)
    typed = {t: np.zeros((size, size), np.int64) for t in range(len(TYPE_NAMES))}
    for k in range(1, size):
        hits = blen == k
        per_b[k] = np.bincount(hits.sum(axis=1), minlength=size)[:size]
        for t in typed:
            typed[t][k] = np.bincount((hits & (btype == t)).sum(axis=1), minlength=size)[:size]
    seqs = None
    if sequences:
        seqs = Counter()
        for lens, types in zip(blen.tolist(), btype.tolist()):
            seqs[tuple((ln, TYPE_NAMES[t]) for ln, t in zip(lens, types) if ln)] += 1
    return EnumerationStats(p, n, count, longest, type_counts, per_b, typed, seqs)


def enumerate_structures(
    n: int, p: StructureParams, bound: int = DEFAULT_BOUND, sequences: bool = False
) -> EnumerationStats:
    """Count and profile all r-canonical gamma-structures on ``n`` vertices."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > bound:
        raise EnumerationBoundError(
            f"n={n} exceeds the enumeration bound {bound}; partial matchings grow super-exponentially"
        )
    s = scan(n, p.lam)
    keep = s.mask(p)
    return _stats_from_rows(p, n, s.blen[keep], s.btype[keep], sequences)


def oracle_counts(p: StructureParams, nmax: int, bound: int = DEFAULT_BOUND) -> list[int]:
    return [enumerate_structures(n, p, bound).count for n in range(nmax + 1)]


def iter_structures(n: int, p: StructureParams, bound: int = DEFAULT_BOUND):
    """Yield every structure as a :class:`Diagram` (slow; for tests and small n)."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds the enumeration bound {bound}")
    s = scan(n, p.lam)
    for k in np.flatnonzero(s.mask(p)):
        yield s.diagram(int(k))
