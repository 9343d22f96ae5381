"""Integer partitions, set-partitions and non-crossing partitions.

Partitions are stored as :class:`Partition`, an immutable tuple subclass,
so they hash and compare structurally and can be used directly as memo keys.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> Partition([1, 3, 2])
    Partition([3,2,1])
    >>> Partition([]).size()
    0
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return multiplicity(self, i)

    def __repr__(self) -> str:
        return f"Partition({self.text()})"

    def text(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    __str__ = text

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the canonical text form ``"[3,2]"`` (``"[]"`` is the empty partition)."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"not a partition literal: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        return cls(int(x) for x in body.split(","))


EMPTY = Partition()


def _partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_desc(n, n))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order, e.g. ``(3), (2,1), (1,1,1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions_cached(n))


def partitions_up_to(n: int) -> list[Partition]:
    out: list[Partition] = []
    for k in range(n + 1):
        out.extend(partitions_of(k))
    return out


def multiplicity(lam: Sequence[int], i: int) -> int:
    if i < 1:
        raise ValueError("i must be positive")
    return sum(1 for p in lam if p == i)


def z_factor(pi: Sequence[int]) -> int:
    """``prod_i i^{m_i} m_i!``, the order of the centralizer of a permutation of cycle type pi."""
    z = 1
    for part, m in Counter(pi).items():
        z *= part**m * factorial(m)
    return z


def concat(*parts: Sequence[int]) -> Partition:
    """Concatenation of partitions, re-sorted to canonical order."""
    out: list[int] = []
    for p in parts:
        out.extend(p)
    return Partition(out)


def pad_with_ones(pi: Sequence[int], n: int) -> Partition:
    """``pi ∪ 1^(n-|pi|)``."""
    k = n - sum(pi)
    if k < 0:
        raise ValueError("cannot pad to a smaller size")
    return Partition(list(pi) + [1] * k)


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True if ``lam >= mu`` in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


# --- set-partitions -------------------------------------------------------

SetPartition = tuple  # tuple of frozensets, ordered by minimum element


def _set_partitions_of(items: tuple) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions_of(rest):
        yield [[first]] + smaller
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]


def _canonical(blocks: Iterable[Iterable]) -> SetPartition:
    return tuple(sorted((frozenset(b) for b in blocks), key=min))


def set_partitions_of(items: Iterable) -> list[SetPartition]:
    """All set-partitions of a finite collection of distinct, sortable items."""
    items = tuple(sorted(items))
    return [_canonical(blocks) for blocks in _set_partitions_of(items)]


@lru_cache(maxsize=None)
def _set_partitions_n(n: int) -> tuple[SetPartition, ...]:
    return tuple(set_partitions_of(range(1, n + 1)))


def set_partitions(n: int) -> list[SetPartition]:
    """All set-partitions of ``{1..n}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_set_partitions_n(n))


def is_set_partition(blocks: Iterable[Iterable[int]], n: int) -> bool:
    seen: set[int] = set()
    total = 0
    for b in blocks:
        b = set(b)
        if not b:
            return False
        total += len(b)
        seen |= b
    return total == len(seen) and seen == set(range(1, n + 1))


def is_noncrossing(blocks: Sequence[Iterable[int]]) -> bool:
    label = {}
    for k, b in enumerate(blocks):
        for x in b:
            label[x] = k
    # a < b < c < d with a, c in one block and b, d in another
    pts = sorted(label)
    for i, a in enumerate(pts):
        for j in range(i + 1, len(pts)):
            b = pts[j]
            if label[b] == label[a]:
                continue
            for k in range(j + 1, len(pts)):
                c = pts[k]
                if label[c] != label[a]:
                    continue
                for d in pts[k + 1 :]:
                    if label[d] == label[b]:
                        return False
    return True


@lru_cache(maxsize=None)
def _noncrossing_n(n: int) -> tuple[SetPartition, ...]:
    return tuple(p for p in _set_partitions_n(n) if is_noncrossing(p))


def noncrossing_partitions(n: int) -> list[SetPartition]:
    """All non-crossing set-partitions of ``{1..n}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_noncrossing_n(n))


def noncrossing_type_count(block_sizes: Sequence[int]) -> int:
    """Number of non-crossing partitions of ``[n]`` with the given multiset of block sizes.

    Kreweras: ``n! / ((n - k + 1)! * prod m_i!)`` with ``k`` blocks.
    """
    n = sum(block_sizes)
    k = len(block_sizes)
    denom = factorial(n - k + 1)
    for m in Counter(block_sizes).values():
        denom *= factorial(m)
    return factorial(n) // denom
