"""Partitions, Stirling numbers, covering numbers and the partition lattice.

Integer partitions are plain tuples of weakly decreasing positive ints.
Set partitions get their own small class because the lattice computation
needs coarsening tests and joins.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator, Optional, Sequence

from .qscalar import QPoly

__all__ = [
    "Partition",
    "is_partition",
    "stirling1",
    "stirling2",
    "covering",
    "covering_brute_force",
    "binom_poly",
    "SetPartition",
    "set_partitions",
    "n_RQ",
    "lattice_sum",
    "partitions",
    "compositions",
    "enumerate_kind",
    "aut_order",
]

Partition = tuple


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        a >= b for a, b in zip(parts, parts[1:]))


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind, s(n, k)."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind: set partitions of n into k blocks."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def covering(n: int, sizes: Sequence[int]) -> int:
    """Number of indexed covers of {1..n} by subsets of the given sizes.

    Inclusion-exclusion over the j points left uncovered:
    sum_j (-1)^j C(n, j) prod_i C(n - j, sizes_i).
    """
    return sum((-1) ** j * comb(n, j) * prod(comb(n - j, s) for s in sizes)
               for j in range(n + 1))


def covering_brute_force(n: int, sizes: Sequence[int]) -> int:
    """Direct enumeration of subset tuples; reference for :func:`covering`."""
    full = frozenset(range(n))
    count = 0

    def rec(i, covered):
        nonlocal count
        if i == len(sizes):
            count += covered == full
            return
        for s in combinations(range(n), sizes[i]):
            rec(i + 1, covered | frozenset(s))

    rec(0, frozenset())
    return count


@lru_cache(maxsize=None)
def binom_poly(n: int) -> QPoly:
    """binom(t, n) = t(t-1)...(t-n+1)/n! as a polynomial in t."""
    p = QPoly([1])
    for i in range(n):
        p = p * QPoly([-i, 1])
    return p * Fraction(1, factorial(n))


def aut_order(parts: Sequence[int]) -> int:
    """|Aut lambda| = prod over part sizes of (multiplicity)!."""
    out = 1
    for v in set(parts):
        out *= factorial(list(parts).count(v))
    return out


# -- set partitions -----------------------------------------------------------


class SetPartition:
    """A partition of {1..m} into nonempty blocks, stored canonically.

    Blocks are sorted tuples, ordered by their least element.  A diagonal
    torus T_phi corresponds to the fibre partition of phi, a subtorus to a
    coarser partition, and the dimension is the block count.
    """

    __slots__ = ("blocks", "m")

    def __init__(self, blocks):
        bl = sorted(tuple(sorted(b)) for b in blocks)
        seen = [x for b in bl for x in b]
        m = len(seen)
        if any(len(b) == 0 for b in bl):
            raise ValueError("blocks must be nonempty")
        if sorted(seen) != list(range(1, m + 1)):
            raise ValueError(f"blocks {bl} do not partition 1..{m}")
        self.blocks = tuple(bl)
        self.m = m

    @classmethod
    def discrete(cls, m: int) -> "SetPartition":
        return cls([(i,) for i in range(1, m + 1)])

    @classmethod
    def single(cls, m: int) -> "SetPartition":
        return cls([tuple(range(1, m + 1))] if m else [])

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        return "SetPartition(%s)" % "|".join(
            "".join(map(str, b)) if self.m < 10 else ",".join(map(str, b))
            for b in self.blocks)

    def block_of(self) -> dict:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def coarsens(self, finer: "SetPartition") -> bool:
        """True iff every block of ``finer`` lies inside a block of self."""
        if finer.m != self.m:
            return False
        where = self.block_of()
        return all(len({where[x] for x in b}) == 1 for b in finer.blocks)

    def sizes(self) -> tuple:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


def set_partitions(m: int) -> Iterator[SetPartition]:
    """All set partitions of {1..m} (restricted growth strings)."""
    if m == 0:
        yield SetPartition([])
        return

    def rec(i, labels, nblocks):
        if i == m:
            blocks = [[] for _ in range(nblocks)]
            for x, lab in enumerate(labels, start=1):
                blocks[lab].append(x)
            yield SetPartition(blocks)
            return
        for lab in range(nblocks + 1):
            labels.append(lab)
            yield from rec(i + 1, labels, max(nblocks, lab + 1))
            labels.pop()

    yield from rec(0, [], 0)


def _join_count(nblocks: int, pairs) -> tuple:
    # union-find over block indices of Q; returns the merged labelling
    parent = list(range(nblocks))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return tuple(find(a) for a in range(nblocks))


def n_RQ(Q: SetPartition, R: SetPartition) -> int:
    """Signed count of generating sets of subtori of Q meeting in R.

    Only codimension-1 subtori of Q are used as generators (merge two blocks
    of Q); the codimension >= 2 ones cancel in pairs.  A generator merging
    two blocks lying in different blocks of R makes the meet strictly
    smaller than R, so only pairs inside a block of R are enumerated.
    """
    if not R.coarsens(Q):
        raise ValueError(f"{R} does not coarsen {Q}")
    r_of = R.block_of()
    qlabel = [r_of[b[0]] for b in Q.blocks]
    candidates = [(a, b) for a, b in combinations(range(len(Q.blocks)), 2)
                  if qlabel[a] == qlabel[b]]
    # the target meet, as a labelling of Q's blocks up to renaming
    target = _canonical_labels(qlabel)
    total = 0
    for size in range(len(candidates) + 1):
        sign = -1 if size % 2 else 1
        for chosen in combinations(candidates, size):
            if _canonical_labels(_join_count(len(Q.blocks), chosen)) == target:
                total += sign
    return total


def _canonical_labels(labels) -> tuple:
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@lru_cache(maxsize=None)
def lattice_sum(m: int, k: int) -> int:
    """sum of n_RQ(Q, R) over R with k blocks, Q the discrete partition of m."""
    Q = SetPartition.discrete(m)
    return sum(n_RQ(Q, R) for R in set_partitions(m) if len(R) == k)


# -- enumeration ----------------------------------------------------------------


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of n in reverse-lexicographic order: (3), (2,1), (1,1,1)."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def compositions(n: int, parts: Optional[int] = None) -> Iterator[tuple]:
    """Compositions of n (into exactly ``parts`` positive parts if given),
    in lexicographic order."""
    if parts is None:
        yield from sorted(c for k in range(n + 1) for c in compositions(n, k))
        return
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def enumerate_kind(kind: str, n: int, parts: Optional[int] = None) -> list:
    if kind == "partitions":
        return list(partitions(n))
    if kind == "compositions":
        return list(compositions(n, parts))
    raise ValueError(f"unknown kind {kind!r}")
