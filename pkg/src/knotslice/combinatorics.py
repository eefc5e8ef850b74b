"""Partitions, dominance, breakings, Kostka numbers and LIS-bounded permutation counts."""

from __future__ import annotations

import bisect
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

MAX_TABLEAU_SIZE = 24
MAX_LIS_M = 9


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> Partition:
        return cls(tuple(k for k, c in mult.items() for _ in range(c)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicity(self, k: int) -> int:
        return self.parts.count(k)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def _same_total(a: Partition, b: Partition):
    if a.total != b.total:
        raise ValueError(f"partitions of different totals: {a.total} vs {b.total}")


def partitions_of(N: int) -> list[Partition]:
    """All partitions of N in lexicographically increasing order."""
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(Partition(tuple(acc)))
            return
        for k in range(min(rem, cap), 0, -1):
            rec(rem - k, k, acc + [k])

    rec(N, N, [])
    return sorted(out)


def dual(p) -> Partition:
    p = _as_partition(p)
    if not p.parts:
        return p
    return Partition(tuple(sum(1 for x in p.parts if x > i) for i in range(p.parts[0])))


def dominance_leq(p, r) -> bool:
    """p is dominated by r: every prefix sum of p is at most the matching prefix sum of r."""
    p, r = _as_partition(p), _as_partition(r)
    _same_total(p, r)
    sp = sr = 0
    for i in range(max(len(p), len(r))):
        sp += p.parts[i] if i < len(p) else 0
        sr += r.parts[i] if i < len(r) else 0
        if sp > sr:
            return False
    return True


def orbits_in_closure(p, N: int | None = None) -> list[Partition]:
    """Partitions r with p dominated by r, in lex order (a linear extension of dominance)."""
    p = _as_partition(p)
    N = p.total if N is None else N
    if N != p.total:
        raise ValueError("N must equal the size of the partition")
    return [r for r in partitions_of(N) if dominance_leq(p, r)]


@dataclass(frozen=True)
class Breaking:
    pieces: tuple[Partition, ...]

    def concatenation(self) -> Partition:
        return Partition(tuple(x for piece in self.pieces for x in piece.parts))


def breakings(p, s) -> list[Breaking]:
    """Assign the parts of p to the slots of s so each slot sums to its part.

    Slots are labelled by position in s, so equal parts of s give distinct
    breakings when their pieces differ.
    """
    p, s = _as_partition(p), _as_partition(s)
    _same_total(p, s)
    pool = Counter(p.parts)
    found: set[tuple[Partition, ...]] = set()

    def pieces_for(target, avail: Counter, cap):
        # partitions of target with parts <= cap drawn from avail
        if target == 0:
            yield ()
            return
        for k in sorted((k for k in avail if avail[k] > 0 and k <= min(target, cap)), reverse=True):
            avail[k] -= 1
            for rest in pieces_for(target - k, avail, k):
                yield (k,) + rest
            avail[k] += 1

    def rec(i, avail: Counter, acc):
        if i == len(s.parts):
            if not +avail:
                found.add(tuple(acc))
            return
        # pieces_for keeps the yielded parts removed from avail while we recurse
        for piece in pieces_for(s.parts[i], avail, s.parts[i]):
            rec(i + 1, avail, acc + [Partition(piece)])

    rec(0, pool, [])
    return [Breaking(b) for b in sorted(found)]


def kostka(shape, weight: Iterable[int]) -> int:
    """Semistandard tableaux of the given shape and content, by horizontal-strip backtracking.

    The weight is a composition; zero entries are ignored and the order does
    not matter.
    """
    shape = _as_partition(shape)
    weight = tuple(int(w) for w in weight if w)
    if any(w < 0 for w in weight):
        raise ValueError("weights must be nonnegative")
    if shape.total != sum(weight):
        raise ValueError(f"shape of size {shape.total} vs weight of size {sum(weight)}")
    if shape.total > MAX_TABLEAU_SIZE:
        raise ValueError(f"tableau size {shape.total} exceeds limit {MAX_TABLEAU_SIZE}")
    rows = shape.parts
    L = len(rows)

    @lru_cache(maxsize=None)
    def count(filled: tuple[int, ...], i: int) -> int:
        if i == len(weight):
            return int(filled == rows)
        total = 0
        for nxt in _strips(filled, weight[i]):
            total += count(nxt, i + 1)
        return total

    def _strips(filled, size):
        out = []

        def rec(r, rem, acc):
            if r == L:
                if rem == 0:
                    out.append(tuple(acc))
                return
            # a horizontal strip may not extend row r past the old end of row r-1
            cap = rows[r] if r == 0 else min(rows[r], filled[r - 1])
            for a in range(min(rem, cap - filled[r]), -1, -1):
                rec(r + 1, rem - a, acc + [filled[r] + a])

        rec(0, size, [])
        return out

    return count((0,) * L, 0)


def lis_length(perm) -> int:
    tails: list = []
    for x in perm:
        k = bisect.bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
        else:
            tails[k] = x
    return len(tails)


def lis_count(m: int, n: int) -> int:
    """Permutations of m letters whose longest increasing subsequence has length at most n."""
    if m > MAX_LIS_M:
        raise ValueError(f"m={m} exceeds brute-force limit {MAX_LIS_M}")
    return sum(1 for perm in itertools.permutations(range(m)) if lis_length(perm) <= n)


def rectangle(m: int, n: int) -> Partition:
    """(n^m): m parts equal to n."""
    return Partition((n,) * m)


def thin_thick_type(m: int, n: int) -> Partition:
    """(1^m (n-1)^m), the eigenvalue-multiplicity type of a regular configuration."""
    return Partition((1,) * m + (n - 1,) * m if n > 1 else (1,) * m)


def check_schensted(m: int, n: int) -> bool:
    return kostka(rectangle(m, n), thin_thick_type(m, n).parts) == lis_count(m, n)


def spaltenstein_dim(r, p) -> int:
    r, p = _as_partition(r), _as_partition(p)
    _same_total(r, p)
    return sum(x * x for x in r.parts) - sum(x * x for x in p.parts)


def catalan(m: int) -> int:
    from math import comb

    return comb(2 * m, m) // (m + 1)
