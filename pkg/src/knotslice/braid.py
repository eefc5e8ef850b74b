"""Braid words, closures, Markov moves and mirror/writhe bookkeeping."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


class BraidParseError(ValueError):
    """Raised for malformed braid text; ``position`` is the offending character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def permutation(self) -> tuple[int, ...]:
        """Image of each strand position after reading the word left to right."""
        perm = list(range(self.strands))
        for x in self.letters:
            k = abs(x) - 1
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return tuple(perm)

    def to_text(self) -> str:
        return f"B{self.strands}:" + ",".join(f"{x:+d}" for x in self.letters)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class ClosureSummary:
    components: int
    writhe: int


_HEADER = re.compile(r"\s*B(\d+)\s*:")
_LETTER = re.compile(r"\s*([+-]?\d+)\s*")


def parse_braid(text: str) -> BraidWord:
    """Parse ``Bm:±k,±k,...``; errors carry the character position."""
    head = _HEADER.match(text)
    if head is None:
        raise BraidParseError("expected header 'B<strands>:'", 0)
    m = int(head.group(1))
    if m < 1:
        raise BraidParseError("strand count must be positive", head.start(1))
    pos = head.end()
    letters = []
    if text[pos:].strip():
        while True:
            tok = _LETTER.match(text, pos)
            if tok is None or not tok.group(1):
                raise BraidParseError("expected a signed generator index", pos)
            x = int(tok.group(1))
            if x == 0 or abs(x) >= m:
                raise BraidParseError(f"generator {x} out of range for {m} strands", tok.start(1))
            letters.append(x)
            pos = tok.end()
            if pos == len(text):
                break
            if text[pos] != ",":
                raise BraidParseError("expected ','", pos)
            pos += 1
    return BraidWord(m, tuple(letters))


def writhe(b: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in b.letters)


def closure_summary(b: BraidWord) -> ClosureSummary:
    perm = b.permutation()
    seen = [False] * b.strands
    cycles = 0
    for i in range(b.strands):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return ClosureSummary(cycles, writhe(b))


def markov_conjugate(b: BraidWord, k: int) -> BraidWord:
    """Conjugate by s_k: the word s_k^{-1} b s_k."""
    if not 1 <= k < b.strands:
        raise ValueError(f"generator index {k} out of range for {b.strands} strands")
    return BraidWord(b.strands, (-k,) + b.letters + (k,))


def markov_stabilize(b: BraidWord, sign: int) -> BraidWord:
    """Add a strand and append s_m^{sign}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple(-x for x in b.letters))


def random_braid(m: int, length: int, seed) -> BraidWord:
    if m < 2:
        raise ValueError("random braids need at least two strands")
    rng = np.random.default_rng(seed)
    mags = rng.integers(1, m, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(m, tuple(int(s * k) for s, k in zip(signs, mags)))


def trefoil(convention: str = "shift") -> BraidWord:
    """Left-handed trefoil in Br_2.

    ``"shift"`` gives the negative word, whose writhe -3 yields the grading
    shift -(n-1). ``"positive"`` gives the literal s_1^3.
    """
    if convention == "shift":
        return BraidWord(2, (-1, -1, -1))
    if convention == "positive":
        return BraidWord(2, (1, 1, 1))
    raise ValueError(f"unknown trefoil convention {convention!r}")


def unlink(p: int) -> BraidWord:
    return BraidWord(p, ())
