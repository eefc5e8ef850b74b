"""Quantum sl(n) polynomial of braid closures.

The braiding on V (x) V, with V = C^n and basis e_1..e_n, is

    R(e_i (x) e_i) = q e_i (x) e_i
    R(e_i (x) e_j) = e_j (x) e_i + [i > j] (q - q^{-1}) e_i (x) e_j

A positive crossing acts by q^{-n} R, a negative one by q^{n} R^{-1}, and the
polynomial of the closure is the trace of mu^{(x)m} rho(b) with
mu = diag(q^{n-1}, q^{n-3}, ..., q^{1-n}).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .braid import BraidWord, markov_conjugate, markov_stabilize, writhe
from .laurent import ONE, Q, ZERO, LaurentPoly

Word = tuple[int, ...]


def enhancement(n: int) -> list[LaurentPoly]:
    """Diagonal of mu, indexed by basis letter 0..n-1."""
    return [LaurentPoly.monomial(n - 1 - 2 * i) for i in range(n)]


@dataclass
class QuantumOperator:
    """Sparse operator on (C^n)^{(x)m}; entries map (row word, col word) to a polynomial."""

    n: int
    m: int
    entries: dict[tuple[Word, Word], LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if not v.is_zero()}

    @classmethod
    def identity(cls, n: int, m: int) -> QuantumOperator:
        return cls(n, m, {(w, w): ONE for w in itertools.product(range(n), repeat=m)})

    def _check(self, other: QuantumOperator):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("operators act on different spaces")

    def __add__(self, other: QuantumOperator) -> QuantumOperator:
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return QuantumOperator(self.n, self.m, out)

    def __neg__(self):
        return QuantumOperator(self.n, self.m, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: QuantumOperator) -> QuantumOperator:
        return self + (-other)

    def scale(self, c: LaurentPoly) -> QuantumOperator:
        return QuantumOperator(self.n, self.m, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: QuantumOperator) -> QuantumOperator:
        self._check(other)
        by_row: dict[Word, list[tuple[Word, LaurentPoly]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[Word, Word], LaurentPoly] = {}
        for (r, mid), v in self.entries.items():
            for c, w in by_row.get(mid, ()):
                out[(r, c)] = out.get((r, c), ZERO) + v * w
        return QuantumOperator(self.n, self.m, out)

    def __eq__(self, other):
        if not isinstance(other, QuantumOperator):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.entries == other.entries

    def entry(self, row: Word, col: Word) -> LaurentPoly:
        return self.entries.get((tuple(row), tuple(col)), ZERO)

    def trace(self) -> LaurentPoly:
        out = ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                out = out + v
        return out

    def enhanced_trace(self) -> LaurentPoly:
        out = ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                out = out + v.shift(sum(self.n - 1 - 2 * i for i in r))
        return out

    def partial_trace_last(self) -> QuantumOperator:
        """Contract the last tensor factor against mu."""
        if self.m < 2:
            raise ValueError("need at least two tensor factors")
        out: dict[tuple[Word, Word], LaurentPoly] = {}
        for (r, c), v in self.entries.items():
            if r[-1] == c[-1]:
                key = (r[:-1], c[:-1])
                out[key] = out.get(key, ZERO) + v.shift(self.n - 1 - 2 * r[-1])
        return QuantumOperator(self.n, self.m - 1, out)


def _local_image(a: int, b: int, sign: int) -> list[tuple[int, int, int, int]]:
    """Image of e_a (x) e_b under R (sign +1) or R^{-1} (sign -1) as (a', b', exponent, coef) terms."""
    if a == b:
        return [(a, b, sign, 1)]
    if sign > 0:
        terms = [(b, a, 0, 1)]
        if a > b:
            terms += [(a, b, 1, 1), (a, b, -1, -1)]
    else:
        terms = [(b, a, 0, 1)]
        if a < b:
            terms += [(a, b, 1, -1), (a, b, -1, 1)]
    return terms


def r_matrix(n: int, inverse: bool = False) -> QuantumOperator:
    sign = -1 if inverse else 1
    entries: dict[tuple[Word, Word], LaurentPoly] = {}
    for a in range(n):
        for b in range(n):
            for a2, b2, e, c in _local_image(a, b, sign):
                key = ((a2, b2), (a, b))
                entries[key] = entries.get(key, ZERO) + LaurentPoly.monomial(e, c)
    return QuantumOperator(n, 2, entries)


class _WeightBlock:
    """Basis words sharing one letter content; local moves are precomputed per generator."""

    def __init__(self, content: Word, m: int):
        self.words = sorted(set(itertools.permutations(content)))
        self.index = {w: i for i, w in enumerate(self.words)}
        self.moves = {}
        for k in range(m - 1):
            eq, lt, gt, sw = [], [], [], []
            for i, w in enumerate(self.words):
                a, b = w[k], w[k + 1]
                s = list(w)
                s[k], s[k + 1] = b, a
                sw.append(self.index[tuple(s)])
                (eq if a == b else lt if a < b else gt).append(i)
            self.moves[k] = tuple(np.array(x, dtype=np.intp) for x in (eq, lt, gt, sw))


def _push_block(block: _WeightBlock, letters, span: int) -> np.ndarray:
    """Push every basis word of the block through the letters.

    Returns an object array M[e, row, col] holding the coefficient of
    q^{e - span} in the row-component of the image of the col-th word.
    """
    d = len(block.words)
    M = np.zeros((2 * span + 1, d, d), dtype=object)
    M[span] = np.eye(d, dtype=int).astype(object)
    for x in letters:
        eq, lt, gt, sw = block.moves[abs(x) - 1]
        new = np.zeros_like(M)
        if x > 0:
            new[1:, eq] += M[:-1, eq]
            new[:, sw[lt]] += M[:, lt]
            new[:, sw[gt]] += M[:, gt]
            new[1:, gt] += M[:-1, gt]
            new[:-1, gt] -= M[1:, gt]
        else:
            new[:-1, eq] += M[1:, eq]
            new[:, sw[lt]] += M[:, lt]
            new[:, sw[gt]] += M[:, gt]
            new[1:, lt] -= M[:-1, lt]
            new[:-1, lt] += M[1:, lt]
        M = new
    return M


def _contents(n: int, m: int):
    return itertools.combinations_with_replacement(range(n), m)


def braid_operator(b: BraidWord, n: int, normalized: bool = True) -> QuantumOperator:
    """rho(b) as a sparse operator; with ``normalized`` the crossing scalars q^{-n sign} are included."""
    span = len(b.letters)
    shift = -n * writhe(b) if normalized else 0
    entries: dict[tuple[Word, Word], LaurentPoly] = {}
    for content in _contents(n, b.strands):
        block = _WeightBlock(content, b.strands)
        M = _push_block(block, b.letters, span)
        for r, c in zip(*np.nonzero(np.any(M != 0, axis=0))):
            poly = LaurentPoly({e - span + shift: int(M[e, r, c]) for e in range(M.shape[0])})
            entries[(block.words[r], block.words[c])] = poly
    return QuantumOperator(n, b.strands, entries)


def sl_n_polynomial(b: BraidWord, n: int) -> LaurentPoly:
    """Enhanced trace of rho(b), computed block by block without densifying."""
    if n < 1:
        raise ValueError("n must be positive")
    span = len(b.letters)
    total: dict[int, int] = {}
    for content in _contents(n, b.strands):
        block = _WeightBlock(content, b.strands)
        weight = sum(n - 1 - 2 * i for i in content)
        M = _push_block(block, b.letters, span)
        diag = np.trace(M, axis1=1, axis2=2)
        for e, c in enumerate(diag):
            if c:
                key = e - span + weight
                total[key] = total.get(key, 0) + int(c)
    return LaurentPoly(total).shift(-n * writhe(b))


def skein_triple(b: BraidWord, site: int) -> tuple[BraidWord, BraidWord, BraidWord]:
    """(positive, negative, smoothed) variants of b at the crossing in position ``site``."""
    if not 0 <= site < len(b.letters):
        raise IndexError(f"site {site} outside word of length {len(b.letters)}")
    k = abs(b.letters[site])
    pre, post = b.letters[:site], b.letters[site + 1:]
    return (
        BraidWord(b.strands, pre + (k,) + post),
        BraidWord(b.strands, pre + (-k,) + post),
        BraidWord(b.strands, pre + post),
    )


def check_skein(b: BraidWord, site: int, n: int) -> bool:
    """q^n P(L+) - q^{-n} P(L-) == (q - q^{-1}) P(L0)."""
    plus, minus, zero = skein_triple(b, site)
    lhs = sl_n_polynomial(plus, n).shift(n) - sl_n_polynomial(minus, n).shift(-n)
    rhs = (Q - Q ** -1) * sl_n_polynomial(zero, n)
    return lhs == rhs


def random_markov_sequence(b: BraidWord, length: int, rng: random.Random) -> BraidWord:
    for _ in range(length):
        move = rng.choice(("conjugate", "stabilize", "conjugate_inverse"))
        if move == "stabilize" or b.strands < 2:
            b = markov_stabilize(b, rng.choice((1, -1)))
        else:
            k = rng.randrange(1, b.strands)
            if move == "conjugate":
                b = markov_conjugate(b, k)
            else:
                b = BraidWord(b.strands, (k,) + b.letters + (-k,))
    return b


def check_markov(b: BraidWord, n: int, trials: int = 5, seed=0, max_moves: int = 4) -> bool:
    rng = random.Random(seed)
    base = sl_n_polynomial(b, n)
    for _ in range(trials):
        moved = random_markov_sequence(b, rng.randint(1, max_moves), rng)
        if sl_n_polynomial(moved, n) != base:
            return False
    return True


class CrossingBudgetExceeded(ValueError):
    pass


def kauffman_oracle(b: BraidWord, max_crossings: int = 12) -> LaurentPoly:
    """P_(2) by the Kauffman bracket state sum, independent of the R-matrix engine.

    A positive generator expands as A*id + A^{-1}*cupcap, loops weigh
    d = -A^2 - A^{-2}, and the result is (-A^3)^{-w} times the bracket,
    rewritten through A^2 = -q so that the unknot gives q + q^{-1}.
    """
    c = len(b.letters)
    if c > max_crossings:
        raise CrossingBudgetExceeded(f"{c} crossings exceeds budget {max_crossings}")
    m = b.strands
    npts = (c + 1) * m

    d_poly = {2: -1, -2: -1}
    bracket: dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=c):
        parent = list(range(npts))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        a_exp = 0
        for t, (x, s) in enumerate(zip(b.letters, state)):
            k = abs(x) - 1
            sgn = 1 if x > 0 else -1
            # s == 0: identity smoothing, weight A^{sgn}; s == 1: cup-cap, weight A^{-sgn}
            a_exp += sgn if s == 0 else -sgn
            for j in range(m):
                if s == 1 and j in (k, k + 1):
                    continue
                union(t * m + j, (t + 1) * m + j)
            if s == 1:
                union(t * m + k, t * m + k + 1)
                union((t + 1) * m + k, (t + 1) * m + k + 1)
        for j in range(m):
            union(c * m + j, j)
        loops = len({find(p) for p in range(npts)})
        term = {a_exp: 1}
        for _ in range(loops):
            nxt: dict[int, int] = {}
            for e1, c1 in term.items():
                for e2, c2 in d_poly.items():
                    nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
            term = nxt
        for e, v in term.items():
            bracket[e] = bracket.get(e, 0) + v
    w = writhe(b)
    out: dict[int, int] = {}
    for e, v in bracket.items():
        if not v:
            continue
        total = e - 3 * w
        if total % 2:
            raise ArithmeticError("odd power of A survived normalization")
        k = total // 2
        sign = (-1) ** (w % 2) * (-1) ** (k % 2)
        out[k] = out.get(k, 0) + sign * v
    return LaurentPoly(out)
