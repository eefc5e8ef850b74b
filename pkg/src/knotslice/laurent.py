"""Integer Laurent polynomials in one variable q."""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    """Immutable map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> LaurentPoly:
        return cls({exp: coef})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c ** (-k)})
            raise ValueError("only monomial units can be inverted")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def eval_at_minus_one(self) -> int:
        return sum(c if e % 2 == 0 else -c for e, c in self._terms.items())

    def bar(self) -> LaurentPoly:
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def degree_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        return min(self._terms), max(self._terms)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, pairs) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in pairs})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def laurent_eval_at_minus_one(p: LaurentPoly) -> int:
    return p.eval_at_minus_one()


def laurent_bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def quantum_integer(n: int) -> LaurentPoly:
    """q^{n-1} + q^{n-3} + ... + q^{1-n}, the unknot value."""
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})
