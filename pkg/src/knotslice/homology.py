"""Graded abelian groups and the closed-form invariants of unknot, unlinks and the trefoil."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .braid import trefoil, unlink
from .laurent import LaurentPoly
from .skein import sl_n_polynomial


class TorsionTorsionUnsupported(ValueError):
    code = "TORSION_TORSION_UNSUPPORTED"


@dataclass(frozen=True)
class Piece:
    free: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion orders must be at least 2")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def __add__(self, other: Piece) -> Piece:
        return Piece(self.free + other.free, self.torsion + other.torsion)

    def __str__(self):
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


class GradedGroup:
    """Finitely many nonzero degrees, each a free part plus cyclic torsion."""

    __slots__ = ("_deg",)

    def __init__(self, degrees: Mapping[int, Piece] | None = None):
        clean = {}
        for d, p in (degrees or {}).items():
            if not p.is_zero():
                clean[int(d)] = p
        self._deg = dict(sorted(clean.items()))

    @classmethod
    def free_in(cls, degrees) -> GradedGroup:
        c = Counter(degrees)
        return cls({d: Piece(r) for d, r in c.items()})

    def __getitem__(self, d: int) -> Piece:
        return self._deg.get(d, Piece())

    def degrees(self) -> list[int]:
        return list(self._deg)

    def items(self):
        return self._deg.items()

    def __eq__(self, other):
        return isinstance(other, GradedGroup) and self._deg == other._deg

    def __hash__(self):
        return hash(tuple(self._deg.items()))

    def __add__(self, other: GradedGroup) -> GradedGroup:
        out = dict(self._deg)
        for d, p in other._deg.items():
            out[d] = out.get(d, Piece()) + p
        return GradedGroup(out)

    def torsion_degrees(self) -> list[int]:
        return [d for d, p in self._deg.items() if p.torsion]

    def poincare(self) -> LaurentPoly:
        """Free ranks as a Laurent polynomial (printed in q; read the variable as t)."""
        return LaurentPoly({d: p.free for d, p in self._deg.items()})

    def poincare_str(self) -> str:
        return str(self.poincare()).replace("q", "t")

    def to_json(self) -> dict:
        return {str(d): {"free": p.free, "torsion": list(p.torsion)} for d, p in self._deg.items()}

    @classmethod
    def from_json(cls, data: dict) -> GradedGroup:
        return cls({int(d): Piece(v["free"], tuple(v["torsion"])) for d, v in data.items()})

    def __str__(self):
        if not self._deg:
            return "0"
        return ", ".join(f"{d}: {p}" for d, p in self._deg.items())

    def __repr__(self):
        return f"GradedGroup({self})"


def shift(G: GradedGroup, k: int) -> GradedGroup:
    """G^{*+k}: the new degree d holds the old degree d + k."""
    return GradedGroup({d - k: p for d, p in G.items()})


def direct_sum(*groups: GradedGroup) -> GradedGroup:
    out = GradedGroup()
    for G in groups:
        out = out + G
    return out


def tensor(G1: GradedGroup, G2: GradedGroup) -> GradedGroup:
    """Graded tensor product over Z; pairs of torsion parts would need Tor terms and are refused."""
    out: dict[int, Piece] = {}
    for d1, a in G1.items():
        for d2, b in G2.items():
            if a.torsion and b.torsion:
                raise TorsionTorsionUnsupported(f"torsion in degrees {d1} and {d2}")
            tors = tuple(t for t in a.torsion for _ in range(b.free)) + tuple(t for t in b.torsion for _ in range(a.free))
            piece = Piece(a.free * b.free, tors)
            out[d1 + d2] = out.get(d1 + d2, Piece()) + piece
    return GradedGroup(out)


def euler_characteristic(G: GradedGroup) -> int:
    return sum((-1) ** (d % 2) * p.free for d, p in G.items())


def cohomology_cpn(n: int) -> GradedGroup:
    """H^*(CP^{n-1}): Z in degrees 0, 2, ..., 2n-2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return GradedGroup.free_in(range(0, 2 * n - 1, 2))


def gysin_sphere_bundle(base: GradedGroup, fiber_dim: int, euler_class: int) -> GradedGroup:
    """Cohomology of an oriented S^k bundle over a base with H^* = Z[x]/x^{top}, x in degree 2.

    The Gysin sequence ... -> H^{j-k-1}(B) --e--> H^j(B) -> H^j(E) -> H^{j-k}(B) --e--> ...
    has e = euler_class * x^{(k+1)/2}. Multiplication by e is injective in
    the degrees where it lands in a nonzero group, so H^j(E) is the cokernel
    of e into H^j(B) plus the kernel of e out of H^{j-k}(B).
    """
    k = fiber_dim
    if k % 2 == 0:
        raise ValueError("even-dimensional sphere bundles have no degree-raising Euler class here")
    shift_by = k + 1
    top = max(base.degrees())
    out: dict[int, Piece] = {}
    for j in range(0, top + k + 1):
        piece = Piece()
        src = j - shift_by
        # cokernel of H^{j-k-1}(B) -> H^j(B)
        if base[j].free:
            if src >= 0 and base[src].free:
                if abs(euler_class) >= 2:
                    piece = piece + Piece(0, (abs(euler_class),))
                elif euler_class == 0:
                    piece = piece + Piece(base[j].free)
            else:
                piece = piece + Piece(base[j].free)
        # kernel of H^{j-k}(B) -> H^{j+1}(B)
        s = j - k
        if s >= 0 and base[s].free:
            tgt = s + shift_by
            if euler_class == 0 or not base[tgt].free:
                piece = piece + Piece(base[s].free)
        out[j] = piece
    return GradedGroup(out)


def cohomology_ut_cpn(n: int) -> GradedGroup:
    """H^*(UT CP^{n-1}) from the Gysin sequence of S^{2n-3} -> UT CP^{n-1} -> CP^{n-1}, Euler number n."""
    if n < 2:
        raise ValueError("the unit tangent bundle needs n >= 2")
    return gysin_sphere_bundle(cohomology_cpn(n), 2 * n - 3, n)


def kr_unknot(n: int) -> GradedGroup:
    return shift(cohomology_cpn(n), n - 1)


def kr_unlink(n: int, p: int) -> GradedGroup:
    if p < 1:
        raise ValueError("an unlink has at least one component")
    out = kr_unknot(n)
    for _ in range(p - 1):
        out = tensor(out, kr_unknot(n))
    return out


def kr_trefoil(n: int) -> GradedGroup:
    """CP^{n-1} cohomology shifted up by n-1 plus UT CP^{n-1} cohomology shifted up by n+1."""
    if n < 2:
        raise ValueError("the trefoil formula needs n >= 2")
    return direct_sum(shift(cohomology_cpn(n), -(n - 1)), shift(cohomology_ut_cpn(n), -(n + 1)))


def kr_trefoil_list(n: int) -> GradedGroup:
    """The same groups written out degree by degree."""
    if n < 2:
        raise ValueError("the trefoil formula needs n >= 2")
    deg: dict[int, Piece] = {n - 1: Piece(1)}
    for j in range(n - 1):
        deg[n + 1 + 2 * j] = Piece(2)
        deg[3 * n + 2 * j] = Piece(1)
    deg[3 * n - 1] = Piece(0, (n,))
    return GradedGroup(deg)


def kr_trefoil_summands(n: int) -> list[GradedGroup]:
    return [shift(cohomology_cpn(n), -(n - 1)), shift(cohomology_ut_cpn(n), -(n + 1))]


def kr_trivial() -> GradedGroup:
    """For n = 1 every link gets Z in degree 0."""
    return GradedGroup({0: Piece(1)})


def grading_shift(m: int, w: int, n: int) -> int:
    return (n - 1) * (m + w)


EXAMPLES = ("unknot", "unlink2", "unlink3", "trefoil")


def example_group(example: str, n: int) -> GradedGroup:
    if n == 1:
        return kr_trivial()
    if example == "unknot":
        return kr_unknot(n)
    if example.startswith("unlink"):
        return kr_unlink(n, int(example[len("unlink"):]))
    if example == "trefoil":
        return kr_trefoil(n)
    raise ValueError(f"unknown example {example!r}")


def example_braid(example: str):
    if example == "unknot":
        return unlink(1)
    if example.startswith("unlink"):
        return unlink(int(example[len("unlink"):]))
    if example == "trefoil":
        return trefoil()
    raise ValueError(f"unknown example {example!r}")


def check_conjecture_euler(example: str, n: int) -> bool:
    """Euler characteristic of the assembled group equals the polynomial invariant at q = -1."""
    lhs = euler_characteristic(example_group(example, n))
    rhs = sl_n_polynomial(example_braid(example), n).eval_at_minus_one()
    return lhs == rhs
