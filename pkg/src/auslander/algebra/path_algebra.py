"""The Auslander algebra of K[x]/(x^n) as a quiver with relations.

Quiver: vertices 1..n, arrows ``a{i}`` (alpha_i: i -> i+1) and ``b{i}``
(beta_i: i -> i-1).  Paths compose left to right, so ``a1 b2`` is the loop at 1
through 2.  Relations: a1 b2 = 0 and a_i b_{i+1} = b_i a_{i-1} for 1 < i < n.

Orienting the relations as "peak -> valley" leaves no overlaps, so every path
reduces to zero or to a unique down-then-up path ``(i, j, v)``: from i down to
v, then up to j, with 1 <= v <= min(i, j).  These are the basis elements.
Lengths are preserved by the relations, which gives the product rule
(i, j, v) * (j, k, u) = (i, k, v + u - j) if v + u - j >= 1, else 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from flint import fmpq

BasisPath = tuple[int, int, int]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int

    @property
    def path(self) -> BasisPath:
        return (self.source, self.target, min(self.source, self.target))


@dataclass(frozen=True)
class Relation:
    """sum(coeff * path) = 0, each path a tuple of arrow names."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]


@dataclass(eq=False)
class AuslanderAlgebra:
    n: int
    basis: tuple[BasisPath, ...] = field(init=False)
    index: dict[BasisPath, int] = field(init=False, repr=False)
    arrows: tuple[Arrow, ...] = field(init=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("rank must be at least 1")
        self.basis = tuple(
            (i, j, v) for i in range(1, n + 1) for j in range(1, n + 1) for v in range(1, min(i, j) + 1)
        )
        self.index = {b: k for k, b in enumerate(self.basis)}
        arrows = [Arrow(f"a{i}", i, i + 1) for i in range(1, n)]
        arrows += [Arrow(f"b{i}", i, i - 1) for i in range(2, n + 1)]
        self.arrows = tuple(arrows)
        self.arrow_by_name = {a.name: a for a in arrows}

    def __repr__(self) -> str:
        return f"AuslanderAlgebra(n={self.n})"

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def relations(self) -> list[Relation]:
        rels = []
        if self.n >= 2:
            rels.append(Relation(((1, ("a1", "b2")),)))
        for i in range(2, self.n):
            rels.append(Relation(((1, (f"a{i}", f"b{i + 1}")), (-1, (f"b{i}", f"a{i - 1}")))))
        return rels

    def paths(self, i: int, j: int) -> list[BasisPath]:
        return [(i, j, v) for v in range(1, min(i, j) + 1)]

    def idempotent(self, i: int) -> BasisPath:
        return (i, i, i)

    @staticmethod
    def basis_product(p: BasisPath, q: BasisPath) -> BasisPath | None:
        i, j, v = p
        j2, k, u = q
        if j != j2:
            return None
        valley = v + u - j
        if valley < 1:
            return None
        return (i, k, valley)

    def arrow_word(self, p: BasisPath) -> tuple[str, ...]:
        """Arrow names along the down-then-up path, left to right."""
        i, j, v = p
        down = tuple(f"b{h}" for h in range(i, v, -1))
        up = tuple(f"a{h}" for h in range(v, j))
        return down + up

    # elements are dicts {basis path: coefficient}; sparse and exact

    def element(self, terms: dict[BasisPath, object]) -> dict[BasisPath, fmpq]:
        return {p: fmpq(c) for p, c in terms.items() if c}

    def one(self) -> dict[BasisPath, fmpq]:
        return {self.idempotent(i): fmpq(1) for i in self.vertices}

    def multiply(self, x: dict, y: dict) -> dict[BasisPath, fmpq]:
        out: dict[BasisPath, fmpq] = {}
        for p, a in x.items():
            for q, b in y.items():
                r = self.basis_product(p, q)
                if r is not None:
                    out[r] = out.get(r, fmpq(0)) + a * b
        return {p: c for p, c in out.items() if c != 0}

    def to_vector(self, x: dict) -> list[fmpq]:
        vec = [fmpq(0)] * self.dim
        for p, c in x.items():
            vec[self.index[p]] = fmpq(c)
        return vec

    def from_vector(self, vec: Sequence) -> dict[BasisPath, fmpq]:
        return {self.basis[k]: fmpq(c) for k, c in enumerate(vec) if c != 0}

    def dim_corner(self, i: int, j: int) -> int:
        """dim e_i Lambda e_j."""
        return min(i, j)


@lru_cache(maxsize=None)
def build_algebra(n: int) -> AuslanderAlgebra:
    return AuslanderAlgebra(n)
