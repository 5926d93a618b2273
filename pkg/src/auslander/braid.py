"""Positive braid monoid B_n^+ in Garside left-normal form.

A positive braid is stored as its left-weighted factorisation into simple
elements (non-identity permutations): for adjacent factors (a, b) every left
descent of b is a right descent of a.  The factorisation is unique, so
equality of braids is equality of factor lists.

The interval [1, w_+^2]_L is the set of braids with at most two factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import sym
from .sym import Permutation, RankMismatch


@dataclass(frozen=True)
class PositiveBraid:
    n: int
    factors: tuple[Permutation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.n != self.n or f.is_identity():
                raise ValueError("factors must be non-identity permutations of rank n")
        for a, b in zip(self.factors, self.factors[1:]):
            if not sym.left_descents(b) <= sym.right_descents(a):
                raise ValueError("factor list is not left-weighted")

    @property
    def length(self) -> int:
        return sum(sym.length(f) for f in self.factors)

    def word(self) -> tuple[int, ...]:
        """A word in the generators: concatenated reduced words of the factors."""
        return tuple(i for f in self.factors for i in sym.reduced_word(f))

    def image(self) -> Permutation:
        """The image in S_n under s_i -> s_i."""
        out = sym.identity(self.n)
        for f in self.factors:
            out = out * f
        return out

    def is_identity(self) -> bool:
        return not self.factors

    def __mul__(self, other: "PositiveBraid") -> "PositiveBraid":
        return product(self, other)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return ".".join(str(f) for f in self.factors)

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> "PositiveBraid":
        return from_simples(int(data["n"]), [Permutation.from_json(f) for f in data["factors"]])


def _left_weight(factors: list[Permutation]) -> list[Permutation]:
    """Slide generators leftwards between neighbours until left-weighted."""
    f = [p for p in factors if not p.is_identity()]
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(f) - 1:
            a, b = f[k], f[k + 1]
            movable = sym.left_descents(b) - sym.right_descents(a)
            while movable:
                i = min(movable)
                a = a.times_generator(i)
                b = b.generator_times(i)
                movable = sym.left_descents(b) - sym.right_descents(a)
                changed = True
            f[k] = a
            if b.is_identity():
                del f[k + 1]
                continue
            f[k + 1] = b
            k += 1
    return f


def from_simples(n: int, simples: Iterable[Permutation]) -> PositiveBraid:
    """Normal form of the product of the positive lifts of ``simples``."""
    simples = list(simples)
    for s in simples:
        if s.n != n:
            raise RankMismatch("simple factor of wrong rank")
    return PositiveBraid(n, tuple(_left_weight(simples)))


def lift(w: Permutation) -> PositiveBraid:
    """The positive lift underline(w) of a permutation."""
    return from_simples(w.n, [w])


def identity(n: int) -> PositiveBraid:
    return PositiveBraid(n)


def generator(n: int, i: int) -> PositiveBraid:
    return lift(sym.generator(n, i))


def delta(n: int) -> PositiveBraid:
    """w_+, the lift of the longest permutation."""
    return lift(sym.longest(n))


def normalize(word: Sequence[int], n: int) -> PositiveBraid:
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"generator index {i} out of range for n={n}")
    return from_simples(n, [sym.generator(n, i) for i in word])


def product(x: PositiveBraid, y: PositiveBraid) -> PositiveBraid:
    if x.n != y.n:
        raise RankMismatch(f"braids of different rank: {x.n} vs {y.n}")
    return from_simples(x.n, x.factors + y.factors)


def left_multiply(i: int, x: PositiveBraid) -> PositiveBraid:
    """s_i * x."""
    return from_simples(x.n, (sym.generator(x.n, i),) + x.factors)


def reverse(x: PositiveBraid) -> PositiveBraid:
    """Image under the anti-automorphism reversing words."""
    return from_simples(x.n, [f.inverse() for f in reversed(x.factors)])


def _strip_left_generator(x: PositiveBraid, i: int) -> PositiveBraid:
    # s_i is a left divisor iff it is a left descent of the first factor
    first = x.factors[0].generator_times(i)
    return from_simples(x.n, (first,) + x.factors[1:])


def is_left_divisor(x: PositiveBraid, y: PositiveBraid) -> bool:
    """True iff y = x * z for some positive z."""
    if x.n != y.n:
        raise RankMismatch(f"braids of different rank: {x.n} vs {y.n}")
    while not x.is_identity():
        if y.is_identity():
            return False
        i = sym.reduced_word(x.factors[0])[0]
        if i not in sym.left_descents(y.factors[0]):
            return False
        x = _strip_left_generator(x, i)
        y = _strip_left_generator(y, i)
    return True


def is_right_divisor(x: PositiveBraid, y: PositiveBraid) -> bool:
    """True iff y = z * x for some positive z, i.e. y >=_L x."""
    if x.n != y.n:
        raise RankMismatch(f"braids of different rank: {x.n} vs {y.n}")
    return is_left_divisor(reverse(x), reverse(y))


def in_interval(x: PositiveBraid) -> bool:
    """Membership in [1, w_+^2]_L, decided by factor count."""
    return len(x.factors) <= 2


@lru_cache(maxsize=None)
def interval_w2(n: int) -> frozenset[PositiveBraid]:
    perms = sym.all_permutations(n)
    return frozenset(from_simples(n, [v, w]) for v in perms for w in perms)


def sorted_interval(n: int) -> list[PositiveBraid]:
    """Interval elements ordered by length, then by factor words (deterministic)."""
    return sorted(interval_w2(n), key=braid_sort_key)


def braid_sort_key(x: PositiveBraid):
    return (x.length, [f.word for f in x.factors])


def pair_form(x: PositiveBraid) -> tuple[Permutation, Permutation]:
    """(v, w) with x = underline(v) underline(w) and R(v) containing L(w)."""
    if len(x.factors) > 2:
        raise ValueError(f"{x} has {len(x.factors)} factors; not in [1, w_+^2]_L")
    e = sym.identity(x.n)
    padded = list(x.factors) + [e] * (2 - len(x.factors))
    return padded[0], padded[1]


def from_pair(v: Permutation, w: Permutation) -> PositiveBraid:
    return from_simples(v.n, [v, w])


@dataclass(frozen=True)
class DescentPair:
    v: Permutation
    w: Permutation

    def __post_init__(self):
        if self.v.n != self.w.n:
            raise RankMismatch("descent pair of mixed rank")
        if sym.right_descents(self.v) & sym.right_descents(self.w):
            raise ValueError(f"({self.v}, {self.w}) share a right descent")


def descent_pair_to_interval(p: DescentPair) -> PositiveBraid:
    """(v, w) -> x^{-1} w_+ for x = underline(v) underline(w)^{-1}.

    Computed positively as underline(w) * underline(v^{-1} w_0).
    """
    w0 = sym.longest(p.v.n)
    return from_simples(p.v.n, [p.w, p.v.inverse() * w0])
