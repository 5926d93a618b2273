"""The symmetric group S_n: length, descents, reduced words and weak orders.

Permutations are kept in one-line notation on the letters 1..n, so
``Permutation((2, 3, 1))`` sends 1 -> 2, 2 -> 3, 3 -> 1.  Products compose as
functions, ``(u * v)(k) == u(v(k))``, hence ``w * s_i`` swaps the entries in
positions i, i+1 while ``s_i * w`` swaps the values i, i+1.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
        if not word:
            raise ValueError("rank must be at least 1")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, k: int) -> int:
        return self.word[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        _check_rank(self, other)
        return Permutation(tuple(self.word[k - 1] for k in other.word))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.word, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.word, start=1))

    def times_generator(self, i: int) -> "Permutation":
        """w * s_i."""
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def generator_times(self, i: int) -> "Permutation":
        """s_i * w."""
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(v, v) for v in self.word))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.word)) + "]"

    def to_json(self) -> list[int]:
        return list(self.word)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) for x in data))


def _check_rank(*perms: Permutation) -> None:
    if len({p.n for p in perms}) > 1:
        raise RankMismatch(f"permutations of different rank: {[p.n for p in perms]}")


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    """w_0, the order-reversing permutation."""
    return Permutation(tuple(range(n, 0, -1)))


def generator(n: int, i: int) -> Permutation:
    if not 1 <= i < n:
        raise ValueError(f"generator index {i} out of range for n={n}")
    return identity(n).times_generator(i)


def from_word(n: int, word: Sequence[int]) -> Permutation:
    """The product s_{i_1} ... s_{i_l} (no reducedness required)."""
    w = identity(n)
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"generator index {i} out of range for n={n}")
        w = w.times_generator(i)
    return w


def length(w: Permutation) -> int:
    word = w.word
    return sum(1 for a, b in itertools.combinations(word, 2) if a > b)


def descents(w: Permutation, side: Side = Side.RIGHT) -> frozenset[int]:
    if side is Side.RIGHT:
        word = w.word
    else:
        word = w.inverse().word
    return frozenset(i for i in range(1, w.n) if word[i - 1] > word[i])


def right_descents(w: Permutation) -> frozenset[int]:
    return descents(w, Side.RIGHT)


def left_descents(w: Permutation) -> frozenset[int]:
    return descents(w, Side.LEFT)


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Lexicographically smallest reduced word.

    Peels off the smallest left descent each step; every reduced word of ``w``
    starts with a left descent, so the greedy choice is lex-minimal.
    """
    out = []
    while True:
        ld = left_descents(w)
        if not ld:
            return tuple(out)
        i = min(ld)
        out.append(i)
        w = w.generator_times(i)


def all_reduced_words(w: Permutation) -> list[tuple[int, ...]]:
    ld = sorted(left_descents(w))
    if not ld:
        return [()]
    return [(i,) + rest for i in ld for rest in all_reduced_words(w.generator_times(i))]


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def weak_le(v: Permutation, w: Permutation, side: Side) -> bool:
    """v <= w in the left or right weak order (length additivity)."""
    _check_rank(v, w)
    if side is Side.LEFT:
        rest = w * v.inverse()
    else:
        rest = v.inverse() * w
    return length(w) == length(v) + length(rest)


class LatticeOp(enum.Enum):
    JOIN = "join"
    MEET = "meet"


EXHAUSTIVE_LIMIT = 5


def weak_lattice_op(v: Permutation, w: Permutation, side: Side, kind: LatticeOp) -> Permutation:
    _check_rank(v, w)
    if v.n <= EXHAUSTIVE_LIMIT:
        return _lattice_op_exhaustive(v, w, side, kind)
    return _lattice_op_inversions(v, w, side, kind)


def join(v: Permutation, w: Permutation, side: Side) -> Permutation:
    return weak_lattice_op(v, w, side, LatticeOp.JOIN)


def meet(v: Permutation, w: Permutation, side: Side) -> Permutation:
    return weak_lattice_op(v, w, side, LatticeOp.MEET)


def _lattice_op_exhaustive(v, w, side, kind):
    perms = all_permutations(v.n)
    if kind is LatticeOp.JOIN:
        bounds = [u for u in perms if weak_le(v, u, side) and weak_le(w, u, side)]
        best = [u for u in bounds if all(weak_le(u, b, side) for b in bounds)]
    else:
        bounds = [u for u in perms if weak_le(u, v, side) and weak_le(u, w, side)]
        best = [u for u in bounds if all(weak_le(b, u, side) for b in bounds)]
    assert len(best) == 1
    return best[0]


def inversion_set(w: Permutation) -> frozenset[tuple[int, int]]:
    """Value pairs (a, b), a < b, with b standing left of a in one-line notation.

    Right weak order is containment of these sets.
    """
    word = w.word
    return frozenset((word[j], word[i]) for i in range(w.n) for j in range(i + 1, w.n) if word[i] > word[j])


def _from_inversion_set(n: int, inv: frozenset[tuple[int, int]]) -> Permutation:
    # b precedes a exactly when (a, b) is an inversion; insertion sort on that total order
    order: list[int] = []
    for val in range(1, n + 1):
        pos = len(order)
        while pos > 0 and (order[pos - 1], val) in inv:
            pos -= 1
        order.insert(pos, val)
    return Permutation(tuple(order))


def _transitive_closure(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(closed):
            for (c, d) in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return closed


def _right_join(v: Permutation, w: Permutation) -> Permutation:
    inv = _transitive_closure(set(inversion_set(v)) | set(inversion_set(w)))
    return _from_inversion_set(v.n, frozenset(inv))


def _lattice_op_inversions(v, w, side, kind):
    w0 = longest(v.n)
    if side is Side.LEFT:
        res = _lattice_op_inversions(v.inverse(), w.inverse(), Side.RIGHT, kind)
        return res.inverse()
    if kind is LatticeOp.JOIN:
        return _right_join(v, w)
    # u -> w0 * u reverses the right weak order
    return w0 * _right_join(w0 * v, w0 * w)


def iter_descent_pairs(n: int) -> Iterator[tuple[Permutation, Permutation]]:
    """Pairs (v, w) with no common right descent."""
    perms = all_permutations(n)
    desc = {p: right_descents(p) for p in perms}
    for v in perms:
        for w in perms:
            if not (desc[v] & desc[w]):
                yield v, w
