"""Exact rational matrix helpers on top of ``flint.fmpq_mat``.

Vectors of a vertex space are stored as columns.  Zero-sized matrices are
legal everywhere and show up constantly (vertex spaces of dimension 0).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

Matrix = fmpq_mat


def zeros(rows: int, cols: int) -> fmpq_mat:
    return fmpq_mat(rows, cols)


def identity(k: int) -> fmpq_mat:
    m = fmpq_mat(k, k)
    for i in range(k):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    if not rows:
        return fmpq_mat(0, ncols or 0)
    c = len(rows[0])
    return fmpq_mat(len(rows), c, [x for r in rows for x in r])


def to_rows(m: fmpq_mat) -> list[list[fmpq]]:
    return m.tolist()


def hstack(blocks: Sequence[fmpq_mat], rows: int | None = None) -> fmpq_mat:
    if not blocks:
        return fmpq_mat(rows or 0, 0)
    r = blocks[0].nrows()
    lists = [b.tolist() for b in blocks]
    for b in blocks:
        assert b.nrows() == r, "row mismatch in hstack"
    cols = sum(b.ncols() for b in blocks)
    out = fmpq_mat(r, cols)
    off = 0
    for b, lst in zip(blocks, lists):
        for i, row in enumerate(lst):
            for j, x in enumerate(row):
                if x:
                    out[i, off + j] = x
        off += b.ncols()
    return out


def vstack(blocks: Sequence[fmpq_mat], cols: int | None = None) -> fmpq_mat:
    if not blocks:
        return fmpq_mat(0, cols or 0)
    return hstack([b.transpose() for b in blocks]).transpose()


def block_diag(blocks: Sequence[fmpq_mat]) -> fmpq_mat:
    r = sum(b.nrows() for b in blocks)
    c = sum(b.ncols() for b in blocks)
    out = fmpq_mat(r, c)
    ro = co = 0
    for b in blocks:
        for i, row in enumerate(b.tolist()):
            for j, x in enumerate(row):
                if x:
                    out[ro + i, co + j] = x
        ro += b.nrows()
        co += b.ncols()
    return out


def is_zero(m: fmpq_mat) -> bool:
    return all(x == 0 for x in m.entries())


def rref(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(m.nrows(), m.ncols()), []
    r, rank = m.rref()
    rows = r.tolist()
    pivots = []
    for i in range(rank):
        row = rows[i]
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return r, pivots


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: fmpq_mat) -> fmpq_mat:
    """Columns spanning {x : m x = 0}."""
    ncols = m.ncols()
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = fmpq_mat(ncols, len(free))
    rows = r.tolist()
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, p in enumerate(pivots):
            x = rows[i][f]
            if x:
                out[p, k] = -x
    return out


def column_basis(m: fmpq_mat) -> fmpq_mat:
    """Independent columns of ``m`` spanning its column space."""
    _, pivots = rref(m)
    return select_columns(m, pivots)


def select_columns(m: fmpq_mat, cols: Iterable[int]) -> fmpq_mat:
    cols = list(cols)
    out = fmpq_mat(m.nrows(), len(cols))
    rows = m.tolist()
    for k, c in enumerate(cols):
        for i in range(m.nrows()):
            x = rows[i][c]
            if x:
                out[i, k] = x
    return out


def complement_basis(m: fmpq_mat, dim: int) -> fmpq_mat:
    """Standard basis vectors extending the column space of ``m`` to K^dim."""
    aug = hstack([m, identity(dim)]) if m.ncols() else identity(dim)
    _, pivots = rref(aug)
    extra = [p - m.ncols() for p in pivots if p >= m.ncols()]
    return select_columns(identity(dim), extra)


def solve_columns(basis: fmpq_mat, vectors: fmpq_mat) -> fmpq_mat:
    """Coordinates C with ``basis @ C == vectors``; basis must have full column rank."""
    k = basis.ncols()
    if vectors.ncols() == 0:
        return fmpq_mat(k, 0)
    if k == 0:
        if not is_zero(vectors):
            raise ValueError("vector not in span")
        return fmpq_mat(0, vectors.ncols())
    aug = hstack([basis, vectors])
    r, pivots = rref(aug)
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ValueError("vector not in span")
    rows = r.tolist()
    out = fmpq_mat(k, vectors.ncols())
    for i in range(k):
        for j in range(vectors.ncols()):
            x = rows[i][k + j]
            if x:
                out[i, j] = x
    return out


def left_annihilator(m: fmpq_mat) -> fmpq_mat:
    """Rows Q of full row rank with ker Q = column space of ``m``."""
    return nullspace(m.transpose()).transpose()


def right_inverse(q: fmpq_mat) -> fmpq_mat:
    """S with ``q @ S == I`` for ``q`` of full row rank."""
    r = q.nrows()
    if r == 0:
        return fmpq_mat(q.ncols(), 0)
    _, pivots = rref(q)
    assert len(pivots) == r, "matrix is not of full row rank"
    sub = select_columns(q, pivots).inv()
    out = fmpq_mat(q.ncols(), r)
    srows = sub.tolist()
    for i, p in enumerate(pivots):
        for j in range(r):
            x = srows[i][j]
            if x:
                out[p, j] = x
    return out


def is_invertible(m: fmpq_mat) -> bool:
    if m.nrows() != m.ncols():
        return False
    return m.nrows() == 0 or m.det() != 0


def to_strings(m: fmpq_mat) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.tolist()]


def from_strings(rows: Sequence[Sequence[str]], nrows: int, ncols: int) -> fmpq_mat:
    out = fmpq_mat(nrows, ncols)
    for i, row in enumerate(rows):
        for j, s in enumerate(row):
            f = Fraction(s)
            if f:
                out[i, j] = fmpq(f.numerator, f.denominator)
    return out
