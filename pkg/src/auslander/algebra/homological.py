"""Hom spaces, minimal projective resolutions, Ext and isomorphism testing."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct

from flint import fmpq, fmpq_mat

from .. import linalg
from .modules import (
    Module,
    ModuleMap,
    ModuleSide,
    Projective,
    kernel,
    map_from_projective,
    top_complement,
)


class UndecidedIsomorphism(RuntimeError):
    """Invariants agree but no invertible map was found."""


def _hom_system(M: Module, N: Module) -> tuple[fmpq_mat, list[int]]:
    """Linear system whose kernel is Hom(M, N); unknowns are the blocks, row-major."""
    n = M.n
    offsets = []
    off = 0
    for i in range(1, n + 1):
        offsets.append(off)
        off += N.dim(i) * M.dim(i)
    rows: list[dict[int, fmpq]] = []
    for (s, t, am), (_, _, an) in zip(M.action_maps(), N.action_maps()):
        # f_t am - an f_s = 0, an equation per entry (r, c) of a d^N_t x d^M_s matrix
        dm_s, dm_t, dn_s, dn_t = M.dim(s), M.dim(t), N.dim(s), N.dim(t)
        if dn_t == 0 or dm_s == 0:
            continue
        am_rows = am.tolist()
        an_rows = an.tolist()
        for r in range(dn_t):
            for c in range(dm_s):
                eq: dict[int, fmpq] = {}
                for k in range(dm_t):
                    x = am_rows[k][c]
                    if x:
                        idx = offsets[t - 1] + r * dm_t + k
                        eq[idx] = eq.get(idx, 0) + x
                for k in range(dn_s):
                    x = an_rows[r][k]
                    if x:
                        idx = offsets[s - 1] + k * dm_s + c
                        eq[idx] = eq.get(idx, 0) - x
                if any(v != 0 for v in eq.values()):
                    rows.append(eq)
    mat = fmpq_mat(len(rows), off)
    for r, eq in enumerate(rows):
        for idx, x in eq.items():
            if x:
                mat[r, idx] = x
    return mat, offsets


def _check_compatible(M: Module, N: Module) -> None:
    if M.algebra.n != N.algebra.n or M.side is not N.side:
        raise ValueError("modules over different algebras or of different sides")


def hom_space(M: Module, N: Module) -> list[ModuleMap]:
    """A basis of Hom(M, N)."""
    _check_compatible(M, N)
    mat, offsets = _hom_system(M, N)
    null = linalg.nullspace(mat)
    out = []
    cols = null.transpose().tolist()
    for vec in cols:
        blocks = []
        for i in M.algebra.vertices:
            r, c = N.dim(i), M.dim(i)
            o = offsets[i - 1]
            blocks.append(fmpq_mat(r, c, vec[o : o + r * c]) if r * c else fmpq_mat(r, c))
        out.append(ModuleMap(M, N, blocks, check=False))
    return out


def hom_dim(M: Module, N: Module) -> int:
    _check_compatible(M, N)
    mat, offsets = _hom_system(M, N)
    return mat.ncols() - linalg.rank(mat)


def end_dim(M: Module) -> int:
    return hom_dim(M, M)


def projective_cover(M: Module) -> tuple[Projective, ModuleMap]:
    """Minimal projective cover: one generator per top basis vector."""
    if M.side is not ModuleSide.RIGHT:
        raise ValueError("projective covers are built for right modules")
    tops = top_complement(M)
    gens, images = [], []
    for i in M.algebra.vertices:
        t = tops[i - 1]
        for c in range(t.ncols()):
            gens.append(i)
            images.append(linalg.select_columns(t, [c]))
    P = Projective(M.algebra, gens)
    return P, map_from_projective(P, images, M)


@dataclass
class Resolution:
    """0 -> P2 -> P1 -> P0 -> M -> 0; ``maps[0]`` is the cover P0 -> M."""

    module: Module
    projectives: list[Projective]
    maps: list[ModuleMap]

    @property
    def length(self) -> int:
        nz = [k for k, P in enumerate(self.projectives) if P.gens]
        return max(nz) if nz else 0


GLOBAL_DIMENSION = 2


def projective_resolution(M: Module) -> Resolution:
    cached = getattr(M, "_resolution", None)
    if cached is not None:
        return cached
    P0, eps = projective_cover(M)
    projs, maps = [P0], [eps]
    current = eps
    for _ in range(GLOBAL_DIMENSION):
        K, inc = kernel(current)
        P, cov = projective_cover(K)
        d = inc.compose(cov)
        projs.append(P)
        maps.append(d)
        current = d
    K, _ = kernel(current)
    assert K.is_zero(), "projective resolution longer than the global dimension"
    res = Resolution(M, projs, maps)
    M._resolution = res
    return res


def projective_dimension(M: Module) -> int:
    return projective_resolution(M).length


def _hom_from_projective_dims(P: Projective, N: Module) -> list[int]:
    return [N.dim(j) for j in P.gens]


def _pullback_matrix(d: ModuleMap, N: Module) -> fmpq_mat:
    """Matrix of Hom(P_q, N) -> Hom(P_{q+1}, N), phi -> phi o d.

    Hom(P, N) is identified with the direct sum of N_{gens[g]} via the images
    of the generators.
    """
    Pq: Projective = d.target
    Pq1: Projective = d.source
    rows_off, off = [], 0
    for k in Pq1.gens:
        rows_off.append(off)
        off += N.dim(k)
    nrows = off
    cols_off, off = [], 0
    for j in Pq.gens:
        cols_off.append(off)
        off += N.dim(j)
    ncols = off
    out = fmpq_mat(nrows, ncols)
    for h, k in enumerate(Pq1.gens):
        col = d.block(k).tolist()
        hc = Pq1.generator_coord(h)
        for g, j in enumerate(Pq.gens):
            acc = None
            for v in range(1, min(j, k) + 1):
                c = col[Pq.coord(g, k, v)][hc]
                if c:
                    term = N.path_action((j, k, v)) * c
                    acc = term if acc is None else acc + term
            if acc is None:
                continue
            for r, row in enumerate(acc.tolist()):
                for s, x in enumerate(row):
                    if x:
                        out[rows_off[h] + r, cols_off[g] + s] = x
    return out


def hom_complex(M: Module, N: Module) -> tuple[list[int], list[fmpq_mat]]:
    """Dimensions of Hom(P_q, N) and the differentials Hom(P_q,N) -> Hom(P_{q+1},N)."""
    res = projective_resolution(M)
    dims = [sum(_hom_from_projective_dims(P, N)) for P in res.projectives]
    diffs = [_pullback_matrix(d, N) for d in res.maps[1:]]
    return dims, diffs


def ext_dims(M: Module, N: Module) -> tuple[int, int, int]:
    """(dim Ext^0, dim Ext^1, dim Ext^2)."""
    _check_compatible(M, N)
    dims, diffs = hom_complex(M, N)
    r1, r2 = linalg.rank(diffs[0]), linalg.rank(diffs[1])
    return dims[0] - r1, dims[1] - r1 - r2, dims[2] - r2


def ext_dim(M: Module, N: Module, q: int) -> int:
    if q not in (0, 1, 2):
        raise ValueError(f"Ext degree must be 0, 1 or 2, got {q}")
    return ext_dims(M, N)[q]


def ext1_cocycle(M: Module, N: Module) -> tuple[fmpq_mat, fmpq_mat]:
    """Cocycles spanning a complement of coboundaries in Hom(P_1, N).

    Returns (cocycle columns, coboundary columns) in the generator coordinates
    of Hom(P_1, N).
    """
    dims, diffs = hom_complex(M, N)
    cocycles = linalg.nullspace(diffs[1]) if diffs[1].nrows() else linalg.identity(dims[1])
    coboundaries = linalg.column_basis(diffs[0])
    if coboundaries.ncols():
        aug = linalg.hstack([coboundaries, cocycles])
    else:
        aug = cocycles
    _, pivots = linalg.rref(aug)
    extra = [p - coboundaries.ncols() for p in pivots if p >= coboundaries.ncols()]
    return linalg.select_columns(cocycles, extra), coboundaries


def endomorphism_top_rank(M: Module) -> int:
    """dim End(M)/rad End(M), via the trace form tr(fg) (characteristic 0).

    The radical of End(M) is exactly the kernel of this form, so M is
    indecomposable over the algebraic closure iff the rank is 1.
    """
    basis = hom_space(M, M)
    k = len(basis)
    gram = fmpq_mat(k, k)
    for a in range(k):
        for b in range(a, k):
            tr = fmpq(0)
            for fa, fb in zip(basis[a].blocks, basis[b].blocks):
                if fa.nrows():
                    prod = fa * fb
                    for i in range(prod.nrows()):
                        tr += prod[i, i]
            gram[a, b] = tr
            gram[b, a] = tr
    return linalg.rank(gram)


def is_indecomposable(M: Module) -> bool:
    return not M.is_zero() and endomorphism_top_rank(M) == 1


ISO_RANDOM_TRIALS = 64
_default_seed = 0


def set_default_seed(seed: int) -> None:
    """Seed used by the randomized isomorphism search when none is passed."""
    global _default_seed
    _default_seed = seed


def _combine(basis: list[ModuleMap], coeffs) -> list[fmpq_mat]:
    blocks = [b * 0 for b in basis[0].blocks]
    for c, f in zip(coeffs, basis):
        if c:
            blocks = [x + y * c for x, y in zip(blocks, f.blocks)]
    return blocks


def find_isomorphism(M: Module, N: Module, seed: int | None = None) -> ModuleMap | None:
    """An invertible map M -> N, or None when the invariants already separate them.

    Raises UndecidedIsomorphism if invariants agree and the search fails.
    """
    _check_compatible(M, N)
    if M is N:
        return ModuleMap(M, N, [linalg.identity(d) for d in M.dims], check=False)
    if M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return ModuleMap(M, N, [fmpq_mat(0, 0) for _ in M.dims], check=False)
    if M.invariants != N.invariants:
        return None
    hom_mn = hom_space(M, N)
    e_m, e_n, h_nm = end_dim(M), end_dim(N), hom_dim(N, M)
    if not (len(hom_mn) == e_m == e_n == h_nm):
        return None
    k = len(hom_mn)
    # small coefficient vectors first: unit vectors and 0/1 patterns
    tried = 0
    for coeffs in iproduct((0, 1), repeat=min(k, 6)):
        full = list(coeffs) + [0] * (k - len(coeffs))
        if not any(full):
            continue
        blocks = _combine(hom_mn, full)
        tried += 1
        if all(linalg.is_invertible(b) for b in blocks):
            return ModuleMap(M, N, blocks, check=False)
    rng = random.Random(_default_seed if seed is None else seed)
    for _ in range(ISO_RANDOM_TRIALS):
        full = [fmpq(rng.randint(-(2**20), 2**20), rng.randint(1, 2**10)) for _ in range(k)]
        blocks = _combine(hom_mn, full)
        if all(linalg.is_invertible(b) for b in blocks):
            return ModuleMap(M, N, blocks, check=False)
    raise UndecidedIsomorphism(f"invariants of {M} and {N} agree but no isomorphism was found")


def is_isomorphic(M: Module, N: Module, seed: int | None = None) -> bool:
    return find_isomorphism(M, N, seed=seed) is not None
