"""Finite-dimensional modules over Lambda_n as quiver representations.

A right module M is stored vertex-wise, M_i = M e_i, with one matrix per
arrow a: i -> j realising m -> m.a as a map M_i -> M_j (shape d_j x d_i).
Left modules (needed for duality) store, for a: i -> j, the map a.- from
Y_j = e_j Y to Y_i = e_i Y (shape d_i x d_j).  Vectors are columns.
"""
from __future__ import annotations

import enum
import json
from functools import cached_property
from typing import Sequence

from flint import fmpq_mat

from .. import linalg
from .path_algebra import AuslanderAlgebra, BasisPath, build_algebra


class ModuleSide(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


class RelationViolation(ValueError):
    pass


class Module:
    def __init__(
        self,
        algebra: AuslanderAlgebra,
        dims: Sequence[int],
        mats: dict[str, fmpq_mat] | None = None,
        side: ModuleSide = ModuleSide.RIGHT,
        check: bool = True,
    ):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.side = side
        if len(self.dims) != algebra.n:
            raise ValueError(f"expected {algebra.n} vertex dimensions, got {len(self.dims)}")
        mats = dict(mats or {})
        self.mats: dict[str, fmpq_mat] = {}
        for a in algebra.arrows:
            src, tgt = self._ends(a.source, a.target)
            shape = (self.dims[tgt - 1], self.dims[src - 1])
            m = mats.pop(a.name, None)
            if m is None:
                m = fmpq_mat(*shape)
            if (m.nrows(), m.ncols()) != shape:
                raise ValueError(f"arrow {a.name}: matrix shape {(m.nrows(), m.ncols())}, expected {shape}")
            self.mats[a.name] = m
        if mats:
            raise ValueError(f"unknown arrows {sorted(mats)}")
        self._path_cache: dict[BasisPath, fmpq_mat] = {}
        if check:
            self.check_relations()

    def _ends(self, source: int, target: int) -> tuple[int, int]:
        # vertices of the linear map realising a path source -> target
        if self.side is ModuleSide.RIGHT:
            return source, target
        return target, source

    @property
    def n(self) -> int:
        return self.algebra.n

    def dim(self, i: int) -> int:
        return self.dims[i - 1]

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def word_action(self, word: Sequence[str], source: int) -> fmpq_mat:
        """Matrix of the action of a path given as arrow names (left to right)."""
        alg = self.algebra
        v = source
        verts = [v]
        for name in word:
            a = alg.arrow_by_name[name]
            assert a.source == v, f"path {word} is not composable"
            v = a.target
            verts.append(v)
        src, tgt = self._ends(source, v)
        out = linalg.identity(self.dim(src))
        if self.side is ModuleSide.RIGHT:
            for name in word:
                out = self.mats[name] * out
        else:
            for name in reversed(word):
                out = self.mats[name] * out
        assert out.nrows() == self.dim(tgt)
        return out

    def path_action(self, p: BasisPath) -> fmpq_mat:
        m = self._path_cache.get(p)
        if m is None:
            m = self.word_action(self.algebra.arrow_word(p), p[0])
            self._path_cache[p] = m
        return m

    def action_maps(self) -> list[tuple[int, int, fmpq_mat]]:
        """(source vertex, target vertex, matrix) for every arrow."""
        out = []
        for a in self.algebra.arrows:
            s, t = self._ends(a.source, a.target)
            out.append((s, t, self.mats[a.name]))
        return out

    def check_relations(self) -> None:
        for rel in self.algebra.relations():
            acc = None
            for coeff, word in rel.terms:
                start = self.algebra.arrow_by_name[word[0]].source
                term = self.word_action(word, start) * coeff
                acc = term if acc is None else acc + term
            if acc is not None and not linalg.is_zero(acc):
                raise RelationViolation(f"relation {rel.terms} does not hold")

    @cached_property
    def invariants(self) -> tuple:
        """Cheap isomorphism invariants: side, dims and ranks of all basis paths."""
        ranks = tuple(linalg.rank(self.path_action(p)) for p in self.algebra.basis)
        return (self.side, self.dims, ranks)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "side": self.side.value,
            "arrows": {name: linalg.to_strings(m) for name, m in self.mats.items()},
        }

    @classmethod
    def from_json(cls, data: dict | str, algebra: AuslanderAlgebra | None = None) -> "Module":
        if isinstance(data, str):
            data = json.loads(data)
        dims = [int(d) for d in data["dims"]]
        alg = algebra or build_algebra(len(dims))
        side = ModuleSide(data.get("side", "right"))
        proto = Module(alg, dims, side=side, check=False)
        mats = {}
        for a in alg.arrows:
            s, t = proto._ends(a.source, a.target)
            rows = data["arrows"].get(a.name, [])
            mats[a.name] = linalg.from_strings(rows, dims[t - 1], dims[s - 1])
        return cls(alg, dims, mats, side=side)

    def __repr__(self) -> str:
        return f"Module(n={self.n}, dims={self.dims}, side={self.side.value})"


class Projective(Module):
    """Direct sum of indecomposable projectives e_g Lambda, one per generator.

    The basis of the vertex space at k lists, for each generator g in order,
    the paths (gens[g], k, v) for v = 1..min(gens[g], k).
    """

    def __init__(self, algebra: AuslanderAlgebra, gens: Sequence[int]):
        self.gens = tuple(gens)
        n = algebra.n
        offsets = {}
        dims = [0] * n
        for k in range(1, n + 1):
            off = 0
            for g, j in enumerate(self.gens):
                offsets[(g, k)] = off
                off += min(j, k)
            dims[k - 1] = off
        self._offsets = offsets
        mats = {}
        for a in algebra.arrows:
            src, tgt = a.source, a.target
            m = fmpq_mat(dims[tgt - 1], dims[src - 1])
            for g, j in enumerate(self.gens):
                for v in range(1, min(j, src) + 1):
                    r = algebra.basis_product((j, src, v), a.path)
                    if r is not None:
                        m[self.coord(g, tgt, r[2]), self.coord(g, src, v)] = 1
            mats[a.name] = m
        super().__init__(algebra, dims, mats, check=False)

    def coord(self, g: int, k: int, v: int) -> int:
        """Index of the basis path (gens[g], k, v) in the vertex space at k."""
        return self._offsets[(g, k)] + v - 1

    def generator_coord(self, g: int) -> int:
        j = self.gens[g]
        return self.coord(g, j, j)


class ModuleMap:
    def __init__(self, source: Module, target: Module, blocks: Sequence[fmpq_mat], check: bool = True):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        n = source.n
        if len(self.blocks) != n:
            raise ValueError("one block per vertex required")
        for i in range(1, n + 1):
            b = self.blocks[i - 1]
            if (b.nrows(), b.ncols()) != (target.dim(i), source.dim(i)):
                raise ValueError(f"block {i} has wrong shape")
        if check:
            self.check()

    def block(self, i: int) -> fmpq_mat:
        return self.blocks[i - 1]

    def check(self) -> None:
        for (s, t, am), (_, _, an) in zip(self.source.action_maps(), self.target.action_maps()):
            if not linalg.is_zero(self.block(t) * am - an * self.block(s)):
                raise RelationViolation("map does not commute with the module structure")

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        assert first.target is self.target or first.target.dims == self.source.dims
        return ModuleMap(first.source, self.target, [b * a for a, b in zip(first.blocks, self.blocks)], check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a * c for a in self.blocks], check=False)

    def is_injective(self) -> bool:
        return all(linalg.rank(b) == b.ncols() for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(linalg.rank(b) == b.nrows() for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return all(linalg.is_invertible(b) for b in self.blocks)

    def is_zero(self) -> bool:
        return all(linalg.is_zero(b) for b in self.blocks)


def zero_map(source: Module, target: Module) -> ModuleMap:
    return ModuleMap(
        source, target, [fmpq_mat(target.dim(i), source.dim(i)) for i in source.algebra.vertices], check=False
    )


def identity_map(M: Module) -> ModuleMap:
    return ModuleMap(M, M, [linalg.identity(d) for d in M.dims], check=False)


def zero_module(algebra: AuslanderAlgebra, side: ModuleSide = ModuleSide.RIGHT) -> Module:
    return Module(algebra, [0] * algebra.n, side=side)


def simple(algebra: AuslanderAlgebra, i: int) -> Module:
    dims = [0] * algebra.n
    dims[i - 1] = 1
    return Module(algebra, dims)


def projective(algebra: AuslanderAlgebra, i: int) -> Projective:
    """e_i Lambda."""
    return Projective(algebra, [i])


def left_projective(algebra: AuslanderAlgebra, i: int) -> Module:
    """Lambda e_i as a left module: Y_j = e_j Lambda e_i, arrows act by left multiplication."""
    n = algebra.n
    dims = [min(j, i) for j in range(1, n + 1)]
    mats = {}
    for a in algebra.arrows:
        # a: s -> t sends e_t Lambda e_i to e_s Lambda e_i
        s, t = a.source, a.target
        m = fmpq_mat(dims[s - 1], dims[t - 1])
        for v in range(1, min(t, i) + 1):
            r = algebra.basis_product(a.path, (t, i, v))
            if r is not None:
                m[r[2] - 1, v - 1] = 1
        mats[a.name] = m
    return Module(algebra, dims, mats, side=ModuleSide.LEFT)


def dual(M: Module) -> Module:
    """D = Hom_K(-, K); swaps left and right modules, transposing every action."""
    side = ModuleSide.LEFT if M.side is ModuleSide.RIGHT else ModuleSide.RIGHT
    return Module(M.algebra, M.dims, {k: m.transpose() for k, m in M.mats.items()}, side=side)


def injective(algebra: AuslanderAlgebra, i: int) -> Module:
    """D(Lambda e_i), the injective hull of the simple at i."""
    return dual(left_projective(algebra, i))


def direct_sum(mods: Sequence[Module]) -> Module:
    assert mods, "empty direct sum"
    alg = mods[0].algebra
    side = mods[0].side
    dims = [sum(M.dim(i) for M in mods) for i in alg.vertices]
    mats = {a.name: linalg.block_diag([M.mats[a.name] for M in mods]) for a in alg.arrows}
    return Module(alg, dims, mats, side=side, check=False)


def sum_injections(mods: Sequence[Module], S: Module) -> list[ModuleMap]:
    out = []
    offsets = [0] * S.n
    for M in mods:
        blocks = []
        for i in M.algebra.vertices:
            b = fmpq_mat(S.dim(i), M.dim(i))
            for r in range(M.dim(i)):
                b[offsets[i - 1] + r, r] = 1
            blocks.append(b)
            offsets[i - 1] += M.dim(i)
        out.append(ModuleMap(M, S, blocks, check=False))
    return out


def map_into_sum(maps: Sequence[ModuleMap], S: Module) -> ModuleMap:
    """The column (f_1, ..., f_k): M -> S = N_1 + ... + N_k."""
    src = maps[0].source
    blocks = [linalg.vstack([f.block(i) for f in maps], cols=src.dim(i)) for i in src.algebra.vertices]
    return ModuleMap(src, S, blocks, check=False)


def map_from_sum(maps: Sequence[ModuleMap], S: Module) -> ModuleMap:
    """The row (f_1, ..., f_k): S = M_1 + ... + M_k -> N."""
    tgt = maps[0].target
    blocks = [linalg.hstack([f.block(i) for f in maps], rows=tgt.dim(i)) for i in tgt.algebra.vertices]
    return ModuleMap(S, tgt, blocks, check=False)


def map_from_projective(P: Projective, images: Sequence[fmpq_mat], N: Module) -> ModuleMap:
    """The map e_{g} -> images[g] (a column in N at vertex gens[g])."""
    blocks = []
    for k in P.algebra.vertices:
        cols = []
        for g, j in enumerate(P.gens):
            for v in range(1, min(j, k) + 1):
                cols.append(N.path_action((j, k, v)) * images[g])
        blocks.append(linalg.hstack(cols, rows=N.dim(k)))
    return ModuleMap(P, N, blocks, check=False)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    M = f.source
    bases = [linalg.nullspace(f.block(i)) for i in M.algebra.vertices]
    mats = {}
    for a in M.algebra.arrows:
        s, t = M._ends(a.source, a.target)
        mats[a.name] = linalg.solve_columns(bases[t - 1], M.mats[a.name] * bases[s - 1])
    K = Module(M.algebra, [b.ncols() for b in bases], mats, side=M.side, check=False)
    return K, ModuleMap(K, M, bases, check=False)


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    N = f.target
    bases = [linalg.column_basis(f.block(i)) for i in N.algebra.vertices]
    mats = {}
    for a in N.algebra.arrows:
        s, t = N._ends(a.source, a.target)
        mats[a.name] = linalg.solve_columns(bases[t - 1], N.mats[a.name] * bases[s - 1])
    Im = Module(N.algebra, [b.ncols() for b in bases], mats, side=N.side, check=False)
    return Im, ModuleMap(Im, N, bases, check=False)


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    N = f.target
    quots = [linalg.left_annihilator(f.block(i)) for i in N.algebra.vertices]
    sections = [linalg.right_inverse(q) for q in quots]
    mats = {}
    for a in N.algebra.arrows:
        s, t = N._ends(a.source, a.target)
        mats[a.name] = quots[t - 1] * N.mats[a.name] * sections[s - 1]
    C = Module(N.algebra, [q.nrows() for q in quots], mats, side=N.side, check=False)
    return C, ModuleMap(N, C, quots, check=False)


def top_complement(M: Module) -> list[fmpq_mat]:
    """Per vertex, columns spanning a complement of (M rad)_i."""
    out = []
    for i in M.algebra.vertices:
        incoming = [m for (s, t, m) in M.action_maps() if t == i]
        rad = linalg.hstack(incoming, rows=M.dim(i))
        out.append(linalg.complement_basis(rad, M.dim(i)))
    return out


def top_dims(M: Module) -> tuple[int, ...]:
    return tuple(c.ncols() for c in top_complement(M))
