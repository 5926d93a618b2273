"""Two-sided ideals of Lambda_n, their summands e_i I, and - (x) I."""
from __future__ import annotations

from dataclasses import dataclass

from flint import fmpq, fmpq_mat

from .. import linalg
from .homological import projective_resolution
from .modules import Module, ModuleMap, Projective, cokernel, direct_sum, sum_injections
from .path_algebra import AuslanderAlgebra, BasisPath


@dataclass(eq=False)
class Ideal:
    """Subspace of Lambda stored as the rows of its reduced row echelon form."""

    algebra: AuslanderAlgebra
    rows: fmpq_mat

    @property
    def dim(self) -> int:
        return self.rows.nrows()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.algebra.n == other.algebra.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.algebra.n, tuple(str(x) for x in self.rows.entries())))

    def elements(self) -> list[dict[BasisPath, fmpq]]:
        return [self.algebra.from_vector(r) for r in self.rows.tolist()]

    def corner(self, i: int, j: int) -> fmpq_mat:
        """Columns spanning e_i I e_j in the coordinates of the paths (i, j, 1..min(i, j))."""
        alg = self.algebra
        idx = [alg.index[p] for p in alg.paths(i, j)]
        proj = linalg.select_columns(self.rows, idx).transpose()
        return linalg.column_basis(proj)


def _span(algebra: AuslanderAlgebra, vectors: list[list[fmpq]]) -> fmpq_mat:
    if not vectors:
        return fmpq_mat(0, algebra.dim)
    r, pivots = linalg.rref(linalg.from_rows(vectors))
    return fmpq_mat(len(pivots), algebra.dim, r.entries()[: len(pivots) * algebra.dim])


def ideal_closure(gens: list[dict[BasisPath, object]], algebra: AuslanderAlgebra) -> Ideal:
    """Smallest two-sided ideal containing ``gens``."""
    alg = algebra
    multipliers = [{a.path: fmpq(1)} for a in alg.arrows]
    multipliers += [{alg.idempotent(i): fmpq(1)} for i in alg.vertices]
    vectors = [alg.to_vector(alg.element(g)) for g in gens]
    rows = _span(alg, vectors)
    while True:
        elems = [alg.from_vector(r) for r in rows.tolist()]
        new = list(rows.tolist())
        for x in elems:
            for m in multipliers:
                for prod in (alg.multiply(x, m), alg.multiply(m, x)):
                    if prod:
                        new.append(alg.to_vector(prod))
        grown = _span(alg, new)
        if grown.nrows() == rows.nrows():
            return Ideal(alg, rows)
        rows = grown


def whole_algebra(algebra: AuslanderAlgebra) -> Ideal:
    return ideal_closure([algebra.one()], algebra)


def complement_ideal(algebra: AuslanderAlgebra, i: int) -> Ideal:
    """I_i = Lambda (1 - e_i) Lambda."""
    gen = {algebra.idempotent(j): 1 for j in algebra.vertices if j != i}
    return ideal_closure([gen], algebra)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    alg = I.algebra
    vectors = []
    for x in I.elements():
        for y in J.elements():
            prod = alg.multiply(x, y)
            if prod:
                vectors.append(alg.to_vector(prod))
    rows = _span(alg, vectors)
    return ideal_closure([alg.from_vector(r) for r in rows.tolist()], alg)


def _corner_left_multiply(alg: AuslanderAlgebra, lam: dict, src: int, dst: int, l: int) -> fmpq_mat:
    """Matrix of y -> lam * y from e_src Lambda e_l to e_dst Lambda e_l in path coordinates."""
    out = fmpq_mat(min(dst, l), min(src, l))
    for v in range(1, min(src, l) + 1):
        prod = alg.multiply(lam, {(src, l, v): fmpq(1)})
        for (a, b, u), c in prod.items():
            assert a == dst and b == l
            out[u - 1, v - 1] = c
    return out


def _corner_right_multiply(alg: AuslanderAlgebra, i: int, j: int, arrow_path: BasisPath) -> fmpq_mat:
    """Matrix of y -> y * a from e_i Lambda e_j to e_i Lambda e_k for an arrow a: j -> k."""
    k = arrow_path[1]
    out = fmpq_mat(min(i, k), min(i, j))
    for v in range(1, min(i, j) + 1):
        r = alg.basis_product((i, j, v), arrow_path)
        if r is not None:
            out[r[2] - 1, v - 1] = 1
    return out


def ideal_summand_module(I: Ideal, i: int) -> Module:
    """The right module e_i I; vertex space at j is e_i I e_j."""
    alg = I.algebra
    bases = {j: I.corner(i, j) for j in alg.vertices}
    mats = {}
    for a in alg.arrows:
        j, k = a.source, a.target
        act = _corner_right_multiply(alg, i, j, a.path)
        mats[a.name] = linalg.solve_columns(bases[k], act * bases[j])
    M = Module(alg, [bases[j].ncols() for j in alg.vertices], mats)
    M._corner_bases = bases
    return M


def left_multiplication(I: Ideal, lam: dict, src: int, dst: int) -> ModuleMap:
    """y -> lam * y as a map of right modules e_src I -> e_dst I (lam in e_dst Lambda e_src)."""
    alg = I.algebra
    S, T = ideal_summand_module(I, src), ideal_summand_module(I, dst)
    return _left_multiplication_between(alg, lam, S, T, src, dst)


def _left_multiplication_between(alg, lam, S: Module, T: Module, src: int, dst: int) -> ModuleMap:
    blocks = []
    for l in alg.vertices:
        act = _corner_left_multiply(alg, lam, src, dst, l)
        blocks.append(linalg.solve_columns(T._corner_bases[l], act * S._corner_bases[l]))
    return ModuleMap(S, T, blocks)


class ProjectiveDimensionTooLarge(ValueError):
    pass


def _presentation_coefficients(d: ModuleMap, h: int, g: int) -> dict:
    """The element lam in e_{gens[g]} Lambda e_{gens'[h]} with d(e_h) having g-component lam."""
    Pq: Projective = d.target
    Pq1: Projective = d.source
    j, k = Pq.gens[g], Pq1.gens[h]
    col = d.block(k)
    hc = Pq1.generator_coord(h)
    lam = {}
    for v in range(1, min(j, k) + 1):
        c = col[Pq.coord(g, k, v), hc]
        if c:
            lam[(j, k, v)] = c
    return lam


def tensor_with_ideal(M: Module, I: Ideal) -> Module:
    """M (x)_Lambda I via a projective presentation of M (requires proj.dim M <= 1)."""
    res = projective_resolution(M)
    if res.projectives[2].gens:
        raise ProjectiveDimensionTooLarge("M has projective dimension 2")
    alg = I.algebra
    P0, P1 = res.projectives[0], res.projectives[1]
    d = res.maps[1]
    summands0 = [ideal_summand_module(I, j) for j in P0.gens]
    if not summands0:
        return Module(alg, [0] * alg.n)
    S0 = direct_sum(summands0)
    if not P1.gens:
        return S0
    summands1 = [ideal_summand_module(I, k) for k in P1.gens]
    S1 = direct_sum(summands1)
    inj0 = sum_injections(summands0, S0)
    # induced map S1 -> S0, built column block by column block
    blocks = [fmpq_mat(S0.dim(l), S1.dim(l)) for l in alg.vertices]
    col_off = [0] * alg.n
    for h, k in enumerate(P1.gens):
        src = summands1[h]
        for g, j in enumerate(P0.gens):
            lam = _presentation_coefficients(d, h, g)
            if not lam:
                continue
            f = _left_multiplication_between(alg, lam, src, summands0[g], k, j)
            f = inj0[g].compose(f)
            for l in alg.vertices:
                b = f.block(l)
                for r, row in enumerate(b.tolist()):
                    for c, x in enumerate(row):
                        if x:
                            blocks[l - 1][r, col_off[l - 1] + c] += x
        for l in alg.vertices:
            col_off[l - 1] += src.dim(l)
    induced = ModuleMap(S1, S0, blocks)
    C, _ = cokernel(induced)
    C.check_relations()
    return C
