"""Standard modules, the exceptional sequences E_w and one left mutation."""
from __future__ import annotations

from dataclasses import dataclass

from flint import fmpq

from . import linalg, sym, tilt
from .algebra import homological as hom
from .algebra.ideals import Ideal, ideal_summand_module, left_multiplication, tensor_with_ideal
from .algebra.modules import (
    Module,
    cokernel,
    direct_sum,
    map_from_projective,
    map_into_sum,
    projective,
    simple,
)
from .algebra.path_algebra import build_algebra
from .sym import Permutation


class ExceptionalityFailure(RuntimeError):
    pass


class ExtensionDimensionError(ValueError):
    pass


@dataclass
class ExceptionalSequence:
    modules: list[Module]

    def __len__(self) -> int:
        return len(self.modules)

    def __getitem__(self, k: int) -> Module:
        return self.modules[k]

    def to_json(self) -> list[dict]:
        return [M.to_json() for M in self.modules]


def standard_module(n: int, k: int) -> Module:
    """Delta_k = coker(beta_{i+1}.: e_i Lambda -> e_{i+1} Lambda) for i = n - k."""
    if not 1 <= k <= n:
        raise ValueError(f"standard module index {k} outside 1..{n}")
    alg = build_algebra(n)
    i = n - k
    if i == 0:
        return projective(alg, 1)
    beta = tilt.regular(n).left_action[f"b{i + 1}"]
    C, _ = cokernel(beta)
    return C


def standard_sequence(n: int) -> ExceptionalSequence:
    return ExceptionalSequence([standard_module(n, k) for k in range(1, n + 1)])


def _sequence_entry(I: Ideal, n: int, k: int) -> Module:
    i = n - k
    if i == 0:
        return ideal_summand_module(I, 1)
    f = left_multiplication(I, {(i + 1, i, i): fmpq(1)}, i, i + 1)
    C, _ = cokernel(f)
    return C


def exceptional_sequence(w: Permutation, check: bool = True) -> ExceptionalSequence:
    """E_w with E_{w,k} = coker(e_i I_w -> e_{i+1} I_w), i = n - k."""
    n = w.n
    I = tilt.ideal_I_w(w)
    E = ExceptionalSequence([_sequence_entry(I, n, k) for k in range(1, n + 1)])
    if check:
        failure = exceptionality_failure(E.modules)
        if failure:
            raise ExceptionalityFailure(f"E_{w}: {failure}")
    return E


def exceptional_entry_by_tensor(w: Permutation, k: int) -> Module:
    """Delta_k (x) I_w, the second route to E_{w,k}."""
    return tensor_with_ideal(standard_module(w.n, k), tilt.ideal_I_w(w))


def exceptionality_failure(modules: list[Module]) -> str | None:
    """First violated condition of a full exceptional sequence, or None."""
    if not modules:
        return "empty sequence"
    n = modules[0].algebra.n
    if len(modules) != n:
        return f"{len(modules)} terms, expected {n}"
    for k, E in enumerate(modules, start=1):
        e0, e1, e2 = hom.ext_dims(E, E)
        if (e0, e1, e2) != (1, 0, 0):
            return f"term {k} is not exceptional: Ext^*(E, E) = ({e0}, {e1}, {e2})"
    for i in range(n):
        for j in range(i + 1, n):
            dims = hom.ext_dims(modules[j], modules[i])
            if any(dims):
                return f"Ext^*(E_{j + 1}, E_{i + 1}) = {dims}"
    return None


def is_full_exceptional_sequence(modules: list[Module] | ExceptionalSequence) -> bool:
    mods = modules.modules if isinstance(modules, ExceptionalSequence) else list(modules)
    return exceptionality_failure(mods) is None


def enumerate_exceptional_modules(n: int, objects: dict | None = None) -> list[Module]:
    """Isomorphism classes of first summands e_1 T_x over the interval."""
    objs = objects if objects is not None else tilt.explore_by_mutation(n)
    reps: list[Module] = []
    for T in objs.values():
        M = T.slot(1)
        if not any(hom.is_isomorphic(M, R) for R in reps):
            reps.append(M)
    return reps


def universal_extension(M: Module, N: Module) -> Module:
    """Middle term of the non-split 0 -> N -> X -> M -> 0 when Ext^1(M, N) is one-dimensional.

    X = coker(P_1 -> P_0 + N, p -> (d p, -phi p)) for a cocycle phi representing
    the extension class.
    """
    cocycles, _ = hom.ext1_cocycle(M, N)
    if cocycles.ncols() != 1:
        raise ExtensionDimensionError(f"Ext^1 has dimension {cocycles.ncols()}, expected 1")
    res = hom.projective_resolution(M)
    P0, P1 = res.projectives[0], res.projectives[1]
    col = [cocycles[r, 0] for r in range(cocycles.nrows())]
    images, off = [], 0
    for g in P1.gens:
        d = N.dim(g)
        images.append(linalg.from_rows([[c] for c in col[off : off + d]], ncols=1))
        off += d
    phi = map_from_projective(P1, images, N)
    S = direct_sum([P0, N])
    f = map_into_sum([res.maps[1], phi.scale(-1)], S)
    X, _ = cokernel(f)
    return X


@dataclass
class MutationReport:
    ok: bool
    ext1: int
    middle_dim: int
    expected_dim: int
    mismatches: list[int]


def left_mutation_report(n: int, i: int) -> MutationReport:
    """Compare L_{i*}(Delta_1, ..., Delta_n) with E_{s_i}, i* = n - i."""
    if not 1 <= i < n:
        raise ValueError(f"mutation index {i} outside 1..{n - 1}")
    alg = build_algebra(n)
    k = n - i
    delta = [standard_module(n, j) for j in range(1, n + 1)]
    S = simple(alg, i)
    ext1 = hom.ext_dim(delta[k - 1], S, 1)
    if ext1 != 1:
        raise ExtensionDimensionError(f"Ext^1(Delta_{k}, S_{i}) = {ext1}")
    X = universal_extension(delta[k - 1], S)
    mutated = list(delta)
    mutated[k - 1], mutated[k] = X, delta[k - 1]
    target = exceptional_sequence(sym.generator(n, i), check=False)
    mismatches = [p + 1 for p, (A, B) in enumerate(zip(mutated, target.modules)) if not hom.is_isomorphic(A, B)]
    expected = S.total_dim + delta[k - 1].total_dim
    ok = not mismatches and X.total_dim == expected
    return MutationReport(ok, ext1, X.total_dim, expected, mismatches)


def left_mutation_check(n: int, i: int) -> bool:
    return left_mutation_report(n, i).ok
