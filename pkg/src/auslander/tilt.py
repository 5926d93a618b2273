"""Tilting modules T_x for x in [1, w_+^2]_L and the tilting poset.

Two constructions are provided:

* tensor route: e_i T_x = (e_i I_v) (x) I_w for x = underline(v) underline(w);
* mutation route: starting from Lambda, replace slot i by the cokernel of
  (alpha_{i-1}., beta_{i+1}.): e_i T -> e_{i-1} T + e_{i+1} T.  The left
  Lambda-action on T is carried along as maps between slots, which is what
  makes the next mutation computable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from flint import fmpq_mat

from . import braid, linalg, sym
from .algebra import homological as hom
from .algebra.ideals import (
    Ideal,
    complement_ideal,
    ideal_product,
    ideal_summand_module,
    tensor_with_ideal,
    whole_algebra,
)
from .algebra.modules import (
    Module,
    ModuleMap,
    RelationViolation,
    cokernel,
    direct_sum,
    injective,
    map_from_projective,
    map_into_sum,
    projective,
    sum_injections,
)
from .algebra.path_algebra import AuslanderAlgebra, build_algebra
from .braid import PositiveBraid
from .sym import Permutation

DEFAULT_MAX_HOMOLOGY_N = 4


class HomologyTooExpensive(ValueError):
    pass


def check_homology_rank(n: int, max_n: int = DEFAULT_MAX_HOMOLOGY_N, force: bool = False) -> None:
    if n > max_n and not force:
        raise HomologyTooExpensive(f"homological verification refused for n={n} > {max_n} (use force)")


@lru_cache(maxsize=None)
def _ideal_for_word(n: int, word: tuple[int, ...]) -> Ideal:
    alg = build_algebra(n)
    I = whole_algebra(alg)
    for i in word:
        I = ideal_product(I, complement_ideal(alg, i))
    return I


def ideal_for_word(n: int, word: Sequence[int]) -> Ideal:
    """I_{i_1} ... I_{i_l} along the given word."""
    return _ideal_for_word(n, tuple(word))


def ideal_I_w(w: Permutation) -> Ideal:
    return ideal_for_word(w.n, sym.reduced_word(w))


@dataclass(eq=False)
class TiltingObject:
    """Summands e_1 T, ..., e_n T of T_x, tagged with the braid index x.

    ``left_action[name]`` for an arrow a: j -> k is the right-module map
    e_k T -> e_j T given by left multiplication with a; it is only present for
    objects built along the mutation route.
    """

    index: PositiveBraid
    slots: list[Module]
    left_action: dict[str, ModuleMap] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def algebra(self) -> AuslanderAlgebra:
        return self.slots[0].algebra

    @property
    def dim_vectors(self) -> list[tuple[int, ...]]:
        return [M.dims for M in self.slots]

    def slot(self, i: int) -> Module:
        return self.slots[i - 1]

    def module(self) -> Module:
        return direct_sum(self.slots)

    def pair(self) -> tuple[Permutation, Permutation]:
        return braid.pair_form(self.index)


def regular(n: int) -> TiltingObject:
    """Lambda itself, with its left action by arrows."""
    alg = build_algebra(n)
    slots = [projective(alg, i) for i in alg.vertices]
    left = {}
    for a in alg.arrows:
        j, k = a.source, a.target
        P_k, P_j = slots[k - 1], slots[j - 1]
        img = fmpq_mat(P_j.dim(k), 1)
        img[P_j.coord(0, k, a.path[2]), 0] = 1
        left[a.name] = map_from_projective(P_k, [img], P_j)
    return TiltingObject(braid.identity(n), slots, left)


def mutation_map(T: TiltingObject, i: int) -> tuple[ModuleMap, list[int], Module]:
    """iota = (alpha_{i-1}., beta_{i+1}.): e_i T -> e_{i-1} T + e_{i+1} T."""
    n = T.n
    if not 1 <= i < n:
        raise ValueError(f"slot {i} cannot be mutated (1 <= i < {n})")
    if T.left_action is None:
        raise ValueError("mutation needs the left action; build the object along the mutation route")
    neighbours = [j for j in (i - 1, i + 1) if 1 <= j <= n]
    E = direct_sum([T.slot(j) for j in neighbours])
    comps = []
    for j in neighbours:
        name = f"a{i - 1}" if j == i - 1 else f"b{i + 1}"
        comps.append(T.left_action[name])
    return map_into_sum(comps, E), neighbours, E


def mutate(T: TiltingObject, i: int) -> TiltingObject | None:
    """T_{s_i x} from T_x, or None when iota is not injective (s_i x leaves the interval)."""
    iota, neighbours, E = mutation_map(T, i)
    if not iota.is_injective():
        return None
    C, quot = cokernel(iota)
    alg = T.algebra
    inj = dict(zip(neighbours, sum_injections([T.slot(j) for j in neighbours], E)))
    sections = [linalg.right_inverse(quot.block(l)) for l in alg.vertices]

    left = dict(T.left_action)
    # arrows into i: a: j -> i acts C -> e_j T through pi(p, q) = -beta_i p + alpha_i q
    for j in neighbours:
        a_name = f"a{i - 1}" if j == i - 1 else f"b{i + 1}"
        old_a = T.left_action[a_name]
        parts = []
        for m in neighbours:
            if m == i - 1:
                parts.append(old_a.compose(T.left_action[f"b{i}"]).scale(-1))
            else:
                parts.append(old_a.compose(T.left_action[f"a{i}"]))
        blocks = [
            linalg.hstack([p.block(l) for p in parts], rows=T.slot(j).dim(l)) * sections[l - 1] for l in alg.vertices
        ]
        left[a_name] = ModuleMap(C, T.slot(j), blocks)
    # arrows out of i: alpha_i y = pi(0, y), beta_i y = pi(-y, 0)
    for m in neighbours:
        if m == i + 1:
            left[f"a{i}"] = quot.compose(inj[m])
        else:
            left[f"b{i}"] = quot.compose(inj[m]).scale(-1)
    for f in left.values():
        f.check()
    slots = list(T.slots)
    slots[i - 1] = C
    out = TiltingObject(braid.left_multiply(i, T.index), slots, left)
    check_left_relations(out)
    return out


def check_left_relations(T: TiltingObject) -> None:
    """The slot maps must satisfy the relations of Lambda (T is a bimodule)."""
    L = T.left_action

    def act(word: Sequence[str]) -> list:
        # left action of a path a_1 ... a_k is L_{a_1} o ... o L_{a_k}
        f = L[word[-1]]
        for name in reversed(word[:-1]):
            f = L[name].compose(f)
        return list(f.blocks)

    for rel in T.algebra.relations():
        acc = None
        for coeff, word in rel.terms:
            blocks = [b * coeff for b in act(word)]
            acc = blocks if acc is None else [x + y for x, y in zip(acc, blocks)]
        if acc and not all(linalg.is_zero(b) for b in acc):
            raise RelationViolation("left action violates the relations")


def by_mutation(x: PositiveBraid, cache: dict | None = None) -> TiltingObject | None:
    """T_x along the mutation route; None if some intermediate step leaves the module interval."""
    cache = {} if cache is None else cache
    word = x.word()
    T = cache.get(braid.identity(x.n)) or regular(x.n)
    cache[T.index] = T
    for i in reversed(word):
        target = braid.left_multiply(i, T.index)
        nxt = cache.get(target)
        if nxt is None:
            nxt = mutate(T, i)
            if nxt is None:
                return None
            cache[target] = nxt
        T = nxt
    return T


def tilting_from_pair(v: Permutation, w: Permutation) -> TiltingObject:
    """The tensor route: slots e_i (I_v (x) I_w)."""
    if v.n != w.n:
        raise sym.RankMismatch("pair of mixed rank")
    Iv, Iw = ideal_I_w(v), ideal_I_w(w)
    slots = [tensor_with_ideal(ideal_summand_module(Iv, i), Iw) for i in range(1, v.n + 1)]
    return TiltingObject(braid.from_pair(v, w), slots)


def by_tensor(x: PositiveBraid) -> TiltingObject:
    return tilting_from_pair(*braid.pair_form(x))


def injective_cogenerator(n: int) -> list[Module]:
    """D(Lambda) slot-wise: D(Lambda e_1), ..., D(Lambda e_n)."""
    alg = build_algebra(n)
    return [injective(alg, i) for i in alg.vertices]


# homological checks


def ext_between(T: TiltingObject, U: TiltingObject) -> tuple[int, int]:
    """(dim Ext^1(T, U), dim Ext^2(T, U)) summed over slots."""
    e1 = e2 = 0
    for M in T.slots:
        for N in U.slots:
            _, a, b = hom.ext_dims(M, N)
            e1 += a
            e2 += b
    return e1, e2


@dataclass
class TiltingCheck:
    ok: bool
    reason: str = ""


def check_tilting(T: TiltingObject) -> TiltingCheck:
    """Self-orthogonality, indecomposable slots with End of dimension i, pairwise non-isomorphic."""
    n = T.n
    if len(T.slots) != n:
        return TiltingCheck(False, f"{len(T.slots)} summands, expected {n}")
    for a, M in enumerate(T.slots, start=1):
        for b, N in enumerate(T.slots, start=1):
            _, e1, e2 = hom.ext_dims(M, N)
            if e1 or e2:
                return TiltingCheck(False, f"Ext(e_{a}T, e_{b}T) = ({e1}, {e2}) for x = {T.index}")
    for i, M in enumerate(T.slots, start=1):
        if not hom.is_indecomposable(M):
            return TiltingCheck(False, f"slot {i} of {T.index} is decomposable")
        d = hom.end_dim(M)
        if d != i:
            return TiltingCheck(False, f"dim End(e_{i}T) = {d} for x = {T.index}, expected {i}")
    for a in range(n):
        for b in range(a + 1, n):
            if hom.is_isomorphic(T.slots[a], T.slots[b]):
                return TiltingCheck(False, f"slots {a + 1} and {b + 1} of {T.index} are isomorphic")
    return TiltingCheck(True)


def is_tilting(T: TiltingObject) -> bool:
    return check_tilting(T).ok


def tilting_le(T: TiltingObject, U: TiltingObject) -> bool:
    """True iff U <= T in the tilting order, i.e. Ext^q(T, U) = 0 for q > 0."""
    return ext_between(T, U) == (0, 0)


def tilting_geq(T: TiltingObject, U: TiltingObject) -> bool:
    return tilting_le(T, U)


def slotwise_isomorphic(T: TiltingObject | Sequence[Module], U: TiltingObject | Sequence[Module]) -> bool:
    a = T.slots if isinstance(T, TiltingObject) else list(T)
    b = U.slots if isinstance(U, TiltingObject) else list(U)
    return len(a) == len(b) and all(hom.is_isomorphic(M, N) for M, N in zip(a, b))


# dimension vectors


def regular_dim_vectors(n: int) -> list[tuple[int, ...]]:
    """d(Lambda): slot i has dimension vector (min(i, j))_j."""
    return [tuple(min(i, j) for j in range(1, n + 1)) for i in range(1, n + 1)]


def dim_action(p: Permutation, d: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """s_i replaces v_i by v_{i-1} - v_i + v_{i+1} (v_0 = 0), applied along a reduced word of p."""
    n = p.n
    if len(d) != n:
        raise ValueError(f"expected {n} components, got {len(d)}")
    vecs = [tuple(v) for v in d]
    width = len(vecs[0]) if vecs else 0
    zero = (0,) * width
    for i in reversed(sym.reduced_word(p)):
        prev = vecs[i - 2] if i >= 2 else zero
        nxt = vecs[i]
        vecs[i - 1] = tuple(a - b + c for a, b, c in zip(prev, vecs[i - 1], nxt))
    return vecs


def predicted_dim_vectors(x: PositiveBraid) -> list[tuple[int, ...]]:
    return dim_action(x.image(), regular_dim_vectors(x.n))


# the poset


@dataclass
class TiltingPoset:
    n: int
    nodes: list[PositiveBraid]
    arrows: list[tuple[PositiveBraid, PositiveBraid, int]]
    objects: dict[PositiveBraid, TiltingObject] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._pos = {x: k for k, x in enumerate(self.nodes)}
        self._up: dict[PositiveBraid, frozenset[PositiveBraid]] | None = None

    def successors(self, x: PositiveBraid) -> list[tuple[PositiveBraid, int]]:
        return [(y, i) for (a, y, i) in self.arrows if a == x]

    def sources(self) -> list[PositiveBraid]:
        targets = {y for (_, y, _) in self.arrows}
        return [x for x in self.nodes if x not in targets]

    def sinks(self) -> list[PositiveBraid]:
        heads = {x for (x, _, _) in self.arrows}
        return [x for x in self.nodes if x not in heads]

    def below(self, x: PositiveBraid) -> frozenset[PositiveBraid]:
        """Indices y with T_y <= T_x, i.e. x right-divides y."""
        if self._up is None:
            self._up = _reachability(self.nodes, self.arrows)
        return self._up[x]

    def leq_index(self, x: PositiveBraid, y: PositiveBraid) -> bool:
        """x <=_L y inside the interval."""
        return y in self.below(x)

    def meet_index(self, x: PositiveBraid, y: PositiveBraid) -> PositiveBraid:
        """Index of T_x meet T_y: the least common left multiple of x and y."""
        common = self.below(x) & self.below(y)
        least = [z for z in common if all(w in self.below(z) for w in common)]
        assert len(least) == 1, "interval is not a lattice here"
        return least[0]

    def meet(self, T: TiltingObject, U: TiltingObject) -> TiltingObject:
        z = self.meet_index(T.index, U.index)
        if z not in self.objects:
            self.objects[z] = by_mutation(z, self.objects)
        return self.objects[z]

    def node_label(self, x: PositiveBraid) -> str:
        v, w = braid.pair_form(x)
        return ",".join(map(str, v.word)) + "|" + ",".join(map(str, w.word))

    def to_dot(self) -> str:
        lines = ["digraph tilt {"]
        for x in self.nodes:
            lines.append(f'  "{self.node_label(x)}";')
        for x, y, i in self.arrows:
            lines.append(f'  "{self.node_label(x)}" -> "{self.node_label(y)}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        ids = {x: k for k, x in enumerate(self.nodes)}
        nodes = []
        for x in self.nodes:
            v, w = braid.pair_form(x)
            dims = self.objects[x].dim_vectors if x in self.objects else predicted_dim_vectors(x)
            nodes.append({"id": ids[x], "v": v.to_json(), "w": w.to_json(), "dims": [list(d) for d in dims]})
        arrows = [{"from": ids[x], "to": ids[y], "slot": i} for x, y, i in self.arrows]
        return {"n": self.n, "nodes": nodes, "arrows": arrows}


def _reachability(nodes, arrows) -> dict:
    succ: dict = {x: [] for x in nodes}
    for x, y, _ in arrows:
        succ[x].append(y)
    reach: dict = {}
    # arrows raise braid length by one, so process longest first
    for x in sorted(nodes, key=lambda b: -b.length):
        acc = {x}
        for y in succ[x]:
            acc |= reach[y]
        reach[x] = frozenset(acc)
    return reach


def build_tilting_poset(n: int, with_modules: bool = False, max_n: int = DEFAULT_MAX_HOMOLOGY_N,
                        force: bool = False) -> TiltingPoset:
    """Hasse quiver of tilt(Lambda_n): arrows x -> s_i x with both ends in the interval."""
    nodes = braid.sorted_interval(n)
    node_set = set(nodes)
    arrows = []
    for x in nodes:
        for i in range(1, n):
            y = braid.left_multiply(i, x)
            if y in node_set:
                arrows.append((x, y, i))
    poset = TiltingPoset(n, nodes, arrows)
    if with_modules:
        check_homology_rank(n, max_n, force)
        poset.objects = explore_by_mutation(n)
    return poset


def explore_by_mutation(n: int) -> dict[PositiveBraid, TiltingObject]:
    """Breadth-first mutation from Lambda; stops where iota fails to be injective."""
    start = regular(n)
    objects = {start.index: start}
    queue = deque([start])
    while queue:
        T = queue.popleft()
        for i in range(1, n):
            target = braid.left_multiply(i, T.index)
            if target in objects:
                continue
            U = mutate(T, i)
            if U is not None:
                objects[target] = U
                queue.append(U)
    return objects


# verification against the combinatorics


def order_mismatches(objects: dict[PositiveBraid, TiltingObject], pairs=None) -> list[str]:
    """Pairs where Ext-vanishing disagrees with right divisibility of the indices."""
    keys = braid.sorted_interval(next(iter(objects)).n)
    pairs = pairs if pairs is not None else [(x, y) for x in keys for y in keys]
    out = []
    for x, y in pairs:
        by_ext = tilting_le(objects[x], objects[y])
        by_braid = braid.is_right_divisor(x, y)
        if by_ext != by_braid:
            out.append(f"x={x} y={y}: Ext-order {by_ext}, divisibility {by_braid}")
    return out


def hasse_from_ext(objects: dict[PositiveBraid, TiltingObject]) -> set[tuple[PositiveBraid, PositiveBraid]]:
    """Covering pairs (x, y), T_x > T_y, of the order computed from Ext alone."""
    keys = braid.sorted_interval(next(iter(objects)).n)
    geq = {x: {y for y in keys if y != x and tilting_le(objects[x], objects[y])} for x in keys}
    covers = set()
    for x in keys:
        for y in geq[x]:
            if not any(y in geq[z] for z in geq[x] if z != y):
                covers.add((x, y))
    return covers


def sink_matches_injectives(n: int, objects: dict | None = None) -> bool:
    """T_{w_+^2} is slot-wise isomorphic to D(Lambda e_1), ..., D(Lambda e_n)."""
    top = braid.from_simples(n, [sym.longest(n), sym.longest(n)])
    T = objects[top] if objects is not None else by_mutation(top)
    return slotwise_isomorphic(T, injective_cogenerator(n))


def dim_vector_mismatches(objects: dict[PositiveBraid, TiltingObject]) -> list[str]:
    out = []
    for x, T in objects.items():
        pred = predicted_dim_vectors(x)
        if T.dim_vectors != pred:
            out.append(f"x={x}: slots {T.dim_vectors}, predicted {pred}")
    return out
