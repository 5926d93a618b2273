"""The simplicial complex Sigma_n of tilting summands and its boundary.

Vertices are classes of pairs (x, i), x in the interval and i a slot, under
the relation generated by (s_j x, i) ~ (x, i) for j != i with both ends in
the interval.  Facets are the sets {[x, 1], ..., [x, n]}.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from . import braid
from .braid import PositiveBraid

Vertex = tuple[PositiveBraid, int]


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class SigmaComplex:
    """Vertex ids are numbered in order of first appearance along the sorted interval."""

    n: int
    vertex_of: dict[Vertex, int]
    vertex_slot: list[int]
    facets: list[tuple[int, ...]]
    facet_index: dict[PositiveBraid, int] = field(repr=False, default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_slot)

    def vertex_sizes(self) -> list[int]:
        sizes = Counter(self.vertex_of.values())
        return [sizes[v] for v in range(self.vertex_count)]

    def classes(self) -> frozenset[frozenset[Vertex]]:
        groups: dict[int, set] = {}
        for pair, v in self.vertex_of.items():
            groups.setdefault(v, set()).add(pair)
        return frozenset(frozenset(g) for g in groups.values())

    def members(self, v: int) -> list[Vertex]:
        return [pair for pair, u in self.vertex_of.items() if u == v]

    def to_json(self) -> dict:
        sizes = self.vertex_sizes()
        bd = boundary(self)
        return {
            "n": self.n,
            "vertices": [{"id": v, "slot": self.vertex_slot[v], "size": sizes[v]} for v in range(self.vertex_count)],
            "facets": [list(f) for f in self.facets],
            "boundary_facets": [list(f) for f in bd.facets],
        }

    def to_off(self) -> str:
        """OFF-style face list; vertex lines carry (slot, id, class size) instead of coordinates."""
        sizes = self.vertex_sizes()
        lines = ["OFF", f"{self.vertex_count} {len(self.facets)} 0"]
        lines += [f"{self.vertex_slot[v]} {v} {sizes[v]}" for v in range(self.vertex_count)]
        lines += [f"{len(f)} " + " ".join(map(str, f)) for f in self.facets]
        return "\n".join(lines) + "\n"


def generating_pairs(n: int) -> list[tuple[Vertex, Vertex]]:
    interval = braid.interval_w2(n)
    out = []
    for x in braid.sorted_interval(n):
        for j in range(1, n):
            y = braid.left_multiply(j, x)
            if y in interval:
                out.extend(((y, i), (x, i)) for i in range(1, n + 1) if i != j)
    return out


def build_sigma(n: int, seed: int | None = None) -> SigmaComplex:
    """Union-find closure; ``seed`` shuffles the edge order (the result must not depend on it)."""
    nodes = braid.sorted_interval(n)
    pairs = [(x, i) for x in nodes for i in range(1, n + 1)]
    uf = UnionFind(pairs)
    edges = generating_pairs(n)
    if seed is not None:
        random.Random(seed).shuffle(edges)
    for a, b in edges:
        uf.union(a, b)
    ids: dict = {}
    vertex_of, slots = {}, []
    for pair in pairs:
        root = uf.find(pair)
        if root not in ids:
            ids[root] = len(slots)
            slots.append(pair[1])
        vertex_of[pair] = ids[root]
    facets = [tuple(vertex_of[(x, i)] for i in range(1, n + 1)) for x in nodes]
    return SigmaComplex(n, vertex_of, slots, facets, {x: k for k, x in enumerate(nodes)})


def p_counts(n: int, sigma: SigmaComplex | None = None) -> tuple[int, ...]:
    S = sigma or build_sigma(n)
    c = Counter(S.vertex_slot)
    return tuple(c[i] for i in range(1, n + 1))


def _ridges(S: SigmaComplex) -> Counter:
    c: Counter = Counter()
    for f in S.facets:
        fs = frozenset(f)
        for v in f:
            ridge = fs - {v}
            if ridge:
                c[ridge] += 1
    return c


@dataclass
class Boundary:
    facets: list[tuple[int, ...]]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.facets for v in f)


def boundary(S: SigmaComplex) -> Boundary:
    """Codimension-one faces contained in exactly one facet."""
    faces = sorted(tuple(sorted(r)) for r, k in _ridges(S).items() if k == 1)
    return Boundary(faces)


def is_pseudomanifold(S: SigmaComplex) -> bool:
    """Every codimension-one face lies in one or two facets."""
    return all(k in (1, 2) for k in _ridges(S).values())


def all_faces(facets) -> set[frozenset[int]]:
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return out


def cone_apex(S: SigmaComplex) -> int:
    return S.vertex_of[(braid.identity(S.n), S.n)]


def check_cone_decomposition(S: SigmaComplex) -> bool:
    """Sigma is the disjoint union of the boundary, the apex and the cone over the boundary."""
    apex = cone_apex(S)
    bd = boundary(S)
    faces = all_faces(S.facets)
    bd_faces = all_faces(bd.facets)
    if any(apex in F for F in bd_faces):
        return False
    cone = {F | {apex} for F in bd_faces}
    pieces = [bd_faces, {frozenset({apex})}, cone]
    if sum(len(p) for p in pieces) != len(faces):
        return False
    return faces == set().union(*pieces)


def vertex_module_classes(n: int, sigma: SigmaComplex | None = None, objects: dict | None = None):
    """Representative module e_i T_x per vertex class, checked to be an isomorphism invariant.

    Returns (representatives, failures).  A failure is a message naming the
    first pair that breaks constancy on a class or injectivity across classes.
    """
    from . import tilt
    from .algebra import homological as hom

    S = sigma or build_sigma(n)
    objs = objects if objects is not None else tilt.explore_by_mutation(n)
    reps = {}
    failures = []
    for v in range(S.vertex_count):
        members = S.members(v)
        x0, i0 = members[0]
        M = objs[x0].slot(i0)
        reps[v] = M
        for x, i in members[1:]:
            if not hom.is_isomorphic(M, objs[x].slot(i)):
                failures.append(f"class {v}: e_{i}T at {x} differs from e_{i0}T at {x0}")
                break
    by_slot: dict[int, list[int]] = {}
    for v, i in enumerate(S.vertex_slot):
        by_slot.setdefault(i, []).append(v)
    for i, vs in by_slot.items():
        for a, b in combinations(vs, 2):
            if hom.is_isomorphic(reps[a], reps[b]):
                failures.append(f"classes {a} and {b} in slot {i} carry isomorphic modules")
    return reps, failures


def module_class_counts(n: int, objects: dict | None = None) -> tuple[int, ...]:
    """Number of isomorphism classes among the i-th summands, computed from modules only."""
    from . import tilt
    from .algebra import homological as hom

    objs = objects if objects is not None else tilt.explore_by_mutation(n)
    counts = []
    for i in range(1, n + 1):
        reps: list = []
        for T in objs.values():
            M = T.slot(i)
            if not any(hom.is_isomorphic(M, R) for R in reps):
                reps.append(M)
        counts.append(len(reps))
    return tuple(counts)
