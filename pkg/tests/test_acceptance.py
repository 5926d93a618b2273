"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are printed even without -s) or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from auslander import braid, counting, exc, sym, tilt  # noqa: E402
from auslander import complex as cx  # noqa: E402
from auslander.algebra import build_algebra  # noqa: E402
from auslander.algebra import homological as hom  # noqa: E402
from auslander.algebra import modules as md  # noqa: E402
from oracles import braid_class, words  # noqa: E402

T_TABLE = (1, 1, 3, 19, 211, 3651, 90921, 3081513)
P_TABLE = {1: (1,), 2: (3, 1), 3: (7, 7, 1), 4: (15, 33, 15, 1), 5: (31, 131, 131, 31, 1)}
N4_SAMPLE = 40
SEED = 2024

_cache: dict = {}


def objects(n):
    if n not in _cache:
        _cache[n] = tilt.explore_by_mutation(n)
    return _cache[n]


def top(n):
    return braid.from_simples(n, [sym.longest(n), sym.longest(n)])


def c1_counting():
    rec = tuple(counting.t_recursive(n) for n in range(8))
    pairs = tuple(counting.t_by_pairs(n) for n in range(7))
    ok = rec == T_TABLE and pairs == T_TABLE[:7]
    return ok, f"t_recursive={rec}, t_by_pairs(0..6)={pairs}"


def c2_interval():
    sizes = tuple(len(braid.interval_w2(n)) for n in range(1, 6))
    return sizes == T_TABLE[1:6], f"|[1,w_+^2]_L| for n=1..5: {sizes}"


def c3_poset_n3():
    P = tilt.build_tilting_poset(3)
    labels = sorted({i for _, _, i in P.arrows})
    consistent = all(braid.left_multiply(i, x) == y for x, y, i in P.arrows)
    by_label = {i: sum(1 for *_, j in P.arrows if j == i) for i in labels}
    ok = (
        len(P.nodes) == 19
        and len(P.arrows) == 24
        and P.sources() == [braid.identity(3)]
        and P.sinks() == [top(3)]
        and labels == [1, 2]
        and consistent
    )
    return ok, f"{len(P.nodes)} nodes, {len(P.arrows)} arrows, arrows per slot {by_label}"


def _classification(n, keys):
    objs = objects(n)
    for x in keys:
        c = tilt.check_tilting(objs[x])
        if not c.ok:
            return False, c.reason
        if not tilt.slotwise_isomorphic(objs[x], tilt.by_tensor(x)):
            return False, f"tensor and mutation routes differ at {x}"
    return True, ""


def c4_classification():
    t0 = time.perf_counter()
    keys3 = braid.sorted_interval(3)
    ok3, why3 = _classification(3, keys3)
    t3 = time.perf_counter() - t0
    keys4 = braid.sorted_interval(4)
    sample = [braid.identity(4), top(4)] + random.Random(SEED).sample(keys4[1:-1], N4_SAMPLE - 2)
    t0 = time.perf_counter()
    ok4, why4 = _classification(4, sample)
    t4 = time.perf_counter() - t0
    ok = ok3 and ok4 and t3 < 60 and t4 < 600
    detail = f"n=3: {len(keys3)} nodes in {t3:.1f}s; n=4: {len(set(sample))} sampled nodes in {t4:.1f}s"
    return ok, detail + (f"; {why3 or why4}" if not (ok3 and ok4) else "")


def c5_order():
    objs = objects(3)
    bad = tilt.order_mismatches(objs)
    return not bad, f"{len(objs) ** 2} pairs, {len(bad)} mismatches" + (f"; first {bad[0]}" if bad else "")


def c6_sink():
    res = {n: tilt.sink_matches_injectives(n, objects(n) if n > 1 else None) for n in (1, 2, 3)}
    return all(res.values()), f"T_(w_+^2) ~ D(Lambda) slot-wise: {res}"


def c7_dim_vectors():
    bad = []
    counted = 0
    for n in (1, 2, 3, 4):
        bad += tilt.dim_vector_mismatches(objects(n))
        counted += len(objects(n))
    return not bad, f"{counted} objects checked, {len(bad)} mismatches" + (f"; first {bad[0]}" if bad else "")


def c8_complex():
    t0 = time.perf_counter()
    problems = []
    for n in range(1, 6):
        S = cx.build_sigma(n)
        if cx.p_counts(n, S) != P_TABLE[n] or S.vertex_count != sum(P_TABLE[n]):
            problems.append(f"p-vector n={n}: {cx.p_counts(n, S)}")
        if len(S.facets) != T_TABLE[n]:
            problems.append(f"facets n={n}: {len(S.facets)}")
        if n <= 4 and not cx.check_cone_decomposition(S):
            problems.append(f"cone decomposition n={n}")
    bd3 = len(cx.boundary(cx.build_sigma(3)).vertices)
    if bd3 != 14:
        problems.append(f"boundary of Sigma(3) has {bd3} vertices")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 120
    return ok, f"p-table n<=5, facets = t_n, |V(bd Sigma_3)| = {bd3}, cone n<=4 in {dt:.1f}s" + (
        f"; {problems}" if problems else ""
    )


def c9_vertex_modules():
    objs = objects(3)
    reps, failures = cx.vertex_module_classes(3, objects=objs)
    counts = cx.module_class_counts(3, objs)
    ok = not failures and counts == (7, 7, 1) and len(reps) == 15
    return ok, f"module iso classes per slot {counts}, {len(reps)} vertex classes" + (
        f"; {failures[0]}" if failures else ""
    )


def c10_exceptional():
    problems = []
    for n in (1, 2, 3):
        alg = build_algebra(n)
        for w in sym.all_permutations(n):
            f = exc.exceptionality_failure(exc.exceptional_sequence(w, check=False).modules)
            if f:
                problems.append(f"E_{list(w.word)}: {f}")
        k = len(exc.enumerate_exceptional_modules(n, objects(n)))
        if k != 2**n - 1:
            problems.append(f"n={n}: {k} exceptional classes")
        for i in range(1, n):
            if hom.ext_dim(exc.standard_module(n, n - i), md.simple(alg, i), 1) != 1:
                problems.append(f"Ext^1(Delta_{n - i}, S_{i}) != 1")
            if not exc.left_mutation_check(n, i):
                problems.append(f"left mutation n={n}, i={i}")
    return not problems, "E_w exceptional, 2^n-1 classes, L_(i*) checks for n<=3" + (
        f"; {problems[0]}" if problems else ""
    )


def c11_properties():
    problems = []
    # normal-form confluence against braid-relation word classes
    for n in (2, 3):
        forms: dict = {}
        for w in words(n, 6):
            forms.setdefault(braid.normalize(w, n), set()).add(w)
        for x, ws in forms.items():
            if braid_class(next(iter(ws)), n) != frozenset(ws):
                problems.append(f"normal form class mismatch at {x}")
    # mutation leaves the interval iff iota is not injective
    for n in (1, 2, 3):
        interval = braid.interval_w2(n)
        for x, T in objects(n).items() if n > 1 else []:
            for i in range(1, n):
                iota, _, _ = tilt.mutation_map(T, i)
                if iota.is_injective() != (braid.left_multiply(i, x) in interval):
                    problems.append(f"iota at {x}, slot {i}")
    # reduced-word independence of I_w
    for w in sym.all_permutations(3):
        if len({tilt.ideal_for_word(3, r) for r in sym.all_reduced_words(w)}) != 1:
            problems.append(f"I_w depends on the word for {w}")
    # union-find order independence
    for n in (3, 4):
        base = cx.build_sigma(n).classes()
        if any(cx.build_sigma(n, seed=s).classes() != base for s in range(3)):
            problems.append(f"union-find order dependence n={n}")
    return not problems, "confluence, iota-injectivity, I_w word independence, union-find order" + (
        f"; {problems[0]}" if problems else ""
    )


CRITERIA = [
    (1, "counting identity", c1_counting),
    (2, "interval = tilting count", c2_interval),
    (3, "n=3 poset golden test", c3_poset_n3),
    (4, "homological classification", c4_classification),
    (5, "order equivalence", c5_order),
    (6, "sink identification", c6_sink),
    (7, "dimension-vector lemma", c7_dim_vectors),
    (8, "simplicial complex", c8_complex),
    (9, "vertex classes vs module classes", c9_vertex_modules),
    (10, "exceptional layer", c10_exceptional),
    (11, "property suites", c11_properties),
]

RUNTIME_BUDGET = {1: 30, 2: 60, 8: 120}


def evaluate(num, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    budget = RUNTIME_BUDGET.get(num)
    if budget is not None and dt >= budget:
        ok = False
        detail += f"; runtime {dt:.1f}s exceeds {budget}s"
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail} [{dt:.1f}s]"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"c{n}-{name.replace(' ', '-')}" for n, name, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, line = evaluate(num, fn)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(num, fn) for num, _, fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
