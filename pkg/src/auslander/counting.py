"""The sequences c_n = n!, t_n and p_n with independent cross-checks."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import permutations

# reference values, A000275 and the p-table of the tilting-summand counts
T_REFERENCE = (1, 1, 3, 19, 211, 3651, 90921, 3081513)
P_REFERENCE = {
    1: (1,),
    2: (3, 1),
    3: (7, 7, 1),
    4: (15, 33, 15, 1),
    5: (31, 131, 131, 31, 1),
}

PAIRS_LIMIT = 7
INTERVAL_LIMIT = 5
SIGMA_LIMIT = 5


@lru_cache(maxsize=None)
def t_recursive(n: int) -> int:
    """t_n = sum_{k<n} (-1)^(n+k+1) C(n,k)^2 t_k with t_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum((-1) ** (n + k + 1) * math.comb(n, k) ** 2 * t_recursive(k) for k in range(n))


def descent_mask(perm: tuple[int, ...]) -> int:
    """Bit i-1 set iff i is a right descent, i.e. perm(i) > perm(i+1)."""
    m = 0
    for i in range(len(perm) - 1):
        if perm[i] > perm[i + 1]:
            m |= 1 << i
    return m


@lru_cache(maxsize=None)
def descent_histogram(n: int) -> tuple[int, ...]:
    hist = [0] * (1 << max(n - 1, 0))
    for p in permutations(range(1, n + 1)):
        hist[descent_mask(p)] += 1
    return tuple(hist)


def _count_for_masks(args: tuple[int, list[int]]) -> int:
    n, masks = args
    hist = descent_histogram(n)
    return sum(c for mv in masks for m, c in enumerate(hist) if not m & mv)


def t_by_pairs(n: int, workers: int = 1) -> int:
    """Pairs (v, w) in S_n x S_n without a common right descent.

    Enumerates every v and counts the compatible w through the histogram of
    descent sets; ``workers`` > 1 splits the v's across processes.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > PAIRS_LIMIT:
        raise ValueError(f"pair enumeration limited to n <= {PAIRS_LIMIT}")
    masks = [descent_mask(p) for p in permutations(range(1, n + 1))]
    if workers <= 1:
        return _count_for_masks((n, masks))
    chunks = [masks[k::workers] for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_for_masks, [(n, c) for c in chunks]))


def t_by_pairs_naive(n: int) -> int:
    """Quadratic double loop over permutation pairs; an oracle for small n."""
    masks = [descent_mask(p) for p in permutations(range(1, n + 1))]
    return sum(1 for a in masks for b in masks if not a & b)


@dataclass
class CountReport:
    n: int
    c: int
    t_recursive: int
    t_pairs: int | None = None
    t_interval: int | None = None
    facets: int | None = None
    p: tuple[int, ...] | None = None
    agreement: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.agreement.values())

    @property
    def p_total(self) -> int | None:
        return sum(self.p) if self.p is not None else None

    def to_json(self) -> dict:
        out = asdict(self)
        out["p"] = list(self.p) if self.p is not None else None
        out["p_total"] = self.p_total
        out["ok"] = self.ok
        return out


def consistency_report(n: int, workers: int = 1) -> CountReport:
    from . import braid
    from . import complex as cx

    if n < 1:
        raise ValueError("n must be at least 1")
    rep = CountReport(n, math.factorial(n), t_recursive(n))
    if n <= PAIRS_LIMIT:
        rep.t_pairs = t_by_pairs(n, workers=workers)
        rep.agreement["t_pairs"] = rep.t_pairs == rep.t_recursive
    if n <= INTERVAL_LIMIT:
        rep.t_interval = len(braid.interval_w2(n))
        rep.agreement["t_interval"] = rep.t_interval == rep.t_recursive
    if n <= SIGMA_LIMIT:
        S = cx.build_sigma(n)
        rep.facets = len(S.facets)
        rep.p = cx.p_counts(n, S)
        rep.agreement["facets"] = rep.facets == rep.t_recursive
        if n in P_REFERENCE:
            rep.agreement["p_table"] = rep.p == P_REFERENCE[n]
    if n < len(T_REFERENCE):
        rep.agreement["t_reference"] = rep.t_recursive == T_REFERENCE[n]
    return rep


def counts_csv(n_max: int) -> str:
    """Rows n,c_n,t_n for n = 1..n_max."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "c_n", "t_n"])
    for n in range(1, n_max + 1):
        w.writerow([n, math.factorial(n), t_recursive(n)])
    return buf.getvalue()


def p_table_csv(n_max: int) -> str:
    """Rows n,p_{n,1},...,p_{n,n_max},p_n with '-' in empty cells."""
    from . import complex as cx

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [f"p_n{i}" for i in range(1, n_max + 1)] + ["p_n"])
    for n in range(1, n_max + 1):
        p = cx.p_counts(n)
        w.writerow([n, *p, *["-"] * (n_max - n), sum(p)])
    return buf.getvalue()
