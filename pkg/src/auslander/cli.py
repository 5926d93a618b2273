"""Command-line front end: enumeration, verification and export."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Callable

from . import braid, counting, exc, sym, tilt
from . import complex as cx
from .algebra import homological as hom

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    text: str
    ok: bool = True


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _homology_gate(args) -> None:
    try:
        tilt.check_homology_rank(args.n, args.max_n_homology, args.force)
    except tilt.HomologyTooExpensive as e:
        raise UsageError(str(e)) from None


def cmd_counts(args) -> Outcome:
    if args.format == "csv":
        text = counting.counts_csv(args.n)
        text += "\n" + counting.p_table_csv(min(args.n, counting.SIGMA_LIMIT))
        return Outcome(text)
    rep = counting.consistency_report(args.n, workers=args.threads)
    return Outcome(_dump_json(rep.to_json()), rep.ok)


def cmd_poset(args) -> Outcome:
    with_modules = args.verify_homology
    if with_modules:
        _homology_gate(args)
    P = tilt.build_tilting_poset(args.n, with_modules=with_modules, max_n=args.max_n_homology, force=args.force)
    ok = True
    failures = []
    if with_modules:
        if set(P.objects) != set(P.nodes):
            failures.append("mutation from Lambda does not reach exactly the interval")
        failures += tilt.dim_vector_mismatches(P.objects)
        for x in P.nodes:
            c = tilt.check_tilting(P.objects[x]) if x in P.objects else tilt.TiltingCheck(True)
            if not c.ok:
                failures.append(c.reason)
                break
        ok = not failures
    text = P.to_dot() if args.format == "dot" else _dump_json(P.to_json())
    if failures:
        print(f"verification failed: {failures[0]}", file=sys.stderr)
    return Outcome(text, ok)


def cmd_complex(args) -> Outcome:
    S = cx.build_sigma(args.n)
    failures = []
    if S.vertex_count != sum(cx.p_counts(args.n, S)) or len(S.facets) != counting.t_recursive(args.n):
        failures.append("vertex or facet count mismatch")
    if args.n in counting.P_REFERENCE and cx.p_counts(args.n, S) != counting.P_REFERENCE[args.n]:
        failures.append(f"p-vector {cx.p_counts(args.n, S)} differs from the reference table")
    if args.verify_homology:
        _homology_gate(args)
        _, bad = cx.vertex_module_classes(args.n, S)
        failures += bad
    if failures:
        print(f"verification failed: {failures[0]}", file=sys.stderr)
    text = S.to_off() if args.format == "off" else _dump_json(S.to_json())
    return Outcome(text, not failures)


def cmd_exceptional(args) -> Outcome:
    _homology_gate(args)
    perms = [sym.Permutation(tuple(int(c) for c in args.w.split(",")))] if args.w else sym.all_permutations(args.n)
    out = []
    ok = True
    for w in perms:
        if w.n != args.n:
            raise UsageError(f"permutation {w.word} is not in S_{args.n}")
        E = exc.exceptional_sequence(w, check=False)
        failure = exc.exceptionality_failure(E.modules)
        if failure:
            print(f"verification failed: E_{list(w.word)}: {failure}", file=sys.stderr)
            ok = False
        out.append({"w": list(w.word), "exceptional": failure is None, "modules": E.to_json()})
    return Outcome(_dump_json(out), ok)


def cmd_dimvec(args) -> Outcome:
    P = tilt.build_tilting_poset(args.n)
    rows = [(P.node_label(x), tilt.predicted_dim_vectors(x)) for x in P.nodes]
    ok = True
    if args.verify_homology:
        _homology_gate(args)
        bad = tilt.dim_vector_mismatches(tilt.explore_by_mutation(args.n))
        if bad:
            print(f"verification failed: {bad[0]}", file=sys.stderr)
            ok = False
    if args.format == "csv":
        lines = ["node," + ",".join(f"slot{i}" for i in range(1, args.n + 1))]
        for label, dims in rows:
            lines.append(f'"{label}",' + ",".join(" ".join(map(str, d)) for d in dims))
        return Outcome("\n".join(lines) + "\n", ok)
    return Outcome(_dump_json([{"node": lbl, "dims": [list(d) for d in dims]} for lbl, dims in rows]), ok)


# the verification suite


def verification_checks(n: int, homology: bool, sample: int, seed: int) -> list[tuple[str, Callable[[], str | None]]]:
    """Named checks; each returns None on success or the first counterexample."""

    def counts():
        rep = counting.consistency_report(n)
        bad = [k for k, v in rep.agreement.items() if not v]
        return f"count disagreement: {bad}" if bad else None

    def poset_shape():
        P = tilt.build_tilting_poset(n)
        if len(P.sources()) != 1 or P.sources()[0] != braid.identity(n):
            return f"sources {P.sources()}"
        top = braid.from_simples(n, [sym.longest(n), sym.longest(n)])
        if P.sinks() != [top]:
            return f"sinks {P.sinks()}"
        return None

    def sigma():
        if n > counting.SIGMA_LIMIT:
            return None
        S = cx.build_sigma(n)
        if len(S.facets) != counting.t_recursive(n):
            return "facet count differs from t_n"
        if n <= 4 and not cx.check_cone_decomposition(S):
            return "cone decomposition fails"
        return None

    checks = [("counts", counts), ("poset", poset_shape), ("complex", sigma)]
    if not homology:
        return checks

    state: dict = {}

    def objects():
        if "objs" not in state:
            state["objs"] = tilt.explore_by_mutation(n)
        return state["objs"]

    def reach():
        if set(objects()) != braid.interval_w2(n):
            return "mutation from Lambda does not reach exactly the interval"
        return None

    def nodes_sample():
        keys = braid.sorted_interval(n)
        if sample and len(keys) > sample:
            keys = [braid.identity(n)] + random.Random(seed).sample(keys[1:], sample - 1)
        return keys

    def tilting():
        for x in nodes_sample():
            c = tilt.check_tilting(objects()[x])
            if not c.ok:
                return c.reason
            if not tilt.slotwise_isomorphic(objects()[x], tilt.by_tensor(x)):
                return f"tensor and mutation routes differ at {x}"
        return None

    def order():
        keys = nodes_sample()
        bad = tilt.order_mismatches(objects(), [(x, y) for x in keys for y in keys])
        return bad[0] if bad else None

    def dims():
        bad = tilt.dim_vector_mismatches(objects())
        return bad[0] if bad else None

    def sink():
        return None if tilt.sink_matches_injectives(n, objects()) else "T_{w_+^2} is not D(Lambda)"

    def modules_vs_sigma():
        _, bad = cx.vertex_module_classes(n, objects=objects())
        return bad[0] if bad else None

    def exceptional():
        for w in sym.all_permutations(n):
            failure = exc.exceptionality_failure(exc.exceptional_sequence(w, check=False).modules)
            if failure:
                return f"E_{list(w.word)}: {failure}"
        k = len(exc.enumerate_exceptional_modules(n, objects()))
        if k != 2**n - 1:
            return f"{k} exceptional classes, expected {2 ** n - 1}"
        for i in range(1, n):
            rep = exc.left_mutation_report(n, i)
            if not rep.ok:
                return f"left mutation at {i}: {rep}"
        return None

    checks += [
        ("reach", reach),
        ("tilting", tilting),
        ("order", order),
        ("dimvec", dims),
        ("sink", sink),
        ("sigma-modules", modules_vs_sigma),
        ("exceptional", exceptional),
    ]
    return checks


def cmd_verify(args) -> Outcome:
    if args.verify_homology:
        _homology_gate(args)
    sample = 0 if args.n <= 3 else args.sample
    lines, ok = [], True
    for name, check in verification_checks(args.n, args.verify_homology, sample, args.seed):
        failure = check()
        lines.append(f"{'PASS' if failure is None else 'FAIL'} {name}" + (f": {failure}" if failure else ""))
        if failure:
            ok = False
    return Outcome("\n".join(lines) + "\n", ok)


COMMANDS = {
    "counts": (cmd_counts, ("json", "csv")),
    "poset": (cmd_poset, ("dot", "json")),
    "complex": (cmd_complex, ("json", "off")),
    "verify": (cmd_verify, ("text",)),
    "exceptional": (cmd_exceptional, ("json",)),
    "dimvec": (cmd_dimvec, ("json", "csv")),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="auslander", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, formats) in COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("n", type=int)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--csv", action="store_true", help="shorthand for --format csv where supported")
        p.add_argument("--verify-homology", action="store_true")
        p.add_argument("--max-n-homology", type=int, default=tilt.DEFAULT_MAX_HOMOLOGY_N)
        p.add_argument("--force", action="store_true", help="allow homology above --max-n-homology")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--sample", type=int, default=25, help="nodes sampled by verify for n >= 4")
        p.add_argument("-o", "--output")
        if name == "exceptional":
            p.add_argument("--w", help="one permutation in one-line notation, e.g. 2,1,3")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("n must be at least 1")
    if args.csv and "csv" not in COMMANDS[args.command][1]:
        parser.error(f"{args.command} has no CSV output")
    if args.csv:
        args.format = "csv"
    hom.set_default_seed(args.seed)
    handler = COMMANDS[args.command][0]
    try:
        outcome = handler(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(outcome.text)
        except OSError as e:
            print(f"error: cannot write {args.output}: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(outcome.text)
    return EXIT_OK if outcome.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
