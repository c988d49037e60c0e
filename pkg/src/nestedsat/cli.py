"""Command-line entry point: ``nestedsat {solve,check,sort,gen,fuzz,bench}``.

Exit codes: 10 satisfiable, 20 unsatisfiable, 0 success for the other
commands, 1 usage or parse error, 2 instance not nested (or, with
``solve --no-sort``, not in a valid order).
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import harness
from .nesting import NotNested, NotProperlyOrdered, comparator_order, order_violation_in, \
    overlap_in
from .prep import DimacsError, GeneratorConfig, RawClauseSet, Status, emit_dimacs, \
    generate_nested, normalize, parse_dimacs
from .solver import Verdict, extract_witness, run

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_NESTED = 2
EXIT_SAT = 10
EXIT_UNSAT = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _read(path: str) -> RawClauseSet:
    if path == "-":
        return parse_dimacs(sys.stdin.read())
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _var_lists(raw: RawClauseSet):
    """Sorted distinct variables per nonempty clause, with 1-based file indices."""
    lists, index = [], []
    for k, c in enumerate(raw.clauses, 1):
        if c:
            lists.append(sorted({abs(x) for x in c}))
            index.append(k)
    return lists, index


def cmd_solve(args) -> int:
    raw = _read(args.file)
    inst = normalize(raw)
    assignment = dict(inst.forced)
    if inst.status is Status.TRIVIALLY_UNSAT:
        verdict = Verdict.UNSAT
    elif inst.status is Status.TRIVIALLY_SAT:
        verdict = Verdict.SAT
    else:
        db = inst.db
        try:
            verdict = run(db, sort=not args.no_sort).verdict
        except NotNested as exc:
            w = exc.witness
            i, j = inst.origin[w.i - 1], inst.origin[w.j - 1]
            print(f"c not nested: clauses {i} and {j} overlap", file=sys.stderr)
            return EXIT_NOT_NESTED
        except NotProperlyOrdered as exc:
            i, j = (inst.origin[k - 1] for k in exc.pair)
            print(f"c not properly ordered: clause {i} straddles later clause {j}", file=sys.stderr)
            return EXIT_NOT_NESTED
        if verdict is Verdict.SAT and args.witness:
            assignment.update(extract_witness(db))
    print(f"s {verdict.value}")
    if verdict is Verdict.SAT and args.witness:
        lits = [v if assignment.get(v, False) else -v for v in range(1, raw.n + 1)]
        print("v " + " ".join(map(str, lits + [0])))
    return EXIT_SAT if verdict is Verdict.SAT else EXIT_UNSAT


def cmd_check(args) -> int:
    raw = _read(args.file)
    lists, index = _var_lists(raw)
    w = overlap_in(lists, raw.n)
    if w is not None:
        print("not nested")
        print(f"overlap: clauses {index[w.i - 1]} and {index[w.j - 1]} "
              f"(variable {w.var_in_i} inside clause {index[w.i - 1]}, "
              f"variable {w.var_in_j} inside clause {index[w.j - 1]})")
        return EXIT_NOT_NESTED
    print("nested")
    pair = order_violation_in(lists, raw.n)
    if pair is None:
        print("ordered")
    else:
        print(f"not ordered: clause {index[pair[0] - 1]} straddles later clause {index[pair[1] - 1]}")
    return EXIT_OK


def cmd_sort(args) -> int:
    raw = _read(args.file)
    lists, index = _var_lists(raw)
    w = overlap_in(lists, raw.n)
    if w is not None:
        print(f"c not nested: clauses {index[w.i - 1]} and {index[w.j - 1]} overlap",
              file=sys.stderr)
        return EXIT_NOT_NESTED
    start = np.cumsum([0] + [len(c) for c in lists])
    lit = np.array([x for c in lists for x in c], dtype=np.int64)
    perm = comparator_order(lit, start)
    empties = [c for c in raw.clauses if not c]
    ordered = empties + [raw.clauses[index[k] - 1] for k in perm]
    sys.stdout.write(emit_dimacs(RawClauseSet(raw.n, ordered)))
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(n=args.vars, m=args.clauses, width=args.width,
                          p_interior=args.p_interior, p_negative=args.p_negative, seed=args.seed)
    db = generate_nested(cfg)
    sys.stdout.write(emit_dimacs(db))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.exhaustive:
        rep = harness.exhaustive_check(args.max_vars, args.max_clauses, witness=True)
    else:
        rep = harness.differential_fuzz(args.count, args.max_vars, args.seed)
    print(rep.summary())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rep.to_csv())
    return EXIT_OK if rep.ok else EXIT_ERROR


def cmd_bench(args) -> int:
    sizes = [tuple(int(v) for v in s.split(":")) for s in args.sizes] if args.sizes \
        else harness.DEFAULT_SIZES
    from . import kernels

    backends = kernels.available() if args.backend == "all" else [args.backend]
    for b in backends:
        rep = harness.bench_linear(sizes, args.seed, backend=None if b == "auto" else b,
                                   repeat=args.repeat)
        print(rep.summary())
        if args.csv:
            with open(args.csv, "a") as fh:
                fh.write(rep.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nestedsat", description="Linear-time solver for nested CNF.")
    p.add_argument("-v", "--verbose", action="store_true", help="log diagnostics")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide satisfiability")
    s.add_argument("file", help="DIMACS file, or - for standard input")
    s.add_argument("--witness", action="store_true", help="print a satisfying assignment")
    s.add_argument("--no-sort", action="store_true",
                   help="require the clauses to be in a valid order already")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check", help="report nestedness and order validity")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("sort", help="print the clauses in a valid order")
    s.add_argument("file")
    s.set_defaults(func=cmd_sort)

    s = sub.add_parser("gen", help="generate a random nested instance")
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--clauses", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--width", type=int, default=4)
    s.add_argument("--p-interior", type=float, default=0.5)
    s.add_argument("--p-negative", type=float, default=0.5)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("fuzz", help="differential test against brute force")
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--max-vars", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true",
                   help="enumerate every valid instance up to --max-vars/--max-clauses")
    s.add_argument("--max-clauses", type=int, default=3)
    s.add_argument("--csv", help="write per-instance rows here")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("bench", help="time the solver at growing sizes")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sizes", nargs="+", metavar="N:M")
    s.add_argument("--backend", default="auto", choices=["auto", "python", "cython", "all"])
    s.add_argument("--repeat", type=int, default=3)
    s.add_argument("--csv", help="append per-size rows here")
    s.set_defaults(func=cmd_bench)
    return p


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="c %(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (DimacsError, OSError, ValueError) as exc:
        print(f"c error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
