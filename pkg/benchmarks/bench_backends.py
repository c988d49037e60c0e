"""Compare the compiled and pure-Python kernels on generated nested instances.

    python benchmarks/bench_backends.py [--sizes N:M ...] [--repeat R] [--seed S]

For each size and each available backend, times the three kernels (solve,
order check, generation) and prints one table row.  The last column is the
speedup of the compiled kernel over the Python one.
"""

import argparse
import time

from nestedsat import kernels
from nestedsat.prep import GeneratorConfig, generate_nested
from nestedsat.solver import _kernel_arrays


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def time_backend(name, db, cfg, repeat):
    k = kernels.get(name)
    var, pos, start = _kernel_arrays(db)
    return {
        "solve": best_of(lambda: k.solve_flat(var, pos, start, db.n), repeat),
        "order": best_of(lambda: k.order_violation(db.lit, db.start, db.n), repeat),
        "gen": best_of(lambda: generate_nested(cfg, backend=name), repeat),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", default=["2000:1000", "20000:10000", "200000:100000"],
                    metavar="N:M")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>9} {'m':>9} {'kernel':>6} " + " ".join(f"{b + ' ms':>12}" for b in backends)
          + ("     speedup" if len(backends) > 1 else ""))
    for size in args.sizes:
        n, m = (int(v) for v in size.split(":"))
        cfg = GeneratorConfig(n=n, m=m, seed=args.seed)
        db = generate_nested(cfg)
        timings = {b: time_backend(b, db, cfg, args.repeat) for b in backends}
        for kern in ("solve", "order", "gen"):
            row = [timings[b][kern] for b in backends]
            line = f"{n:>9} {m:>9} {kern:>6} " + " ".join(f"{t * 1e3:>12.2f}" for t in row)
            if len(backends) > 1:
                line += f" {row[0] / row[-1]:>10.1f}x"
            print(line)


if __name__ == "__main__":
    main()
