"""Brute-force oracle, witness checking, differential fuzzing and the
linear-time benchmark."""

from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .model import Clause, FlatClauseDB, build_db, straddles
from .nesting import ensure_ordered
from .prep import GeneratorConfig, RawClauseSet, emit_dimacs, generate_nested
from .solver import Verdict, extract_witness, run

ORACLE_LIMIT = 20


def _as_clauses(inst) -> tuple[list[Sequence[int]], int]:
    if isinstance(inst, FlatClauseDB):
        return inst.clauses(), inst.n
    if isinstance(inst, RawClauseSet):
        return inst.clauses, inst.n
    clauses = [list(c) for c in inst]
    n = max((abs(x) for c in clauses for x in c), default=0)
    return clauses, n


@dataclass
class OracleResult:
    verdict: Verdict
    n: int
    mask: np.ndarray = field(repr=False)  # mask[k]: assignment k satisfies all clauses

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    def models(self) -> Iterator[dict[int, bool]]:
        """Satisfying full assignments; bit ``v-1`` of the index is variable ``v``."""
        for k in np.flatnonzero(self.mask):
            yield {v: bool((k >> (v - 1)) & 1) for v in range(1, self.n + 1)}


_columns: dict[int, np.ndarray] = {}


def _bit_columns(n: int) -> np.ndarray:
    cols = _columns.get(n)
    if cols is None:
        idx = np.arange(1 << n, dtype=np.int64)
        cols = np.zeros((n + 1, 1 << n), dtype=bool)
        for v in range(1, n + 1):
            cols[v] = (idx >> (v - 1)) & 1
        _columns[n] = cols
    return cols


def brute_force_sat(inst, n: int | None = None, limit: int = ORACLE_LIMIT) -> OracleResult:
    """Enumerate all 2^n assignments of ``inst`` (a db, raw set, or clause list)."""
    clauses, n0 = _as_clauses(inst)
    n = n0 if n is None else n
    if n > limit:
        raise ValueError(f"refusing to enumerate 2^{n} assignments (limit {limit})")
    cols = _bit_columns(n)
    ok = np.ones(1 << n, dtype=bool)
    for c in clauses:
        hit = np.zeros(1 << n, dtype=bool)
        for x in c:
            hit |= cols[x] if x > 0 else ~cols[-x]
        ok &= hit
    return OracleResult(Verdict.SAT if ok.any() else Verdict.UNSAT, n, ok)


def check_witness(clauses, assignment: dict[int, bool]) -> bool:
    """Every clause has a literal whose variable is assigned its polarity."""
    if isinstance(clauses, (FlatClauseDB, RawClauseSet)):
        clauses = _as_clauses(clauses)[0]
    return all(any(assignment.get(abs(x)) == (x > 0) for x in c) for c in clauses)


@dataclass
class FuzzCase:
    index: int
    dimacs: str
    solver: Verdict | None
    oracle: Verdict
    note: str = ""


@dataclass
class FuzzReport:
    instances: int = 0
    agreements: int = 0
    sat: int = 0
    unsat: int = 0
    witnesses_checked: int = 0
    max_visit_ratio: float = 0.0
    seed: int | None = None
    counterexample: FuzzCase | None = None
    rows: list[dict] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.agreements == self.instances

    def summary(self) -> str:
        lines = [
            f"instances  {self.instances}",
            f"agreements {self.agreements}",
            f"sat/unsat  {self.sat}/{self.unsat}",
            f"witnesses  {self.witnesses_checked}",
            f"max visited/(2(m+1)+n) {self.max_visit_ratio:.3f}",
        ]
        if self.counterexample is not None:
            ce = self.counterexample
            lines.append(f"counterexample #{ce.index}: solver={ce.solver} oracle={ce.oracle} {ce.note}")
            lines.append(ce.dimacs.rstrip())
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["index", "n", "m", "L", "oracle", "solver", "visited", "witness_ok", "agree"]
        w = csv.DictWriter(buf, fieldnames=cols)
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()


def check_instance(db: FlatClauseDB, witness: bool = True) -> tuple[bool, dict, str]:
    """Run solver, oracle and (for SAT) witness extraction on one instance."""
    oracle = brute_force_sat(db).verdict
    row = {"n": db.n, "m": db.m, "L": db.size, "oracle": oracle.name}
    try:
        res = run(db)
    except Exception as exc:  # a crash counts as a disagreement
        row.update(solver="ERROR", visited="", witness_ok="", agree=False)
        return False, row, f"{type(exc).__name__}: {exc}"
    row.update(solver=res.verdict.name, visited=res.visited)
    agree = res.verdict is oracle and res.visited <= res.visit_bound
    note = "" if res.visited <= res.visit_bound else "visit bound exceeded"
    wok = ""
    if agree and witness and res.verdict is Verdict.SAT:
        a = extract_witness(db)
        wok = a is not Verdict.UNSAT and check_witness(db.clauses(), a)
        if not wok:
            agree, note = False, "witness fails"
    row.update(witness_ok=wok, agree=agree)
    return agree, row, note


def minimize(db: FlatClauseDB) -> FlatClauseDB:
    """Greedily drop clauses, then literals, while the instance still fails."""

    def fails(d):
        if d.m and min(len(c) for c in d.clauses()) < 2:
            return False
        return not check_instance(d)[0]

    clauses = db.clauses()
    changed = True
    while changed:
        changed = False
        for k in range(len(clauses)):
            trial = clauses[:k] + clauses[k + 1:]
            if fails(build_db(trial, db.n)):
                clauses, changed = trial, True
                break
        if changed:
            continue
        for k, c in enumerate(clauses):
            for x in c:
                if len(c) <= 2:
                    break
                trial = clauses[:k] + [Clause(y for y in c if y != x)] + clauses[k + 1:]
                if fails(build_db(trial, db.n)):
                    clauses, changed = trial, True
                    break
            if changed:
                break
    return build_db(clauses, db.n)


def _sub_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def random_instance(seed: int, index: int, n_max: int) -> FlatClauseDB:
    """The ``index``-th fuzz instance: random size and shape, possibly shuffled.

    Shuffled instances reach the solver through the automatic sort.
    """
    rng = np.random.default_rng(_sub_seed(seed, index))
    n = int(rng.integers(0, n_max + 1))
    m = int(rng.integers(0, 2 * n + 1)) if n >= 2 else 0
    cfg = GeneratorConfig(
        n=n, m=m,
        width=int(rng.integers(2, max(2, n) + 1)),
        p_interior=float(rng.random()),
        p_negative=0.5,
        seed=int(rng.integers(2**63)),
    )
    db = generate_nested(cfg)
    if db.m > 1 and rng.random() < 0.5:
        db = db.reorder(rng.permutation(db.m))
    return db


def differential_fuzz(count: int, n_max: int = 16, seed: int = 0, *,
                      witness: bool = True, stop_on_failure: bool = True) -> FuzzReport:
    if n_max > ORACLE_LIMIT:
        raise ValueError(f"n_max {n_max} exceeds the oracle limit {ORACLE_LIMIT}")
    return _run_cases((random_instance(seed, i, n_max) for i in range(count)),
                      seed, witness, stop_on_failure)


def _run_cases(instances: Iterable[FlatClauseDB], seed, witness, stop_on_failure) -> FuzzReport:
    rep = FuzzReport(seed=seed)
    for i, db in enumerate(instances):
        agree, row, note = check_instance(db, witness)
        row["index"] = i
        rep.rows.append(row)
        rep.instances += 1
        if row["oracle"] == "SAT":
            rep.sat += 1
        else:
            rep.unsat += 1
        if row["witness_ok"] is True:
            rep.witnesses_checked += 1
        if row["visited"] != "":
            bound = 2 * (db.m + 1) + db.n
            rep.max_visit_ratio = max(rep.max_visit_ratio, row["visited"] / bound)
        if agree:
            rep.agreements += 1
        elif rep.counterexample is None:
            small = minimize(db)
            rep.counterexample = FuzzCase(
                i, emit_dimacs(small), _solver_verdict(small),
                brute_force_sat(small).verdict, note)
            if stop_on_failure:
                break
    return rep


def _solver_verdict(db):
    try:
        return run(db).verdict
    except Exception:
        return None


def all_clauses(n: int) -> list[Clause]:
    """Every clause over ``1..n`` with at least two literals."""
    out = []
    for k in range(2, n + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((1, -1), repeat=k):
                out.append(Clause(s * v for s, v in zip(signs, vs)))
    return out


def exhaustive_instances(n_max: int = 4, m_max: int = 3) -> Iterator[FlatClauseDB]:
    """Every order-valid clause sequence with ``n <= n_max`` and ``m <= m_max``.

    Order-valid sequences are exactly the nested sets in every admissible
    arrangement.
    """
    for n in range(n_max + 1):
        pool = all_clauses(n)
        P = len(pool)
        st = [[straddles(a, b) for b in pool] for a in pool]
        for m in range(m_max + 1):
            for combo in itertools.product(range(P), repeat=m):
                if any(st[combo[a]][combo[b]] for a in range(m) for b in range(a + 1, m)):
                    continue
                db = build_db([pool[k] for k in combo], n)
                db.ordered = db.nested = True
                yield db


def exhaustive_check(n_max: int = 4, m_max: int = 3, witness: bool = False) -> FuzzReport:
    return _run_cases(exhaustive_instances(n_max, m_max), None, witness, True)


@dataclass
class BenchPoint:
    n: int
    m: int
    L: int
    seconds: float
    visited: int
    verdict: str
    backend: str

    @property
    def bound(self) -> int:
        return 2 * (self.m + 1) + self.n


@dataclass
class BenchReport:
    points: list[BenchPoint] = field(default_factory=list)

    @property
    def ratios(self) -> list[float]:
        """Wall-time ratio of each point to the previous one."""
        return [b.seconds / a.seconds if a.seconds > 0 else float("inf")
                for a, b in zip(self.points, self.points[1:])]

    @property
    def within_bound(self) -> bool:
        return all(p.visited <= p.bound for p in self.points)

    def summary(self) -> str:
        lines = [f"{'backend':8} {'n':>9} {'m':>9} {'L':>9} {'seconds':>9} {'visited':>9} {'bound':>9}"]
        for p in self.points:
            lines.append(f"{p.backend:8} {p.n:9d} {p.m:9d} {p.L:9d} {p.seconds:9.4f} "
                         f"{p.visited:9d} {p.bound:9d}")
        if self.ratios:
            lines.append("time ratios: " + ", ".join(f"{r:.2f}" for r in self.ratios))
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["backend", "n", "m", "L", "seconds", "visited", "bound", "verdict"])
        for p in self.points:
            w.writerow([p.backend, p.n, p.m, p.L, f"{p.seconds:.6f}", p.visited, p.bound, p.verdict])
        return buf.getvalue()


DEFAULT_SIZES = ((2_000, 1_000), (20_000, 10_000), (200_000, 100_000), (2_000_000, 1_000_000))


def bench_linear(sizes: Sequence[tuple[int, int]] = DEFAULT_SIZES, seed: int = 0, *,
                 backend: str | None = None, repeat: int = 3, width: int = 4) -> BenchReport:
    """Time the solver on generated instances; keeps the best of ``repeat`` runs."""
    from . import kernels

    name = kernels.get(backend).BACKEND
    rep = BenchReport()
    for n, m in sizes:
        db = generate_nested(GeneratorConfig(n=n, m=m, width=width, seed=seed))
        db = ensure_ordered(db)
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            res = run(db, backend=backend)
            best = min(best, time.perf_counter() - t0)
        if res.visited > res.visit_bound:
            raise AssertionError(f"visited {res.visited} > bound {res.visit_bound} at n={n}, m={m}")
        rep.points.append(BenchPoint(n, db.m, db.size, best, res.visited, res.verdict.name, name))
    return rep
