"""The linear-time dynamic program over interval partitions.

Two routes run the same algorithm:

* :class:`SolverState` with :func:`compute_newsat`, :func:`process_clause` and
  :func:`finalize` executes one clause at a time and exposes every
  intermediate table.  Tests and instrumentation use it.
* :func:`solve` / :func:`run` hand the whole flat database to a kernel from
  :mod:`nestedsat.kernels` (compiled when available).

Tables are indexed ``[s][t]`` with ``False``/``True`` as 0/1.  When four
entries are written as a tuple they are in the order ``(ff, ft, tf, tt)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .model import FlatClauseDB

Assignment = dict  # variable -> bool


class Verdict(enum.Enum):
    SAT = "SATISFIABLE"
    UNSAT = "UNSATISFIABLE"

    def __bool__(self) -> bool:
        return self is Verdict.SAT


class ClauseNotInPartition(ValueError):
    """A clause used a variable that is no longer a partition point.

    This only happens when the clause order violates the straddle constraint
    or the clause set is not nested.
    """

    def __init__(self, clause_index: int | None, detail: str = ""):
        self.clause_index = clause_index
        where = f"clause {clause_index}" if clause_index is not None else "clause"
        super().__init__(f"{where} is not made of live partition points{detail}")


NewsatTable = list  # 2x2 nested list, entries in {0, 1, 2}


def flat(table) -> tuple[int, int, int, int]:
    """``(ff, ft, tf, tt)`` view of a 2x2 table."""
    return (int(table[0][0]), int(table[0][1]), int(table[1][0]), int(table[1][1]))


@dataclass
class SolverState:
    """Partition pointers and the ``sat`` table for variables ``0..n``."""

    n: int
    next: list[int]
    sat: np.ndarray  # shape (n+1, 2, 2), entries 0/1
    live: list[bool] = field(repr=False)
    visited: int = 0

    def partition_points(self) -> list[int]:
        """Live points reachable from 0, ending with the first point beyond n."""
        pts = [0]
        while pts[-1] <= self.n:
            pts.append(self.next[pts[-1]])
        return pts

    def sat_entries(self, x: int) -> tuple[int, int, int, int]:
        return flat(self.sat[x])


def init_state(n: int) -> SolverState:
    if n < 0:
        raise ValueError("n must be >= 0")
    return SolverState(
        n=n,
        next=list(range(1, n + 2)),
        sat=np.ones((n + 1, 2, 2), dtype=np.uint8),
        live=[True] * (n + 2),
    )


class TraceStep(NamedTuple):
    x: int
    newsat: tuple[int, int, int, int]


def _sweep(state: SolverState, lits: Sequence[tuple[int, bool]],
           clause_index: int | None = None):
    l = lits[0][0]
    if not state.live[l]:
        raise ClauseNotInPartition(clause_index, f": variable {l} was interior to an earlier clause")
    newsat = [[1, 0], [0, 1]]
    trace = []
    sat = state.sat
    nxt = state.next
    j = 0
    x = l
    while True:
        trace.append(TraceStep(x, flat(newsat)))
        state.visited += 1
        var, positive = lits[j]
        if x == var:
            # upgrade 1 -> 2 where the clause literal at x agrees with t
            t = int(positive)
            for s in (0, 1):
                if newsat[s][t] == 1:
                    newsat[s][t] = 2
            j += 1
            if j == len(lits):
                break
        if x != l:
            state.live[x] = False
        sx = sat[x]
        newsat = [
            [max(newsat[s][0] * int(sx[0][t]), newsat[s][1] * int(sx[1][t])) for t in (0, 1)]
            for s in (0, 1)
        ]
        x = nxt[x]
        if x > lits[j][0]:
            raise ClauseNotInPartition(
                clause_index, f": variable {lits[j][0]} is not a partition point")
    return newsat, trace


def _pairs(clause: Iterable[int]) -> list[tuple[int, bool]]:
    pairs = [(abs(int(x)), int(x) > 0) for x in clause]
    if len(pairs) < 2:
        raise ValueError("clauses need at least two literals")
    return pairs


def compute_newsat(state: SolverState, clause: Sequence[int],
                   clause_index: int | None = None) -> tuple[NewsatTable, list[TraceStep]]:
    """Scan the clause's span and return the final ``newsat`` table plus the
    arrival trace (table value on reaching each ``x``, before upgrading).

    ``state.sat`` and ``state.next`` are not modified; ``state.visited`` and
    the liveness marks of the interior points are.
    """
    return _sweep(state, _pairs(clause), clause_index)


def _commit(state: SolverState, l: int, r: int, newsat: NewsatTable) -> None:
    state.next[l] = r
    for s in (0, 1):
        for t in (0, 1):
            state.sat[l, s, t] = newsat[s][t] // 2


def process_clause(state: SolverState, clause: Sequence[int],
                   clause_index: int | None = None) -> SolverState:
    pairs = _pairs(clause)
    newsat, _ = _sweep(state, pairs, clause_index)
    _commit(state, pairs[0][0], pairs[-1][0], newsat)
    return state


def finalize(state: SolverState) -> Verdict:
    """Sweep the sentinel clause on variables 0 and n+1, both positive."""
    n = state.n
    newsat, _ = _sweep(state, [(0, True), (n + 1, True)])
    _commit(state, 0, n + 1, newsat)
    return Verdict.SAT if state.sat[0, 1, 1] == 1 else Verdict.UNSAT


class SolveResult(NamedTuple):
    verdict: Verdict
    visited: int
    n: int
    m: int

    @property
    def visit_bound(self) -> int:
        return 2 * (self.m + 1) + self.n


def _kernel_arrays(db: FlatClauseDB):
    L = db.size
    var = np.empty(L + 2, dtype=np.int64)
    np.abs(db.lit, out=var[:L])
    var[L] = 0
    var[L + 1] = db.n + 1
    pos = np.empty(L + 2, dtype=np.uint8)
    np.greater(db.lit, 0, out=pos[:L])
    pos[L:] = 1
    start = np.append(db.start, L + 2)
    return var, pos, start


def run(db: FlatClauseDB, *, sort: bool = True, backend: str | None = None) -> SolveResult:
    """Decide ``db`` and report the number of partition points visited.

    Unless ``db.ordered`` is already set, the clause order is checked first;
    with ``sort=True`` an invalid order is repaired by
    :func:`nestedsat.nesting.sort_nested`, otherwise it raises.
    """
    from .nesting import ensure_ordered

    db = ensure_ordered(db, sort=sort)
    var, pos, start = _kernel_arrays(db)
    verdict, visited, bad = kernels.get(backend).solve_flat(var, pos, start, db.n)
    if verdict < 0:
        raise ClauseNotInPartition(bad + 1 if bad < db.m else None)
    return SolveResult(Verdict.SAT if verdict else Verdict.UNSAT, int(visited), db.n, db.m)


def solve(db: FlatClauseDB, *, sort: bool = True, backend: str | None = None) -> Verdict:
    return run(db, sort=sort, backend=backend).verdict


def solve_stepwise(db: FlatClauseDB) -> SolveResult:
    """Same as :func:`run` but through :class:`SolverState`, one clause at a time.

    The database must already be in a valid order.
    """
    state = init_state(db.n)
    for i, c in enumerate(db.clauses(), 1):
        process_clause(state, c, i)
    verdict = finalize(state)
    return SolveResult(verdict, state.visited, db.n, db.m)


def extract_witness(db: FlatClauseDB, *, backend: str | None = None):
    """A satisfying assignment over ``1..n``, or ``Verdict.UNSAT``.

    Self-reduction: for each variable in turn, condition the residual instance
    on ``True`` and keep that choice if it stays satisfiable, else take
    ``False``.  Variables left unconstrained default to ``False``.
    """
    from .prep import Status, condition

    if solve(db, backend=backend) is Verdict.UNSAT:
        return Verdict.UNSAT
    assignment: Assignment = {}
    residual = db
    for v in range(1, db.n + 1):
        if v in assignment:
            continue
        if residual.m == 0:
            break
        res = condition(residual, v, True)
        if res.status is Status.TRIVIALLY_UNSAT or (
                res.status is Status.OPEN and solve(res.db, backend=backend) is Verdict.UNSAT):
            res = condition(residual, v, False)
            value = False
        else:
            value = True
        if res.status is Status.TRIVIALLY_UNSAT:  # pragma: no cover - would contradict the solver
            raise AssertionError(f"both values of variable {v} refuted")
        assignment[v] = value
        assignment.update(res.forced)
        residual = res.db
    for v in range(1, db.n + 1):
        assignment.setdefault(v, False)
    return dict(sorted(assignment.items()))
