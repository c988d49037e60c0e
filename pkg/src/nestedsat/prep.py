"""DIMACS I/O, normalization, conditioning, and the nested-instance generator."""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .model import FlatClauseDB

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    def __init__(self, line: int | None, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class RawClauseSet:
    """Clauses as read: unsorted, possibly with repeats or complementary pairs."""

    n: int
    clauses: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        for i, c in enumerate(self.clauses, 1):
            for x in c:
                if x == 0 or abs(x) > self.n:
                    raise ValueError(f"clause {i}: literal {x} outside variables 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)


class Status(enum.Enum):
    OPEN = "open"
    TRIVIALLY_SAT = "trivially-sat"
    TRIVIALLY_UNSAT = "trivially-unsat"


@dataclass
class NormalizedInstance:
    """``db`` holds every clause that still matters, each with two or more
    literals; ``forced`` are the values fixed by unit propagation.

    ``origin[k]`` is the 1-based index, in the input, of ``db``'s clause ``k``.
    """

    db: FlatClauseDB
    forced: dict[int, bool]
    status: Status
    origin: list[int] = field(default_factory=list)


def parse_dimacs(text: str) -> RawClauseSet:
    n = None
    declared_m = 0
    clauses: list[list[int]] = []
    cur: list[int] = []
    cur_line = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s[0] == "c":
            continue
        if s[0] == "%":  # SATLIB trailer
            break
        if s[0] == "p":
            parts = s.split()
            if n is not None:
                raise DimacsError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, f"malformed header {s!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"malformed header {s!r}") from None
            if n < 0 or declared_m < 0:
                raise DimacsError(lineno, "negative counts in header")
            continue
        if n is None:
            raise DimacsError(lineno, "clause before the 'p cnf' header")
        for tok in s.split():
            try:
                x = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if x == 0:
                clauses.append(cur)
                cur = []
                continue
            if abs(x) > n:
                raise DimacsError(lineno, f"literal {x} out of range 1..{n}")
            if not cur:
                cur_line = lineno
            cur.append(x)
    if n is None:
        raise DimacsError(None, "missing 'p cnf' header")
    if cur:
        raise DimacsError(cur_line, "clause not terminated by 0")
    if len(clauses) != declared_m:
        log.warning("header declares %d clauses, found %d", declared_m, len(clauses))
    return RawClauseSet(n, clauses)


def read_dimacs(path: str) -> RawClauseSet:
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _sorted_lits(c: Iterable[int]) -> list[int]:
    return sorted(set(int(x) for x in c), key=lambda x: (abs(x), x))


def emit_dimacs(inst) -> str:
    """Canonical DIMACS text for a :class:`FlatClauseDB` or :class:`RawClauseSet`."""
    if isinstance(inst, FlatClauseDB):
        clauses: Sequence[Sequence[int]] = inst.clauses()
    else:
        clauses = [_sorted_lits(c) for c in inst.clauses]
    out = [f"p cnf {inst.n} {len(clauses)}\n"]
    out.extend(" ".join(map(str, c)) + (" 0\n" if len(c) else "0\n") for c in clauses)
    return "".join(out)


def _simplify(clauses: Sequence[Sequence[int]], n: int,
              seed: dict[int, bool] | None = None) -> NormalizedInstance:
    """Tautology/duplicate removal plus unit propagation to fixpoint.

    Clause order is preserved for survivors.  ``seed`` values are applied
    first but are not reported in ``forced``.
    """
    value: dict[int, bool] = {}
    work: list[list[int] | None] = []
    for c in clauses:
        lits = _sorted_lits(c)
        vs = [abs(x) for x in lits]
        if len(set(vs)) != len(vs):
            work.append(None)  # contains x and -x
            continue
        work.append(lits)

    def empty(status):
        return NormalizedInstance(FlatClauseDB(n, [], [0], ordered=True, nested=True),
                                  {}, status, [])

    if any(c is not None and not c for c in work):
        return empty(Status.TRIVIALLY_UNSAT)

    occ: dict[int, list[int]] = {}
    for k, c in enumerate(work):
        if c is None:
            continue
        for x in c:
            occ.setdefault(x, []).append(k)
    done = [c is None for c in work]
    free = [0 if c is None else len(c) for c in work]

    queue: deque[int] = deque()
    for v, b in (seed or {}).items():
        queue.append(v if b else -v)
    for k, c in enumerate(work):
        if c is not None and len(c) == 1:
            queue.append(c[0])

    while queue:
        x = queue.popleft()
        v = abs(x)
        if v in value:
            if value[v] != (x > 0):
                return empty(Status.TRIVIALLY_UNSAT)
            continue
        value[v] = x > 0
        for k in occ.get(x, ()):
            done[k] = True
        for k in occ.get(-x, ()):
            if done[k]:
                continue
            free[k] -= 1
            if free[k] == 0:
                return empty(Status.TRIVIALLY_UNSAT)
            if free[k] == 1:
                for y in work[k]:
                    if abs(y) not in value:
                        queue.append(y)
                        break

    lit: list[int] = []
    start = [0]
    origin = []
    for k, c in enumerate(work):
        if done[k]:
            continue
        lit.extend(y for y in c if abs(y) not in value)
        start.append(len(lit))
        origin.append(k + 1)
    forced = {v: b for v, b in sorted(value.items()) if not seed or v not in seed}
    db = FlatClauseDB(n, lit, start, validate=False)
    status = Status.OPEN if origin else Status.TRIVIALLY_SAT
    return NormalizedInstance(db, forced, status, origin)


def normalize(raw: RawClauseSet) -> NormalizedInstance:
    return _simplify(raw.clauses, raw.n)


def condition(db: FlatClauseDB, v: int, value: bool) -> NormalizedInstance:
    """Fix variable ``v`` and simplify; surviving clauses keep their order.

    Deleting literals or clauses only shrinks the straddle relation, so the
    result inherits ``db``'s ``ordered``/``nested`` flags.
    """
    if not 1 <= v <= db.n:
        raise ValueError(f"variable {v} outside 1..{db.n}")
    res = _simplify(db.clauses(), db.n, {v: value})
    res.db.ordered = res.db.ordered or db.ordered
    res.db.nested = res.db.nested or db.nested
    return res


@dataclass
class GeneratorConfig:
    n: int
    m: int
    width: int = 4
    p_interior: float = 0.5
    p_negative: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be >= 0")
        if self.width < 2:
            raise ValueError("width must be >= 2")


def generate_nested(cfg: GeneratorConfig, *, backend: str | None = None) -> FlatClauseDB:
    """Random nested instance whose clause order is already valid.

    Intervals over ``1..n`` are opened at random positions and closed LIFO,
    which yields a laminar family; each clause takes its interval's endpoints
    plus some of the positions that lie inside its interval and inside no
    smaller one.  Clauses are listed children-first.  With ``n < 2`` no
    interval fits and the result is empty regardless of ``cfg.m``.
    """
    n, m = cfg.n, cfg.m
    rng = np.random.default_rng(cfg.seed)
    if n < 2 or m == 0:
        if m:
            log.warning("n=%d admits no clauses; generated m=0 instead of %d", n, m)
        return FlatClauseDB(n, [], [0], ordered=True, nested=True)
    opens = np.bincount(rng.integers(1, n, size=m), minlength=n + 1)
    closes = rng.poisson(m / (n - 1), size=n + 1)
    interior_u = rng.random(n + 1)
    sign_u = rng.random(2 * m + n + 1)
    lit, start = kernels.get(backend).generate_sweep(
        n, opens, closes, interior_u, cfg.p_interior, cfg.width, sign_u, cfg.p_negative)
    return FlatClauseDB(n, lit, start, ordered=True, nested=True)
