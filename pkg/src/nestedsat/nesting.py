"""Nestedness checks, straddle-respecting clause order, and the clause forest.

The pairwise checks follow the definitions directly and cost O(m^2).  The
linear checks cover each variable at most once with a union-find sweep
(:func:`nestedsat.kernels` ``order_violation``); :func:`is_nested` and
:func:`verify_order` pick between them by size unless told otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .model import FlatClauseDB, straddles, strictly_straddles

PAIRWISE_MAX_M = 64


class OverlapWitness(NamedTuple):
    """Clauses ``i`` and ``j`` (1-based) straddle each other.

    ``var_in_i`` is a variable of clause ``j`` strictly inside clause ``i``'s
    span; ``var_in_j`` the converse.
    """

    i: int
    j: int
    var_in_i: int
    var_in_j: int


class NotNested(ValueError):
    def __init__(self, witness: OverlapWitness):
        self.witness = witness
        super().__init__(f"clauses {witness.i} and {witness.j} overlap")


class NotProperlyOrdered(ValueError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(
            f"clause {pair[0]} straddles the later clause {pair[1]}")


def _inside(c: Sequence[int], c2: Sequence[int]) -> int:
    """A variable of ``c2`` strictly inside the span of ``c`` (caller knows one exists)."""
    lo, hi = abs(c[0]), abs(c[-1])
    return next(abs(x) for x in c2 if lo < abs(x) < hi)


def _witness(clauses, a: int, b: int) -> OverlapWitness:
    i, j = sorted((a, b))
    ci, cj = clauses[i], clauses[j]
    return OverlapWitness(i + 1, j + 1, _inside(ci, cj), _inside(cj, ci))


def find_overlap(clauses: Sequence[Sequence[int]]) -> OverlapWitness | None:
    """First overlapping pair ``(i, j)``, ``i < j``, in lexicographic order."""
    spans = [(abs(c[0]), abs(c[-1])) for c in clauses]
    for i, ci in enumerate(clauses):
        lo, hi = spans[i]
        if hi - lo < 2:
            continue
        for j in range(i + 1, len(clauses)):
            lo2, hi2 = spans[j]
            if hi2 <= lo or lo2 >= hi:
                continue
            cj = clauses[j]
            if straddles(ci, cj) and straddles(cj, ci):
                return _witness(clauses, i, j)
    return None


def find_order_violation(clauses: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    """First ``(i, i2)`` with ``i < i2`` and clause ``i`` straddling clause ``i2`` (1-based)."""
    for i, ci in enumerate(clauses):
        for j in range(i + 1, len(clauses)):
            if straddles(ci, clauses[j]):
                return i + 1, j + 1
    return None


def comparator_order(lit: np.ndarray, start: np.ndarray) -> np.ndarray:
    """Permutation sorting clauses by span width ascending, then literal count
    descending, then original index."""
    m = len(start) - 1
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    lo = np.abs(lit[start[:-1]])
    hi = np.abs(lit[start[1:] - 1])
    count = np.diff(start)
    return np.lexsort((np.arange(m), -count, hi - lo))


def _flat_violation(lit, start, n, backend=None) -> tuple[int, int] | None:
    a, b = kernels.get(backend).order_violation(lit, start, n)
    if a < 0:
        return None
    return int(a), int(b)


def _fast_overlap(lit, start, n, backend=None) -> OverlapWitness | None:
    # In comparator order an earlier clause can only straddle a later one if
    # the two overlap, so any order violation there is an overlap witness.
    perm = comparator_order(lit, start)
    widths = np.diff(start)[perm]
    new_start = np.zeros(len(perm) + 1, dtype=np.int64)
    np.cumsum(widths, out=new_start[1:])
    idx = np.repeat(start[:-1][perm] - new_start[:-1], widths) + np.arange(new_start[-1])
    hit = _flat_violation(lit[idx], new_start, n, backend)
    if hit is None:
        return None
    a, b = int(perm[hit[0]]), int(perm[hit[1]])
    ca = lit[start[a]:start[a + 1]].tolist()
    cb = lit[start[b]:start[b + 1]].tolist()
    return _witness({a: ca, b: cb}, a, b)


def _pick(method: str, m: int) -> str:
    if method == "auto":
        return "pairwise" if m <= PAIRWISE_MAX_M else "linear"
    if method not in ("pairwise", "linear"):
        raise ValueError(f"unknown method {method!r}")
    return method


def _flat_lists(clauses: Sequence[Sequence[int]]):
    start = np.zeros(len(clauses) + 1, dtype=np.int64)
    np.cumsum([len(c) for c in clauses], out=start[1:])
    lit = np.fromiter((x for c in clauses for x in c), dtype=np.int64, count=int(start[-1]))
    return lit, start


def overlap_in(clauses: Sequence[Sequence[int]], n: int,
               method: str = "auto") -> OverlapWitness | None:
    """An overlapping pair among nonempty, variable-sorted clauses of any width."""
    if _pick(method, len(clauses)) == "pairwise":
        return find_overlap(clauses)
    lit, start = _flat_lists(clauses)
    return _fast_overlap(lit, start, n)


def order_violation_in(clauses: Sequence[Sequence[int]], n: int,
                       method: str = "auto") -> tuple[int, int] | None:
    if _pick(method, len(clauses)) == "pairwise":
        return find_order_violation(clauses)
    lit, start = _flat_lists(clauses)
    hit = _flat_violation(lit, start, n)
    return None if hit is None else (hit[0] + 1, hit[1] + 1)


def is_nested(db: FlatClauseDB, method: str = "auto") -> tuple[bool, OverlapWitness | None]:
    """Whether no two clauses overlap; on failure also an overlapping pair.

    ``pairwise`` reports the lexicographically first pair; ``linear`` reports
    some overlapping pair.
    """
    if _pick(method, db.m) == "pairwise":
        w = find_overlap(db.clauses())
    else:
        w = _fast_overlap(db.lit, db.start, db.n)
    if w is None:
        db.nested = True
        return True, None
    return False, w


def verify_order(db: FlatClauseDB, method: str = "auto") -> tuple[bool, tuple[int, int] | None]:
    """Whether no clause straddles a later one; on failure a 1-based violating pair."""
    if _pick(method, db.m) == "pairwise":
        pair = find_order_violation(db.clauses())
    else:
        hit = _flat_violation(db.lit, db.start, db.n)
        pair = None if hit is None else (hit[0] + 1, hit[1] + 1)
    if pair is None:
        # a valid order rules out overlaps as well
        db.ordered = True
        db.nested = True
        return True, None
    return False, pair


def sort_nested(db: FlatClauseDB) -> FlatClauseDB:
    """Reorder clauses so that each follows every clause it straddles."""
    perm = comparator_order(db.lit, db.start)
    out = db.reorder(perm)
    hit = _flat_violation(out.lit, out.start, out.n)
    if hit is not None:
        a, b = int(perm[hit[0]]), int(perm[hit[1]])
        raise NotNested(_witness({a: db.clause(a), b: db.clause(b)}, a, b))
    db.nested = out.nested = out.ordered = True
    return out


def ensure_ordered(db: FlatClauseDB, *, sort: bool = True) -> FlatClauseDB:
    """``db`` itself if its order is valid, else a sorted copy (or an error)."""
    if db.ordered:
        return db
    ok, pair = verify_order(db)
    if ok:
        return db
    nested, w = is_nested(db)
    if not nested:
        raise NotNested(w)
    if not sort:
        raise NotProperlyOrdered(pair)
    return sort_nested(db)


def literal_bound_check(db: FlatClauseDB) -> bool:
    """Total literal count is at most 2m + n."""
    return db.size <= 2 * db.m + db.n


@dataclass
class ClauseForest:
    """Hierarchy of a nested clause set (0-based clause indices).

    ``parent[i]`` is the least strict straddler of clause ``i`` or ``None``.
    ``groups`` lists sets of two or more equivalent 2-literal clauses, i.e.
    ones on the same pair of variables.
    """

    parent: list[int | None]
    roots: list[int] = field(default_factory=list)
    groups: list[list[int]] = field(default_factory=list)

    def children(self, i: int) -> list[int]:
        return [k for k, p in enumerate(self.parent) if p == i]

    def ancestors(self, i: int) -> list[int]:
        out = []
        p = self.parent[i]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def equivalents(self, i: int) -> list[int]:
        for g in self.groups:
            if i in g:
                return g
        return [i]


def build_forest(db: FlatClauseDB) -> ClauseForest:
    ok, w = is_nested(db)
    if not ok:
        raise NotNested(w)
    clauses = db.clauses()
    rank = np.empty(db.m, dtype=np.int64)
    rank[comparator_order(db.lit, db.start)] = np.arange(db.m)
    parent: list[int | None] = []
    for k, c in enumerate(clauses):
        best = None
        for a, ca in enumerate(clauses):
            if a != k and strictly_straddles(ca, c) and (best is None or rank[a] < rank[best]):
                best = a
        parent.append(best)
    by_span: dict[tuple[int, int], list[int]] = {}
    for k, c in enumerate(clauses):
        if len(c) == 2:
            by_span.setdefault((abs(c[0]), abs(c[1])), []).append(k)
    groups = [g for g in by_span.values() if len(g) > 1]
    roots = [k for k, p in enumerate(parent) if p is None]
    return ClauseForest(parent, roots, groups)
