"""Core domain types: literals, clauses, the flat clause database, and the
ordering/straddle predicates.

Literals are nonzero signed integers (``-x`` is the negation of ``x``).
Variable 0 is reserved for the solver's left sentinel and never appears in
a legal literal.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class Ordering(enum.Enum):
    LT = -1
    EQUIV = 0
    GT = 1


class Literal(NamedTuple):
    """A signed variable reference; ``positive`` is True for the unnegated form."""

    var: int
    positive: bool

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __int__(self) -> int:
        return self.var if self.positive else -self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return str(int(self))


def literal_with_polarity(x: int, s: bool, n: int | None = None) -> int:
    """Return ``x`` if ``s`` else ``-x`` (the ``x|s`` notation)."""
    if x < 1 or (n is not None and x > n):
        bound = f"1..{n}" if n is not None else ">= 1"
        raise ValueError(f"variable {x} outside {bound}")
    return x if s else -x


def compare_literals(a: int, b: int) -> Ordering:
    """Compare two literals by variable only, ignoring signs."""
    va, vb = abs(int(a)), abs(int(b))
    if va < vb:
        return Ordering.LT
    if va > vb:
        return Ordering.GT
    return Ordering.EQUIV


class Clause(tuple):
    """Literals on distinct variables, stored in strictly increasing variable order.

    ``Clause([3, -1])`` sorts its input; duplicated variables are rejected.
    Tautologies and duplicates belong to :func:`nestedsat.prep.normalize`.
    """

    __slots__ = ()

    def __new__(cls, literals: Iterable[int] = ()) -> "Clause":
        lits = sorted((int(x) for x in literals), key=abs)
        for i, lit in enumerate(lits):
            if lit == 0:
                raise ValueError("0 is not a literal")
            if i and abs(lits[i - 1]) == abs(lit):
                raise ValueError(f"variable {abs(lit)} occurs twice in clause")
        return super().__new__(cls, lits)

    @property
    def vars(self) -> tuple[int, ...]:
        return tuple(abs(x) for x in self)

    @property
    def minvar(self) -> int:
        return abs(self[0])

    @property
    def maxvar(self) -> int:
        return abs(self[-1])

    def __repr__(self) -> str:
        return "Clause(%s)" % list(self)


def _vars(clause: Sequence[int]) -> list[int]:
    if len(clause) == 0:
        raise ValueError("empty clause")
    return [abs(x) for x in clause]


def straddles(c: Sequence[int], c2: Sequence[int]) -> bool:
    """True iff some variable of ``c2`` lies strictly inside the span of ``c``.

    Both clauses must be in increasing variable order.
    """
    if len(c) == 0:
        raise ValueError("empty clause")
    lo, hi = abs(c[0]), abs(c[-1])
    v2 = _vars(c2)
    # first variable of c2 above lo; straddle iff it is also below hi
    k = bisect_right(v2, lo)
    return k < len(v2) and v2[k] < hi


def overlaps(c: Sequence[int], c2: Sequence[int]) -> bool:
    return straddles(c, c2) and straddles(c2, c)


def strictly_straddles(c: Sequence[int], c2: Sequence[int]) -> bool:
    """The ``≻`` relation: ``c`` straddles ``c2`` but not conversely."""
    return straddles(c, c2) and not straddles(c2, c)


def interior_variables(c: Sequence[int]) -> range:
    """Variables strictly between the endpoints of ``c``, present in ``c`` or not."""
    v = _vars(c)
    return range(v[0] + 1, v[-1])


def interior_literals(c: Sequence[int]) -> tuple[int, ...]:
    _vars(c)
    return tuple(c[1:-1])


class FlatClauseDB:
    """Clauses packed into a flat literal array plus offsets.

    Clause ``i`` (0-based here, 1-based in messages) occupies
    ``lit[start[i]:start[i+1]]``.  The arrays are read-only numpy ``int64``
    vectors.  ``ordered`` and ``nested`` are verification caches: they are
    set by :mod:`nestedsat.nesting` once the property has been checked and
    never cleared, since the clause data itself cannot change.
    """

    __slots__ = ("n", "lit", "start", "ordered", "nested")

    def __init__(self, n: int, lit, start, *, ordered: bool = False,
                 nested: bool = False, validate: bool = True):
        self.n = int(n)
        self.lit = np.ascontiguousarray(lit, dtype=np.int64)
        self.start = np.ascontiguousarray(start, dtype=np.int64)
        self.lit.flags.writeable = False
        self.start.flags.writeable = False
        self.ordered = ordered
        self.nested = nested
        if validate:
            self._validate()

    def _validate(self) -> None:
        lit, start, n = self.lit, self.start, self.n
        if n < 0:
            raise ValueError("n must be >= 0")
        if start.ndim != 1 or len(start) == 0 or start[0] != 0:
            raise ValueError("start must begin at offset 0")
        if start[-1] != len(lit):
            raise ValueError("start does not cover the literal array")
        widths = np.diff(start)
        if len(widths) and widths.min() < 2:
            i = int(np.argmin(widths)) + 1
            raise ValueError(
                f"clause {i} has fewer than two literals; run prep.normalize first")
        if len(lit) == 0:
            return
        v = np.abs(lit)
        if v.min() < 1 or v.max() > n:
            j = int(np.argmax((v < 1) | (v > n)))
            raise ValueError(f"literal {int(lit[j])} outside variables 1..{n}")
        inc = np.diff(v) > 0
        # positions where a clause begins are exempt from the increase check
        inc[start[1:-1] - 1] = True
        if not inc.all():
            j = int(np.argmin(inc)) + 1
            i = int(np.searchsorted(start, j, side="right"))
            raise ValueError(f"clause {i} is not in strictly increasing variable order")

    @property
    def m(self) -> int:
        return len(self.start) - 1

    @property
    def size(self) -> int:
        """Total literal count L."""
        return len(self.lit)

    def clause(self, i: int) -> Clause:
        """Clause ``i``, 0-based."""
        return Clause(self.lit[self.start[i]:self.start[i + 1]].tolist())

    def clauses(self) -> list[Clause]:
        lit = self.lit.tolist()
        st = self.start.tolist()
        return [tuple.__new__(Clause, lit[st[i]:st[i + 1]]) for i in range(self.m)]

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses())

    def __len__(self) -> int:
        return self.m

    def spans(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-clause (minvar, maxvar) arrays."""
        if self.m == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        lo = np.abs(self.lit[self.start[:-1]])
        hi = np.abs(self.lit[self.start[1:] - 1])
        return lo, hi

    def one_based_layout(self) -> tuple[list[int], list[int]]:
        """``(lit, start)`` with 1-based offsets, for debug dumps."""
        return self.lit.tolist(), (self.start + 1).tolist()

    def reorder(self, perm: Sequence[int]) -> "FlatClauseDB":
        """A new database holding clauses ``perm[0], perm[1], ...``."""
        perm = np.asarray(perm, dtype=np.int64)
        widths = np.diff(self.start)[perm]
        start = np.zeros(len(perm) + 1, dtype=np.int64)
        np.cumsum(widths, out=start[1:])
        if len(perm):
            idx = np.repeat(self.start[:-1][perm] - start[:-1], widths)
            idx += np.arange(start[-1], dtype=np.int64)
            lit = self.lit[idx]
        else:
            lit = np.zeros(0, dtype=np.int64)
        return FlatClauseDB(self.n, lit, start, nested=self.nested, validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlatClauseDB):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.lit, other.lit)
                and np.array_equal(self.start, other.start))

    def __repr__(self) -> str:
        return f"FlatClauseDB(n={self.n}, m={self.m}, L={self.size})"


def build_db(clauses: Iterable[Sequence[int]], n: int) -> FlatClauseDB:
    """Pack clauses (each already in increasing variable order) into a flat db."""
    lit: list[int] = []
    start = [0]
    for i, c in enumerate(clauses, 1):
        if len(c) < 2:
            raise ValueError(
                f"clause {i} has {len(c)} literal(s); run prep.normalize first")
        for x in c:
            if x == 0 or abs(x) > n:
                raise ValueError(f"clause {i}: literal {x} outside variables 1..{n}")
        lit.extend(int(x) for x in c)
        start.append(len(lit))
    return FlatClauseDB(n, lit, start)
