import itertools

import numpy as np
import pytest

from conftest import INTRO
from nestedsat.harness import random_instance
from nestedsat.model import Clause, build_db, overlaps, strictly_straddles
from nestedsat.nesting import (
    NotNested, NotProperlyOrdered, build_forest, ensure_ordered, is_nested,
    literal_bound_check, sort_nested, verify_order,
)
from nestedsat.prep import GeneratorConfig, generate_nested


def db_of(clauses, n=None):
    cs = [Clause(c) for c in clauses]
    n = n if n is not None else max((abs(x) for c in cs for x in c), default=0)
    return build_db(cs, n)


@pytest.mark.parametrize("method", ["pairwise", "linear"])
def test_is_nested_intro(method):
    ok, w = is_nested(db_of(INTRO), method)
    assert not ok
    assert (w.i, w.j) == (1, 3)
    assert (w.var_in_i, w.var_in_j) == (2, 2)


@pytest.mark.parametrize("method", ["pairwise", "linear"])
@pytest.mark.parametrize("clauses", [[[1, 3], [2, 3], [1, 2]], []])
def test_is_nested_true(clauses, method):
    db = db_of(clauses)
    assert is_nested(db, method) == (True, None)
    assert db.nested


@pytest.mark.parametrize("method", ["pairwise", "linear"])
@pytest.mark.parametrize("clauses,expected", [
    ([[2, 3], [1, 3]], (True, None)),
    ([[1, 3], [2, 3]], (False, (1, 2))),
    ([[1, 2]], (True, None)),
])
def test_verify_order(clauses, expected, method):
    db = db_of(clauses)
    assert verify_order(db, method) == expected
    assert db.ordered is expected[0]


@pytest.mark.parametrize("clauses,expected", [
    ([[1, 3], [2, 3]], [[2, 3], [1, 3]]),
    ([[1, 5], [1, 3, 5]], [[1, 3, 5], [1, 5]]),
    ([[1, 2], [3, 4]], [[1, 2], [3, 4]]),
])
def test_sort_nested(clauses, expected):
    out = sort_nested(db_of(clauses))
    assert [list(c) for c in out.clauses()] == expected
    assert verify_order(out)[0]


def test_sort_nested_rejects_overlap():
    with pytest.raises(NotNested) as exc:
        sort_nested(db_of(INTRO))
    assert (exc.value.witness.i, exc.value.witness.j) == (1, 3)


def test_ensure_ordered_strict():
    db = db_of([[1, 3], [2, 3]])
    with pytest.raises(NotProperlyOrdered):
        ensure_ordered(db, sort=False)
    assert ensure_ordered(db).clauses() == [Clause([2, 3]), Clause([1, 3])]
    with pytest.raises(NotNested):
        ensure_ordered(db_of(INTRO))


@pytest.mark.parametrize("clauses,n,expected", [([[1, 3], [2, 3]], 3, True), ([], 0, True)])
def test_literal_bound(clauses, n, expected):
    assert literal_bound_check(db_of(clauses, n)) is expected


def test_forest_chain():
    f = build_forest(db_of([[2, 3], [1, 3, 5], [1, 5]]))
    assert f.parent == [1, 2, None]
    assert f.roots == [2]
    assert f.groups == []


def test_forest_equivalent_pair():
    f = build_forest(db_of([[1, 2], [1, 2]]))
    assert f.roots == [0, 1]
    assert f.groups == [[0, 1]]


def test_forest_empty():
    f = build_forest(db_of([], 0))
    assert f.parent == [] and f.roots == [] and f.groups == []


def test_forest_rejects_overlap():
    with pytest.raises(NotNested):
        build_forest(db_of(INTRO))


def test_forest_ancestors_match_strict_straddle():
    for k in range(300):
        db = random_instance(5, k, 10)
        f = build_forest(db)
        cs = db.clauses()
        for a, c in itertools.permutations(range(db.m), 2):
            via_tree = any(a in f.equivalents(p) for p in f.ancestors(c))
            assert via_tree == strictly_straddles(cs[a], cs[c]), (k, a, c)


def random_clause_set(rng, n, m):
    out = []
    for _ in range(m):
        k = int(rng.integers(2, min(n, 4) + 1))
        vs = rng.choice(np.arange(1, n + 1), size=k, replace=False)
        out.append(Clause(int(v) if rng.random() < 0.5 else -int(v) for v in vs))
    return build_db(out, n)


def test_linear_checks_agree_with_pairwise():
    rng = np.random.default_rng(3)
    seen = {True: 0, False: 0}
    for k in range(3000):
        n = int(rng.integers(2, 12))
        db = random_clause_set(rng, n, int(rng.integers(0, 8)))
        ok_p, w_p = is_nested(db, "pairwise")
        ok_l, w_l = is_nested(db, "linear")
        assert ok_p == ok_l
        seen[ok_p] += 1
        if not ok_p:
            assert overlaps(db.clause(w_l.i - 1), db.clause(w_l.j - 1))
        ord_p, pair_p = verify_order(db, "pairwise")
        ord_l, pair_l = verify_order(db, "linear")
        assert ord_p == ord_l
        if not ord_l:
            i, j = pair_l
            assert i < j
            from nestedsat.model import straddles
            assert straddles(db.clause(i - 1), db.clause(j - 1))
    assert min(seen.values()) > 100


def test_linear_checks_on_shuffled_generated_instances():
    rng = np.random.default_rng(4)
    for k in range(500):
        db = generate_nested(GeneratorConfig(n=30, m=40, width=6, seed=k))
        db = db.reorder(rng.permutation(db.m))
        assert is_nested(db, "pairwise")[0] and is_nested(db, "linear")[0]
        assert verify_order(db, "pairwise")[0] == verify_order(db, "linear")[0]
        assert verify_order(sort_nested(db), "pairwise")[0]


def test_hierarchy_property():
    for k in range(10_000):
        db = random_instance(9, k, 8)
        cs = db.clauses()
        succ = [[strictly_straddles(a, b) for b in cs] for a in cs]
        for a, b, c in itertools.permutations(range(db.m), 3):
            if succ[a][c] and succ[b][c]:
                same_pair = len(cs[a]) == len(cs[b]) == 2 and cs[a].vars == cs[b].vars
                assert succ[a][b] or succ[b][a] or same_pair, (k, cs[a], cs[b], cs[c])
