import itertools

import pytest

from conftest import ALL_FOUR, TRIANGLE
from nestedsat.harness import brute_force_sat, check_witness, random_instance
from nestedsat.model import Clause, build_db
from nestedsat.nesting import NotNested, NotProperlyOrdered, ensure_ordered
from nestedsat.solver import (
    ClauseNotInPartition, Verdict, compute_newsat, extract_witness, finalize, flat,
    init_state, process_clause, run, solve, solve_stepwise,
)

# sat[1..3] before the clause arrives, as (ff, ft, tf, tt)
PAPER_SAT = {1: (0, 1, 1, 1), 2: (0, 1, 1, 0), 3: (0, 0, 0, 1)}
PAPER_TRACE = [(1, (1, 0, 0, 1)), (2, (0, 2, 1, 1)), (3, (2, 0, 2, 1)), (4, (0, 0, 0, 1))]


def paper_state():
    st = init_state(4)
    for x, (ff, ft, tf, tt) in PAPER_SAT.items():
        st.sat[x] = [[ff, ft], [tf, tt]]
    return st


def db_of(clauses, n=None):
    cs = [Clause(c) for c in clauses]
    n = n if n is not None else max((abs(x) for c in cs for x in c), default=0)
    return build_db(cs, n)


@pytest.mark.parametrize("n,nxt", [(0, [1]), (3, [1, 2, 3, 4]), (4, [1, 2, 3, 4, 5])])
def test_init_state(n, nxt):
    st = init_state(n)
    assert st.next == nxt
    assert st.sat.shape == (n + 1, 2, 2)
    assert (st.sat == 1).all()
    assert st.partition_points() == list(range(n + 2))


def test_newsat_worked_example():
    st = paper_state()
    table, trace = compute_newsat(st, [-1, 2, 4])
    assert [(s.x, s.newsat) for s in trace] == PAPER_TRACE
    assert flat(table) == (0, 0, 0, 2)


def test_newsat_worked_example_negated_end():
    st = paper_state()
    table, trace = compute_newsat(st, [-1, 2, -4])
    assert [(s.x, s.newsat) for s in trace] == PAPER_TRACE
    assert flat(table) == (0, 0, 0, 1)


def test_newsat_fresh_state():
    table, trace = compute_newsat(init_state(2), [1, -2])
    assert flat(table) == (2, 1, 2, 2)
    assert [s.x for s in trace] == [1, 2]


def test_process_clause_worked_example():
    st = process_clause(paper_state(), [-1, 2, 4])
    assert st.next[1] == 4
    assert st.sat_entries(1) == (0, 0, 0, 1)
    assert st.partition_points() == [0, 1, 4, 5]


def test_process_clause_negated_end():
    st = process_clause(paper_state(), [-1, 2, -4])
    assert st.sat_entries(1) == (0, 0, 0, 0)


def test_process_clause_one_clause():
    st = process_clause(init_state(2), [1, -2])
    assert st.sat[1, 0, 1] == 0
    assert st.sat_entries(1) == (1, 0, 1, 1)


def test_process_clause_rejects_removed_point():
    st = process_clause(init_state(4), [1, 4])
    with pytest.raises(ClauseNotInPartition):
        process_clause(st, [2, 3])
    st = process_clause(init_state(4), [1, 3])
    with pytest.raises(ClauseNotInPartition):
        process_clause(st, [1, 2, 4])


@pytest.mark.parametrize("n,clauses,expected", [
    (1, [], Verdict.SAT),
    (2, ALL_FOUR, Verdict.UNSAT),
    (3, TRIANGLE, Verdict.SAT),
])
def test_finalize(n, clauses, expected):
    st = init_state(n)
    for c in clauses:
        process_clause(st, c)
    assert finalize(st) is expected
    assert st.next[0] == n + 1


@pytest.mark.parametrize("clauses,n,expected", [
    (TRIANGLE, 3, Verdict.SAT),
    (ALL_FOUR, 2, Verdict.UNSAT),
    ([], 0, Verdict.SAT),
])
def test_solve(clauses, n, expected, backend):
    assert solve(db_of(clauses, n), backend=backend) is expected


def test_solve_sorts_or_refuses():
    db = db_of([[1, 3], [2, 3], [-1, -3], [-2, -3], [1, -2]])
    assert solve(db) is brute_force_sat(db).verdict
    with pytest.raises(NotProperlyOrdered):
        solve(db_of([[1, 3], [2, 3]]), sort=False)
    with pytest.raises(NotNested):
        solve(db_of([[1, 3], [2, 4]]))


def test_kernel_reports_bad_clause(backend):
    db = db_of([[1, 4], [2, 3]])
    db.ordered = True  # lie about the order
    with pytest.raises(ClauseNotInPartition, match="clause 2"):
        run(db, backend=backend)


@pytest.mark.parametrize("clauses,n,expected", [
    (TRIANGLE, 3, {1: True, 2: True, 3: False}),
    (ALL_FOUR, 2, Verdict.UNSAT),
    ([], 0, {}),
])
def test_extract_witness(clauses, n, expected):
    db = db_of(clauses, n)
    assert extract_witness(db) == expected
    if expected is not Verdict.UNSAT:
        assert check_witness(db.clauses(), expected)


def test_backends_and_stepwise_agree():
    from nestedsat import kernels

    for k in range(2000):
        db = ensure_ordered(random_instance(21, k, 14))
        results = {run(db, backend=b) for b in kernels.available()}
        results.add(solve_stepwise(db))
        assert len(results) == 1, k


def test_visit_count_exact():
    # every point is first/last of a clause or removed exactly once
    for k in range(500):
        res = run(random_instance(22, k, 16))
        assert res.visited == res.visit_bound


def test_upgrade_and_modify_stay_in_range():
    for k in range(300):
        db = ensure_ordered(random_instance(23, k, 10))
        st = init_state(db.n)
        for c in db.clauses():
            table, trace = compute_newsat(st, c)
            steps = [s.newsat for s in trace] + [flat(table)]
            assert all(v in (0, 1, 2) for t in steps for v in t)
            # upgrade is the only change at the final point: 1 -> 2, nothing else
            before, after = steps[-2], steps[-1]
            for b, a in zip(before, after):
                assert a == b or (b, a) == (1, 2)
            l = abs(c[0])
            process_clause(st, c)
            assert st.sat_entries(l) == tuple(v // 2 for v in flat(table))


def test_partition_soundness():
    for k in range(300):
        db = ensure_ordered(random_instance(24, k, 12))
        st = init_state(db.n)
        for c in db.clauses():
            process_clause(st, c)
            pts = st.partition_points()
            l, r = abs(c[0]), abs(c[-1])
            assert not any(l < p < r for p in pts)
            assert l in pts and r in pts
            assert pts == sorted(pts)


def _interval_sat(clauses, a, b, s, t):
    vars_ = list(range(a, b + 1))
    for bits in itertools.product((False, True), repeat=len(vars_)):
        val = dict(zip(vars_, bits))
        if val[a] != s or val[b] != t:
            continue
        if all(any(val[abs(x)] == (x > 0) for x in c) for c in clauses):
            return 1
    return 0


def test_sat_table_semantics():
    for k in range(300):
        db = ensure_ordered(random_instance(25, k, 10))
        st = init_state(db.n)
        done = []
        for c in db.clauses():
            process_clause(st, c)
            done.append(c)
            pts = [p for p in st.partition_points() if 1 <= p <= db.n]
            for a, b in zip(pts, pts[1:]):
                inside = [d for d in done if a <= abs(d[0]) and abs(d[-1]) <= b]
                for s, t in itertools.product((False, True), repeat=2):
                    assert st.sat[a, int(s), int(t)] == _interval_sat(inside, a, b, s, t), (k, a, b)


def test_witness_soundness():
    for k in range(1000):
        db = random_instance(26, k, 12)
        a = extract_witness(db)
        if a is Verdict.UNSAT:
            assert brute_force_sat(db).verdict is Verdict.UNSAT
        else:
            assert set(a) == set(range(1, db.n + 1))
            assert check_witness(db.clauses(), a)
