import pytest

from vsetaccess import oracle
from vsetaccess.automaton import VsetAutomaton
from vsetaccess.errors import AccessRangeError, DomainError
from vsetaccess.mappings import EMPTY, Range, Singleton
from vsetaccess.string_index import (AllOrdersIndex, IndexTree, StringIndex, build, mid,
                                     restore)
from helpers import RUNNING_ANSWERS, random_instance, seeded


@pytest.mark.parametrize("l, r, m", [(5, 9, 7), (1, 2, 1), (1, 9, 5)])
def test_mid(l, r, m):
    assert mid(l, r) == m


def test_mid_rejects_leaf():
    with pytest.raises(DomainError):
        mid(3, 3)


def test_tree_shape_is_strongly_balanced(aex):
    for n in range(1, 40):
        T = IndexTree(aex, "ab" * n, ())
        assert len(T.mat) == 2 * 2 * n - 1

        def h(l, r):
            if l == r:
                return 0
            c = mid(l, r)
            a, b = h(l, c), h(c + 1, r)
            assert abs(a - b) <= 1
            return 1 + max(a, b)

        h(1, 2 * n)


def test_build_leaves(aex, w0):
    assert build(aex, w0, 0).mat[7, 7] == [[1, 0, 1], [0, 0, 0], [0, 0, 1]]
    assert build(aex, w0, 1).mat[1, 1] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_build_roots(aex, w0):
    assert build(aex, w0, 0).root == [[1, 1, 8], [0, 0, 3], [0, 0, 1]]
    assert build(aex, w0, 1).root == [[1, 0, 0], [0, 0, 3], [0, 0, 1]]
    T2 = build(aex, w0, 2)
    assert T2.root == oracle.oracle_matrix(aex, w0, 1, 9, {"x1": EMPTY, "x2": EMPTY})
    assert T2.root[0, 2] == 0


def test_build_rejects_empty(aex):
    with pytest.raises(DomainError):
        StringIndex(aex, "")


def test_build_rejects_bad_automata(aex):
    with pytest.raises(DomainError):
        StringIndex(aex.with_final(["q1"]), "ab")


@pytest.mark.parametrize("seed", range(10))
def test_every_node_holds_the_partial_run_matrix(seed):
    A, w, ix = random_instance(seeded(seed), max_len=12)
    n = len(w)
    xs = ix.order
    for i, T in enumerate(ix.trees):
        for (l, r), M in T.mat.items():
            rules = {x: (EMPTY if j < i else Range(l, r)) for j, x in enumerate(xs)}
            assert M == oracle.oracle_matrix(A, w, l, r, rules), (i, l, r)
    assert len(ix.trees[0].mat) == 2 * n - 1


def test_update_fixes_x1(aex, w0):
    T = build(aex, w0, 1)
    T.update("x1", 1)
    expected = oracle.oracle_matrix(aex, w0, 1, 9, {"x1": Singleton(1), "x2": Range(1, 9)})
    assert T.root == expected == [[1, 0, 3], [0, 0, 3], [0, 0, 1]]
    assert T.root[0, 2] == 3


def test_update_follows_node_semantics(aex, w0):
    T = build(aex, w0, 1)
    T.update("x1", 3)
    for (l, r), M in T.mat.items():
        rules = {"x1": Singleton(3) if l <= 3 <= r else EMPTY, "x2": Range(l, r)}
        assert M == oracle.oracle_matrix(aex, w0, l, r, rules)


def test_update_where_variable_cannot_open(aex, w0):
    # x1 is only opened on 'a' or 'c'; position 2 is 'b'
    T = build(aex, w0, 1)
    T.update("x1", 2)
    assert T.root[0, 2] == 0


def test_updates_commute():
    rng = seeded(7)
    for _ in range(20):
        A, w, ix = random_instance(rng, max_len=16)
        if len(A.variables) < 2:
            continue
        x, y = ix.order[0], ix.order[1]
        s, s2 = rng.randint(1, len(w)), rng.randint(1, len(w))
        T1 = IndexTree(A, w, ix.order[2:])
        T2 = IndexTree(A, w, ix.order[2:])
        T1.update(x, s)
        T1.update(y, s2)
        T2.update(y, s2)
        T2.update(x, s)
        assert T1 == T2


def test_update_out_of_range(aex, w0):
    with pytest.raises(DomainError):
        build(aex, w0, 1).update("x1", 10)


def test_journal_restores(aex, w0):
    T = build(aex, w0, 1)
    fresh = build(aex, w0, 1)
    journal = []
    T.update("x1", 3, journal)
    T.update("x2", 6, journal)
    assert T != fresh
    restore(journal)
    assert T == fresh and journal == []


def test_access_running_example(aex, w0):
    ix = StringIndex(aex, w0)
    assert ix.count() == 8
    assert [ix.access(t).key(("x1", "x2")) for t in range(1, 9)] == RUNNING_ANSWERS
    assert ix.access(5) == {"x1": 3, "x2": 6}


def test_access_out_of_range(aex, w0):
    ix = StringIndex(aex, w0)
    for t in (0, 9, -1):
        with pytest.raises(AccessRangeError) as err:
            ix.access(t)
        assert err.value.total == 8


def test_count_small_cases(aex):
    assert StringIndex(aex, "c").count() == 1
    assert StringIndex(aex, "c").access(1) == {"x1": 1, "x2": 1}
    dead = VsetAutomaton("a", ["x"], ["p", "q"], [("p", "a", [], "p")], ["p"], ["q"])
    ix = StringIndex(dead, "aaa")
    assert ix.count() == 0
    with pytest.raises(AccessRangeError):
        ix.access(1)


def test_no_variables():
    A = VsetAutomaton("ab", [], ["q"], [("q", "a", [], "q"), ("q", "b", [], "q")], ["q"], ["q"])
    ix = StringIndex(A, "abba")
    assert ix.count() == 1 and ix.access(1) == {}


@pytest.mark.parametrize("seed", range(25))
def test_access_matches_oracle_and_template(seed):
    A, w, ix = random_instance(seeded(1000 + seed), max_answers=60)
    answers = oracle.enumerate_answers(A, w)
    fresh = StringIndex(A, w)
    assert ix.count() == len(answers)
    for t, mu in enumerate(answers, 1):
        assert ix.access(t) == mu
        assert oracle.template_access(A, w, t) == mu
    assert ix == fresh


def test_access_with_order_running_example(aex, w0):
    fam = AllOrdersIndex(aex, w0)
    assert len(fam.trees) == 4
    assert fam.access(1, ("x2", "x1")) == {"x1": 1, "x2": 2}
    assert fam.access(4, ("x2", "x1")) == {"x1": 1, "x2": 6}
    expected = oracle.enumerate_answers(aex, w0, ("x2", "x1"))
    assert [fam.access(t, ("x2", "x1")) for t in range(1, 9)] == expected
    plain = StringIndex(aex, w0)
    assert [fam.access(t) for t in range(1, 9)] == [plain.access(t) for t in range(1, 9)]


@pytest.mark.parametrize("seed", range(8))
def test_access_with_random_orders(seed):
    rng = seeded(2000 + seed)
    A, w, _ = random_instance(rng, max_answers=60)
    fam = AllOrdersIndex(A, w)
    order = list(A.variables)
    rng.shuffle(order)
    expected = oracle.enumerate_answers(A, w, order)
    assert [fam.access(t, order) for t in range(1, len(expected) + 1)] == expected


def test_binary_search_invariant_on_running_example(aex, w0):
    # every probe count brackets t the way the template algorithm requires
    answers = oracle.enumerate_answers(aex, w0)
    for t in range(1, 9):
        mu = StringIndex(aex, w0).access(t)
        s1 = mu["x1"]
        below = oracle.slice_count(aex, w0, {"x1": Range(1, s1 - 1)}, answers=answers) if s1 > 1 else 0
        upto = oracle.slice_count(aex, w0, {"x1": Range(1, s1)}, answers=answers)
        assert below < t <= upto


def test_operation_counts(aex):
    w = "abababcab" * 20
    ix = StringIndex(aex, w)
    n, k = len(w), 2
    assert ix.build_matmul <= (k + 1) * (2 * n - 1)
    ix.stats.reset()
    ix.access(ix.count() // 2)
    depth = ix.trees[0].height()
    assert ix.stats.matmul <= k * (k + 1) // 2 * depth
