"""Random instance generators shared by the test modules."""
from __future__ import annotations

import itertools
import random

from vsetaccess.automaton import VsetAutomaton
from vsetaccess.edits import Concat, CopyOp, Delete, Extract, InsertOp, Name
from vsetaccess.grammar import CnfSlp, Slp, Terminal
from vsetaccess.string_index import StringIndex

W0 = "abababcab"
RUNNING_ANSWERS = [(1, 2), (1, 4), (1, 6), (3, 4), (3, 6), (5, 6), (7, 7), (8, 9)]


def random_functional_automaton(rng, alphabet="ab", k=2, base=2, max_edges=2, p_open=0.5, p_keep=0.85):
    """Functional by construction: states remember which variables were opened,
    transitions only open fresh ones and only complete states are final."""
    X = [f"x{i}" for i in range(1, k + 1)]
    finals = {b for b in range(base) if rng.random() < 0.6} or {rng.randrange(base)}
    start = (0, frozenset())
    states, queue, trans = [start], [start], []
    while queue:
        b, seen = queue.pop(0)
        rest = [x for x in X if x not in seen]
        for a in alphabet:
            if rng.random() < p_keep:
                trans.append(((b, seen), a, frozenset(), (rng.randrange(base), seen)))
            for _ in range(rng.randint(0, max_edges)):
                S = frozenset()
                if rest and rng.random() < p_open:
                    size = 1 if rng.random() < 0.75 else rng.randint(1, len(rest))
                    S = frozenset(rng.sample(rest, size))
                trans.append(((b, seen), a, S, (rng.randrange(base), seen | S)))
        for *_, dst in trans:
            if dst not in states:
                states.append(dst)
                queue.append(dst)
    name = {q: f"s{q[0]}" + "".join(sorted(x[1:] for x in q[1])) for q in states}
    final = [name[q] for q in states if q[0] in finals and len(q[1]) == k]
    return VsetAutomaton(alphabet, X, [name[q] for q in states],
                         [(name[p], a, S, name[q]) for p, a, S, q in trans],
                         [name[start]], final)


def random_query(rng, max_states=8, max_k=3, alphabets=("ab", "abc")):
    """Unambiguous functional automaton with at most max_states states and some
    accepting transition structure."""
    while True:
        k = rng.randint(1, max_k)
        alphabet = rng.choice(alphabets)
        A = random_functional_automaton(rng, alphabet, k, base=rng.randint(1, 3))
        D = A.disambiguate()
        if 1 <= len(D.states) <= max_states and D.final and D.transitions:
            return D


def random_word(rng, alphabet, n):
    return "".join(rng.choice(alphabet) for _ in range(n))


def random_instance(rng, max_len=48, max_answers=150, **kw):
    """(A, w, index) with a non-trivial but enumerable answer set."""
    while True:
        A = random_query(rng, **kw)
        n = rng.randint(1, max_len)
        for _ in range(6):
            w = random_word(rng, A.alphabet, n)
            ix = StringIndex(A, w)
            c = ix.count()
            if 0 < c <= max_answers:
                return A, w, ix
            if c > max_answers:
                n = max(1, n // 2)


def random_slp(rng, alphabet="ab", max_len=200, rules=12):
    """A random CNF grammar, often unbalanced, expanding to at most max_len symbols."""
    g = CnfSlp()
    pool = [g.leaf(c) for c in alphabet]
    for _ in range(rules):
        B, C = rng.choice(pool), rng.choice(pool)
        if g.length[B] + g.length[C] <= max_len:
            pool.append(g.node(B, C))
    g.start = max(pool, key=lambda X: (g.length[X], X in g._pairs.values()))
    return g.sub(g.start)


def left_comb(n, c="a"):
    rules = {"L1": (Terminal(c),)}
    for i in range(2, n + 1):
        rules[f"L{i}"] = (f"L{i - 1}", "L1")
    return Slp(rules, f"L{n}").to_cnf()


def doubling(p, unit="ab"):
    rules = {f"U{i}": (Terminal(c),) for i, c in enumerate(unit)}
    rules["S0"] = tuple(f"U{i}" for i in range(len(unit)))
    for i in range(1, p + 1):
        rules[f"S{i}"] = (f"S{i - 1}", f"S{i - 1}")
    return Slp(rules, f"S{p}").to_cnf()


def random_expression(rng, lengths, depth, max_len=500):
    """Random valid expression over names with the given string lengths; returns
    (expr, length) and keeps every intermediate within max_len."""
    names = list(lengths)
    if depth == 0 or rng.random() < 0.2:
        d = rng.choice(names)
        return Name(d), lengths[d]
    op = rng.choice(["concat", "extract", "delete", "insertop", "copyop"])
    e, n = random_expression(rng, lengths, depth - 1, max_len)
    if op == "concat" or op == "insertop":
        f, m = random_expression(rng, lengths, depth - 1, max_len)
        if n + m > max_len:
            return e, n
        if op == "concat":
            return Concat(e, f), n + m
        return InsertOp(e, f, rng.randint(1, n + 1)), n + m
    l = rng.randint(1, n)
    r = rng.randint(l, n)
    if op == "extract":
        return Extract(e, l, r), r - l + 1
    if op == "delete":
        if r - l + 1 == n:
            return e, n
        return Delete(e, l, r), n - (r - l + 1)
    if n + r - l + 1 > max_len:
        return e, n
    return CopyOp(e, l, r, rng.randint(1, n + 1)), n + r - l + 1


def all_subsets(xs):
    for size in range(len(xs) + 1):
        yield from itertools.combinations(xs, size)


def seeded(seed):
    return random.Random(seed)
