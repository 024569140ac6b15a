"""Brute-force reference answers, for tests only.

Everything here enumerates runs explicitly. Exponential in the worst case and
gated by a length bound; nothing in the index code calls into this module.
"""
from __future__ import annotations

from .errors import AccessRangeError, DomainError, SizeError
from .matrix import CountMatrix
from .mappings import Mapping

DEFAULT_BOUND = 64


def _check(w, bound):
    if len(w) == 0:
        raise DomainError("the empty string has no positions")
    if len(w) > bound:
        raise SizeError(f"string of length {len(w)} exceeds oracle bound {bound}")


def _live_sets(A, w):
    # live[i]: states from which w[i:] can be read into a final state
    live = [None] * (len(w) + 1)
    live[len(w)] = set(A.final)
    for i in range(len(w) - 1, -1, -1):
        live[i] = {t.src for t in A.transitions if t.letter == w[i] and t.dst in live[i + 1]}
    return live


def accepting_runs(A, w, bound=DEFAULT_BOUND):
    """All accepting runs over w as tuples of transitions (valid or not)."""
    _check(w, bound)
    live = _live_sets(A, w)
    out = []

    def dfs(q, i, path):
        if i == len(w):
            out.append(tuple(path))
            return
        for t in A.out(q):
            if t.letter == w[i] and t.dst in live[i + 1]:
                path.append(t)
                dfs(t.dst, i + 1, path)
                path.pop()

    for q in A.states:
        if q in A.initial and q in live[0]:
            dfs(q, 0, [])
    return out


def _run_mapping(run, variables):
    mu = {}
    for i, t in enumerate(run, 1):
        for x in t.vars:
            if x in mu:
                return None
            mu[x] = i
    if set(mu) != set(variables):
        return None
    return mu


def valid_mappings(A, w, bound=DEFAULT_BOUND):
    """Mappings of valid accepting runs, one entry per run (duplicates kept)."""
    out = []
    for run in accepting_runs(A, w, bound):
        mu = _run_mapping(run, A.variables)
        if mu is not None:
            out.append(Mapping(mu))
    return out


def enumerate_answers(A, w, order=None, bound=DEFAULT_BOUND):
    """Sorted, deduplicated answer list under `order` (default: declared order)."""
    order = tuple(A.variables) if order is None else A.variables.check_order(order)
    answers = set(valid_mappings(A, w, bound))
    return sorted(answers, key=lambda mu: mu.key(order))


def slice_count(A, w, rules, bound=DEFAULT_BOUND, answers=None):
    """Number of answers respecting `rules`; pass `answers` to reuse an enumeration."""
    if answers is None:
        answers = set(valid_mappings(A, w, bound))
    return sum(1 for mu in answers if all(mu[x] in alpha for x, alpha in rules.items()))


def oracle_matrix(A, w, l, r, rules, bound=DEFAULT_BOUND):
    """Count paths over w[l..r] between every state pair, keeping only paths where
    each variable opened at position i satisfies i in rules[x] (variables
    without a rule are unrestricted).

    Paths need not start from an initial state, and a variable may be opened
    more than once; this is what the index matrices count.
    """
    _check(w, bound)
    if not 1 <= l <= r <= len(w):
        raise DomainError(f"bad range [{l}, {r}] for string of length {len(w)}")
    n = len(A.states)
    rows = [[0] * n for _ in range(n)]

    def ok(t, pos):
        return all(x not in rules or pos in rules[x] for x in t.vars)

    def dfs(start, q, pos):
        if pos > r:
            rows[A.index[start]][A.index[q]] += 1
            return
        for t in A.out(q):
            if t.letter == w[pos - 1] and ok(t, pos):
                dfs(start, t.dst, pos + 1)

    for p in A.states:
        dfs(p, p, l)
    return CountMatrix(rows)


def template_access(A, w, t, order=None, bound=DEFAULT_BOUND, mid=None):
    """The plain binary-search access: one slice count per probe."""
    from .mappings import Range, Singleton

    order = tuple(A.variables) if order is None else A.variables.check_order(order)
    mid = mid or (lambda l, r: (l + r) // 2)
    answers = set(valid_mappings(A, w, bound))
    total = len(answers)
    if not 1 <= t <= total:
        raise AccessRangeError(t, total)
    n = len(w)
    fixed = {}
    for x in order:
        l, r = 1, n
        while l < r:
            m = mid(l, r)
            rules = {**fixed, x: Range(1, m)}
            if t <= slice_count(A, w, rules, answers=answers):
                r = m
            else:
                l = m + 1
        s = l
        if s > 1:
            t -= slice_count(A, w, {**fixed, x: Range(1, s - 1)}, answers=answers)
        fixed[x] = Singleton(s)
    return Mapping({x: fixed[x].lo for x in A.variables})
