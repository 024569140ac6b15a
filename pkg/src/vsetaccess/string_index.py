"""Direct access to the answers of a vset automaton over a plain string.

For each i in 0..k a balanced tree over positions 1..n stores, at node <l, r>,
the matrix counting paths over w[l..r] in which x_1..x_i are never opened.
Access fixes one variable at a time by binary search down these trees, then
patches the trees so later searches see the fixed prefix, and finally undoes
the patches from a journal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import AccessRangeError, DomainError
from .mappings import Mapping
from .matrix import answer_count, dot, indicator, mat_vec, vec_mat


def mid(l, r):
    if l >= r:
        raise DomainError(f"mid needs l < r, got ({l}, {r})")
    return (l + r) // 2


@dataclass
class OpStats:
    matmul: int = 0
    matvec: int = 0

    @property
    def total(self):
        return self.matmul + self.matvec

    def reset(self):
        self.matmul = self.matvec = 0


def require_query_automaton(A):
    ok, witness = A.check_functional()
    if not ok:
        raise DomainError(f"automaton is not functional (run over {witness.word!r} is invalid)")
    ok, _ = A.check_unambiguous()
    if not ok:
        raise DomainError("automaton is ambiguous; disambiguate() it first")


class IndexTree:
    """Tree over [1, n] for one set of still-free variables.

    Only leaves carry a variable set: Update never reads it elsewhere.
    """

    def __init__(self, A, word, allowed, stats=None):
        if len(word) == 0:
            raise DomainError("cannot index the empty string")
        self.A = A
        self.word = word
        self.n = len(word)
        self.allowed = frozenset(allowed)
        self.stats = stats if stats is not None else OpStats()
        self.mat = {}
        self.vars = {}
        self._build(1, self.n)

    def _build(self, l, r):
        if l == r:
            self.vars[l] = self.allowed
            m = self.A.transition_matrix(self.word[l - 1], self.allowed)
        else:
            c = (l + r) // 2
            m = self._build(l, c) @ self._build(c + 1, r)
            self.stats.matmul += 1
        self.mat[l, r] = m
        return m

    @property
    def root(self):
        return self.mat[1, self.n]

    def __getitem__(self, lr):
        return self.mat[lr]

    def __eq__(self, other):
        return (isinstance(other, IndexTree) and self.word == other.word
                and self.mat == other.mat and self.vars == other.vars)

    def height(self, l=1, r=None):
        r = self.n if r is None else r
        if l == r:
            return 0
        c = mid(l, r)
        return 1 + max(self.height(l, c), self.height(c + 1, r))

    def update(self, x, s, journal=None):
        """Allow x to be opened at leaf s and recompute the path above it."""
        if not 1 <= s <= self.n:
            raise DomainError(f"position {s} outside [1, {self.n}]")
        path = []
        l, r = 1, self.n
        while l < r:
            path.append((l, r))
            c = (l + r) // 2
            if s <= c:
                r = c
            else:
                l = c + 1
        old_vars = self.vars[s]
        if journal is not None:
            journal.append((self, (s, s), self.mat[s, s], old_vars))
        self.vars[s] = old_vars | {x}
        self.mat[s, s] = self.A.transition_matrix(self.word[s - 1], self.vars[s])
        for l, r in reversed(path):
            c = (l + r) // 2
            if journal is not None:
                journal.append((self, (l, r), self.mat[l, r], None))
            self.mat[l, r] = self.mat[l, c] @ self.mat[c + 1, r]
            self.stats.matmul += 1


def restore(journal):
    for tree, (l, r), m, vs in reversed(journal):
        tree.mat[l, r] = m
        if vs is not None:
            tree.vars[l] = vs
    journal.clear()


def _access(A, trees, order, t, stats):
    """Shared access loop. trees[i] forbids order[0..i-1] and frees the rest."""
    n = trees[0].n
    I, F = A.initial_idx, A.final_idx
    total = answer_count(trees[0].root, I, F)
    if not 1 <= t <= total:
        raise AccessRangeError(t, total)
    dim = len(A.states)
    e_init, e_final = indicator(dim, I), indicator(dim, F)
    journal = []
    result = {}
    try:
        for i, x in enumerate(order, 1):
            left, right = trees[i - 1], trees[i]
            # lv = e_I . (product of fixed-left blocks), rv = (fixed-right blocks) . 1_F
            lv, rv = e_init, e_final
            l, r = 1, n
            while l < r:
                c = (l + r) // 2
                a = vec_mat(lv, left.mat[l, c])
                b = mat_vec(right.mat[c + 1, r], rv)
                stats.matvec += 2
                if t <= dot(a, b):
                    r, rv = c, b
                else:
                    l, lv = c + 1, a
            s = l
            t -= dot(vec_mat(lv, right.mat[s, s]), rv)
            stats.matvec += 1
            result[x] = s
            for j in range(i, len(order) + 1):
                trees[j].update(x, s, journal)
    finally:
        restore(journal)
    return Mapping({x: result[x] for x in A.variables})


class StringIndex:
    """Preprocessed trees T_0..T_k for one fixed variable order."""

    def __init__(self, A, word, order=None):
        require_query_automaton(A)
        self.A = A
        self.word = word
        self.order = tuple(A.variables) if order is None else A.variables.check_order(order)
        self.stats = OpStats()
        self.trees = [IndexTree(A, word, self.order[i:], self.stats)
                      for i in range(len(self.order) + 1)]
        self.build_matmul = self.stats.matmul

    @property
    def n(self):
        return len(self.word)

    def count(self):
        return answer_count(self.trees[0].root, self.A.initial_idx, self.A.final_idx)

    def access(self, t):
        return _access(self.A, self.trees, self.order, t, self.stats)

    def __eq__(self, other):
        return (isinstance(other, StringIndex) and self.order == other.order
                and self.trees == other.trees)


class AllOrdersIndex:
    """One tree per subset of variables, so the order can be chosen per access."""

    def __init__(self, A, word):
        require_query_automaton(A)
        self.A = A
        self.word = word
        self.stats = OpStats()
        xs = tuple(A.variables)
        self.trees = {}
        for size in range(len(xs) + 1):
            for Y in itertools.combinations(xs, size):
                self.trees[frozenset(Y)] = IndexTree(A, word, Y, self.stats)

    def count(self):
        root = self.trees[frozenset(self.A.variables)].root
        return answer_count(root, self.A.initial_idx, self.A.final_idx)

    def access(self, t, order=None):
        order = tuple(self.A.variables) if order is None else self.A.variables.check_order(order)
        trees = [self.trees[frozenset(order[i:])] for i in range(len(order) + 1)]
        return _access(self.A, trees, order, t, self.stats)


def build(A, word, i, order=None):
    """Tree T_i: variables order[0..i-1] forbidden, the rest free."""
    order = tuple(A.variables) if order is None else A.variables.check_order(order)
    return IndexTree(A, word, order[i:])


def build_all_orders(A, word):
    return AllOrdersIndex(A, word)
