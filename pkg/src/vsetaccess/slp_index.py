"""Direct access over a grammar-compressed string.

Structure D_i annotates each nonterminal of the grammar with the count matrix
of its expansion, variables order[0..i-1] forbidden. The grammar is a DAG, so
an update cannot rewrite a shared nonterminal in place: it copies the
root-to-leaf path instead, into an overlay owned by that structure. Dropping
the overlays restores the preprocessed state.
"""
from __future__ import annotations

import math
import warnings

from .errors import AccessRangeError, DomainError
from .mappings import Mapping
from .matrix import answer_count, dot, indicator, mat_vec, vec_mat
from .string_index import OpStats, require_query_automaton


class _Dup:
    __slots__ = ("rule", "matrix", "vars", "orig")

    def __init__(self, rule, matrix, vars, orig):
        self.rule = rule
        self.matrix = matrix
        self.vars = vars
        self.orig = orig


class Structure:
    """One D_i: base annotations plus this structure's overlay of duplicates."""

    def __init__(self, allowed):
        self.allowed = frozenset(allowed)
        self.mats = {}
        self.overlay = {}
        self.root = None
        self._serial = 0

    def discard_overlay(self, root):
        self.overlay.clear()
        self.root = root


class SlpIndex:
    def __init__(self, A, grammar, order=None, root=None, check=True):
        if check:
            require_query_automaton(A)
        self.A = A
        self.g = grammar
        self.order = tuple(A.variables) if order is None else A.variables.check_order(order)
        self.root = grammar.start if root is None else root
        self.stats = OpStats()
        self.structures = [Structure(self.order[i:]) for i in range(len(self.order) + 1)]
        n = grammar.length[self.root]
        if n > 1 and grammar.height[self.root] > 3 * math.log2(n) + 2:
            warnings.warn(f"grammar depth {grammar.height[self.root]} is far above log2({n}); "
                          "access cost grows with depth", stacklevel=2)
        self.annotate(grammar.topological(self.root))
        self.build_matmul = self.stats.matmul

    def annotate(self, names):
        """Add matrices for `names` (children first) in every structure."""
        g = self.g
        for D in self.structures:
            mats = D.mats
            for X in names:
                if X in mats:
                    continue
                rhs = g.rules[X]
                if isinstance(rhs, str):
                    mats[X] = self.A.transition_matrix(rhs, D.allowed)
                else:
                    mats[X] = mats[rhs[0]] @ mats[rhs[1]]
                    self.stats.matmul += 1

    # -- overlay-aware lookups ------------------------------------------

    def _rule(self, D, X):
        d = D.overlay.get(X)
        return self.g.rules[X] if d is None else d.rule

    def _mat(self, D, X):
        d = D.overlay.get(X)
        return D.mats[X] if d is None else d.matrix

    def _len(self, D, X):
        d = D.overlay.get(X)
        return self.g.length[X if d is None else d.orig]

    def matrix(self, i, X=None):
        D = self.structures[i]
        return self._mat(D, D.root if X is None else X)

    def count(self, root=None):
        root = self.root if root is None else root
        if root not in self.structures[0].mats:
            raise DomainError(f"nonterminal {root!r} is not annotated")
        return answer_count(self.structures[0].mats[root], self.A.initial_idx, self.A.final_idx)

    # -- update by path duplication -------------------------------------

    def update(self, i, x, s):
        """Copy the path to position s in D_i, letting x be opened at s."""
        D = self.structures[i]
        if D.root is None:
            D.root = self.root
        n = self._len(D, D.root)
        if not 1 <= s <= n:
            raise DomainError(f"position {s} outside [1, {n}]")
        path = []
        X = D.root
        p = s
        while True:
            rule = self._rule(D, X)
            if isinstance(rule, str):
                break
            B, C = rule
            lb = self._len(D, B)
            if p <= lb:
                path.append((X, rule, True))
                X = B
            else:
                path.append((X, rule, False))
                p -= lb
                X = C
        d = D.overlay.get(X)
        old_vars = D.allowed if d is None else d.vars
        assert x not in old_vars, f"{x} already allowed at position {s}"
        new_vars = old_vars | {x}
        child = self._dup(D, X, rule, self.A.transition_matrix(rule, new_vars), new_vars)
        for X, (B, C), went_left in reversed(path):
            if went_left:
                rule = (child, C)
            else:
                rule = (B, child)
            m = self._mat(D, rule[0]) @ self._mat(D, rule[1])
            self.stats.matmul += 1
            child = self._dup(D, X, rule, m, None)
        D.root = child
        return child

    def _dup(self, D, X, rule, matrix, vars):
        d = D.overlay.get(X)
        orig = X if d is None else d.orig
        D._serial += 1
        name = ("dup", orig, D._serial)
        D.overlay[name] = _Dup(rule, matrix, vars, orig)
        return name

    # -- access -----------------------------------------------------------

    def access(self, t, root=None):
        root = self.root if root is None else root
        A = self.A
        I, F = A.initial_idx, A.final_idx
        total = self.count(root)
        if not 1 <= t <= total:
            raise AccessRangeError(t, total)
        dim = len(A.states)
        e_init, e_final = indicator(dim, I), indicator(dim, F)
        Ds = self.structures
        for D in Ds:
            D.discard_overlay(root)
        result = {}
        try:
            for i, x in enumerate(self.order, 1):
                left, right = Ds[i - 1], Ds[i]
                lv, rv = e_init, e_final
                # the two structures expand the same string with the same shape,
                # so descend both in lockstep
                XL, XR = left.root, right.root
                l, r = 1, self._len(right, XR)
                while l < r:
                    assert r - l + 1 == self._len(right, XR)
                    BL, CL = self._rule(left, XL)
                    BR, CR = self._rule(right, XR)
                    m = l + self._len(left, BL) - 1
                    a = vec_mat(lv, self._mat(left, BL))
                    b = mat_vec(self._mat(right, CR), rv)
                    self.stats.matvec += 2
                    if t <= dot(a, b):
                        r, rv = m, b
                        XL, XR = BL, BR
                    else:
                        l, lv = m + 1, a
                        XL, XR = CL, CR
                s = l
                t -= dot(vec_mat(lv, self._mat(right, XR)), rv)
                self.stats.matvec += 1
                result[x] = s
                for j in range(i, len(self.order) + 1):
                    self.update(j, x, s)
        finally:
            self.overlay_peak = sum(len(D.overlay) for D in Ds)
            for D in Ds:
                D.discard_overlay(root)
        return Mapping({x: result[x] for x in A.variables})

    def state(self):
        """Snapshot for comparing against a freshly built index."""
        return (self.root,
                tuple(sorted(self.g.reachable(self.root), key=str)),
                tuple({X: D.mats[X] for X in self.g.reachable(self.root)} for D in self.structures),
                tuple(len(D.overlay) for D in self.structures))


def build_slp_index(A, S, order=None):
    return SlpIndex(A, S, order)
