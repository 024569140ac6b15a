"""Straight-line programs.

``Slp`` holds a parsed grammar with arbitrary right-hand sides; ``CnfSlp`` is
the working representation (rules ``A -> B C`` or ``A -> 'a'``). A ``CnfSlp``
is an append-only pool: new nonterminals may be added (concatenation, split,
balancing) but existing rules never change, so every root stays valid.

SLP text format::

    start: S0
    S0 -> A B
    A -> D D
    S_a -> 'a'

Right-hand sides may mix quoted terminals and nonterminals of any length;
``to_cnf`` normalizes them.
"""
from __future__ import annotations

import math
import re

from .errors import DomainError, FormatError, SizeError

FRESH_PREFIX = "_N"


class Terminal(str):
    def __repr__(self):
        return f"'{str(self)}'"


class Slp:
    def __init__(self, rules, start):
        self.rules = {A: tuple(rhs) for A, rhs in rules.items()}
        self.start = start
        if start not in self.rules:
            raise FormatError(f"start symbol {start!r} has no rule")
        for A, rhs in self.rules.items():
            if not rhs:
                raise FormatError(f"empty right-hand side for {A}")
            for X in rhs:
                if not isinstance(X, Terminal) and X not in self.rules:
                    raise FormatError(f"undefined symbol {X!r} in rule for {A}")

    def to_cnf(self):
        return to_cnf(self)


class CnfSlp:
    def __init__(self, start=None):
        self.rules = {}
        self.length = {}
        self.height = {}
        self.start = start
        self._pairs = {}
        self._leaves = {}
        self._serial = 0
        self.created = 0

    # -- construction ---------------------------------------------------

    def fresh(self, hint=""):
        while True:
            self._serial += 1
            name = f"{FRESH_PREFIX}{hint}{self._serial}"
            if name not in self.rules:
                return name

    def add_leaf(self, A, c):
        if A in self.rules:
            raise FormatError(f"duplicate rule for {A}")
        self.rules[A] = str(c)
        self.length[A] = 1
        self.height[A] = 0
        self._leaves.setdefault(str(c), A)
        return A

    def add_pair(self, A, B, C):
        if A in self.rules:
            raise FormatError(f"duplicate rule for {A}")
        self.rules[A] = (B, C)
        self.length[A] = self.length[B] + self.length[C]
        self.height[A] = 1 + max(self.height[B], self.height[C])
        self._pairs.setdefault((B, C), A)
        return A

    def leaf(self, c):
        A = self._leaves.get(c)
        if A is None:
            A = self.add_leaf(self.fresh(), c)
            self.created += 1
        return A

    def node(self, B, C):
        A = self._pairs.get((B, C))
        if A is None:
            A = self.add_pair(self.fresh(), B, C)
            self.created += 1
        return A

    def copy(self):
        g = CnfSlp(self.start)
        g.rules = dict(self.rules)
        g.length = dict(self.length)
        g.height = dict(self.height)
        g._pairs = dict(self._pairs)
        g._leaves = dict(self._leaves)
        g._serial = self._serial
        return g

    # -- queries ----------------------------------------------------------

    def _root(self, root):
        root = self.start if root is None else root
        if root not in self.rules:
            raise DomainError(f"unknown nonterminal {root!r}")
        return root

    def __len__(self):
        return self.length[self._root(None)]

    def lengths(self):
        return dict(self.length)

    def depth(self, root=None):
        return self.height[self._root(root)]

    def is_leaf(self, A):
        return isinstance(self.rules[A], str)

    def char_at(self, p, root=None):
        A = self._root(root)
        if not 1 <= p <= self.length[A]:
            raise DomainError(f"position {p} outside [1, {self.length[A]}]")
        while not self.is_leaf(A):
            B, C = self.rules[A]
            if p <= self.length[B]:
                A = B
            else:
                p -= self.length[B]
                A = C
        return self.rules[A]

    def expand(self, root=None, limit=10**6):
        A = self._root(root)
        if self.length[A] > limit:
            raise SizeError(f"expansion has length {self.length[A]} > limit {limit}")
        out = []
        stack = [A]
        while stack:
            X = stack.pop()
            rhs = self.rules[X]
            if isinstance(rhs, str):
                out.append(rhs)
            else:
                stack.append(rhs[1])
                stack.append(rhs[0])
        return "".join(out)

    def reachable(self, root=None):
        seen = set()
        stack = [self._root(root)]
        while stack:
            X = stack.pop()
            if X in seen:
                continue
            seen.add(X)
            if not self.is_leaf(X):
                stack.extend(self.rules[X])
        return seen

    def topological(self, root=None):
        """Reachable nonterminals, children before parents."""
        order, seen = [], set()
        stack = [(self._root(root), False)]
        while stack:
            X, done = stack.pop()
            if done:
                order.append(X)
                continue
            if X in seen:
                continue
            seen.add(X)
            stack.append((X, True))
            if not self.is_leaf(X):
                for Y in reversed(self.rules[X]):
                    if Y not in seen:
                        stack.append((Y, False))
        return order

    def size(self, root=None):
        return sum(1 if self.is_leaf(X) else 2 for X in self.reachable(root))

    def imbalance(self, A):
        if self.is_leaf(A):
            return 0
        B, C = self.rules[A]
        return abs(self.height[B] - self.height[C])

    def is_strongly_balanced(self, root=None):
        return all(self.imbalance(X) <= 1 for X in self.reachable(root))

    def sub(self, root):
        """A fresh CnfSlp holding only the rules reachable from root."""
        g = CnfSlp(root)
        for X in self.topological(root):
            rhs = self.rules[X]
            if isinstance(rhs, str):
                g.add_leaf(X, rhs)
            else:
                g.add_pair(X, *rhs)
        g._serial = self._serial
        return g

    def dumps(self, root=None):
        root = self._root(root)
        lines = [f"start: {root}"]
        for X in reversed(self.topological(root)):
            rhs = self.rules[X]
            if isinstance(rhs, str):
                lines.append(f"{X} -> '{rhs}'")
            else:
                lines.append(f"{X} -> {rhs[0]} {rhs[1]}")
        return "\n".join(lines) + "\n"

    # -- balanced concatenation and split ---------------------------------
    # Roots are assumed strongly balanced (AVL condition on heights); results
    # are strongly balanced. None stands for the empty string.

    def concat(self, A, B):
        if A is None:
            return B
        if B is None:
            return A
        return self._join(A, B)

    def _join(self, A, B):
        h = self.height
        if abs(h[A] - h[B]) <= 1:
            return self.node(A, B)
        if h[A] > h[B]:
            A1, A2 = self.rules[A]
            return self._rebalance(A1, self._join(A2, B))
        B1, B2 = self.rules[B]
        return self._rebalance(self._join(A, B1), B2)

    def _rebalance(self, L, R):
        h = self.height
        d = h[R] - h[L]
        if abs(d) <= 1:
            return self.node(L, R)
        if d == 2:
            R1, R2 = self.rules[R]
            if h[R2] >= h[R1]:
                return self.node(self.node(L, R1), R2)
            R11, R12 = self.rules[R1]
            return self.node(self.node(L, R11), self.node(R12, R2))
        if d == -2:
            L1, L2 = self.rules[L]
            if h[L1] >= h[L2]:
                return self.node(L1, self.node(L2, R))
            L21, L22 = self.rules[L2]
            return self.node(self.node(L1, L21), self.node(L22, R))
        raise AssertionError(f"height gap {d} cannot be rebalanced by one rotation")

    def split(self, A, p):
        """(prefix of length p, rest); either side is None when empty."""
        if not 0 <= p <= self.length[A]:
            raise DomainError(f"split position {p} outside [0, {self.length[A]}]")
        return self._split(A, p)

    def _split(self, A, p):
        if p == 0:
            return None, A
        if p == self.length[A]:
            return A, None
        B, C = self.rules[A]
        lb = self.length[B]
        if p == lb:
            return B, C
        if p < lb:
            X, Y = self._split(B, p)
            return X, self.concat(Y, C)
        X, Y = self._split(C, p - lb)
        return self.concat(B, X), Y

    def extract(self, A, l, r):
        """Root for str(A)[l..r] (1-based, inclusive)."""
        if not 1 <= l <= r <= self.length[A]:
            raise DomainError(f"bad range [{l}, {r}] for length {self.length[A]}")
        head, _ = self._split(A, r)
        _, mid = self._split(head, l - 1)
        return mid

    def from_string(self, w):
        """Strongly balanced root for w, built by halving."""
        if not w:
            raise DomainError("cannot build a grammar for the empty string")

        def build(l, r):
            if l == r:
                return self.leaf(w[l])
            m = (l + r) // 2
            return self.node(build(l, m), build(m + 1, r))

        return build(0, len(w) - 1)

    def rebalance(self, root=None):
        """Strongly balanced root for str(root), built inside this pool."""
        root = self._root(root)
        if self.is_strongly_balanced(root):
            return root
        new = {}
        for X in self.topological(root):
            rhs = self.rules[X]
            if isinstance(rhs, str):
                new[X] = self.leaf(rhs)
            else:
                new[X] = self.concat(new[rhs[0]], new[rhs[1]])
        return new[root]


def to_cnf(slp):
    """Chomsky normal form: long right-hand sides are folded left to right
    with fresh nonterminals, unit chains are inlined."""
    rules = slp.rules
    g = CnfSlp(slp.start)
    g._serial = 0
    taken = set(rules)

    def fresh():
        while True:
            g._serial += 1
            name = f"{FRESH_PREFIX}{g._serial}"
            if name not in taken:
                taken.add(name)
                return name

    def term_leaf(c):
        A = g._leaves.get(c)
        if A is None:
            A = g.add_leaf(fresh(), c)
        return A

    # children-first order, rejecting cycles
    state = {}
    order = []
    for root in rules:
        if root in state:
            continue
        stack = [(root, iter(rules[root]))]
        state[root] = 1
        while stack:
            A, it = stack[-1]
            for X in it:
                if isinstance(X, Terminal):
                    continue
                s = state.get(X)
                if s == 1:
                    raise FormatError(f"cyclic rules through {X}")
                if s is None:
                    state[X] = 1
                    stack.append((X, iter(rules[X])))
                    break
            else:
                stack.pop()
                state[A] = 2
                order.append(A)

    for A in order:
        rhs = rules[A]
        if len(rhs) == 1:
            (X,) = rhs
            if isinstance(X, Terminal):
                g.add_leaf(A, X)
            else:
                target = g.rules[X]
                if isinstance(target, str):
                    g.add_leaf(A, target)
                else:
                    g.add_pair(A, *target)
            continue
        syms = [term_leaf(X) if isinstance(X, Terminal) else X for X in rhs]
        acc = syms[0]
        for X in syms[1:-1]:
            acc = g.add_pair(fresh(), acc, X)
        g.add_pair(A, acc, syms[-1])
    return g


def lengths(S):
    return S.lengths()


def char_at(S, p):
    return S.char_at(p)


def expand(S, limit=10**6):
    return S.expand(limit=limit)


def strongly_balance(S):
    """Equivalent CNF SLP in which every A -> B C has |height(B) - height(C)| <= 1."""
    if S.is_strongly_balanced():
        return S
    g = S.copy()
    root = g.rebalance(S.start)
    return g.sub(root)


def balance(S):
    """Equivalent CNF SLP of depth O(log len); realized as strong balancing."""
    return strongly_balance(S)


def make_strongly_balanced(w):
    g = CnfSlp()
    g.start = g.from_string(w)
    return g.sub(g.start)


def log2_depth_bound(S):
    n = len(S)
    return math.log2(n) if n > 1 else 0.0


# -- text format -----------------------------------------------------------

_RULE = re.compile(r"^(\S+)\s*->\s*(.+)$")
_TOKEN = re.compile(r"'([^']*)'|(\S+)")


def loads_slp(text, require_start=True):
    rules = {}
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("start:"):
            if start is not None:
                raise FormatError(f"line {lineno}: duplicate start line")
            start = line[len("start:"):].strip()
            continue
        m = _RULE.match(line)
        if not m:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
        A, rhs_text = m.groups()
        if A in rules:
            raise FormatError(f"line {lineno}: duplicate rule for {A}")
        rhs = []
        for quoted, name in _TOKEN.findall(rhs_text):
            if name:
                rhs.append(name)
            elif len(quoted) != 1:
                raise FormatError(f"line {lineno}: terminal must be one character, got {quoted!r}")
            else:
                rhs.append(Terminal(quoted))
        rules[A] = rhs
    if start is None:
        if require_start:
            raise FormatError("missing 'start:' line")
        if not rules:
            raise FormatError("no rules")
        start = next(iter(rules))
    return Slp(rules, start)


def load_slp(path, require_start=True):
    with open(path) as f:
        return loads_slp(f.read(), require_start)


def example_grammar():
    """The eight-rule grammar for 'abababcab' used throughout the tests."""
    return loads_slp("""
start: S0
S0 -> A B
A -> D D
B -> C D
C -> D S_c
D -> S_a S_b
S_a -> 'a'
S_b -> 'b'
S_c -> 'c'
""")
