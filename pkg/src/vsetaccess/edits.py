"""Complex string-editing expressions over a database of grammar-compressed strings.

Expressions are written in prefix form::

    (insertop (concat d1 d2) (extract d1 3 7) 4)

Evaluation works on roots of one shared, strongly balanced grammar pool.
Each operation is a few balanced splits and concatenations, so it creates
O(height) new nonterminals and never copies text. Every new nonterminal is
annotated in all D_i structures as soon as it exists.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DomainError, EditIndexError, FormatError
from .grammar import CnfSlp, loads_slp, to_cnf
from .slp_index import SlpIndex


@dataclass(frozen=True)
class Name:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Concat:
    left: object
    right: object

    def __str__(self):
        return f"(concat {self.left} {self.right})"


@dataclass(frozen=True)
class Extract:
    arg: object
    l: int
    r: int

    def __str__(self):
        return f"(extract {self.arg} {self.l} {self.r})"


@dataclass(frozen=True)
class Delete:
    arg: object
    l: int
    r: int

    def __str__(self):
        return f"(delete {self.arg} {self.l} {self.r})"


@dataclass(frozen=True)
class InsertOp:
    target: object
    insert: object
    k: int

    def __str__(self):
        return f"(insertop {self.target} {self.insert} {self.k})"


@dataclass(frozen=True)
class CopyOp:
    arg: object
    l: int
    r: int
    k: int

    def __str__(self):
        return f"(copyop {self.arg} {self.l} {self.r} {self.k})"


_ARITY = {"concat": (Concat, 2, 0), "extract": (Extract, 1, 2), "delete": (Delete, 1, 2),
          "insertop": (InsertOp, 2, 1), "copyop": (CopyOp, 1, 3)}


def parse(text):
    tokens = re.findall(r"[()]|[^\s()]+", text)
    if not tokens:
        raise FormatError("empty expression")
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise FormatError("unexpected ')'")
        if tok != "(":
            if tok.isdigit():
                raise FormatError(f"expected an expression, got integer {tok}")
            return Name(tok)
        if pos >= len(tokens):
            raise FormatError("unexpected end of expression")
        op = tokens[pos]
        pos += 1
        if op not in _ARITY:
            raise FormatError(f"unknown operation {op!r}")
        cls, nexpr, nint = _ARITY[op]
        args = [expr() for _ in range(nexpr)]
        for _ in range(nint):
            if pos >= len(tokens) or not tokens[pos].isdigit():
                raise FormatError(f"{op} expects {nint} integer argument(s)")
            value = int(tokens[pos])
            if value < 1:
                raise FormatError(f"{op}: indices start at 1")
            args.append(value)
            pos += 1
        if pos >= len(tokens) or tokens[pos] != ")":
            raise FormatError(f"missing ')' after {op}")
        pos += 1
        return cls(*args)

    result = expr()
    if pos != len(tokens):
        raise FormatError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return result


def size(psi):
    """Number of names and operations in the expression."""
    if isinstance(psi, Name):
        return 1
    subs = [v for v in vars(psi).values() if not isinstance(v, int)]
    return 1 + sum(size(s) for s in subs)


def evaluate_string(psi, strings):
    """Direct string-level semantics; the reference for grammar evaluation."""
    if isinstance(psi, Name):
        return strings[psi.name]
    if isinstance(psi, Concat):
        return evaluate_string(psi.left, strings) + evaluate_string(psi.right, strings)
    if isinstance(psi, Extract):
        u = evaluate_string(psi.arg, strings)
        _check_range(psi, psi.l, psi.r, len(u))
        return u[psi.l - 1:psi.r]
    if isinstance(psi, Delete):
        u = evaluate_string(psi.arg, strings)
        _check_range(psi, psi.l, psi.r, len(u))
        return u[:psi.l - 1] + u[psi.r:]
    if isinstance(psi, InsertOp):
        u = evaluate_string(psi.target, strings)
        v = evaluate_string(psi.insert, strings)
        _check_k(psi, psi.k, len(u))
        return u[:psi.k - 1] + v + u[psi.k - 1:]
    if isinstance(psi, CopyOp):
        u = evaluate_string(psi.arg, strings)
        _check_range(psi, psi.l, psi.r, len(u))
        _check_k(psi, psi.k, len(u))
        return u[:psi.k - 1] + u[psi.l - 1:psi.r] + u[psi.k - 1:]
    raise TypeError(f"not an expression: {psi!r}")


def _check_range(psi, l, r, n):
    if not 1 <= l <= r <= n:
        raise EditIndexError(f"{psi}: range [{l}, {r}] invalid for a string of length {n}")


def _check_k(psi, k, n):
    if not 1 <= k <= n + 1:
        raise EditIndexError(f"{psi}: insertion point {k} invalid for a string of length {n}")


class StringDatabase:
    """Named strings, each the expansion of a strongly balanced root in one pool."""

    def __init__(self, grammar, rooting):
        self.g = grammar
        self.roots = {}
        for d, A in rooting.items():
            if A not in grammar.rules:
                raise FormatError(f"{d} is rooted at undefined nonterminal {A!r}")
            self.roots[d] = grammar.rebalance(A)

    @classmethod
    def from_strings(cls, strings):
        g = CnfSlp()
        return cls(g, {d: g.from_string(w) for d, w in strings.items()})

    @classmethod
    def loads(cls, slp_text, rooting_text):
        g = to_cnf(loads_slp(slp_text, require_start=False))
        return cls(g, parse_rooting(rooting_text))

    def __getitem__(self, d):
        return self.g.expand(self.roots[d])

    def strings(self):
        return {d: self[d] for d in self.roots}


def parse_rooting(text):
    rooting = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        d, eq, A = (s.strip() for s in line.partition("="))
        if not eq or not d or not A or len(A.split()) != 1:
            raise FormatError(f"line {lineno}: expected 'name = Nonterminal', got {raw!r}")
        if d in rooting:
            raise FormatError(f"line {lineno}: {d} rooted twice")
        rooting[d] = A
    return rooting


@dataclass
class EditResult:
    root: str | None
    length: int
    fresh: list = field(default_factory=list)
    max_length: int = 0


class _Evaluator:
    def __init__(self, db):
        self.db = db
        self.g = db.g
        self.max_length = 0

    def length(self, X):
        return 0 if X is None else self.g.length[X]

    def run(self, psi):
        X = self._eval(psi)
        self.max_length = max(self.max_length, self.length(X))
        return X

    def _eval(self, psi):
        g = self.g
        if isinstance(psi, Name):
            if psi.name not in self.db.roots:
                raise EditIndexError(f"unknown string name {psi.name!r}")
            return self.db.roots[psi.name]
        if isinstance(psi, Concat):
            return g.concat(self.run(psi.left), self.run(psi.right))
        if isinstance(psi, Extract):
            X = self.run(psi.arg)
            _check_range(psi, psi.l, psi.r, self.length(X))
            return g.extract(X, psi.l, psi.r)
        if isinstance(psi, Delete):
            X = self.run(psi.arg)
            _check_range(psi, psi.l, psi.r, self.length(X))
            head, rest = g.split(X, psi.l - 1)
            _, tail = g.split(rest, psi.r - psi.l + 1)
            return g.concat(head, tail)
        if isinstance(psi, InsertOp):
            X = self.run(psi.target)
            Y = self.run(psi.insert)
            _check_k(psi, psi.k, self.length(X))
            return self._insert(X, Y, psi.k)
        if isinstance(psi, CopyOp):
            X = self.run(psi.arg)
            _check_range(psi, psi.l, psi.r, self.length(X))
            _check_k(psi, psi.k, self.length(X))
            return self._insert(X, g.extract(X, psi.l, psi.r), psi.k)
        raise TypeError(f"not an expression: {psi!r}")

    def _insert(self, X, Y, k):
        if X is None:
            return Y
        head, tail = self.g.split(X, k - 1)
        return self.g.concat(self.g.concat(head, Y), tail)


def _created_since(g, mark):
    # pool names are insertion-ordered; everything after `mark` is new
    names = list(g.rules)
    return names[mark:]


def evaluate(psi, db):
    """Evaluate psi on db's pool; the database roots are left untouched."""
    mark = len(db.g.rules)
    ev = _Evaluator(db)
    root = ev.run(psi)
    return EditResult(root, ev.length(root), _created_since(db.g, mark), ev.max_length)


class EditableIndex:
    """A database plus D_0..D_k annotations, kept current under edits."""

    def __init__(self, A, db, order=None):
        self.A = A
        self.db = db
        anchor = next(iter(db.roots.values()), None)
        if anchor is None:
            raise DomainError("empty database")
        self.index = SlpIndex(A, db.g, order, root=anchor)
        for root in db.roots.values():
            self.index.annotate(db.g.topological(root))

    @property
    def stats(self):
        return self.index.stats

    def edit(self, psi):
        if isinstance(psi, str):
            psi = parse(psi)
        result = evaluate(psi, self.db)
        self.index.annotate(result.fresh)
        return result

    def _root(self, result):
        if result.root is None:
            raise DomainError("the edited string is empty")
        return result.root

    def count(self, psi):
        return self.index.count(self._root(self.edit(psi)))

    def access(self, psi, t):
        return self.index.access(t, self._root(self.edit(psi)))


def edit_and_access(psi, db, A, t, order=None):
    return EditableIndex(A, db, order).access(psi, t)
