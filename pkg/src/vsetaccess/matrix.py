"""Square matrices of unbounded nonnegative integers over (N, +, x).

Entries are Python ints, so counts never overflow. Multiplication is the
schoolbook cubic product; matrices are small (one row per automaton state)
while the strings they summarize are long.
"""
from __future__ import annotations

from operator import mul

from .errors import DomainError


class CountMatrix:
    __slots__ = ("rows", "_cols")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DomainError("count matrix must be square and non-empty")
        self.rows = rows
        self._cols = None

    @classmethod
    def _raw(cls, rows):
        m = object.__new__(cls)
        m.rows = rows
        m._cols = None
        return m

    @classmethod
    def identity(cls, dim):
        if dim < 1:
            raise DomainError("dimension must be >= 1")
        return cls._raw(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def zero(cls, dim):
        return cls._raw(tuple((0,) * dim for _ in range(dim)))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def cols(self):
        if self._cols is None:
            self._cols = tuple(zip(*self.rows))
        return self._cols

    def __getitem__(self, pq):
        p, q = pq
        return self.rows[p][q]

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        cols = other.cols
        return CountMatrix._raw(
            tuple(tuple(sum(map(mul, row, col)) for col in cols) for row in self.rows)
        )

    def __eq__(self, other):
        if isinstance(other, CountMatrix):
            return self.rows == other.rows
        try:
            return self.rows == tuple(tuple(r) for r in other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __le__(self, other):
        return all(a <= b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"CountMatrix({self.tolist()})"


def multiply(m1, m2):
    return m1 @ m2


def identity(dim):
    return CountMatrix.identity(dim)


def answer_count(m, initial, final):
    """Sum of entries over initial x final (state index sets)."""
    return sum(m.rows[p][q] for p in initial for q in final)


# Row/column vectors let the access phase carry e_I * M and M * 1_F instead of
# full prefix/suffix matrices: a count is then two vector products and a dot.

def indicator(dim, states):
    s = set(states)
    return tuple(int(i in s) for i in range(dim))


def vec_mat(v, m):
    return tuple(sum(map(mul, v, col)) for col in m.cols)


def mat_vec(m, v):
    return tuple(sum(map(mul, row, v)) for row in m.rows)


def dot(u, v):
    return sum(map(mul, u, v))
