"""Variables, mappings and mapping rules.

A mapping assigns every variable a 1-based string position. Mappings are
compared lexicographically along a variable order; rule sets restrict each
variable to a position set and are used to cut slices out of the answer list.
"""
from __future__ import annotations

import collections.abc
import enum
from dataclasses import dataclass

from .errors import DomainError


class VariableSet(tuple):
    """Ordered tuple of distinct variable names; the order is the default one."""

    def __new__(cls, names=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        return super().__new__(cls, names)

    @property
    def k(self):
        return len(self)

    def check_order(self, order):
        order = tuple(order)
        if sorted(order) != sorted(self):
            raise DomainError(f"{order} is not a permutation of {tuple(self)}")
        return order


class Mapping(collections.abc.Mapping):
    """Immutable total assignment variable -> position.

    Compares equal to a plain dict with the same items.
    """

    __slots__ = ("_d",)

    def __init__(self, items=(), **kw):
        d = dict(items, **kw)
        for x, s in d.items():
            if not isinstance(s, int) or s < 1:
                raise DomainError(f"position of {x} must be an integer >= 1, got {s!r}")
        self._d = d

    def __getitem__(self, x):
        return self._d[x]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __repr__(self):
        return "Mapping({%s})" % ", ".join(f"{x!r}: {s}" for x, s in self._d.items())

    def key(self, order):
        return tuple(self._d[x] for x in order)

    def format(self, order=None):
        order = order if order is not None else sorted(self._d)
        return " ".join(f"{x}={self._d[x]}" for x in order)


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(m1, m2, order):
    """Lexicographic comparison of two mappings scanning variables in `order`."""
    if set(m1) != set(m2) or set(m1) != set(order):
        raise DomainError("mappings must be total over the same variables")
    for x in order:
        if m1[x] != m2[x]:
            return Cmp.LESS if m1[x] < m2[x] else Cmp.GREATER
    return Cmp.EQUAL


@dataclass(frozen=True)
class PositionSet:
    """One of: empty, a range [lo, hi] (a singleton when lo == hi), or all positions."""

    lo: int | None = None
    hi: int | None = None
    full: bool = False

    def __post_init__(self):
        if self.full:
            if self.lo is not None or self.hi is not None:
                raise DomainError("full range takes no bounds")
        elif (self.lo is None) != (self.hi is None):
            raise DomainError("range needs both bounds")
        elif self.lo is not None and not 1 <= self.lo <= self.hi:
            raise DomainError(f"bad range [{self.lo}, {self.hi}]")

    @property
    def empty(self):
        return not self.full and self.lo is None

    def __contains__(self, s):
        if self.full:
            return True
        if self.lo is None:
            return False
        return self.lo <= s <= self.hi

    def union(self, other):
        if self.empty:
            return other
        if other.empty or self.full:
            return self
        if other.full:
            return other
        a, b = sorted([(self.lo, self.hi), (other.lo, other.hi)])
        if b[0] > a[1] + 1:
            raise DomainError(f"union of [{a[0]},{a[1]}] and [{b[0]},{b[1]}] is not a range")
        return Range(a[0], max(a[1], b[1]))

    def __repr__(self):
        if self.full:
            return "FullRange"
        if self.lo is None:
            return "Empty"
        if self.lo == self.hi:
            return f"{{{self.lo}}}"
        return f"[{self.lo},{self.hi}]"


EMPTY = PositionSet()
FULL = PositionSet(full=True)


def Singleton(s):
    return PositionSet(s, s)


def Range(lo, hi):
    return PositionSet(lo, hi)


class RuleSet(dict):
    """Partial map variable -> PositionSet. Functional when it mentions every variable."""

    def is_functional(self, variables):
        return set(self) == set(variables)


def compose(left, right, variables=None):
    """Per-variable union of two functional rule sets covering adjacent ranges."""
    variables = set(left) if variables is None else set(variables)
    if set(left) != variables or set(right) != variables:
        raise DomainError("compose needs functional rule sets over the same variables")
    return RuleSet({x: left[x].union(right[x]) for x in left})


def respects(mapping, rules):
    for x, alpha in rules.items():
        if x in mapping and mapping[x] not in alpha:
            return False
    return True
