"""Vset automata: transitions read a letter and open a set of variables.

Text format (one item per line, ``#`` starts a comment)::

    alphabet: a b c
    vars: x1 x2
    states: q0 q1 q2
    initial: q0
    final: q2
    q0 a {} q0
    q0 a {x1} q1
    q0 c {x1,x2} q2
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, FormatError
from .matrix import CountMatrix
from .mappings import VariableSet


class Transition(NamedTuple):
    src: str
    letter: str
    vars: frozenset
    dst: str


@dataclass(frozen=True)
class RunWitness:
    transitions: tuple

    @property
    def word(self):
        return "".join(t.letter for t in self.transitions)

    @property
    def states(self):
        if not self.transitions:
            return ()
        return (self.transitions[0].src,) + tuple(t.dst for t in self.transitions)

    def mapping(self):
        """The assignment the run produces, or None if some variable repeats."""
        out = {}
        for i, t in enumerate(self.transitions, 1):
            for x in t.vars:
                if x in out:
                    return None
                out[x] = i
        return out


class VsetAutomaton:
    def __init__(self, alphabet, variables, states, transitions, initial, final):
        self.alphabet = tuple(alphabet)
        self.variables = VariableSet(variables)
        self.states = tuple(states)
        if len(set(self.states)) != len(self.states):
            raise DomainError("duplicate state names")
        self.index = {q: i for i, q in enumerate(self.states)}
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        trans = []
        for p, a, S, q in transitions:
            S = frozenset(S)
            if p not in self.index or q not in self.index:
                raise DomainError(f"transition {p} -> {q} uses an undeclared state")
            if a not in self.alphabet:
                raise DomainError(f"transition uses undeclared symbol {a!r}")
            if not S <= set(self.variables):
                raise DomainError(f"transition opens undeclared variables {set(S) - set(self.variables)}")
            trans.append(Transition(p, a, S, q))
        self.transitions = tuple(dict.fromkeys(trans))
        for q in self.initial | self.final:
            if q not in self.index:
                raise DomainError(f"undeclared state {q}")
        self._matrices = {}
        self._by_src = {}
        for t in self.transitions:
            self._by_src.setdefault(t.src, []).append(t)

    @property
    def initial_idx(self):
        return sorted(self.index[q] for q in self.initial)

    @property
    def final_idx(self):
        return sorted(self.index[q] for q in self.final)

    def out(self, q):
        return self._by_src.get(q, ())

    def transition_matrix(self, a, allowed):
        """Adjacency counts of transitions on `a` whose variable set lies within `allowed`."""
        if a not in self.alphabet:
            raise DomainError(f"unknown symbol {a!r}")
        allowed = frozenset(allowed)
        key = (a, allowed)
        m = self._matrices.get(key)
        if m is None:
            n = len(self.states)
            rows = [[0] * n for _ in range(n)]
            for t in self.transitions:
                if t.letter == a and t.vars <= allowed:
                    rows[self.index[t.src]][self.index[t.dst]] += 1
            m = self._matrices[key] = CountMatrix(rows)
        return m

    def with_final(self, final):
        return VsetAutomaton(self.alphabet, self.variables, self.states,
                             self.transitions, self.initial, final)

    def __repr__(self):
        return (f"VsetAutomaton(|Q|={len(self.states)}, |X|={len(self.variables)}, "
                f"|Δ|={len(self.transitions)})")

    # -- properties ---------------------------------------------------

    def check_functional(self):
        """Return (True, None) or (False, witness) for an accepting run that
        misses or repeats a variable."""
        X = frozenset(self.variables)
        bad = "⊥"
        start = [(q, frozenset()) for q in sorted(self.initial, key=self.index.get)]
        parent = {s: None for s in start}
        queue = deque(start)
        while queue:
            node = queue.popleft()
            q, seen = node
            if q in self.final and seen != X:
                return False, RunWitness(_unwind(parent, node))
            for t in self.out(q):
                if seen == bad or (seen & t.vars):
                    nxt = (t.dst, bad)
                else:
                    nxt = (t.dst, seen | t.vars)
                if nxt not in parent:
                    parent[nxt] = (node, t)
                    queue.append(nxt)
        return True, None

    def is_functional(self):
        return self.check_functional()[0]

    def useful_states(self):
        fwd = _closure(self.initial, lambda q: (t.dst for t in self.out(q)))
        back = {}
        for t in self.transitions:
            back.setdefault(t.dst, []).append(t.src)
        bwd = _closure(self.final, lambda q: back.get(q, ()))
        return fwd & bwd

    def check_unambiguous(self):
        """Return (True, None) or (False, (run1, run2)): two distinct accepting
        runs reading the same letters and opening the same variables."""
        useful = self.useful_states()
        init = [(p, q) for p in sorted(self.initial & useful, key=self.index.get)
                for q in sorted(self.initial & useful, key=self.index.get)]
        parent = {s: None for s in init}
        succ = {}
        queue = deque(init)
        while queue:
            node = queue.popleft()
            p, q = node
            edges = []
            for t1 in self.out(p):
                if t1.dst not in useful:
                    continue
                for t2 in self.out(q):
                    if t2.dst in useful and t1.letter == t2.letter and t1.vars == t2.vars:
                        nxt = (t1.dst, t2.dst)
                        edges.append((t1, t2, nxt))
                        if nxt not in parent:
                            parent[nxt] = (node, (t1, t2))
                            queue.append(nxt)
            succ[node] = edges
        # product states that can still reach a pair of final states
        back = {}
        for node, edges in succ.items():
            for t1, t2, nxt in edges:
                back.setdefault(nxt, []).append((node, (t1, t2)))
        finals = [s for s in parent if s[0] in self.final and s[1] in self.final]
        child = {s: None for s in finals}
        queue = deque(finals)
        while queue:
            node = queue.popleft()
            for prev, tt in back.get(node, ()):
                if prev not in child:
                    child[prev] = (node, tt)
                    queue.append(prev)
        for node in parent:
            if node[0] != node[1] and node in child:
                head = _unwind(parent, node)
                tail = []
                cur = node
                while child[cur] is not None:
                    cur, tt = child[cur]
                    tail.append(tt)
                pairs = list(head) + tail
                return False, (RunWitness(tuple(a for a, _ in pairs)),
                               RunWitness(tuple(b for _, b in pairs)))
        return True, None

    def is_unambiguous(self):
        return self.check_unambiguous()[0]

    def disambiguate(self):
        """Equivalent unambiguous automaton by subset construction over
        (letter, variable set) labels."""
        ok, _ = self.check_functional()
        if not ok:
            raise DomainError("disambiguate requires a functional automaton")
        order = self.index.get
        start = frozenset(self.initial)
        names = {start: None}
        queue = deque([start])
        delta = []
        labels = sorted({(t.letter, t.vars) for t in self.transitions},
                        key=lambda l: (self.alphabet.index(l[0]), sorted(l[1])))
        seen_order = [start]
        while queue:
            P = queue.popleft()
            for a, S in labels:
                Q = frozenset(t.dst for p in P for t in self.out(p)
                              if t.letter == a and t.vars == S)
                if not Q:
                    continue
                if Q not in names:
                    names[Q] = None
                    seen_order.append(Q)
                    queue.append(Q)
                delta.append((P, a, S, Q))

        def name(P):
            qs = sorted(P, key=order)
            return qs[0] if len(qs) == 1 else "{" + ",".join(qs) + "}"

        states = [name(P) for P in seen_order]
        if len(set(states)) != len(states):
            states = [f"d{i}" for i in range(len(seen_order))]
        rename = dict(zip(seen_order, states))
        final = [rename[P] for P in seen_order if P & self.final]
        if not start:
            return VsetAutomaton(self.alphabet, self.variables, [], [], [], [])
        result = VsetAutomaton(
            self.alphabet, self.variables, states,
            [(rename[P], a, S, rename[Q]) for P, a, S, Q in delta],
            [rename[start]], final)
        return result.trim()

    def trim(self):
        """Drop states that lie on no accepting run (keeps an initial state so
        the automaton stays well-formed)."""
        useful = self.useful_states()
        if not useful:
            keep = [q for q in self.states if q in self.initial][:1]
        else:
            keep = [q for q in self.states if q in useful]
        ks = set(keep)
        return VsetAutomaton(
            self.alphabet, self.variables, keep,
            [t for t in self.transitions if t.src in ks and t.dst in ks],
            self.initial & ks, self.final & ks)

    # -- text format --------------------------------------------------

    def dumps(self):
        lines = [
            "alphabet: " + " ".join(self.alphabet),
            "vars: " + " ".join(self.variables),
            "states: " + " ".join(self.states),
            "initial: " + " ".join(q for q in self.states if q in self.initial),
            "final: " + " ".join(q for q in self.states if q in self.final),
        ]
        for t in self.transitions:
            S = ",".join(x for x in self.variables if x in t.vars)
            lines.append(f"{t.src} {t.letter} {{{S}}} {t.dst}")
        return "\n".join(lines) + "\n"


def _closure(seeds, step):
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        for nxt in step(stack.pop()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _unwind(parent, node):
    path = []
    while parent[node] is not None:
        node, t = parent[node]
        path.append(t)
    return tuple(reversed(path))


_HEADERS = ("alphabet", "vars", "states", "initial", "final")
_TRANSITION = re.compile(r"^(\S+)\s+(\S+)\s+\{([^}]*)\}\s+(\S+)$")


def loads(text):
    header = {}
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, colon, rest = line.partition(":")
        if colon and key.strip() in _HEADERS:
            key = key.strip()
            if key in header:
                raise FormatError(f"line {lineno}: duplicate header {key!r}")
            header[key] = rest.split()
            continue
        m = _TRANSITION.match(line)
        if not m:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
        p, a, S, q = m.groups()
        vs = [v.strip() for v in S.split(",") if v.strip()]
        transitions.append((p, a, vs, q))
    missing = [h for h in _HEADERS if h not in header]
    if missing:
        raise FormatError(f"missing header(s): {', '.join(missing)}")
    try:
        return VsetAutomaton(header["alphabet"], header["vars"], header["states"],
                             transitions, header["initial"], header["final"])
    except DomainError as e:
        raise FormatError(str(e)) from e


def load(path):
    with open(path) as f:
        return loads(f.read())


def running_example():
    """The three-state automaton: x1 on an `a`, later x2 on a `b`, or both on one `c`."""
    return loads("""
alphabet: a b c
vars: x1 x2
states: q0 q1 q2
initial: q0
final: q2
q0 a {} q0
q0 b {} q0
q0 c {} q0
q1 a {} q1
q1 b {} q1
q2 a {} q2
q2 b {} q2
q2 c {} q2
q0 a {x1} q1
q1 b {x2} q2
q0 c {x1,x2} q2
""")
