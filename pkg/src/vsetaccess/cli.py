"""Command-line front end. Indexes are rebuilt on every invocation."""
from __future__ import annotations

import argparse
import json
import random
import statistics
import sys

from . import automaton as automaton_mod
from .edits import EditableIndex, StringDatabase, parse
from .errors import AccessRangeError, DomainError, EditIndexError, FormatError, SizeError
from .grammar import load_slp, strongly_balance
from .slp_index import SlpIndex
from .string_index import StringIndex

EXIT_FORMAT = 1
EXIT_RANGE = 2


class Session:
    def __init__(self, args):
        self.args = args
        self.A = automaton_mod.load(args.automaton)
        if getattr(args, "disambiguate", False):
            self.A = self.A.disambiguate()
        self.order = tuple(args.order.split(",")) if getattr(args, "order", None) else None
        self.index = None

    def read_text(self, path):
        with open(path, "rb") as f:
            raw = f.read()
        try:
            w = raw.decode("utf-8").rstrip("\r\n")
        except UnicodeDecodeError as e:
            raise FormatError(f"{path}: not valid UTF-8") from e
        bad = sorted(set(w) - set(self.A.alphabet))
        if bad:
            raise FormatError(f"{path}: symbols {bad} are not in the automaton alphabet")
        if not w:
            raise FormatError(f"{path}: empty text")
        return w

    def build(self):
        args = self.args
        if args.text:
            self.index = StringIndex(self.A, self.read_text(args.text), self.order)
        else:
            g = strongly_balance(load_slp(args.slp).to_cnf())
            bad = sorted({c for c in g.rules.values() if isinstance(c, str)} - set(self.A.alphabet))
            if bad:
                raise FormatError(f"{args.slp}: symbols {bad} are not in the automaton alphabet")
            self.index = SlpIndex(self.A, g, self.order)
        return self.index


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _mapping_payload(A, mu):
    return {x: mu[x] for x in A.variables}


def _parse_range(spec):
    a, sep, b = spec.partition("..")
    if not sep:
        raise FormatError(f"index range must look like a..b, got {spec!r}")
    return int(a), int(b)


def cmd_validate(args):
    A = automaton_mod.load(args.automaton)
    fun, fw = A.check_functional()
    una, uw = A.check_unambiguous()
    payload = {"functional": fun, "unambiguous": una, "states": len(A.states),
               "variables": list(A.variables)}
    lines = [f"functional: {'yes' if fun else 'no'}", f"unambiguous: {'yes' if una else 'no'}"]
    if fw is not None:
        payload["functional_counterexample"] = {"word": fw.word, "states": list(fw.states)}
        lines.append(f"  invalid accepting run over {fw.word!r}: {' '.join(fw.states) or '(empty)'}")
    if uw is not None:
        r1, r2 = uw
        payload["ambiguity_counterexample"] = {"word": r1.word, "run1": list(r1.states),
                                               "run2": list(r2.states), "mapping": r1.mapping()}
        lines.append(f"  two runs over {r1.word!r}: {' '.join(r1.states)} / {' '.join(r2.states)}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_count(args):
    ix = Session(args).build()
    c = ix.count()
    _emit(args, {"count": c}, str(c))
    return 0


def _access_many(args, A, access, ts):
    results = [(t, access(t)) for t in ts]
    if args.json:
        if len(results) == 1 and args.index is not None:
            t, mu = results[0]
            print(json.dumps({"index": t, "mapping": _mapping_payload(A, mu)}, sort_keys=True))
        else:
            print(json.dumps({"answers": [{"index": t, "mapping": _mapping_payload(A, mu)}
                                          for t, mu in results]}, sort_keys=True))
    else:
        for _, mu in results:
            print(mu.format(A.variables))


def _indices(args):
    if args.index is not None:
        return [args.index]
    a, b = _parse_range(args.index_range)
    return range(a, b + 1)


def cmd_access(args):
    s = Session(args)
    ix = s.build()
    _access_many(args, s.A, ix.access, _indices(args))
    return 0


def cmd_edit(args):
    s = Session(args)
    with open(args.db) as f:
        slp_text = f.read()
    with open(args.roots) as f:
        rooting_text = f.read()
    with open(args.expr) as f:
        psi = parse(f.read())
    db = StringDatabase.loads(slp_text, rooting_text)
    ed = EditableIndex(s.A, db, s.order)
    result = ed.edit(psi)
    if result.root is None:
        raise DomainError("the edited string is empty")
    if args.count or (args.index is None and args.index_range is None):
        c = ed.index.count(result.root)
        _emit(args, {"count": c, "length": result.length, "max_intermediate_length": result.max_length,
                     "fresh_nonterminals": len(result.fresh)}, str(c))
        return 0
    _access_many(args, s.A, lambda t: ed.index.access(t, result.root), _indices(args))
    return 0


def cmd_bench(args):
    s = Session(args)
    ix = StringIndex(s.A, s.read_text(args.text), s.order)
    total = ix.count()
    rng = random.Random(args.seed)
    per_access = []
    for _ in range(args.trials if total else 0):
        ix.stats.reset()
        ix.access(rng.randint(1, total))
        per_access.append((ix.stats.matmul, ix.stats.matvec))
    k = len(s.A.variables)
    n = ix.n
    payload = {
        "n": n, "k": k, "states": len(s.A.states), "count": total,
        "build_matmul": ix.build_matmul, "build_bound": (k + 1) * (2 * n - 1),
        "trials": len(per_access),
        "access_matmul_mean": statistics.fmean(m for m, _ in per_access) if per_access else 0,
        "access_matvec_mean": statistics.fmean(v for _, v in per_access) if per_access else 0,
        "access_matmul_max": max((m for m, _ in per_access), default=0),
    }
    text = "\n".join(f"{key}: {value}" for key, value in payload.items())
    _emit(args, payload, text)
    return 0


def make_parser():
    p = argparse.ArgumentParser(prog="vsetaccess", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, source=True):
        sp.add_argument("--automaton", required=True)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--disambiguate", action="store_true",
                        help="determinize the automaton before indexing")
        sp.add_argument("--order", help="comma-separated variable order, e.g. x2,x1")
        if source:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--text")
            g.add_argument("--slp")

    def indices(sp, required):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--index", type=int)
        g.add_argument("--index-range")
        return g

    sp = sub.add_parser("validate")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("count")
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("access")
    common(sp)
    indices(sp, True)
    sp.set_defaults(func=cmd_access)

    sp = sub.add_parser("edit")
    common(sp, source=False)
    sp.add_argument("--db", required=True)
    sp.add_argument("--roots", required=True)
    sp.add_argument("--expr", required=True)
    g = indices(sp, False)
    g.add_argument("--count", action="store_true")
    sp.set_defaults(func=cmd_edit)

    sp = sub.add_parser("bench")
    common(sp, source=False)
    sp.add_argument("--text", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AccessRangeError, EditIndexError) as e:
        return _fail(args, e, EXIT_RANGE)
    except (FormatError, DomainError, SizeError, OSError, ValueError) as e:
        return _fail(args, e, EXIT_FORMAT)


def _fail(args, err, code):
    payload = {"error": str(err), "exit": code}
    if isinstance(err, AccessRangeError):
        payload["total"] = err.total
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    print(f"error: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
