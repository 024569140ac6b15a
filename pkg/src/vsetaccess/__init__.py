"""Ranked direct access to the answers of vset automata over plain and
grammar-compressed strings, with incremental maintenance under edits."""

from .automaton import VsetAutomaton, running_example
from .edits import EditableIndex, StringDatabase, edit_and_access, evaluate, parse
from .errors import (AccessRangeError, DomainError, EditIndexError, FormatError,
                     SizeError, VsetError)
from .grammar import (CnfSlp, Slp, balance, loads_slp, make_strongly_balanced,
                      strongly_balance, to_cnf)
from .mappings import Mapping, compare, compose, respects
from .matrix import CountMatrix, answer_count
from .slp_index import SlpIndex
from .string_index import AllOrdersIndex, StringIndex

__all__ = [
    "VsetAutomaton", "running_example", "EditableIndex", "StringDatabase",
    "edit_and_access", "evaluate", "parse", "AccessRangeError", "DomainError",
    "EditIndexError", "FormatError", "SizeError", "VsetError", "CnfSlp", "Slp",
    "balance", "loads_slp", "make_strongly_balanced", "strongly_balance", "to_cnf",
    "Mapping", "compare", "compose", "respects", "CountMatrix", "answer_count",
    "SlpIndex", "AllOrdersIndex", "StringIndex",
]
