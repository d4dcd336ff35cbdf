"""Finite-state calculus with directed replacement operators.

Build networks with the functions in :mod:`fsc.network`, compile rule
expressions with :func:`compile_regex`, and run them with
:func:`apply_down`.
"""

from . import network
from .alphabet import DEFAULT_TABLE, SymbolTable
from .apply import apply_down, apply_up, down, tokenize_input, transduce_stream
from .errors import (
    ActionLanguageInfinite,
    AmbiguousOutput,
    ArtifactError,
    DanglingEscape,
    EmptyName,
    EmptyRuleSet,
    EpsilonInUpper,
    FscError,
    NotAnAutomaton,
    RegexSyntaxError,
    ReservedName,
    UnknownName,
    UnsupportedContextOrientation,
    UnsupportedRule,
    UnterminatedQuote,
)
from .network import Network
from .regex import compile as compile_regex
from .regex import load_program, parse, to_source
from .replace import (
    ContextSpec,
    Direction,
    Length,
    Lower,
    Markup,
    ReplaceSpec,
    replace_conditional,
    replace_directed,
    replace_parallel_directed,
    replace_simple,
)

__version__ = "0.1.0"

__all__ = [
    "network", "Network", "SymbolTable", "DEFAULT_TABLE",
    "compile_regex", "load_program", "parse", "to_source",
    "apply_down", "apply_up", "down", "tokenize_input", "transduce_stream",
    "ReplaceSpec", "Lower", "Markup", "Direction", "Length", "ContextSpec",
    "replace_directed", "replace_parallel_directed", "replace_simple", "replace_conditional",
    "FscError", "EmptyName", "ReservedName", "NotAnAutomaton", "EpsilonInUpper",
    "EmptyRuleSet", "UnsupportedContextOrientation", "UnsupportedRule",
    "ActionLanguageInfinite", "UnknownName", "RegexSyntaxError", "UnterminatedQuote",
    "DanglingEscape", "AmbiguousOutput", "ArtifactError",
]
