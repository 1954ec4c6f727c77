"""window-space - sliding-window space complexity of regular languages.

This package builds optimal streaming algorithms for fixed-size and
variable-size sliding windows, measures their exact space, decides the
constant/logarithmic/linear trichotomy with verifiable witnesses and
produces self-checking Boolean-combination certificates.

Usage:
    window-space classify lang.txt
    python -m window_space measure lang.txt --max-n 8 --out csv

    >>> from window_space import load_automaton, classify_dfa
    >>> classify_dfa(load_automaton("lang.txt")).space_class
"""

from .automata import determinize, minimize, reverse_determinize
from .classify import (
    Classification,
    SpaceClass,
    classify_dfa,
    classify_nfa,
    decide,
    is_constant_fixed,
    is_well_behaved,
    max_alternations,
)
from .decompose import (
    DecompositionCertificate,
    alternation_decomposition,
    constant_decomposition,
    log_class_decomposition,
)
from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    TrivialLanguageError,
    WindowSpaceError,
)
from .exactspace import exact_F, optimal_variable_algorithm, psi_image_count, space_table
from .models import Alphabet, Dfa, MealyMachine, Nfa
from .parsing import format_automaton, load_automaton, parse_automaton, parse_stream
from .state import configure
from .streaming import POP, FixedWindowSpec, exact_space_profile

__all__ = [
    "POP",
    "Alphabet",
    "AlphabetMismatchError",
    "BudgetExceededError",
    "Classification",
    "DecompositionCertificate",
    "Dfa",
    "FixedWindowSpec",
    "InternalConsistencyError",
    "MealyMachine",
    "Nfa",
    "ParseError",
    "PreconditionError",
    "SpaceClass",
    "TrivialLanguageError",
    "WindowSpaceError",
    "alternation_decomposition",
    "classify_dfa",
    "classify_nfa",
    "configure",
    "constant_decomposition",
    "decide",
    "determinize",
    "exact_F",
    "exact_space_profile",
    "format_automaton",
    "is_constant_fixed",
    "is_well_behaved",
    "load_automaton",
    "log_class_decomposition",
    "max_alternations",
    "minimize",
    "optimal_variable_algorithm",
    "parse_automaton",
    "parse_stream",
    "psi_image_count",
    "reverse_determinize",
    "space_table",
]
