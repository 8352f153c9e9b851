"""Optimal-weight joint digit expansions: recoding, transducers, statistics."""

from .digitset import DigitSet, classify, digit_set, wnaf_digit_set
from .errors import BudgetExceeded, NonConvergence
from .expansion import (JointExpansion, ajsf, ajsf_weight, ajsf_weight_1d,
                        expansion_from_json, hamming_weight, is_wnaf,
                        validate_ajsf, value, wnaf)
from .automata import (Automaton, Transducer, ajsf_transducer,
                       ajsf_transducer_1d, comparison_automaton, export_dot,
                       reset_check, run, transducer_from_json,
                       transducer_to_json)
from .oracle import MemoTable, enumerate_ajsf_candidates, min_weight_bruteforce
from .spectral import (CharPoly, SpectralResult, SymbolicMatrix, adjacency,
                       aggregate, char_poly, dominant_constants,
                       second_eigenvalue, spectral_constants,
                       transition_matrices)
from .stats import (StatReport, empirical_stats, exact_moments,
                    fluctuation_table, moments_upto, normality_check, psi_at,
                    weight_histogram)
from .wnaf_roots import RootReport, delta_of, find_roots

__version__ = "0.1.0"

__all__ = [
    "DigitSet", "classify", "digit_set", "wnaf_digit_set",
    "BudgetExceeded", "NonConvergence",
    "JointExpansion", "ajsf", "ajsf_weight", "ajsf_weight_1d",
    "expansion_from_json", "hamming_weight", "is_wnaf", "validate_ajsf",
    "value", "wnaf",
    "Automaton", "Transducer", "ajsf_transducer", "ajsf_transducer_1d",
    "comparison_automaton", "export_dot", "reset_check", "run",
    "transducer_from_json", "transducer_to_json",
    "MemoTable", "enumerate_ajsf_candidates", "min_weight_bruteforce",
    "CharPoly", "SpectralResult", "SymbolicMatrix", "adjacency", "aggregate",
    "char_poly", "dominant_constants", "second_eigenvalue",
    "spectral_constants", "transition_matrices",
    "StatReport", "empirical_stats", "exact_moments", "fluctuation_table",
    "moments_upto", "normality_check", "psi_at", "weight_histogram",
    "RootReport", "delta_of", "find_roots",
    "__version__",
]
