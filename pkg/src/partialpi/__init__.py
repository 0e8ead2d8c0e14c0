"""Permutation-group engine for the partial Pi-property of subgroups."""

from .corpus import CorpusEntry, builtin_corpus, load_corpus, loads_corpus
from .errors import CapExceeded, GroupError, ParseError
from .harness import CheckReport, run_check, search_counterexamples
from .perm import Group, Permutation, compose, parse_permutation
from .pi import PiVerdict, factor_condition, satisfies_partial_pi, satisfies_partial_pi_in
from .series import ChiefSeries, ChiefStep, QuotientMap, chief_series_iter, quotient
from .structure import (
    hypercenter_U,
    hypercenter_Up,
    is_p_nilpotent,
    is_supersoluble,
    structure_profile,
)
from .subgroups import PrimeSet, Subgroup, all_normal_subgroups, normalizer, subgroup, sylow_subgroup

__all__ = [
    "CapExceeded", "CheckReport", "ChiefSeries", "ChiefStep", "CorpusEntry", "Group", "GroupError",
    "ParseError", "Permutation", "PiVerdict", "PrimeSet", "QuotientMap", "Subgroup",
    "all_normal_subgroups", "builtin_corpus", "chief_series_iter", "compose", "factor_condition",
    "hypercenter_U", "hypercenter_Up", "is_p_nilpotent", "is_supersoluble", "load_corpus",
    "loads_corpus", "normalizer", "parse_permutation", "quotient", "run_check",
    "satisfies_partial_pi", "satisfies_partial_pi_in", "search_counterexamples",
    "structure_profile", "subgroup", "sylow_subgroup",
]
