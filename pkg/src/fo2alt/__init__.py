"""Decide the FO²[<] quantifier-alternation level of regular languages within one unit."""

__version__ = "0.1.0"

from .rankers import (  # noqa: E402
    EvalOutcome,
    Ranker,
    RankerClassSpec,
    agree_on_rankers,
    enumerate_rankers,
    eval_ranker,
    parse_ranker,
    wi_equivalent,
)
from .congruences import CongruenceQuery, cong_equivalent, quotient_monoid, subword_equivalent  # noqa: E402
from .monoid import (  # noqa: E402
    FiniteMonoid,
    eval_term,
    green_summary,
    monoid_from_table,
    omega_power,
    satisfies_identity,
    transition_monoid,
    variety_membership,
)
from .terms import parse_term  # noqa: E402
from .hierarchy import build_sequences, join_diagnostic, level_membership, min_joint_level, phi_expand  # noqa: E402
from .automata import Dfa, Monomial, compile_language, language_alphabet, monomial_analysis, parse_monomial  # noqa: E402

__all__ = [
    "CongruenceQuery",
    "Dfa",
    "EvalOutcome",
    "FiniteMonoid",
    "Monomial",
    "Ranker",
    "RankerClassSpec",
    "agree_on_rankers",
    "build_sequences",
    "compile_language",
    "cong_equivalent",
    "enumerate_rankers",
    "eval_ranker",
    "eval_term",
    "green_summary",
    "join_diagnostic",
    "language_alphabet",
    "level_membership",
    "min_joint_level",
    "monoid_from_table",
    "monomial_analysis",
    "omega_power",
    "parse_monomial",
    "parse_ranker",
    "parse_term",
    "phi_expand",
    "quotient_monoid",
    "satisfies_identity",
    "subword_equivalent",
    "transition_monoid",
    "variety_membership",
    "wi_equivalent",
]
