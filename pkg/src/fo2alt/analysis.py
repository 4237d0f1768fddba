"""End-to-end language analysis: DFA -> syntactic monoid -> varieties -> alternation level."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import __version__
from .automata import Dfa, language_alphabet, minimize
from .hierarchy import InconclusiveLevel, LevelReport, join_diagnostic, min_joint_level
from .monoid import DEFAULT_MAX_VARS, green_summary, transition_monoid, variety_membership


@dataclass
class AnalysisReport:
    input: dict
    minimal_dfa_size: int
    monoid_size: int
    language_alphabet: list[str]
    green: dict
    varieties: dict
    level: LevelReport
    join_diagnostic: bool
    version: str = field(default=__version__)

    @property
    def inconclusive(self) -> bool:
        return self.level.inconclusive

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "input": self.input,
            "minimal_dfa_size": self.minimal_dfa_size,
            "monoid_size": self.monoid_size,
            "language_alphabet": self.language_alphabet,
            "green": self.green,
            "varieties": self.varieties,
            "level": self.level.to_dict(),
            "join_diagnostic": self.join_diagnostic,
        }


def analyze_dfa(dfa: Dfa, input_echo: dict | None = None, max_vars: int = DEFAULT_MAX_VARS) -> AnalysisReport:
    dfa = minimize(dfa)
    M = transition_monoid(dfa)
    g = green_summary(M)
    flags = variety_membership(M)
    try:
        level = min_joint_level(M, max_vars=max_vars)
    except InconclusiveLevel as exc:
        level = exc.report
    return AnalysisReport(
        input=dict(input_echo or {}),
        minimal_dfa_size=dfa.n_states,
        monoid_size=M.size,
        language_alphabet=sorted(language_alphabet(dfa)),
        green={
            "r_trivial": g.r_trivial,
            "l_trivial": g.l_trivial,
            "j_trivial": g.j_trivial,
            "r_classes": len(g.r_classes),
            "l_classes": len(g.l_classes),
            "j_classes": len(g.j_classes),
        },
        varieties=flags.as_dict(),
        level=level,
        join_diagnostic=join_diagnostic(M),
    )
