"""Levels of the R_m / L_m hierarchies inside DA and the FO² alternation bounds.

For m >= 2 membership in R_m is DA plus the pseudoidentity phi(G_m) = phi(I_m),
where G_m, I_m are words over variables built by mirrored recursion and phi
substitutes each variable by an omega-term. L_m uses the mirrored words.
R_1 = L_1 = J (J-trivial monoids).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .monoid import (
    DEFAULT_MAX_VARS,
    FiniteMonoid,
    MonoidError,
    green_summary,
    in_DA,
    satisfies_identity,
)
from .terms import Omega, Term, Var, omega, omega_guarded, product

R_SIDE, L_SIDE = "R", "L"


class InconclusiveLevel(RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@lru_cache(maxsize=None)
def build_sequences(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(G_m, I_m) as tuples of variable indices."""
    if m < 2:
        raise ValueError("sequences start at m = 2")
    if m == 2:
        return (2, 1), (2, 1, 2)
    g_prev, i_prev = build_sequences(m - 1)
    g = (m,) + g_prev[::-1]
    return g, g + (m,) + i_prev[::-1]


@lru_cache(maxsize=None)
def phi_letter(n: int) -> Term:
    if n < 1:
        raise ValueError("variables are indexed from 1")
    if n == 1:
        return Omega(product(Omega(Var(1)), Omega(Var(2)), Omega(Var(1))))
    if n == 2:
        return Omega(Var(2))
    g = build_sequences(n - 1)[0]
    xn = Omega(Var(n))
    return Omega(product(xn, omega(phi_expand(g[::-1] + g)), xn))


def phi_expand(word) -> Term:
    """Letterwise substitution of phi over a word of variable indices."""
    word = tuple(word)
    if not word:
        raise ValueError("empty variable word")
    return product(*(phi_letter(i) for i in word))


def level_identity(m: int, side: str = R_SIDE) -> tuple[Term, Term]:
    g, i = build_sequences(m)
    if side == L_SIDE:
        g, i = g[::-1], i[::-1]
    elif side != R_SIDE:
        raise ValueError(f"side must be 'R' or 'L', got {side!r}")
    return phi_expand(g), phi_expand(i)


def level_membership(M: FiniteMonoid, m: int, side: str = R_SIDE, max_vars: int = DEFAULT_MAX_VARS) -> bool:
    if m < 1:
        raise ValueError("levels start at 1")
    if side not in (R_SIDE, L_SIDE):
        raise ValueError(f"side must be 'R' or 'L', got {side!r}")
    if m == 1:
        return green_summary(M).j_trivial
    if m > max_vars:
        raise MonoidError(f"level {m} needs {m} variables, bound is {max_vars}")
    if not in_DA(M):
        return False
    lhs, rhs = level_identity(m, side)
    # every variable occurs only as x^w, so idempotent values suffice
    assert omega_guarded(lhs) and omega_guarded(rhs)
    return satisfies_identity(M, lhs, rhs, max_vars=max_vars, domain=M.idempotents()).holds


@dataclass(frozen=True)
class LevelReport:
    in_DA: bool
    r_level: int | None = None
    l_level: int | None = None
    joint_level: int | None = None
    scanned: tuple[tuple[int, bool, bool], ...] = ()  # (m, in R_m, in L_m)
    bound: int | None = None
    inconclusive: bool = False

    @property
    def fo2_definable(self) -> bool:
        return self.in_DA

    @property
    def alternation_interval(self) -> tuple[int, int] | None:
        """(lo, hi): FO²_hi-definable and not FO²_{lo-1}-definable."""
        m0 = self.joint_level
        if m0 is None:
            return None
        return (1, 1) if m0 == 1 else (m0 - 1, m0)

    def to_dict(self) -> dict:
        return {
            "in_DA": self.in_DA,
            "fo2_definable": self.fo2_definable,
            "r_level": self.r_level,
            "l_level": self.l_level,
            "joint_level": self.joint_level,
            "alternation_interval": list(self.alternation_interval) if self.alternation_interval else None,
            "scanned": [{"m": m, "R": r, "L": l} for m, r, l in self.scanned],
            "generator_bound": self.bound,
            "inconclusive": self.inconclusive,
        }


def min_joint_level(M: FiniteMonoid, max_vars: int = DEFAULT_MAX_VARS) -> LevelReport:
    """Least m with M in R_m and L_m, scanning m = 1 .. (#generators + 1).

    Raises :class:`InconclusiveLevel` (carrying the partial report) when the
    variable bound stops the scan first.
    """
    if not in_DA(M):
        return LevelReport(in_DA=False)
    bound = max(1, len(M.generating_elements())) + 1
    scanned = []
    r_level = l_level = None
    for m in range(1, bound + 1):
        try:
            in_r = level_membership(M, m, R_SIDE, max_vars)
            in_l = level_membership(M, m, L_SIDE, max_vars)
        except MonoidError as exc:
            partial = LevelReport(True, r_level, l_level, None, tuple(scanned), bound, inconclusive=True)
            raise InconclusiveLevel(f"scan stopped at m={m}: {exc}", partial) from exc
        scanned.append((m, in_r, in_l))
        if in_r and r_level is None:
            r_level = m
        if in_l and l_level is None:
            l_level = m
        if in_r and in_l:
            return LevelReport(True, r_level, l_level, m, tuple(scanned), bound)
    raise AssertionError(
        f"monoid in DA outside R_{bound} ∩ L_{bound}; the generator bound guarantees membership"
    )


JOIN_IDENTITY = (
    product(omega(product(Var(2), Var(3))), omega(product(Var(1), Var(2)))),
    product(omega(product(Var(2), Var(3))), Var(2), omega(product(Var(1), Var(2)))),
)


def join_diagnostic(M: FiniteMonoid) -> bool:
    """(x2 x3)^w (x1 x2)^w = (x2 x3)^w x2 (x1 x2)^w; advisory, never used for levels."""
    return satisfies_identity(M, *JOIN_IDENTITY, max_vars=3).holds
