"""Omega-terms: variables, products and omega powers, with a small text syntax.

Syntax: variables ``x1`` .. ``x99``, products by juxtaposition, grouping
with parentheses, and ``^w`` for the omega power, e.g.
``(x1^w x2^w x1^w)^w``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .kernels import OP_MUL, OP_OMEGA, OP_VAR


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variables are indexed from 1")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Prod:
    factors: tuple["Term", ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product")

    def __str__(self):
        return " ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Omega:
    base: "Term"

    def __str__(self):
        if isinstance(self.base, Var):
            return f"{self.base}^w"
        return f"({self.base})^w"


Term = Union[Var, Prod, Omega]


def product(*factors: Term) -> Term:
    """Flattened product; a single factor is returned unchanged."""
    flat: list[Term] = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Prod) else (f,))
    return flat[0] if len(flat) == 1 else Prod(tuple(flat))


def omega(t: Term) -> Omega:
    return t if isinstance(t, Omega) else Omega(t)


def variables(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, Omega):
        return variables(t.base)
    return frozenset().union(*(variables(f) for f in t.factors))


def omega_guarded(t: Term) -> bool:
    """True when every variable occurrence sits directly under an omega power."""
    if isinstance(t, Var):
        return False
    if isinstance(t, Omega):
        return isinstance(t.base, Var) or omega_guarded(t.base)
    return all(omega_guarded(f) for f in t.factors)


def compile_term(t: Term, slots: dict[int, int]) -> np.ndarray:
    """Postfix program of (op, arg) rows for the kernel stack machine."""
    prog: list[tuple[int, int]] = []

    def emit(node):
        if isinstance(node, Var):
            prog.append((OP_VAR, slots[node.index]))
        elif isinstance(node, Omega):
            emit(node.base)
            prog.append((OP_OMEGA, 0))
        else:
            emit(node.factors[0])
            for f in node.factors[1:]:
                emit(f)
                prog.append((OP_MUL, 0))

    emit(t)
    return np.array(prog, dtype=np.int64).reshape(-1, 2)


_LEX = re.compile(r"\s*(?:(x)(\d+)|(\()|(\))|(\^w))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            yield ("var", int(m.group(2)))
        elif m.group(3):
            yield ("(", None)
        elif m.group(4):
            yield (")", None)
        else:
            yield ("^w", None)


def parse_term(text: str) -> Term:
    toks = list(_tokens(text))
    pos = 0

    def parse_product():
        nonlocal pos
        factors = []
        while pos < len(toks) and toks[pos][0] in ("var", "("):
            kind, val = toks[pos]
            pos += 1
            if kind == "var":
                if val < 1:
                    raise TermSyntaxError("variables are indexed from 1")
                f = Var(val)
            else:
                f = parse_product()
                if pos >= len(toks) or toks[pos][0] != ")":
                    raise TermSyntaxError("unbalanced parenthesis")
                pos += 1
            while pos < len(toks) and toks[pos][0] == "^w":
                pos += 1
                f = omega(f)
            factors.append(f)
        if not factors:
            raise TermSyntaxError("expected a variable or '('")
        return product(*factors)

    term = parse_product()
    if pos != len(toks):
        raise TermSyntaxError(f"trailing input after term: {toks[pos][0]}")
    return term


def term_size(t: Term) -> int:
    """Number of kernel instructions needed to evaluate t."""
    return len(compile_term(t, {i: 0 for i in variables(t)}))
