"""Finite monoids given by multiplication tables.

Elements are the integers ``0 .. n-1``. Products, omega powers, Green's
relations and identity checks run on the table through :mod:`fo2alt.kernels`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .terms import Omega, Prod, Term, Var, compile_term, parse_term, variables

DEFAULT_MAX_VARS = 4


class MonoidError(ValueError):
    pass


@dataclass(eq=False, frozen=True)
class FiniteMonoid:
    table: np.ndarray
    identity: int
    generators: tuple[tuple[str, int], ...] = ()
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.size

    def mul(self, *elements: int) -> int:
        acc = self.identity
        for e in elements:
            acc = int(self.table[acc, e])
        return acc

    def project(self, word: Iterable[str]) -> int:
        """Image of a word under the generating morphism (letters -> generators)."""
        gens = dict(self.generators)
        acc = self.identity
        for a in word:
            if a not in gens:
                raise MonoidError(f"no generator labelled {a!r}")
            acc = int(self.table[acc, gens[a]])
        return acc

    def reverse(self) -> FiniteMonoid:
        """The opposite monoid: s * t := t s."""
        return FiniteMonoid(np.ascontiguousarray(self.table.T), self.identity, self.generators, self.labels)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    @property
    def omega(self) -> np.ndarray:
        # not cached: the dataclass is frozen and tables are small
        return kernels.omega_table(self.table)

    def idempotents(self) -> np.ndarray:
        d = np.diagonal(self.table)
        return np.flatnonzero(d == np.arange(self.size))

    def generating_elements(self) -> tuple[int, ...]:
        """Distinct non-identity generator images, or a greedy generating set when none are recorded."""
        if self.generators:
            return tuple(sorted({g for _, g in self.generators} - {self.identity}))
        chosen: list[int] = []
        reached = {self.identity}
        for s in range(self.size):
            if s in reached:
                continue
            chosen.append(s)
            reached = set(self._closure(chosen))
        return tuple(chosen)

    def _closure(self, gens: Sequence[int]) -> list[int]:
        seen = {self.identity}
        order = [self.identity]
        for x in order:
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order


def monoid_from_table(table, identity: int, generators=(), labels=None) -> FiniteMonoid:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MonoidError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise MonoidError("table entries must be element indices 0..n-1")
    if not 0 <= identity < n:
        raise MonoidError(f"identity {identity} out of range")
    idx = np.arange(n)
    if not (np.array_equal(t[identity], idx) and np.array_equal(t[:, identity], idx)):
        raise MonoidError(f"element {identity} is not a two-sided identity")
    t = np.ascontiguousarray(t)
    if not kernels.is_associative(t):
        raise MonoidError("table is not associative")
    gens = tuple((str(lbl), int(g)) for lbl, g in generators)
    for lbl, g in gens:
        if not 0 <= g < n:
            raise MonoidError(f"generator {lbl} -> {g} out of range")
    return FiniteMonoid(t, int(identity), gens, tuple(labels) if labels is not None else None)


def transition_monoid(dfa) -> FiniteMonoid:
    """Closure of the letter actions of a complete DFA, identity first, then shortlex.

    Elements act on the right, so ``table[x, y]`` is "first x, then y" and
    word concatenation maps to the product. On a minimal DFA this is the
    syntactic monoid.
    """
    delta = np.asarray(dfa.delta, dtype=np.int64)
    if delta.size and delta.min() < 0:
        raise MonoidError("transition function is incomplete")
    k = delta.shape[0]
    letters = list(dfa.alphabet)
    identity = tuple(range(k))
    index = {identity: 0}
    funcs = [identity]
    words = [""]
    for x in funcs:  # grows while iterating: breadth-first, hence shortlex
        w = words[index[x]]
        for c, a in enumerate(letters):
            y = tuple(int(delta[q, c]) for q in x)
            if y not in index:
                index[y] = len(funcs)
                funcs.append(y)
                words.append(w + a)
    F = np.array(funcs, dtype=np.int64).reshape(len(funcs), k)
    n = len(funcs)
    # composed[i, j, q] = F[j, F[i, q]]
    composed = F[np.arange(n)[None, :, None], F[:, None, :]]
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = index[tuple(composed[i, j].tolist())]
    gens = tuple((a, index[tuple(int(delta[q, c]) for q in range(k))]) for c, a in enumerate(letters))
    return monoid_from_table(table, 0, generators=gens, labels=tuple(w or "1" for w in words))


def omega_power(M: FiniteMonoid, s: int) -> int:
    p = s
    for _ in range(M.size):
        if M.table[p, p] == p:
            return int(p)
        p = int(M.table[p, s])
    raise AssertionError("no idempotent power found; table is not a finite monoid")


@dataclass(frozen=True)
class GreenSummary:
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]

    @property
    def r_trivial(self) -> bool:
        return all(len(c) == 1 for c in self.r_classes)

    @property
    def l_trivial(self) -> bool:
        return all(len(c) == 1 for c in self.l_classes)

    @property
    def j_trivial(self) -> bool:
        return all(len(c) == 1 for c in self.j_classes)


def _classes(mask: np.ndarray) -> tuple[tuple[int, ...], ...]:
    # s ~ t iff each lies in the other's ideal
    mutual = mask & mask.T
    seen = np.zeros(mask.shape[0], dtype=np.bool_)
    out = []
    for s in range(mask.shape[0]):
        if not seen[s]:
            members = np.flatnonzero(mutual[s])
            seen[members] = True
            out.append(tuple(int(x) for x in members))
    return tuple(out)


def green_summary(M: FiniteMonoid) -> GreenSummary:
    right, left, two = kernels.ideal_masks(M.table)
    return GreenSummary(_classes(right), _classes(left), _classes(two))


def eval_term(M: FiniteMonoid, t: Term, assignment: Mapping[int, int]) -> int:
    if isinstance(t, Var):
        if t.index not in assignment:
            raise MonoidError(f"variable x{t.index} is not assigned")
        return int(assignment[t.index])
    if isinstance(t, Omega):
        return omega_power(M, eval_term(M, t.base, assignment))
    acc = M.identity
    for f in t.factors:
        acc = int(M.table[acc, eval_term(M, f, assignment)])
    return acc


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    counterexample: dict[int, int] | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None

    def __bool__(self):
        return self.holds


def satisfies_identity(
    M: FiniteMonoid,
    lhs: Term | str,
    rhs: Term | str,
    max_vars: int = DEFAULT_MAX_VARS,
    domain: Sequence[int] | None = None,
) -> IdentityCheck:
    """Check lhs = rhs under every assignment of the variables.

    Assignments are scanned row-major with the lowest-indexed variable most
    significant, so the reported counterexample is the lexicographically
    first one. ``domain`` restricts every variable to the given elements
    (sound e.g. for idempotents when each variable only occurs as ``x^w``).
    """
    if isinstance(lhs, str):
        lhs = parse_term(lhs)
    if isinstance(rhs, str):
        rhs = parse_term(rhs)
    names = sorted(variables(lhs) | variables(rhs))
    k = len(names)
    if k > max_vars:
        raise MonoidError(f"identity uses {k} variables, bound is {max_vars}")
    if k > DEFAULT_MAX_VARS:
        warnings.warn(
            f"checking {k} variables: {M.size}^{k} assignments", RuntimeWarning, stacklevel=2
        )
    slots = {v: i for i, v in enumerate(names)}
    dom = np.arange(M.size) if domain is None else np.asarray(sorted(set(domain)), dtype=np.int64)
    dom_vals = np.tile(dom, (max(k, 1), 1)).astype(np.int64)
    dom_sizes = np.full(max(k, 1), len(dom), dtype=np.int64)
    total = int(np.prod(dom_sizes[:k])) if k else 1
    if k == 0:
        # closed terms: evaluate once
        left, right = eval_term(M, lhs, {}), eval_term(M, rhs, {})
        return IdentityCheck(left == right, None if left == right else {}, left, right)
    hit = kernels.first_mismatch(
        M.table, M.omega, compile_term(lhs, slots), compile_term(rhs, slots), dom_vals, dom_sizes, 0, total
    )
    if hit < 0:
        return IdentityCheck(True)
    assignment = {}
    rest = int(hit)
    for name in reversed(names):
        assignment[name] = int(dom[rest % len(dom)])
        rest //= len(dom)
    assignment = dict(sorted(assignment.items()))
    return IdentityCheck(False, assignment, eval_term(M, lhs, assignment), eval_term(M, rhs, assignment))


# frequently used identities
X1, X2 = Var(1), Var(2)
APERIODIC = (Prod((Omega(X1), X1)), Omega(X1))
DA_IDENTITY = (Prod((Omega(Prod((X1, X2))), X1, Omega(Prod((X1, X2))))), Omega(Prod((X1, X2))))


@dataclass(frozen=True)
class VarietyFlags:
    aperiodic: bool
    DA: bool
    J1: bool
    J: bool
    R: bool
    L: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def is_aperiodic(M: FiniteMonoid) -> bool:
    w = M.omega
    return bool(np.array_equal(M.table[w, np.arange(M.size)], w))


def in_DA(M: FiniteMonoid) -> bool:
    return satisfies_identity(M, *DA_IDENTITY).holds


def variety_membership(M: FiniteMonoid) -> VarietyFlags:
    g = green_summary(M)
    t = M.table
    idempotent = bool(np.array_equal(np.diagonal(t), np.arange(M.size)))
    commutative = bool(np.array_equal(t, t.T))
    return VarietyFlags(
        aperiodic=is_aperiodic(M),
        DA=in_DA(M),
        J1=idempotent and commutative,
        J=g.j_trivial,
        R=g.r_trivial,
        L=g.l_trivial,
    )


# --- table file format ------------------------------------------------------


def format_table(M: FiniteMonoid) -> str:
    lines = [f"elements: {M.size}", f"identity: {M.identity}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.table]
    lines += [f"gen: {lbl} {g}" for lbl, g in M.generators]
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> FiniteMonoid:
    n = identity = None
    rows: list[list[int]] = []
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        try:
            if sep and key.strip() == "elements":
                n = int(rest)
            elif sep and key.strip() == "identity":
                identity = int(rest)
            elif sep and key.strip() == "gen":
                lbl, g = rest.split()
                gens.append((lbl, int(g)))
            else:
                rows.append([int(x) for x in line.split()])
        except ValueError as exc:
            raise MonoidError(f"line {lineno}: cannot parse {raw!r}") from exc
    if n is None or identity is None:
        raise MonoidError("table file needs 'elements:' and 'identity:' lines")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MonoidError(f"expected {n} rows of {n} entries")
    return monoid_from_table(rows, identity, generators=gens)


def read_table(path) -> FiniteMonoid:
    with open(path) as fh:
        return parse_table(fh.read())


def write_table(M: FiniteMonoid, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_table(M))

