"""The condensed-ranker congruences and their quotient monoids.

``u ▷_{m,n} v`` (side ``right``) holds when u and v agree on condensed
rankers of the underlined class R^X_{m,n}; ``◁_{m,n}`` (side ``left``) is
the Y-side dual. Both are decided here by the recursion on leftmost /
rightmost letter factorizations, with Simon's congruence at one block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .monoid import FiniteMonoid, monoid_from_table

RIGHT, LEFT = "right", "left"
DEFAULT_LENGTH_CAP = 12


class QuotientNotStable(RuntimeError):
    """Breadth-first closure did not stabilise within the length cap (inconclusive)."""


@dataclass(frozen=True)
class CongruenceQuery:
    m: int
    n: int
    side: str = RIGHT

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if self.side not in (RIGHT, LEFT):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")


def is_subword(w: str, u: str) -> bool:
    it = iter(u)
    return all(c in it for c in w)


def subword_equivalent(u: str, v: str, n: int) -> bool:
    """Same scattered subwords of length at most n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if u == v:
        return True
    letters = sorted(set(u) | set(v))
    for k in range(1, n + 1):
        for w in itertools.product(letters, repeat=k):
            w = "".join(w)
            if is_subword(w, u) != is_subword(w, v):
                return False
    return True


def _leftmost_split(u: str, a: str) -> tuple[str, str]:
    k = u.index(a)
    return u[:k], u[k + 1:]


def _rightmost_split(u: str, a: str) -> tuple[str, str]:
    k = u.rindex(a)
    return u[:k], u[k + 1:]


@lru_cache(maxsize=1 << 20)
def _cong(u: str, v: str, m: int, n: int, side: str) -> bool:
    # Generalised to all m, n >= 0: agreement on condensed rankers of the
    # underlined class, which is empty for m == 0 or n == 0 and consists of
    # all rankers of depth < n when n < m.
    if u == v or m == 0 or n == 0:
        return True
    if n < m:
        return all(
            _cong(u, v, k, n - 1, RIGHT) and _cong(u, v, k, n - 1, LEFT) for k in range(1, n)
        )
    if m == 1:
        return _simon(u, v, n)
    if set(u) != set(v):
        return False
    other = LEFT if side == RIGHT else RIGHT
    if not _cong(u, v, m - 1, n - 1, other):
        return False
    split = _leftmost_split if side == RIGHT else _rightmost_split
    for a in sorted(set(u)):
        u_minus, u_plus = split(u, a)
        v_minus, v_plus = split(v, a)
        if side == RIGHT:
            ok = _cong(u_minus, v_minus, m - 1, n - 1, LEFT) and _cong(u_plus, v_plus, m, n - 1, RIGHT)
        else:
            ok = _cong(u_plus, v_plus, m - 1, n - 1, RIGHT) and _cong(u_minus, v_minus, m, n - 1, LEFT)
        if not ok:
            return False
    return True


@lru_cache(maxsize=1 << 16)
def _subwords(u: str, n: int) -> frozenset[str]:
    out = {""}
    for c in u:
        out |= {w + c for w in out if len(w) < n}
    return frozenset(out)


def _simon(u: str, v: str, n: int) -> bool:
    return _subwords(u, n) == _subwords(v, n)


def cong_equivalent(u: str, v: str, q: CongruenceQuery) -> bool:
    if u > v:
        u, v = v, u
    return _cong(u, v, q.m, q.n, q.side)


@dataclass(frozen=True)
class QuotientMonoid:
    monoid: FiniteMonoid
    representatives: tuple[str, ...]  # shortlex-least word of each element
    query: CongruenceQuery

    def project(self, word: str) -> int:
        for idx, rep in enumerate(self.representatives):
            if cong_equivalent(word, rep, self.query):
                return idx
        raise QuotientNotStable(f"{word!r} matches no known class")


def quotient_monoid(alphabet, q: CongruenceQuery, length_cap: int = DEFAULT_LENGTH_CAP) -> QuotientMonoid:
    """A*/▷_{m,n} (or ◁_{m,n}) by breadth-first closure over shortlex words."""
    letters = tuple(sorted(set(alphabet)))
    reps = [""]
    frontier = [""]
    length = 0

    def lookup(w):
        for idx, rep in enumerate(reps):
            if cong_equivalent(w, rep, q):
                return idx
        return None

    while frontier:
        if length >= length_cap:
            raise QuotientNotStable(
                f"classes of {q} over {''.join(letters)!r} still growing at word length {length_cap}"
            )
        length += 1
        fresh = []
        for w in frontier:
            for a in letters:
                if lookup(w + a) is None:
                    reps.append(w + a)
                    fresh.append(w + a)
        frontier = fresh

    size = len(reps)
    table = np.empty((size, size), dtype=np.int64)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            k = lookup(x + y)
            if k is None:  # impossible for a genuine congruence
                raise QuotientNotStable(f"product {x + y!r} fell outside the computed classes")
            table[i, j] = k
    gens = tuple((a, lookup(a)) for a in letters)
    monoid = monoid_from_table(table, 0, generators=gens, labels=tuple(reps))
    return QuotientMonoid(monoid, tuple(reps), q)
