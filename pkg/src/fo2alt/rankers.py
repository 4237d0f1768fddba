"""Rankers: plain and condensed evaluation, class enumeration, agreement.

Words are plain ``str`` objects, one character per letter. Positions are
1-based; 0 and ``len(u) + 1`` are the virtual boundary positions.

A ranker is a non-empty sequence of steps ``Xa`` (next ``a`` to the right)
and ``Ya`` (next ``a`` to the left)::

    >>> r = parse_ranker("Xa.Yb.Xc")
    >>> eval_ranker("bca", r).condensed, eval_ranker("bac", r).condensed
    (True, False)
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels

X, Y = "X", "Y"

DEFAULT_MAX_DEPTH = 8
DEFAULT_MAX_ALPHABET = 4

SHAPES = ("R_mn", "RX_mn", "RY_mn", "uRX_mn", "uRY_mn", "uR_mn", "uRX_m", "uRY_m", "uR_m")


class RankerError(ValueError):
    pass


class EnumerationCapExceeded(RankerError):
    pass


def check_word(u: str, alphabet: Iterable[str]) -> str:
    allowed = set(alphabet)
    bad = sorted(set(u) - allowed)
    if bad:
        raise RankerError(f"letters {bad} of {u!r} are not in the alphabet {sorted(allowed)}")
    return u


def alph(u: str) -> frozenset[str]:
    return frozenset(u)


@dataclass(frozen=True, order=True)
class Ranker:
    steps: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.steps:
            raise RankerError("a ranker is a non-empty sequence of steps")
        for d, a in self.steps:
            if d not in (X, Y) or len(a) != 1:
                raise RankerError(f"bad ranker step {d}{a}")

    @property
    def depth(self) -> int:
        return len(self.steps)

    @property
    def blocks(self) -> int:
        return 1 + sum(1 for s, t in zip(self.steps, self.steps[1:]) if s[0] != t[0])

    @property
    def first_direction(self) -> str:
        return self.steps[0][0]

    @property
    def last_direction(self) -> str:
        return self.steps[-1][0]

    @property
    def letters(self) -> frozenset[str]:
        return frozenset(a for _, a in self.steps)

    def mirror(self) -> Ranker:
        """Reverse the word and swap X and Y: ``r(u) = |u| + 1 - mirror(r)(reversed u)``."""
        return Ranker(tuple((Y if d == X else X, a) for d, a in self.steps))

    def __str__(self) -> str:
        return ".".join(d + a for d, a in self.steps)


_TOKEN = re.compile(r"^([XY])(.)$")


def parse_ranker(text: str, alphabet: Iterable[str] | None = None) -> Ranker:
    text = text.strip()
    if not text:
        raise RankerError("empty ranker")
    tokens = re.split(r"\s*\.\s*|\s+", text)
    steps = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not tok:
            raise RankerError(f"empty step in {text!r}")
        if m is None:
            raise RankerError(f"bad ranker token {tok!r}; expected X<letter> or Y<letter>")
        steps.append((m.group(1), m.group(2)))
    r = Ranker(tuple(steps))
    if alphabet is not None:
        missing = sorted(r.letters - set(alphabet))
        if missing:
            raise RankerError(f"letters {missing} are not in the alphabet")
    return r


@dataclass(frozen=True)
class EvalOutcome:
    defined: bool
    position: int | None = None
    condensed: bool = False
    chain: tuple[tuple[int, int], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "defined": self.defined,
            "position": self.position,
            "condensed": self.condensed,
            "chain": [list(iv) for iv in self.chain],
        }


def _next_right(u: str, a: str, q: int) -> int | None:
    # least a-position > q; u is 0-indexed, positions 1-based
    k = u.find(a, q)
    return None if k < 0 else k + 1


def _next_left(u: str, a: str, q: int) -> int | None:
    # greatest a-position < q
    if q <= 1:
        return None
    k = u.rfind(a, 0, q - 1)
    return None if k < 0 else k + 1


def _step(u: str, d: str, a: str, q: int) -> int | None:
    return _next_right(u, a, q) if d == X else _next_left(u, a, q)


def ranker_position(u: str, r: Ranker) -> int | None:
    """Plain semantics only; ``None`` when undefined."""
    q = 0 if r.first_direction == X else len(u) + 1
    for d, a in r.steps:
        q = _step(u, d, a, q)
        if q is None:
            return None
    return q


def eval_ranker(u: str, r: Ranker) -> EvalOutcome:
    position = ranker_position(u, r)
    if position is None:
        return EvalOutcome(False)
    i, j = 0, len(u) + 1
    chain = [(i, j)]
    steps = r.steps
    for ell in range(len(steps) - 1):
        (d, a), (d_next, _) = steps[ell], steps[ell + 1]
        # the step is taken from the interval end facing its direction
        p = _step(u, d, a, i if d == X else j)
        if p is None or not i < p < j:
            return EvalOutcome(True, position, False, tuple(chain))
        if d == d_next:
            i, j = (p, j) if d == X else (i, p)
        else:
            i, j = (i, p) if d == X else (p, j)
        chain.append((i, j))
    return EvalOutcome(True, position, i < position < j, tuple(chain))


def ranker_value(u: str, r: Ranker, mode: str) -> int:
    """Position of r on u if defined (mode 'defined') or condensed (mode 'condensed'), else 0."""
    if mode == "defined":
        return ranker_position(u, r) or 0
    if mode == "condensed":
        out = eval_ranker(u, r)
        return out.position if out.condensed else 0
    raise RankerError(f"unknown mode {mode!r}")


# --- ranker classes --------------------------------------------------------


@dataclass(frozen=True)
class RankerClassSpec:
    shape: str
    m: int
    n: int | None
    alphabet: tuple[str, ...]
    n_max: int | None = None

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise RankerError(f"unknown ranker class shape {self.shape!r}; expected one of {SHAPES}")
        if self.m < 1:
            raise RankerError("block bound m must be >= 1")
        if self.shape.endswith("_mn"):
            if self.n is None or self.n < self.m:
                raise RankerError(f"depth bound n must satisfy n >= m (got m={self.m}, n={self.n})")
        elif self.n_max is None:
            raise RankerError(f"shape {self.shape} has unbounded depth; supply n_max")

    @property
    def depth_bound(self) -> int:
        return self.n if self.shape.endswith("_mn") else self.n_max


@lru_cache(maxsize=None)
def _all_of_depth(alphabet: tuple[str, ...], depth: int) -> tuple[Ranker, ...]:
    letters = [(d, a) for d in (X, Y) for a in alphabet]
    return tuple(Ranker(steps) for steps in itertools.product(letters, repeat=depth))


def exact_class(alphabet: Sequence[str], m: int, n: int, start: str | None = None) -> tuple[Ranker, ...]:
    """R_{m,n} (start None), R^X_{m,n} or R^Y_{m,n}: exactly m blocks and depth n."""
    if m < 1 or n < m:
        return ()
    return tuple(
        r for r in _all_of_depth(tuple(alphabet), n)
        if r.blocks == m and (start is None or r.first_direction == start)
    )


@lru_cache(maxsize=None)
def underline_class(alphabet: tuple[str, ...], m: int, n: int, start: str | None) -> tuple[Ranker, ...]:
    """Underlined class: R^Z_{m,n'} for n' <= n, plus every R_{m',n'} with m' < m, n' < n.

    ``start`` is X, Y, or None for the union of both sides. Arbitrary m, n >= 0
    are accepted; out-of-range parameters just give smaller (possibly empty) sets.
    """
    out: set[Ranker] = set()
    starts = (X, Y) if start is None else (start,)
    for s in starts:
        for d in range(1, n + 1):
            out.update(exact_class(alphabet, m, d, s))
    for mm in range(1, m):
        for d in range(1, n):
            out.update(exact_class(alphabet, mm, d))
    return tuple(sorted(out, key=_ranker_order))


def _ranker_order(r: Ranker):
    return (r.depth, r.steps)


def enumerate_rankers(
    spec: RankerClassSpec,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_alphabet: int = DEFAULT_MAX_ALPHABET,
) -> tuple[Ranker, ...]:
    """All rankers of the class, ordered by depth then steps."""
    if spec.depth_bound > max_depth or len(spec.alphabet) > max_alphabet:
        raise EnumerationCapExceeded(
            f"class {spec.shape} needs depth {spec.depth_bound} over {len(spec.alphabet)} letters; "
            f"cap is depth {max_depth}, {max_alphabet} letters"
        )
    alphabet = tuple(sorted(set(spec.alphabet)))
    m, shape = spec.m, spec.shape
    start = {"X": X, "Y": Y}.get(shape[-4] if shape.endswith("_mn") else shape[-3])
    if shape == "R_mn":
        found = exact_class(alphabet, m, spec.n)
    elif shape in ("RX_mn", "RY_mn"):
        found = exact_class(alphabet, m, spec.n, start)
    elif shape.endswith("_mn"):
        found = underline_class(alphabet, m, spec.n, start)
    else:
        acc: set[Ranker] = set()
        for n in range(m, spec.n_max + 1):
            acc.update(underline_class(alphabet, m, n, start))
        found = acc
    return tuple(sorted(found, key=_ranker_order))


def ranker_signature(u: str, rankers: Sequence[Ranker], mode: str = "defined") -> np.ndarray:
    """Vector of positions (0 = not defined / not condensed), one entry per ranker."""
    return np.fromiter((ranker_value(u, r, mode) for r in rankers), dtype=np.int64, count=len(rankers))


def agree_on_rankers(u: str, v: str, spec: RankerClassSpec, mode: str = "defined", **caps) -> bool:
    rankers = enumerate_rankers(spec, **caps)
    if u == v:
        return True
    su = ranker_signature(u, rankers, mode) > 0
    sv = ranker_signature(v, rankers, mode) > 0
    return bool(np.array_equal(su, sv))


# --- FO2 equivalence through rankers and order types --------------------------------------


@lru_cache(maxsize=None)
def bounded_class(alphabet: tuple[str, ...], m: int, n: int) -> tuple[Ranker, ...]:
    """All rankers with at most m blocks and depth at most n."""
    out = [r for d in range(1, n + 1) for r in _all_of_depth(alphabet, d) if r.blocks <= m]
    return tuple(sorted(out, key=_ranker_order))


@dataclass(frozen=True)
class _WIClasses:
    top: tuple[Ranker, ...]  # <= m blocks, depth <= n
    shallow: tuple[Ranker, ...]  # <= m-1 blocks, depth <= n-1
    deep: tuple[Ranker, ...]  # <= m blocks, depth <= n-1
    turn_mask: np.ndarray  # top x deep: last directions differ


@lru_cache(maxsize=None)
def _wi_classes(alphabet: tuple[str, ...], m: int, n: int) -> _WIClasses:
    top = bounded_class(alphabet, m, n)
    deep = bounded_class(alphabet, m, n - 1)
    turn = np.array(
        [[r.last_direction != s.last_direction for s in deep] for r in top], dtype=np.bool_
    ).reshape(len(top), len(deep))
    return _WIClasses(top, bounded_class(alphabet, m - 1, n - 1), deep, turn)


@lru_cache(maxsize=1 << 16)
def _wi_profile(u: str, alphabet: tuple[str, ...], m: int, n: int, mode: str):
    c = _wi_classes(alphabet, m, n)
    return (
        ranker_signature(u, c.top, mode),
        ranker_signature(u, c.shallow, mode),
        ranker_signature(u, c.deep, mode),
    )


def wi_equivalent(
    u: str,
    v: str,
    m: int,
    n: int,
    mode: str = "plain",
    alphabet: Iterable[str] | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> bool:
    """Whether u and v satisfy the same two-variable sentences with at most m blocks and depth n.

    Decided through ranker agreement plus the two order-type conditions,
    using either defined rankers (``mode='plain'``) or condensed rankers
    (``mode='condensed'``). Every ranker class involved is cumulative: at
    most the stated number of blocks, at most the stated depth. Rankers over letters outside both words are
    undefined on both, so the default alphabet ``alph(u) | alph(v)`` loses
    nothing.
    """
    if not 1 <= m <= n:
        raise RankerError(f"need 1 <= m <= n, got m={m}, n={n}")
    if n > max_depth:
        raise EnumerationCapExceeded(f"depth {n} exceeds cap {max_depth}")
    if mode not in ("plain", "condensed"):
        raise RankerError(f"unknown mode {mode!r}")
    if u == v:
        return True
    letters = set(u) | set(v)
    if alphabet is not None:
        check_word(u + v, alphabet)
        letters |= set(alphabet)
    alphabet = tuple(sorted(letters))
    value_mode = "defined" if mode == "plain" else "condensed"
    c = _wi_classes(alphabet, m, n)
    top_u, shallow_u, deep_u = _wi_profile(u, alphabet, m, n, value_mode)
    top_v, shallow_v, deep_v = _wi_profile(v, alphabet, m, n, value_mode)
    # same rankers defined (resp. condensed)
    if not np.array_equal(top_u > 0, top_v > 0):
        return False
    # order types against rankers with one block fewer and one step less
    all_pairs = np.ones((len(c.top), len(c.shallow)), dtype=np.bool_)
    if not kernels.orders_agree(top_u, shallow_u, top_v, shallow_v, all_pairs):
        return False
    # order types against one step less, when the last directions differ
    return bool(kernels.orders_agree(top_u, deep_u, top_v, deep_v, c.turn_mask))
