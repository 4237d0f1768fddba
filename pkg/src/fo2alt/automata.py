"""Language input and monomial products.

Regular expressions use a small subset: letters, classes ``[abc]``
(``[]`` and ``∅`` denote the empty set), concatenation, ``|``, ``*``,
``+`` and parentheses. They are compiled Thompson-style, determinised by
subset construction and minimised by partition refinement.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class AutomatonError(ValueError):
    pass


class RegexSyntaxError(AutomatonError):
    pass


@dataclass(eq=False, frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    delta: np.ndarray  # states x letters -> state
    initial: int
    accepting: frozenset[int]
    state_names: tuple[str, ...] | None = None

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    def letter_index(self, a: str) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise AutomatonError(f"letter {a!r} is not in the alphabet {self.alphabet}") from None

    def run(self, word: str, start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = int(self.delta[q, self.letter_index(a)])
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    def minimize(self) -> Dfa:
        return minimize(self)


def make_dfa(alphabet, transitions, initial, accepting, state_names=None) -> Dfa:
    delta = np.asarray(transitions, dtype=np.int64)
    alphabet = tuple(alphabet)
    if delta.ndim != 2 or delta.shape[1] != len(alphabet) or delta.shape[0] == 0:
        raise AutomatonError("transition table must be states x letters")
    if delta.size and (delta.min() < 0 or delta.max() >= delta.shape[0]):
        raise AutomatonError("incomplete or out-of-range transition function")
    if len(set(alphabet)) != len(alphabet):
        raise AutomatonError("duplicate letters in alphabet")
    return Dfa(alphabet, delta, int(initial), frozenset(int(q) for q in accepting), state_names)


def _reachable(dfa: Dfa) -> list[int]:
    seen = {dfa.initial}
    order = [dfa.initial]
    for q in order:
        for c in range(len(dfa.alphabet)):
            r = int(dfa.delta[q, c])
            if r not in seen:
                seen.add(r)
                order.append(r)
    return order


def minimize(dfa: Dfa) -> Dfa:
    """Minimal complete DFA; states numbered in breadth-first order from the initial state."""
    live = _reachable(dfa)
    k = len(dfa.alphabet)
    block = {q: int(q in dfa.accepting) for q in live}
    while True:
        sig = {q: (block[q],) + tuple(block[int(dfa.delta[q, c])] for c in range(k)) for q in live}
        ids: dict[tuple, int] = {}
        refined = {q: ids.setdefault(sig[q], len(ids)) for q in live}
        if len(ids) == len(set(block.values())):
            break
        block = refined
    # renumber blocks breadth-first
    number = {block[dfa.initial]: 0}
    queue = deque([dfa.initial])
    rep = {0: dfa.initial}
    while queue:
        q = queue.popleft()
        for c in range(k):
            r = int(dfa.delta[q, c])
            if block[r] not in number:
                number[block[r]] = len(number)
                rep[number[block[r]]] = r
                queue.append(r)
    n = len(number)
    delta = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        for c in range(k):
            delta[i, c] = number[block[int(dfa.delta[rep[i], c])]]
    accepting = {i for i in range(n) if rep[i] in dfa.accepting}
    return make_dfa(dfa.alphabet, delta, 0, accepting)


def language_alphabet(dfa: Dfa) -> frozenset[str]:
    """Letters occurring in some accepted word."""
    reach = set(_reachable(dfa))
    co = set(dfa.accepting) & reach
    changed = True
    while changed:
        changed = False
        for q in reach - co:
            if any(int(dfa.delta[q, c]) in co for c in range(len(dfa.alphabet))):
                co.add(q)
                changed = True
    return frozenset(
        a for c, a in enumerate(dfa.alphabet)
        for q in co if int(dfa.delta[q, c]) in co
    )


# --- regex ------------------------------------------------------------------

# AST nodes: ("set", frozenset), ("eps",), ("cat", l, r), ("alt", l, r), ("star", x)


class _RegexParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self):
        node = self.alt()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r} at position {self.pos}")
        return node

    def alt(self):
        node = self.cat()
        while self.peek() == "|":
            self.take()
            node = ("alt", node, self.cat())
        return node

    def cat(self):
        node = ("eps",)
        while self.peek() not in (None, "|", ")"):
            atom = self.postfix()
            node = atom if node == ("eps",) else ("cat", node, atom)
        return node

    def postfix(self):
        node = self.atom()
        while self.peek() in ("*", "+"):
            op = self.take()
            node = ("star", node) if op == "*" else ("cat", node, ("star", node))
        return node

    def atom(self):
        ch = self.take()
        if ch == "(":
            node = self.alt()
            if self.take() != ")":
                raise RegexSyntaxError("missing ')'")
            return node
        if ch == "[":
            end = self.text.find("]", self.pos)
            if end < 0:
                raise RegexSyntaxError("missing ']'")
            letters = frozenset(c for c in self.text[self.pos:end] if not c.isspace())
            self.pos = end + 1
            return ("set", letters)
        if ch == "∅":
            return ("set", frozenset())
        if ch is None or ch in "|)*+]":
            raise RegexSyntaxError(f"unexpected {ch!r} at position {self.pos - 1}")
        return ("set", frozenset(ch))


def parse_regex(text: str):
    return _RegexParser(text).parse()


def _regex_letters(node) -> set[str]:
    if node[0] == "set":
        return set(node[1])
    return set().union(*(_regex_letters(c) for c in node[1:] if isinstance(c, tuple)))


class _Nfa:
    def __init__(self):
        self.eps: list[set[int]] = []
        self.edges: list[list[tuple[frozenset, int]]] = []

    def state(self) -> int:
        self.eps.append(set())
        self.edges.append([])
        return len(self.eps) - 1

    def build(self, node) -> tuple[int, int]:
        kind = node[0]
        s, t = self.state(), self.state()
        if kind == "eps":
            self.eps[s].add(t)
        elif kind == "set":
            self.edges[s].append((node[1], t))
        elif kind == "cat":
            a0, a1 = self.build(node[1])
            b0, b1 = self.build(node[2])
            self.eps[s].add(a0)
            self.eps[a1].add(b0)
            self.eps[b1].add(t)
        elif kind == "alt":
            for child in node[1:]:
                c0, c1 = self.build(child)
                self.eps[s].add(c0)
                self.eps[c1].add(t)
        else:
            c0, c1 = self.build(node[1])
            self.eps[s] |= {c0, t}
            self.eps[c1] |= {c0, t}
        return s, t

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        out = set(states)
        stack = list(out)
        while stack:
            for r in self.eps[stack.pop()]:
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)


def compile_regex(text: str, alphabet: Iterable[str] | None = None) -> Dfa:
    node = parse_regex(text)
    used = _regex_letters(node)
    if alphabet is None:
        letters = tuple(sorted(used))
    else:
        letters = tuple(sorted(set(alphabet)))
        undeclared = sorted(used - set(letters))
        if undeclared:
            raise AutomatonError(f"letters {undeclared} are not in the declared alphabet")
    nfa = _Nfa()
    start, final = nfa.build(node)
    init = nfa.closure([start])
    index = {init: 0}
    subsets = [init]
    rows = []
    for S in subsets:
        row = []
        for a in letters:
            T = nfa.closure(t for s in S for (cls, t) in nfa.edges[s] if a in cls)
            if T not in index:
                index[T] = len(subsets)
                subsets.append(T)
            row.append(index[T])
        rows.append(row)
    delta = np.array(rows, dtype=np.int64).reshape(len(subsets), len(letters))
    accepting = {i for i, S in enumerate(subsets) if final in S}
    return minimize(make_dfa(letters, delta, 0, accepting))


# --- DFA file format ----------------------------------------------------------


def parse_dfa(text: str) -> Dfa:
    fields: dict[str, list[str]] = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("alphabet", "states", "initial", "final", "trans"):
            raise AutomatonError(f"line {lineno}: cannot parse {raw!r}")
        if key == "trans":
            parts = rest.split()
            if len(parts) != 3:
                raise AutomatonError(f"line {lineno}: expected 'trans: <state> <letter> <state>'")
            trans.append(parts)
        else:
            fields[key] = rest.split()
    for key in ("alphabet", "states", "initial"):
        if key not in fields:
            raise AutomatonError(f"missing '{key}:' line")
    alphabet = tuple(fields["alphabet"])
    names = tuple(fields["states"])
    sidx = {s: i for i, s in enumerate(names)}
    if len(fields["initial"]) != 1 or fields["initial"][0] not in sidx:
        raise AutomatonError("initial state must be exactly one declared state")
    delta = np.full((len(names), len(alphabet)), -1, dtype=np.int64)
    for p, a, q in trans:
        if p not in sidx or q not in sidx:
            raise AutomatonError(f"transition {p} {a} {q} uses an undeclared state")
        if a not in alphabet:
            raise AutomatonError(f"transition {p} {a} {q} uses an undeclared letter")
        c = alphabet.index(a)
        if delta[sidx[p], c] >= 0 and delta[sidx[p], c] != sidx[q]:
            raise AutomatonError(f"nondeterministic transitions from {p} on {a}")
        delta[sidx[p], c] = sidx[q]
    if (delta < 0).any():
        p, c = map(int, np.argwhere(delta < 0)[0])
        raise AutomatonError(f"incomplete transition function: no move from {names[p]} on {alphabet[c]}")
    finals = fields.get("final", [])
    for f in finals:
        if f not in sidx:
            raise AutomatonError(f"final state {f} is not declared")
    return make_dfa(alphabet, delta, sidx[fields["initial"][0]], {sidx[f] for f in finals}, names)


def format_dfa(dfa: Dfa) -> str:
    names = dfa.state_names or tuple(str(i) for i in range(dfa.n_states))
    lines = [
        "alphabet: " + " ".join(dfa.alphabet),
        "states: " + " ".join(names),
        f"initial: {names[dfa.initial]}",
        "final: " + " ".join(names[q] for q in sorted(dfa.accepting)),
    ]
    for q in range(dfa.n_states):
        for c, a in enumerate(dfa.alphabet):
            lines.append(f"trans: {names[q]} {a} {names[int(dfa.delta[q, c])]}")
    return "\n".join(lines) + "\n"


def read_dfa(path) -> Dfa:
    with open(path) as fh:
        return parse_dfa(fh.read())


def compile_language(source: str, alphabet: Iterable[str] | None = None, is_file: bool = False) -> Dfa:
    """Minimal complete DFA from a regex string or a DFA file path."""
    if is_file:
        dfa = read_dfa(source)
        if alphabet is not None and set(alphabet) != set(dfa.alphabet):
            raise AutomatonError("declared alphabet differs from the DFA file's alphabet")
        return minimize(dfa)
    return compile_regex(source, alphabet)


# --- monomials ------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """B_0* a_1 B_1* ... a_k B_k*."""

    letter_sets: tuple[frozenset[str], ...]
    letters: tuple[str, ...]

    def __post_init__(self):
        if len(self.letter_sets) != len(self.letters) + 1:
            raise AutomatonError("a monomial with k letters needs k+1 letter sets")

    @property
    def k(self) -> int:
        return len(self.letters)

    def reversed(self) -> Monomial:
        return Monomial(self.letter_sets[::-1], self.letters[::-1])

    def __str__(self):
        def star(B):
            return ("[" + "".join(sorted(B)) + "]*") if len(B) != 1 else f"{next(iter(B))}*"

        parts = [star(self.letter_sets[0])]
        for a, B in zip(self.letters, self.letter_sets[1:]):
            parts += [a, star(B)]
        return " ".join(parts)

    def regex(self) -> str:
        parts = ["[" + "".join(sorted(self.letter_sets[0])) + "]*"]
        for a, B in zip(self.letters, self.letter_sets[1:]):
            parts += [a, "[" + "".join(sorted(B)) + "]*"]
        return "".join(parts)


_MONO_TOKEN = re.compile(r"\s*(\[[^\]]*\]\*|∅\*|[^\s\[\]*]\*|[^\s\[\]*∅])")


def parse_monomial(text: str) -> Monomial:
    """Whitespace-tolerant: ``b* a [ab]*``, ``[bc]* c ∅* a [ab]*``; a missing star factor means ∅*."""
    sets: list[frozenset[str]] = []
    letters: list[str] = []
    expect_set = True
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _MONO_TOKEN.match(text, pos)
        if m is None:
            raise AutomatonError(f"cannot parse monomial at {text[pos:]!r}")
        pos = m.end()
        tok = m.group(1)
        if tok.endswith("*"):
            body = tok[:-1]
            B = frozenset() if body == "∅" else frozenset(body.strip("[]")) if body.startswith("[") else frozenset(body)
            if not expect_set:
                raise AutomatonError("two star factors in a row")
            sets.append(B)
            expect_set = False
        else:
            if expect_set:
                sets.append(frozenset())
            letters.append(tok)
            expect_set = True
    if expect_set:
        sets.append(frozenset())
    return Monomial(tuple(sets), tuple(letters))


@dataclass(frozen=True)
class MonomialFlags:
    visibly_det: bool
    det: bool
    visibly_codet: bool
    codet: bool
    unambiguous: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def _alphabet_of(mono: Monomial) -> list[str]:
    return sorted(set(mono.letters).union(*mono.letter_sets))


def _layer_moves(mono: Monomial, layer: int, x: str) -> list[int]:
    """Successor layers of the layered acceptor; layer == k+1 is never produced."""
    out = []
    if x in mono.letter_sets[layer]:
        out.append(layer)
    if layer < mono.k and mono.letters[layer] == x:
        out.append(layer + 1)
    return out


def is_unambiguous(mono: Monomial) -> bool:
    """No word has two accepting runs in the layered acceptor (squared-automaton test)."""
    sigma = _alphabet_of(mono)
    start = (0, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for x in sigma:
            for p2 in _layer_moves(mono, p, x):
                for q2 in _layer_moves(mono, q, x):
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    # two distinct runs on one accepted word pass through some pair p != q
    # that can still reach (k, k)
    return not any(p != q and _pair_coreachable(mono, p, q) for p, q in seen)


def _pair_coreachable(mono: Monomial, p: int, q: int) -> bool:
    sigma = _alphabet_of(mono)
    k = mono.k
    seen = {(p, q)}
    queue = deque([(p, q)])
    while queue:
        a, b = queue.popleft()
        if a == k and b == k:
            return True
        for x in sigma:
            for a2 in _layer_moves(mono, a, x):
                for b2 in _layer_moves(mono, b, x):
                    if (a2, b2) not in seen:
                        seen.add((a2, b2))
                        queue.append((a2, b2))
    return False


_DONE = -1


def _prefix_moves(mono: Monomial, i: int, state: int, x: str) -> list[int]:
    """Acceptor of B_0* a_1 ... B_{i-1}* a_i: layers 0..i-1, then DONE (absorbing)."""
    if state == _DONE:
        return [_DONE]
    out = []
    if x in mono.letter_sets[state]:
        out.append(state)
    if mono.letters[state] == x:
        out.append(_DONE if state + 1 == i else state + 1)
    return out


def is_deterministic(mono: Monomial) -> bool:
    """Every word of the product has a unique prefix in each B_0* a_1 ... B_{i-1}* a_i.

    Searches, for each i, for a word in the product with two prefixes of
    different lengths in that prefix language: a product of the layered
    acceptor with two prefix trackers, the second allowed to finish only
    strictly after the first.
    """
    k = mono.k
    sigma = _alphabet_of(mono)
    for i in range(1, k + 1):
        start = (0, 0, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            layer, c1, c2 = queue.popleft()
            if layer == k and c1 == _DONE and c2 == _DONE:
                return False
            for x in sigma:
                for l2 in _layer_moves(mono, layer, x):
                    for n1 in _prefix_moves(mono, i, c1, x):
                        for n2 in _prefix_moves(mono, i, c2, x):
                            if n2 == _DONE and c2 != _DONE and c1 != _DONE:
                                continue  # second prefix must end after the first
                            nxt = (l2, n1, n2)
                            if nxt not in seen:
                                seen.add(nxt)
                                queue.append(nxt)
    return True


def monomial_analysis(mono: Monomial) -> MonomialFlags:
    rev = mono.reversed()
    return MonomialFlags(
        visibly_det=all(a not in B for a, B in zip(mono.letters, mono.letter_sets[:-1])),
        det=is_deterministic(mono),
        visibly_codet=all(a not in B for a, B in zip(mono.letters, mono.letter_sets[1:])),
        codet=is_deterministic(rev),
        unambiguous=is_unambiguous(mono),
    )


def monomial_dfa(mono: Monomial, alphabet: Sequence[str] | None = None) -> Dfa:
    return compile_regex(mono.regex(), alphabet or _alphabet_of(mono) or None)
