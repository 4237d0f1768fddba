"""Brute-force reference implementations used to cross-check the library.

Nothing here imports the code under test except for plain data types, so a
disagreement points at one side or the other rather than at shared logic.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np


def words(alphabet, max_len, min_len=0):
    for k in range(min_len, max_len + 1):
        for t in itertools.product(alphabet, repeat=k):
            yield "".join(t)


# --- rankers ------------------------------------------------------------------


def plain_positions(u, steps):
    """Positions (1-based) visited by a ranker under the plain semantics, or None."""
    q_right, q_left = 0, len(u) + 1
    out = []
    pos = None
    for d, a in steps:
        if pos is not None:
            q_right = q_left = pos
        if d == "X":
            hits = [i for i in range(q_right + 1, len(u) + 1) if u[i - 1] == a]
            pos = hits[0] if hits else None
        else:
            hits = [i for i in range(1, q_left) if u[i - 1] == a]
            pos = hits[-1] if hits else None
        if pos is None:
            return None
        out.append(pos)
    return out


def condensed_oracle(u, steps):
    """A ranker is condensed on u when no later position crosses an earlier one.

    After step l the walk heads in the direction of step l+1, and every later
    position has to stay strictly on that side of position l.
    """
    ps = plain_positions(u, steps)
    if ps is None:
        return False
    for l in range(len(ps) - 1):
        ahead = steps[l + 1][0]
        for k in range(l + 1, len(ps)):
            if ahead == "X" and not ps[k] > ps[l]:
                return False
            if ahead == "Y" and not ps[k] < ps[l]:
                return False
    return True


def blocks(steps):
    return 1 + sum(1 for x, y in zip(steps, steps[1:]) if x[0] != y[0])


def all_steps(alphabet, depth):
    return list(itertools.product([(d, a) for d in "XY" for a in alphabet], repeat=depth))


@lru_cache(maxsize=None)
def underline_oracle(alphabet, m, n, start):
    """Step tuples of the underlined class, straight from its set definition."""
    out = set()
    for depth in range(1, n + 1):
        for s in all_steps(alphabet, depth):
            b = blocks(s)
            # first union: start direction fixed, exactly m blocks, depth <= n
            if s[0][0] == start and b == m:
                out.add(s)
            # second union: fewer blocks, strictly smaller depth
            if b < m and depth < n:
                out.add(s)
    return tuple(sorted(out))


def condensed_agree(u, v, steps_list):
    return all(condensed_oracle(u, s) == condensed_oracle(v, s) for s in steps_list)


# --- subwords -------------------------------------------------------------------


def subwords(u, n):
    return {"".join(c) for k in range(n + 1) for c in itertools.combinations(u, k)}


# --- two-pebble game ----------------------------------------------------------


def fo2_game_equiv(u, v, m, n):
    """Duplicator wins the n-round 2-pebble game with at most m structure switches + 1.

    A block is a maximal run of rounds in which the spoiler plays in the same
    word, which matches quantifier blocks of FO² sentences.
    """
    ws = (u, v)

    def consistent(pu, pv):
        for k in (0, 1):
            if (pu[k] is None) != (pv[k] is None):
                return False
            if pu[k] is not None and u[pu[k]] != v[pv[k]]:
                return False
        if None not in pu:
            if (pu[0] > pu[1]) - (pu[0] < pu[1]) != (pv[0] > pv[1]) - (pv[0] < pv[1]):
                return False
        return True

    @lru_cache(maxsize=None)
    def duplicator(pu, pv, rounds, last, used):
        if rounds == 0:
            return True
        for side in (0, 1):
            nb = used + (side != last)
            if nb > m:
                continue
            for peb in (0, 1):
                for pos in range(len(ws[side])):
                    answered = False
                    for pos2 in range(len(ws[1 - side])):
                        nu, nv = list(pu), list(pv)
                        if side == 0:
                            nu[peb], nv[peb] = pos, pos2
                        else:
                            nv[peb], nu[peb] = pos, pos2
                        nu, nv = tuple(nu), tuple(nv)
                        if consistent(nu, nv) and duplicator(nu, nv, rounds - 1, side, nb):
                            answered = True
                            break
                    if not answered:
                        return False
        return True

    return duplicator((None, None), (None, None), n, -1, 0)


# --- finite monoids -------------------------------------------------------------


def omega_brute(table, s):
    x = s
    for _ in range(len(table) + 1):
        if table[x][x] == x:
            return x
        x = table[x][s]
    raise AssertionError("no idempotent power")


def r_trivial_brute(table):
    n = len(table)
    ideals = [frozenset(table[s][t] for t in range(n)) for s in range(n)]
    return len(set(ideals)) == n


def l_trivial_brute(table):
    n = len(table)
    ideals = [frozenset(table[t][s] for t in range(n)) for s in range(n)]
    return len(set(ideals)) == n


def j_trivial_brute(table):
    n = len(table)
    ideals = [frozenset(table[table[x][s]][y] for x in range(n) for y in range(n)) for s in range(n)]
    return len(set(ideals)) == n


def eval_brute(table, term_text_tree, env):
    """Evaluate a nested tuple term: ('v', i) | ('*', t1, t2, ...) | ('w', t)."""
    kind = term_text_tree[0]
    if kind == "v":
        return env[term_text_tree[1]]
    if kind == "*":
        acc = None
        for t in term_text_tree[1:]:
            x = eval_brute(table, t, env)
            acc = x if acc is None else table[acc][x]
        return acc
    return omega_brute(table, eval_brute(table, term_text_tree[1], env))


def identity_brute(table, lhs, rhs, nvars):
    n = len(table)
    for vals in itertools.product(range(n), repeat=nvars):
        env = {i + 1: vals[i] for i in range(nvars)}
        if eval_brute(table, lhs, env) != eval_brute(table, rhs, env):
            return False, env
    return True, None


def transformation_monoid(delta, n_letters):
    """Closure of letter maps on states; returns (table, identity index)."""
    n_states = len(delta)
    ident = tuple(range(n_states))
    gens = [tuple(delta[q][a] for q in range(n_states)) for a in range(n_letters)]
    elems = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        f = queue.pop(0)
        for g in gens:
            h = tuple(g[f[q]] for q in range(n_states))
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                queue.append(h)
    table = [[index[tuple(g[f[q]] for q in range(n_states))] for g in elems] for f in elems]
    return table, 0


# --- random inputs ----------------------------------------------------------------


def random_dfa_spec(rng: random.Random, monotone: bool):
    """(alphabet, delta, accepting) for a complete DFA with <= 4 states and <= 3 letters.

    Monotone DFAs only move to states with equal or larger index, which keeps
    their transition monoids R-trivial, hence in DA.
    """
    n_states = rng.randint(1, 4)
    alphabet = "abc"[: rng.randint(1, 3)]
    delta = []
    for q in range(n_states):
        lo = q if monotone else 0
        delta.append([rng.randint(lo, n_states - 1) for _ in alphabet])
    accepting = [q for q in range(n_states) if rng.random() < 0.5]
    return alphabet, delta, accepting


def random_table_monoid(rng: random.Random, max_states=3, max_letters=2):
    delta_alpha, delta, _ = random_dfa_spec(rng, monotone=rng.random() < 0.5)
    n_states = min(len(delta), max_states)
    delta = [[min(x, n_states - 1) for x in row[:max_letters]] for row in delta[:n_states]]
    table, ident = transformation_monoid(delta, len(delta[0]))
    return np.array(table, dtype=np.int64), ident


# --- monomials --------------------------------------------------------------------


def factorizations(word, letter_sets, letters):
    """Number of ways to cut word as w0 a1 w1 ... ak wk with wi over letter_sets[i]."""
    k = len(letters)

    @lru_cache(maxsize=None)
    def count(i, pos):
        # i = current factor index, pos = start of factor i
        total = 0
        end = pos
        while True:
            if i == k:
                if end == len(word):
                    total += 1
            elif end < len(word) and word[end] == letters[i]:
                total += count(i + 1, end + 1)
            if end < len(word) and word[end] in letter_sets[i]:
                end += 1
            else:
                break
        return total

    return count(0, 0)


def prefix_counts(word, letter_sets, letters):
    """For each i in 1..k, how many prefixes of word lie in B0* a1 ... B_{i-1}* a_i."""
    out = []
    for i in range(1, len(letters) + 1):
        c = 0
        for cut in range(len(word) + 1):
            prefix = word[:cut]
            if prefix and prefix[-1] == letters[i - 1]:
                # the prefix minus its last letter must factor through the first i-1 markers
                # and end inside factor i-1
                c += factorizations(prefix[:-1], letter_sets[:i], letters[: i - 1]) > 0
        out.append(c)
    return out


def monomial_brute_flags(letter_sets, letters, alphabet, max_len):
    """(det, codet, unambiguous) judged on all words up to max_len."""
    det = codet = unamb = True
    rev_sets, rev_letters = letter_sets[::-1], letters[::-1]
    for w in words(alphabet, max_len):
        f = factorizations(w, letter_sets, letters)
        if f == 0:
            continue
        if f > 1:
            unamb = False
        if any(c > 1 for c in prefix_counts(w, letter_sets, letters)):
            det = False
        if any(c > 1 for c in prefix_counts(w[::-1], rev_sets, rev_letters)):
            codet = False
    return det, codet, unamb
