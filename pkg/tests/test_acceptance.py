"""Acceptance criteria, one test each, with wall-clock limits.

Every test prints a single PASS/FAIL line (visible even under capture) and
then asserts both correctness and the time limit.
"""

import io
import itertools
import json
import random
import time
from contextlib import redirect_stdout

import pytest

from fo2alt.automata import Monomial, compile_regex, monomial_analysis, parse_monomial
from fo2alt.cli import main
from fo2alt.congruences import LEFT, RIGHT, CongruenceQuery, cong_equivalent, quotient_monoid
from fo2alt.hierarchy import L_SIDE, R_SIDE, level_membership
from fo2alt.monoid import in_DA, transition_monoid, variety_membership
from fo2alt.rankers import eval_ranker, parse_ranker, wi_equivalent

import oracles
from conftest import random_dfas

AB_5 = list(oracles.words("ab", 5))
AB_6 = list(oracles.words("ab", 6))


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, elapsed, limit, detail=""):
        verdict = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"criterion {number:>2} {verdict}: {title} ({elapsed:.3f}s, limit {limit}s){' ' + detail if detail else ''}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert elapsed < limit, line

    return _report


def cli_json(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, json.loads(buf.getvalue())


@pytest.fixture(scope="module")
def dfa_monoids():
    t0 = time.perf_counter()
    dfas = random_dfas()
    monoids = [transition_monoid(d) for d in dfas]
    return dfas, monoids, time.perf_counter() - t0


def test_c01_ranker_example(report):
    r = parse_ranker("Xa.Yb.Xc")
    eval_ranker("bac", r)  # warm-up
    t0 = time.perf_counter()
    bac, bca = eval_ranker("bac", r), eval_ranker("bca", r)
    elapsed = time.perf_counter() - t0
    ok = bac.defined and bca.defined and bca.condensed and not bac.condensed
    report(1, "Xa.Yb.Xc defined on bac and bca, condensed only on bca", ok, elapsed, 1e-3)


def test_c02_level_two_is_r(report, dfa_monoids):
    dfas, monoids, build = dfa_monoids
    t0 = time.perf_counter()
    agree = 0
    for M in monoids:
        t = M.table.tolist()
        agree += (level_membership(M, 2, R_SIDE) == oracles.r_trivial_brute(t)) and (
            level_membership(M, 2, L_SIDE) == oracles.l_trivial_brute(t)
        )
    elapsed = build + time.perf_counter() - t0
    n = len(monoids)
    report(2, "R_2 = R and L_2 = L on random DFA monoids", n >= 200 and agree == n, elapsed, 60, f"{agree}/{n}")


def test_c03_congruence_oracle(report):
    t0 = time.perf_counter()
    pairs = list(itertools.combinations(AB_5, 2))
    checked = mismatches = 0
    for m in range(1, 4):
        for n in range(m, 4):
            for side, start in ((RIGHT, "X"), (LEFT, "Y")):
                cls = oracles.underline_oracle(("a", "b"), m, n, start)
                sig = {w: tuple(oracles.condensed_oracle(w, s) for s in cls) for w in AB_5}
                q = CongruenceQuery(m, n, side)
                for u, v in pairs:
                    checked += 1
                    mismatches += cong_equivalent(u, v, q) != (sig[u] == sig[v])
    elapsed = time.perf_counter() - t0
    report(3, "congruences equal brute-force condensed agreement", mismatches == 0, elapsed, 120, f"{checked - mismatches}/{checked}")


def test_c04_wi_modes_agree(report):
    t0 = time.perf_counter()
    checked = mismatches = 0
    for m in range(1, 4):
        for n in range(m, 4):
            for u, v in itertools.combinations(AB_5, 2):
                checked += 1
                mismatches += wi_equivalent(u, v, m, n, "plain") != wi_equivalent(u, v, m, n, "condensed")
    elapsed = time.perf_counter() - t0
    report(4, "plain and condensed WI conditions agree", mismatches == 0, elapsed, 120, f"{checked - mismatches}/{checked}")


def test_c05_level_interval_language(report):
    t0 = time.perf_counter()
    code, rep = cli_json("analyze", "--regex", "[bc]*ca[ab]*", "--json")
    elapsed = time.perf_counter() - t0
    lv = rep["level"]
    scan = {row["m"]: (row["R"], row["L"]) for row in lv["scanned"]}
    lo, hi = lv["alternation_interval"]
    ok = (
        code == 0
        and lv["in_DA"]
        and scan[2] == (False, False)
        and scan[3] == (True, True)
        and (lo, hi) == (2, 3)
        and lo <= 2 <= hi
    )
    report(5, "[bc]*ca[ab]* in DA, level interval (2,3) containing 2", ok, elapsed, 30)


def test_c06_negative_control(report):
    t0 = time.perf_counter()
    code, rep = cli_json("analyze", "--regex", "(ab)*", "--json")
    elapsed = time.perf_counter() - t0
    v = rep["varieties"]
    ok = code == 0 and v["aperiodic"] and not v["DA"] and not rep["level"]["fo2_definable"]
    report(6, "(ab)* aperiodic, not DA, not FO2", ok, elapsed, 5)


def test_c07_condensed_language(report):
    t0 = time.perf_counter()
    dfa = compile_regex("[bc]*bc+a[abc]*", "abc")
    r = parse_ranker("Xa.Yb.Xc")
    words = list(oracles.words("abc", 6))
    disagreements = sum(dfa.accepts(w) != eval_ranker(w, r).condensed for w in words)
    in_r3 = level_membership(transition_monoid(dfa), 3, R_SIDE)
    elapsed = time.perf_counter() - t0
    report(
        7,
        "[bc]*bc+a[abc]* matches condensed Xa.Yb.Xc, monoid in R_3",
        disagreements == 0 and in_r3,
        elapsed,
        60,
        f"{len(words) - disagreements}/{len(words)} words",
    )


def test_c08_simon_base_case(report):
    t0 = time.perf_counter()
    subs = {(w, n): frozenset(oracles.subwords(w, n)) for w in AB_6 for n in (1, 2, 3)}
    checked = mismatches = 0
    for n in (1, 2, 3):
        for side in (RIGHT, LEFT):
            q = CongruenceQuery(1, n, side)
            for u, v in itertools.combinations(AB_6, 2):
                checked += 1
                mismatches += cong_equivalent(u, v, q) != (subs[u, n] == subs[v, n])
    elapsed = time.perf_counter() - t0
    report(8, "m=1 congruence equals subword sets", mismatches == 0, elapsed, 60, f"{checked - mismatches}/{checked}")


def test_c09_hierarchy_structure(report, dfa_monoids):
    dfas, monoids, build = dfa_monoids
    t0 = time.perf_counter()
    in_da = failures = 0
    for dfa, M in zip(dfas, monoids):
        if not in_DA(M):
            continue
        in_da += 1
        g = len(dfa.alphabet)
        top = max(g + 1, 2)
        levels = {(m, s): level_membership(M, m, s) for m in range(1, top + 1) for s in (R_SIDE, L_SIDE)}
        for m in range(1, top):
            for s in (R_SIDE, L_SIDE):
                failures += levels[m, s] and not levels[m + 1, s]
            failures += levels[m, R_SIDE] and not levels[m + 1, L_SIDE]
            failures += levels[m, L_SIDE] and not levels[m + 1, R_SIDE]
        failures += not (levels[g + 1, R_SIDE] and levels[g + 1, L_SIDE])
    elapsed = build + time.perf_counter() - t0
    report(9, "monotone chain, cross inclusions, generator bound", in_da > 0 and failures == 0, elapsed, 60, f"{in_da} DA monoids, {failures} violations")


def test_c10_interweaving(report):
    t0 = time.perf_counter()
    checked = counterexamples = 0
    for m, n in ((1, 1), (1, 2), (2, 2)):
        right, left = CongruenceQuery(m + 1, 2 * n, RIGHT), CongruenceQuery(m + 1, 2 * n, LEFT)
        for u, v in itertools.combinations(AB_5, 2):
            if cong_equivalent(u, v, right) and cong_equivalent(u, v, left):
                checked += 1
                counterexamples += not wi_equivalent(u, v, m, n)
    elapsed = time.perf_counter() - t0
    report(10, "interwoven congruences imply FO2_{m,n} equivalence", counterexamples == 0, elapsed, 120, f"{checked} related pairs")


def test_c11_quotients(report):
    t0 = time.perf_counter()
    q = quotient_monoid("ab", CongruenceQuery(1, 1, RIGHT)).monoid
    flags = variety_membership(q)
    unary = {n: quotient_monoid("a", CongruenceQuery(1, n, RIGHT)).monoid.size for n in (1, 2, 3, 4)}
    elapsed = time.perf_counter() - t0
    ok = q.size == 4 and flags.J1 and all(size == n + 1 for n, size in unary.items())
    report(11, "alphabet quotient is J1 of size 4, unary quotients of size n+1", ok, elapsed, 5)


def test_c12_monomials(report):
    t0 = time.perf_counter()
    expected = [
        ("b* a [ab]*", {"visibly_det": True}),
        ("[ab]* a b*", {"visibly_det": False, "det": False, "visibly_codet": True, "codet": True}),
        ("a* a a*", {"unambiguous": False}),
        ("[bc]* c ∅* a [ab]*", {"unambiguous": True}),
    ]
    examples_ok = all(
        all(monomial_analysis(parse_monomial(text)).as_dict()[k] == v for k, v in want.items()) for text, want in expected
    )
    rng = random.Random(12)
    violations = 0
    for _ in range(100):
        alphabet = "abc"[: rng.randint(1, 3)]
        k = rng.randint(0, 3)
        sets = tuple(frozenset(x for x in alphabet if rng.random() < 0.5) for _ in range(k + 1))
        letters = tuple(rng.choice(alphabet) for _ in range(k))
        f = monomial_analysis(Monomial(sets, letters))
        violations += (f.visibly_det and not f.det) or (f.det and not f.unambiguous)
        violations += (f.visibly_codet and not f.codet) or (f.codet and not f.unambiguous)
    elapsed = time.perf_counter() - t0
    report(12, "monomial example flags and implication chain", examples_ok and violations == 0, elapsed, 30, f"{violations} violations")
