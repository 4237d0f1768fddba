import random

import numpy as np
import pytest

from fo2alt.automata import compile_regex, make_dfa
from fo2alt.monoid import monoid_from_table, transition_monoid

import oracles

RANDOM_DFA_COUNT = 240
RANDOM_DFA_SEED = 20240611


def random_dfas(count=RANDOM_DFA_COUNT, seed=RANDOM_DFA_SEED):
    """Half uniform DFAs, half monotone ones (the latter land in DA)."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        alphabet, delta, accepting = oracles.random_dfa_spec(rng, monotone=i % 2 == 1)
        out.append(make_dfa(alphabet, delta, 0, accepting))
    return out


@pytest.fixture(scope="session")
def random_monoids():
    return [transition_monoid(d) for d in random_dfas()]


@pytest.fixture
def z2():
    return monoid_from_table([[0, 1], [1, 0]], 0, generators=[("g", 1)])


@pytest.fixture
def semilattice():
    # Boolean semilattice ({1, 0}, *) with 1 as identity: element 0 is "1", element 1 is "0"
    return monoid_from_table([[0, 1], [1, 1]], 0)


@pytest.fixture
def trivial():
    return monoid_from_table([[0]], 0)


@pytest.fixture(scope="session")
def ab_star():
    return transition_monoid(compile_regex("(ab)*", "ab"))


@pytest.fixture(scope="session")
def bc_ca_ab():
    return transition_monoid(compile_regex("[bc]*ca[ab]*", "abc"))


def table_of(M):
    return np.asarray(M.table).tolist()
