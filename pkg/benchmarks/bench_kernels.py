"""Compare the numba and numpy kernel backends on realistic monoid workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--states 4]

The workload monoid is the full transformation monoid on --states points
(size n^n), generated by a cycle, a transposition and a rank-lowering map.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from fo2alt import kernels
from fo2alt.automata import make_dfa
from fo2alt.hierarchy import level_identity
from fo2alt.monoid import DA_IDENTITY, transition_monoid
from fo2alt.terms import compile_term, variables


def full_transformation_dfa(n: int):
    cycle = [(q + 1) % n for q in range(n)]
    swap = [1, 0] + list(range(2, n))
    merge = [0, 0] + list(range(2, n))
    delta = [[cycle[q], swap[q], merge[q]] for q in range(n)]
    return make_dfa("abc", delta, 0, [0])


def timed(fn, repeat):
    fn()  # warm-up (includes numba compilation on first call)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def identity_job(backend, M, lhs, rhs, domain):
    names = sorted(variables(lhs) | variables(rhs))
    slots = {v: i for i, v in enumerate(names)}
    k = len(names)
    dom = np.asarray(domain, dtype=np.int64)
    dom_vals = np.tile(dom, (k, 1))
    dom_sizes = np.full(k, len(dom), dtype=np.int64)
    pl, pr = compile_term(lhs, slots), compile_term(rhs, slots)
    omega = kernels.numpy_backend.omega_table(M.table)
    total = len(dom) ** k
    return lambda: backend.first_mismatch(M.table, omega, pl, pr, dom_vals, dom_sizes, 0, total)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--states", type=int, default=4)
    args = p.parse_args(argv)

    if kernels.numba_backend is None:
        raise SystemExit("numba is not installed; nothing to compare")

    M = transition_monoid(full_transformation_dfa(args.states))
    idem = M.idempotents()
    rng = np.random.default_rng(0)
    pa, pb = rng.integers(0, 40, size=300), rng.integers(0, 40, size=300)
    mask = np.ones((300, 300), dtype=bool)
    jobs = {
        "is_associative": lambda b: (lambda: b.is_associative(M.table)),
        "omega_table": lambda b: (lambda: b.omega_table(M.table)),
        "ideal_masks": lambda b: (lambda: b.ideal_masks(M.table)),
        "DA identity (2 vars, all elements)": lambda b: identity_job(b, M, *DA_IDENTITY, range(M.size)),
        "R_4 identity (4 vars, idempotents)": lambda b: identity_job(b, M, *level_identity(4), idem),
        "orders_agree (300x300)": lambda b: (lambda: b.orders_agree(pa, pb, pa, pb, mask)),
    }

    print(f"monoid size {M.size}, idempotents {len(idem)}, repeat {args.repeat}")
    print(f"{'kernel':40s} {'numpy [s]':>12s} {'numba [s]':>12s} {'speedup':>9s}")
    for name, make in jobs.items():
        t_np = timed(make(kernels.numpy_backend), args.repeat)
        t_nb = timed(make(kernels.numba_backend), args.repeat)
        print(f"{name:40s} {t_np:12.5f} {t_nb:12.5f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
