import numpy as np
from numba import njit

OP_VAR, OP_MUL, OP_OMEGA = 0, 1, 2


@njit(cache=True)
def is_associative(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return False
    return True


@njit(cache=True)
def omega_table(table):
    n = table.shape[0]
    out = np.empty(n, dtype=np.int64)
    for s in range(n):
        p = s
        for _ in range(n):
            if table[p, p] == p:
                break
            p = table[p, s]
        out[s] = p
    return out


@njit(cache=True)
def ideal_masks(table):
    n = table.shape[0]
    right = np.zeros((n, n), dtype=np.bool_)
    left = np.zeros((n, n), dtype=np.bool_)
    for t in range(n):
        for v in range(n):
            right[t, table[t, v]] = True
            left[t, table[v, t]] = True
    two = np.zeros((n, n), dtype=np.bool_)
    for t in range(n):
        for l in range(n):
            if left[t, l]:
                for s in range(n):
                    if right[l, s]:
                        two[t, s] = True
    return right, left, two


@njit(cache=True)
def _run(program, table, omega, values, stack):
    top = 0
    for i in range(program.shape[0]):
        op = program[i, 0]
        if op == OP_VAR:
            stack[top] = values[program[i, 1]]
            top += 1
        elif op == OP_MUL:
            stack[top - 2] = table[stack[top - 2], stack[top - 1]]
            top -= 1
        else:
            stack[top - 1] = omega[stack[top - 1]]
    return stack[top - 1]


@njit(cache=True)
def first_mismatch(table, omega, lhs, rhs, dom_vals, dom_sizes, start, stop):
    k = dom_sizes.shape[0]
    values = np.empty(k, dtype=np.int64)
    stack = np.empty(max(lhs.shape[0], rhs.shape[0]) + 1, dtype=np.int64)
    for flat in range(start, stop):
        rest = flat
        for v in range(k - 1, -1, -1):
            values[v] = dom_vals[v, rest % dom_sizes[v]]
            rest //= dom_sizes[v]
        if _run(lhs, table, omega, values, stack) != _run(rhs, table, omega, values, stack):
            return flat
    return -1


@njit(cache=True)
def orders_agree(pu_a, pu_b, pv_a, pv_b, pair_mask):
    for i in range(pu_a.shape[0]):
        if pu_a[i] == 0 or pv_a[i] == 0:
            continue
        for j in range(pu_b.shape[0]):
            if not pair_mask[i, j] or pu_b[j] == 0 or pv_b[j] == 0:
                continue
            su = np.sign(pu_a[i] - pu_b[j])
            sv = np.sign(pv_a[i] - pv_b[j])
            if su != sv:
                return False
    return True
