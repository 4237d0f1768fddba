"""Vectorised numpy implementations of the hot loops.

Every function here has a twin with the same signature in ``_numba``.
"""

import numpy as np

OP_VAR, OP_MUL, OP_OMEGA = 0, 1, 2

# assignments evaluated per vectorised batch in ``first_mismatch``
CHUNK = 1 << 18


def is_associative(table):
    n = table.shape[0]
    idx = np.arange(n)
    left = table[table[:, :, None], idx[None, None, :]]  # (ab)c
    right = table[idx[:, None, None], table[None, :, :]]  # a(bc)
    return bool(np.array_equal(left, right))


def omega_table(table):
    n = table.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    power = np.arange(n, dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    for _ in range(n):
        idem = (table[power, power] == power) & (out < 0)
        out[idem] = power[idem]
        if (out >= 0).all():
            break
        power = table[power, base]
    return out


def ideal_masks(table):
    """Boolean matrices ``R[t, s]`` (s in tM), ``L[t, s]`` (s in Mt), ``J[t, s]`` (s in MtM)."""
    n = table.shape[0]
    rows = np.repeat(np.arange(n), n)
    right = np.zeros((n, n), dtype=np.bool_)
    right[rows, table.ravel()] = True
    left = np.zeros((n, n), dtype=np.bool_)
    left[rows, table.T.ravel()] = True
    two = (left.astype(np.int64) @ right.astype(np.int64)) > 0
    return right, left, two


def _decode(flat, sizes):
    # mixed radix, first variable most significant
    digits = np.empty((len(sizes), flat.shape[0]), dtype=np.int64)
    rest = flat.copy()
    for v in range(len(sizes) - 1, -1, -1):
        digits[v] = rest % sizes[v]
        rest //= sizes[v]
    return digits


def _run(program, table, omega, values):
    stack = []
    for op, arg in program:
        if op == OP_VAR:
            stack.append(values[arg])
        elif op == OP_MUL:
            b = stack.pop()
            a = stack.pop()
            stack.append(table[a, b])
        else:
            stack.append(omega[stack.pop()])
    return stack[-1]


def first_mismatch(table, omega, lhs, rhs, dom_vals, dom_sizes, start, stop):
    """First assignment index in [start, stop) where the two programs differ, else -1."""
    k = dom_sizes.shape[0]
    pos = start
    while pos < stop:
        end = min(stop, pos + CHUNK)
        flat = np.arange(pos, end, dtype=np.int64)
        digits = _decode(flat, dom_sizes)
        values = [dom_vals[v, digits[v]] for v in range(k)]
        left = _run(lhs, table, omega, values)
        right = _run(rhs, table, omega, values)
        bad = np.flatnonzero(left != right)
        if bad.size:
            return int(pos + bad[0])
        pos = end
    return -1


def orders_agree(pu_a, pu_b, pv_a, pv_b, pair_mask):
    """Order types of (a, b) position pairs coincide wherever all four are defined (>0)."""
    defined = (pu_a > 0) & (pv_a > 0)
    defined_b = (pu_b > 0) & (pv_b > 0)
    live = pair_mask & defined[:, None] & defined_b[None, :]
    su = np.sign(pu_a[:, None] - pu_b[None, :])
    sv = np.sign(pv_a[:, None] - pv_b[None, :])
    return not bool(np.any(live & (su != sv)))
