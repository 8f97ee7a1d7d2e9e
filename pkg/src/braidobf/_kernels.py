"""
Compiled inner loop of the normal-form engine.

Factors are rows of an int16 array holding images of 1..n, kept alongside a
second array with their inverses.  The logic mirrors ``_append_simple`` and
``_left_weight`` in :mod:`braidobf.braidcore`, which serve as the reference.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _left_weight_rows(u, uinv, v, vinv):
    n = u.shape[0]
    moved = False
    i = 0
    while i < n - 1:
        if vinv[i] > vinv[i + 1] and u[i] < u[i + 1]:
            a = u[i]
            b = u[i + 1]
            u[i] = b
            u[i + 1] = a
            uinv[b - 1] = i + 1
            uinv[a - 1] = i + 2
            a = vinv[i]
            b = vinv[i + 1]
            vinv[i] = b
            vinv[i + 1] = a
            v[b - 1] = i + 1
            v[a - 1] = i + 2
            moved = True
            if i > 0:
                i -= 1
        else:
            i += 1
    return moved


@njit(cache=True)
def _is_identity_row(p):
    for i in range(p.shape[0]):
        if p[i] != i + 1:
            return False
    return True


@njit(cache=True)
def extend(out, outinv, count, simples):
    """Right-multiply the normal sequence out[:count] by each row of simples.

    ``out`` must have room for count + len(simples) rows.  Returns the new count.
    """
    n = out.shape[1]
    for r in range(simples.shape[0]):
        s = simples[r]
        if _is_identity_row(s):
            continue
        for i in range(n):
            out[count, i] = s[i]
            outinv[count, s[i] - 1] = i + 1
        count += 1
        j = count - 1
        while j > 0:
            if not _left_weight_rows(out[j - 1], outinv[j - 1], out[j], outinv[j]):
                break
            j -= 1
        while count > 0 and _is_identity_row(out[count - 1]):
            count -= 1
    return count


def normalize_rows(head: list[tuple[int, ...]], simples: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Append simples to an already normal head sequence."""
    total = len(head) + len(simples)
    out = np.empty((max(total, 1), n), dtype=np.int16)
    outinv = np.empty_like(out)
    if head:
        h = np.asarray(head, dtype=np.int16)
        out[: len(head)] = h
        outinv[np.arange(len(head))[:, None], h - 1] = np.arange(1, n + 1, dtype=np.int16)
    s = np.asarray(simples, dtype=np.int16).reshape(len(simples), n)
    count = extend(out, outinv, len(head), s)
    return [tuple(row) for row in out[:count].tolist()]


@njit(cache=True)
def run_letters(x, letters, conj, inv):
    """Apply an R-circuit in place to every row of x (element indices)."""
    for r in range(x.shape[0]):
        row = x[r]
        for k in range(letters.shape[0]):
            a = letters[k]
            if a > 0:
                i = a - 1
                left = row[i]
                right = row[i + 1]
                row[i + 1] = conj[left, right]
                row[i] = right
            else:
                i = -a - 1
                left = row[i]
                right = row[i + 1]
                row[i] = conj[right, inv[left]]
                row[i + 1] = left
