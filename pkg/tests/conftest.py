"""Shared independent oracles for the test suite.

These evaluators iterate over every (row, column) pair of the target matrix
and evaluate the delta/skew/sign products directly from the diagram, so they
share no code path with the sparse per-block builders they are used to check.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from brauerspan.diagrams import BrauerDiagram, GroodDiagram


def _vertex_values(d, I, J):
    """Index value carried by each vertex: top 1..l from I, bottom from J."""
    values = {}
    for t, v in enumerate(I, start=1):
        values[t] = v
    for r, v in enumerate(J, start=1):
        values[d.l + r] = v
    return values


def _skew_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.int64)
    for a in range(0, n, 2):
        out[a, a + 1] = 1
        out[a + 1, a] = -1
    return out


def _perm_sign(values) -> int:
    """Sign via the determinant of the permutation matrix; 0 if not a permutation."""
    n = len(values)
    if sorted(values) != list(range(1, n + 1)):
        return 0
    P = np.zeros((n, n))
    for pos, v in enumerate(values):
        P[pos, v - 1] = 1.0
    return int(round(np.linalg.det(P)))


def dense_E(d: BrauerDiagram, n: int) -> np.ndarray:
    out = np.zeros((n ** d.l, n ** d.k), dtype=np.int64)
    for row, I in enumerate(product(range(1, n + 1), repeat=d.l)):
        for col, J in enumerate(product(range(1, n + 1), repeat=d.k)):
            values = _vertex_values(d, I, J)
            if all(values[a] == values[b] for a, b in d.blocks):
                out[row, col] = 1
    return out


def dense_F(d: BrauerDiagram, n: int) -> np.ndarray:
    skew = _skew_matrix(n)
    out = np.zeros((n ** d.l, n ** d.k), dtype=np.int64)
    for row, I in enumerate(product(range(1, n + 1), repeat=d.l)):
        for col, J in enumerate(product(range(1, n + 1), repeat=d.k)):
            values = _vertex_values(d, I, J)
            entry = 1
            for a, b in d.blocks:
                if d.is_cross_row((a, b)):
                    entry *= int(values[a] == values[b])
                else:
                    entry *= int(skew[values[a] - 1, values[b] - 1])
                if entry == 0:
                    break
            out[row, col] = entry
    return out


def dense_H(d: GroodDiagram, n: int) -> np.ndarray:
    out = np.zeros((n ** d.l, n ** d.k), dtype=np.int64)
    for row, I in enumerate(product(range(1, n + 1), repeat=d.l)):
        for col, J in enumerate(product(range(1, n + 1), repeat=d.k)):
            values = _vertex_values(d, I, J)
            if any(values[a] != values[b] for a, b in d.blocks):
                continue
            free_values = [values[v] for v in d.free_top] + [values[v] for v in d.free_bottom]
            out[row, col] = _perm_sign(free_values)
    return out


def kron_power(g: np.ndarray, k: int) -> np.ndarray:
    out = np.eye(1)
    for _ in range(k):
        out = np.kron(out, g)
    return out
