"""Small independent reference implementations used as test oracles."""

from __future__ import annotations

import numpy as np


def gf2_rank(matrix) -> int:
    a = np.array(matrix, dtype=np.uint8) % 2
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        hit = np.nonzero(a[r:, c])[0]
        if hit.size == 0:
            continue
        p = r + hit[0]
        a[[r, p]] = a[[p, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def symplectic_rows(ops) -> np.ndarray:
    n = ops[0].n
    return np.array([[(p.x >> j) & 1 for j in range(n)] + [(p.z >> j) & 1 for j in range(n)] for p in ops])


def gram(ops) -> np.ndarray:
    a = symplectic_rows(ops)
    n = a.shape[1] // 2
    omega = np.block([[np.zeros((n, n), int), np.eye(n, dtype=int)], [np.eye(n, dtype=int), np.zeros((n, n), int)]])
    return (a @ omega @ a.T) % 2


def centre_dimension(ops) -> int:
    """dim(G meet its symplectic complement) = rank(G) - rank(Gram of G)."""
    return gf2_rank(symplectic_rows(ops)) - gf2_rank(gram(ops))
