"""Pure-Python (numpy-vectorized) GF(p) dense elimination kernel.

Fallback used when the compiled extension is unavailable; same contract as
``_ckernel``.  Entries are int64 in [0, p); p^2 fits comfortably in int64.
"""

import numpy as np

BACKEND = "python"


def gfp_rref(A, p):
    """In-place reduced row echelon form of A mod p; returns pivot columns."""
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots
