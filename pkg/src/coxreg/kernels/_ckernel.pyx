# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) dense elimination kernel (hot loop of all rank computations)."""

import numpy as np

cimport numpy as cnp

BACKEND = "cython"


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a in (0, p)
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def gfp_rref(cnp.ndarray[cnp.int64_t, ndim=2] A, long long p):
    """In-place reduced row echelon form of A mod p; returns pivot columns."""
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long inv, f, v
    cdef cnp.int64_t[:, :] M = A
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        i = -1
        for j in range(r, rows):
            if M[j, c] != 0:
                i = j
                break
        if i < 0:
            continue
        if i != r:
            for k in range(cols):
                v = M[r, k]
                M[r, k] = M[i, k]
                M[i, k] = v
        inv = _inv_mod(M[r, c], p)
        if inv != 1:
            for k in range(cols):
                M[r, k] = M[r, k] * inv % p
        for j in range(rows):
            if j == r:
                continue
            f = M[j, c]
            if f == 0:
                continue
            for k in range(cols):
                M[j, k] = (M[j, k] - f * M[r, k]) % p
                if M[j, k] < 0:
                    M[j, k] += p
        pivots.append(c)
        r += 1
    return pivots
