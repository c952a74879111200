"""Exact linear algebra over GF(p) and Q.

Dense GF(p) elimination is delegated to the selected kernel (compiled or
numpy).  Sparse problems are split into connected components first, which is
what keeps the Ext machinery fast: complexes built from monomial matrices
decompose into many tiny blocks.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .scalars import PrimeField, RationalField


# -- dense primitives ------------------------------------------------------

def _to_gfp_array(rows, ncols, p):
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array([[int(c) % p for c in row] for row in rows], dtype=np.int64)


def rref_qq(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [list(map(Fraction, row)) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(rows, ncols, field):
    """RREF as (list of nonzero rows, pivot columns)."""
    if isinstance(field, PrimeField):
        A = _to_gfp_array(rows, ncols, field.p)
        pivots = kernels.gfp_rref(A, field.p)
        out = [[int(v) for v in A[i]] for i in range(len(pivots))]
        return out, pivots
    m, pivots = rref_qq(rows)
    return m[: len(pivots)], pivots


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[1])


def nullspace(rows, ncols, field):
    """Basis of the right nullspace, as dense vectors of length ncols."""
    red, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def independent_rows(rows, ncols, field):
    """Indices of a maximal independent subset of rows, greedy in order."""
    if isinstance(field, PrimeField):
        p = field.p
        basis = []  # list of (pivot_col, reduced numpy row)
        out = []
        for idx, row in enumerate(rows):
            v = np.array([int(c) % p for c in row], dtype=np.int64)
            for pc, b in basis:
                f = int(v[pc])
                if f:
                    v = (v - f * b) % p
            nz = np.nonzero(v)[0]
            if nz.size:
                pc = int(nz[0])
                v = v * pow(int(v[pc]), p - 2, p) % p
                basis.append((pc, v))
                out.append(idx)
        return out
    basis = []
    out = []
    for idx, row in enumerate(rows):
        v = list(map(Fraction, row))
        for pc, b in basis:
            f = v[pc]
            if f:
                v = [a - f * c for a, c in zip(v, b)]
        pc = next((i for i, a in enumerate(v) if a != 0), None)
        if pc is not None:
            inv = 1 / v[pc]
            basis.append((pc, [a * inv for a in v]))
            out.append(idx)
    return out


# -- sparse problems: connected-component splitting ------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def sparse_rank(entries, nrows, ncols, field):
    """Rank of a sparse matrix given as (row, col, coeff) triples."""
    uf = _UnionFind()
    by_cell = {}
    for r, c, v in entries:
        if field.is_zero(v):
            continue
        by_cell[(r, c)] = field.add(by_cell.get((r, c), field.zero), v)
        uf.union(("r", r), ("c", c))
    comps = {}
    for (r, c), v in by_cell.items():
        if field.is_zero(v):
            continue
        comps.setdefault(uf.find(("r", r)), []).append((r, c, v))
    total = 0
    for cell_list in comps.values():
        rows_idx = sorted({r for r, _, _ in cell_list})
        cols_idx = sorted({c for _, c, _ in cell_list})
        rmap = {r: i for i, r in enumerate(rows_idx)}
        cmap = {c: i for i, c in enumerate(cols_idx)}
        dense = [[field.zero] * len(cols_idx) for _ in rows_idx]
        for r, c, v in cell_list:
            dense[rmap[r]][cmap[c]] = v
        total += rank(dense, len(cols_idx), field)
    return total


def homology_dimension(d_in, d_out, dim_mid, field):
    """dim ker(d_out)/im(d_in) for a three-term piece of a cochain complex.

    ``d_in`` maps into the middle level (entries (mid_index, src_index, c));
    ``d_out`` maps out of it (entries (dst_index, mid_index, c)).
    """
    r_in = sparse_rank(d_in, dim_mid, _max_index(d_in, 1) + 1, field)
    r_out = sparse_rank(d_out, _max_index(d_out, 0) + 1, dim_mid, field)
    return dim_mid - r_in - r_out


def _max_index(entries, pos):
    mx = -1
    for e in entries:
        if e[pos] > mx:
            mx = e[pos]
    return mx


def homology_representatives(d_in, d_out, dim_mid, field):
    """Cocycle representatives of ker(d_out)/im(d_in), as sparse dicts.

    Splits into connected components of the combined support graph, then
    solves each component densely: a kernel basis of d_out is filtered to the
    vectors that extend a column basis of d_in.
    """
    uf = _UnionFind()
    in_cells, out_cells = {}, {}
    for m, s, v in d_in:
        if field.is_zero(v):
            continue
        in_cells[(m, s)] = field.add(in_cells.get((m, s), field.zero), v)
        uf.union(("m", m), ("s", s))
    for d, m, v in d_out:
        if field.is_zero(v):
            continue
        out_cells[(d, m)] = field.add(out_cells.get((d, m), field.zero), v)
        uf.union(("m", m), ("d", d))
    comp_of = {}
    for m in range(dim_mid):
        comp_of[m] = uf.find(("m", m))
    comp_mid = {}
    for m in range(dim_mid):
        comp_mid.setdefault(comp_of[m], []).append(m)
    comp_in, comp_out = {}, {}
    for (m, s), v in in_cells.items():
        if not field.is_zero(v):
            comp_in.setdefault(comp_of[m], []).append((m, s, v))
    for (d, m), v in out_cells.items():
        if not field.is_zero(v):
            comp_out.setdefault(comp_of[m], []).append((d, m, v))

    reps = []
    for key, mids in comp_mid.items():
        mmap = {m: i for i, m in enumerate(mids)}
        nm = len(mids)
        cells_out = comp_out.get(key, [])
        dst = sorted({d for d, _, _ in cells_out})
        dmap = {d: i for i, d in enumerate(dst)}
        dense_out = [[field.zero] * nm for _ in dst]
        for d, m, v in cells_out:
            dense_out[dmap[d]][mmap[m]] = v
        kernel = nullspace(dense_out, nm, field)
        if not kernel:
            continue
        cells_in = comp_in.get(key, [])
        srcs = sorted({s for _, s, _ in cells_in})
        img_cols = []
        for s in srcs:
            col = [field.zero] * nm
            for m, s2, v in cells_in:
                if s2 == s:
                    col[mmap[m]] = v
            img_cols.append(col)
        # keep the kernel vectors that add rank beyond the image columns
        keep = independent_rows(img_cols + kernel, nm, field)
        for i in keep:
            if i >= len(img_cols):
                vec = kernel[i - len(img_cols)]
                reps.append({mids[j]: vec[j] for j in range(nm)
                             if not field.is_zero(vec[j])})
    return reps
