"""Multigraded free resolutions.

Schreyer's method on a Groebner basis gives exact (not minimal) resolutions;
unit entries are then cancelled so Betti numbers come out minimal.  Koszul
complexes are built directly, and the quotient by a power of the irrelevant
ideal is resolved by tensoring blockwise Koszul complexes: the block ideals
live in disjoint variables, so the tensor product of their module resolutions
resolves their product.
"""

from __future__ import annotations

import itertools
import random

from .ring import (Polynomial, _monomial_div, _monomial_divides, _monomial_lcm,
                   _monomial_mul)


class FreeModule:
    """A free graded module ⊕_j S(-a_j), recorded by its generator degrees."""

    def __init__(self, ring, degrees):
        self.ring = ring
        self.degrees = tuple(tuple(d) for d in degrees)
        self.rank = len(self.degrees)

    def slice_dimension(self, u):
        return sum(self.ring.slice_dimension(tuple(x - a for x, a in zip(u, d)))
                   for d in self.degrees)

    def __repr__(self):
        return f"FreeModule(rank {self.rank})"


class FreeResolution:
    """F_0 <- F_1 <- ... <- F_s with polynomial differential matrices.

    ``differentials[i]`` maps F_{i+1} into F_i; entry (r, c) multiplies the
    c-th generator of the source onto the r-th generator of the target.
    """

    def __init__(self, ring, modules, differentials, presented=""):
        self.ring = ring
        self.modules = modules
        self.differentials = differentials
        self.presented = presented

    @property
    def length(self):
        return len(self.modules) - 1

    def betti_numbers(self):
        return tuple(F.rank for F in self.modules)

    def verify(self):
        """Check d.d = 0 and homogeneity of every entry; raises on failure."""
        for i, d in enumerate(self.differentials):
            tgt, src = self.modules[i], self.modules[i + 1]
            for r in range(tgt.rank):
                for c in range(src.rank):
                    p = d[r][c]
                    if p.is_zero():
                        continue
                    want = tuple(a - b for a, b in
                                 zip(src.degrees[c], tgt.degrees[r]))
                    if p.degree != want:
                        raise AssertionError(
                            f"entry ({r},{c}) of d_{i + 1} has degree "
                            f"{p.degree}, expected {want}")
        for i in range(len(self.differentials) - 1):
            prod = _mat_mul(self.ring, self.differentials[i],
                            self.differentials[i + 1])
            for row in prod:
                for p in row:
                    if not p.is_zero():
                        raise AssertionError(f"d_{i + 1} . d_{i + 2} != 0")
        return True

    def euler_slice(self, u):
        """Alternating sum of slice dimensions at twist u.

        Equals dim M_u of the resolved module when the resolution is exact.
        """
        return sum((-1) ** i * F.slice_dimension(u)
                   for i, F in enumerate(self.modules))

    def __repr__(self):
        return (f"FreeResolution({self.presented or 'module'}, "
                f"betti {self.betti_numbers()})")


def _mat_mul(ring, A, B):
    nr = len(A)
    ni = len(B)
    nc = len(B[0]) if B else 0
    out = [[ring.zero() for _ in range(nc)] for _ in range(nr)]
    for r in range(nr):
        for k in range(ni):
            if A[r][k].is_zero():
                continue
            for c in range(nc):
                if not B[k][c].is_zero():
                    out[r][c] = out[r][c] + A[r][k] * B[k][c]
    return out


# -- Schreyer syzygies ------------------------------------------------------

class _ModOrder:
    """Module monomial order; Schreyer-induced orders stack on one another."""

    def __init__(self, ring_key, lead_terms=None, parent=None):
        self.ring_key = ring_key
        self.lead_terms = lead_terms
        self.parent = parent
        self._memo = {}

    def key(self, comp, mono):
        cached = self._memo.get((comp, mono))
        if cached is None:
            if self.lead_terms is None:
                cached = (self.ring_key(mono), -comp)
            else:
                lc, lm = self.lead_terms[comp]
                cached = (self.parent.key(lc, _monomial_mul(mono, lm)), -comp)
            self._memo[(comp, mono)] = cached
        return cached


def _vector_lt(v, morder):
    return max(v, key=lambda cm: morder.key(*cm))


def _vector_sub_scaled(work, vec, shift, factor, fld):
    for (comp, mono), c in vec.items():
        tm = (comp, _monomial_mul(mono, shift))
        cur = work.get(tm, fld.zero)
        val = fld.sub(cur, fld.mul(factor, c))
        if fld.is_zero(val):
            work.pop(tm, None)
        else:
            work[tm] = val


def _divide_vector(v, vecs, lts, morder, fld):
    """Reduce v modulo monic vectors; returns (remainder, quotients)."""
    work = dict(v)
    rem = {}
    quots = [{} for _ in vecs]
    while work:
        cm = _vector_lt(work, morder)
        comp, mono = cm
        c = work[cm]
        hit = None
        for idx, (lcomp, lmono) in enumerate(lts):
            if lcomp == comp and _monomial_divides(lmono, mono):
                hit = idx
                break
        if hit is None:
            rem[cm] = c
            del work[cm]
            continue
        shift = _monomial_div(mono, lts[hit][1])
        q = quots[hit]
        q[shift] = fld.add(q.get(shift, fld.zero), c)
        # the reducer is monic, so this cancels the leading term exactly
        _vector_sub_scaled(work, vecs[hit], shift, c, fld)
    return rem, quots


def _monicize(v, morder, fld):
    cm = _vector_lt(v, morder)
    inv = fld.inv(v[cm])
    return {k: fld.mul(c, inv) for k, c in v.items()}


def _syzygy_step(vecs, morder, fld, nvars):
    """Schreyer syzygies of a monic Groebner basis of module vectors.

    Returns (syzygy vectors, induced order on the new free module); the
    syzygies are again a Groebner basis under the induced order.
    """
    lts = [_vector_lt(v, morder) for v in vecs]
    syz = []
    for j in range(len(vecs)):
        for i in range(j):
            ci, mi = lts[i]
            cj, mj = lts[j]
            if ci != cj:
                continue
            lcm = _monomial_lcm(mi, mj)
            a, b = _monomial_div(lcm, mi), _monomial_div(lcm, mj)
            s = {}
            _vector_sub_scaled(s, vecs[i], a, fld.neg(fld.one), fld)
            _vector_sub_scaled(s, vecs[j], b, fld.one, fld)
            rem, quots = _divide_vector(s, vecs, lts, morder, fld)
            if rem:
                raise AssertionError("input vectors were not a Groebner basis")
            sv = {(i, a): fld.one, (j, b): fld.neg(fld.one)}
            for idx, q in enumerate(quots):
                for mono, c in q.items():
                    key = (idx, mono)
                    val = fld.sub(sv.get(key, fld.zero), c)
                    if fld.is_zero(val):
                        sv.pop(key, None)
                    else:
                        sv[key] = val
            if sv:
                syz.append(sv)
    new_order = _ModOrder(morder.ring_key, lts, parent=morder)
    syz = [_monicize(v, new_order, fld) for v in syz]
    syz.sort(key=lambda v: new_order.key(*_vector_lt(v, new_order)))
    return syz, new_order


def resolve(ideal, max_length=None, minimize=True):
    """Free resolution of the cyclic quotient S/I by iterated syzygies.

    Returns the minimized resolution by default; pass minimize=False for the
    raw Schreyer output.
    """
    ring = ideal.ring
    fld = ring.field
    cap = max(max_length or 0, ring.nvars)
    gb = ideal.groebner()
    modules = [FreeModule(ring, [(0,) * ring.nblocks])]
    diffs = []
    if not gb:
        return FreeResolution(ring, modules, diffs, presented="S")
    modules.append(FreeModule(ring, [g.degree for g in gb]))
    diffs.append([[g for g in gb]])
    vecs = [{(0, m): c for m, c in g.terms.items()} for g in gb]
    morder = _ModOrder(ring.order.key)
    level_degrees = [g.degree for g in gb]
    for _ in range(cap):
        syz, morder = _syzygy_step(vecs, morder, fld, ring.nvars)
        if not syz:
            break
        new_degrees = []
        cols = []
        for v in syz:
            comp, mono = next(iter(v))
            d = tuple(dm + lv for dm, lv in
                      zip(ring.multidegree(mono), level_degrees[comp]))
            new_degrees.append(d)
            col = [ring.zero() for _ in level_degrees]
            for (c2, m2), coeff in v.items():
                col[c2] = col[c2] + ring.monomial(m2, coeff)
            cols.append(col)
        diffs.append([[cols[c][r] for c in range(len(cols))]
                      for r in range(len(level_degrees))])
        modules.append(FreeModule(ring, new_degrees))
        level_degrees = new_degrees
        vecs = syz
    res = FreeResolution(ring, modules, diffs, presented=f"S/{ideal!r}")
    if minimize:
        return minimize_resolution(res)
    return res


def minimize_resolution(res):
    """Cancel unit entries until every differential has no scalar entries.

    Standard Gaussian move on complexes: a unit at (r, c) of d_k removes one
    generator at each end; d_k picks up a Schur complement, the neighbours
    just lose a row or column.
    """
    ring = res.ring
    fld = ring.field
    mods = [list(F.degrees) for F in res.modules]
    diffs = [[row[:] for row in d] for d in res.differentials]
    zero_mono = (0,) * ring.nvars

    def find_unit():
        # entries are homogeneous, so a constant term means a scalar entry
        for k, d in enumerate(diffs):
            for r, row in enumerate(d):
                for c, p in enumerate(row):
                    if zero_mono in p.terms:
                        return k, r, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        k, r, c = hit
        d = diffs[k]
        u_inv = fld.inv(d[r][c].terms[zero_mono])
        nrows, ncols = len(d), len(d[0])
        new = []
        for r2 in range(nrows):
            if r2 == r:
                continue
            row = []
            for c2 in range(ncols):
                if c2 == c:
                    continue
                corr = (d[r2][c] * d[r][c2]).scale(u_inv)
                row.append(d[r2][c2] - corr)
            new.append(row)
        diffs[k] = new
        mods[k].pop(r)
        mods[k + 1].pop(c)
        if k > 0:
            diffs[k - 1] = [[row[c2] for c2 in range(len(row)) if c2 != r]
                            for row in diffs[k - 1]]
        if k + 1 < len(diffs):
            diffs[k + 1] = [row for r2, row in enumerate(diffs[k + 1])
                            if r2 != c]
    while diffs and not mods[-1]:
        mods.pop()
        diffs.pop()
    modules = [FreeModule(ring, degs) for degs in mods]
    return FreeResolution(ring, modules, diffs, presented=res.presented)


# -- Koszul complexes -------------------------------------------------------

def koszul_on_elements(ring, elements, presented=""):
    """The Koszul complex on explicit ring elements, as a FreeResolution.

    Exact when the elements form a regular sequence, in which case it
    resolves S modulo the ideal they generate.
    """
    e = len(elements)
    degs = [f.degree for f in elements]
    modules = []
    subsets = [list(itertools.combinations(range(e), k)) for k in range(e + 1)]
    for k in range(e + 1):
        gd = []
        for T in subsets[k]:
            gd.append(tuple(sum(degs[i][b] for i in T)
                            for b in range(ring.nblocks)))
        modules.append(FreeModule(ring, gd))
    diffs = []
    for k in range(1, e + 1):
        src, tgt = subsets[k], subsets[k - 1]
        index = {T: i for i, T in enumerate(tgt)}
        d = [[ring.zero() for _ in src] for _ in tgt]
        for c, T in enumerate(src):
            for pos, i in enumerate(T):
                rest = T[:pos] + T[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                entry = elements[i] if sign == 1 else -elements[i]
                d[index[rest]][c] = entry
        diffs.append(d)
    return FreeResolution(ring, modules, diffs, presented=presented)


def generic_form(ring, degree, rng):
    fld = ring.field
    monos = ring.slice_monomials(tuple(degree))
    terms = {m: fld(rng.randrange(1, 50)) for m in monos}
    return Polynomial(ring, terms)


def _regular_sequence_probe(ring, forms):
    """Cheap regularity certificate: quotient slice dimensions must match the
    Koszul alternating sum at a few probe twists."""
    from .groebner import Ideal
    degs = [f.degree for f in forms]
    total = tuple(sum(d[b] for d in degs) for b in range(ring.nblocks))
    probes = [total, tuple(t + 1 for t in total)]
    I = Ideal(ring, list(forms))
    for u in probes:
        expect = 0
        for k in range(len(forms) + 1):
            for T in itertools.combinations(range(len(forms)), k):
                shift = tuple(u[b] - sum(degs[i][b] for i in T)
                              for b in range(ring.nblocks))
                expect += (-1) ** k * ring.slice_dimension(shift)
        if I.quotient_slice_dimension(u) != expect:
            return False
    return True


def koszul_resolution(ring, degrees, forms=None, seed=0):
    """Koszul complex on forms of the given multidegrees.

    With no forms supplied, small random forms are drawn and re-drawn until
    they pass a regular-sequence probe.
    """
    if forms is None:
        rng = random.Random(seed)
        for _ in range(32):
            forms = [generic_form(ring, d, rng) for d in degrees]
            if _regular_sequence_probe(ring, forms):
                break
        else:
            raise RuntimeError("could not draw a regular sequence of the "
                               f"requested degrees {degrees}")
    return koszul_on_elements(ring, forms,
                              presented=f"S/CI{tuple(map(tuple, degrees))}")


# -- resolving S modulo powers of the irrelevant ideal ----------------------

class _AugmentedComplex:
    """A free complex resolving an ideal, plus the map of F_0 into S."""

    def __init__(self, ring, degrees_by_level, diffs, augmentation):
        self.ring = ring
        self.degrees_by_level = degrees_by_level
        self.diffs = diffs
        self.augmentation = augmentation


def _block_power_complex(ring, k, t):
    """Truncated Koszul complex resolving the ideal of t-th powers of the
    block-k variables, with its augmentation."""
    powers = []
    for v in ring.block_variables(k):
        p = ring.one()
        for _ in range(t):
            p = p * v
        powers.append(p)
    kos = koszul_on_elements(ring, powers)
    degrees = [list(F.degrees) for F in kos.modules[1:]]
    diffs = kos.differentials[1:]
    aug = list(powers)
    return _AugmentedComplex(ring, degrees, diffs, aug)


def _tensor_augmented(A, B):
    ring = A.ring
    la, lb = len(A.degrees_by_level) - 1, len(B.degrees_by_level) - 1
    levels = []
    index = []
    for n in range(la + lb + 1):
        gens = []
        degs = []
        for p in range(max(0, n - lb), min(n, la) + 1):
            q = n - p
            for i, da in enumerate(A.degrees_by_level[p]):
                for j, db in enumerate(B.degrees_by_level[q]):
                    gens.append((p, i, j))
                    degs.append(tuple(a + b for a, b in zip(da, db)))
        levels.append(degs)
        index.append({g: pos for pos, g in enumerate(gens)})
    diffs = []
    gen_lists = [sorted(index[n], key=index[n].get) for n in range(len(index))]
    for n in range(1, la + lb + 1):
        src = gen_lists[n]
        tgt_index = index[n - 1]
        d = [[ring.zero() for _ in src] for _ in range(len(levels[n - 1]))]
        for c, (p, i, j) in enumerate(src):
            q = n - p
            if p > 0:
                col = A.diffs[p - 1]
                for r2 in range(len(A.degrees_by_level[p - 1])):
                    entry = col[r2][i]
                    if not entry.is_zero():
                        row = tgt_index[(p - 1, r2, j)]
                        d[row][c] = d[row][c] + entry
            if q > 0:
                col = B.diffs[q - 1]
                sign = 1 if p % 2 == 0 else -1
                for r2 in range(len(B.degrees_by_level[q - 1])):
                    entry = col[r2][j]
                    if not entry.is_zero():
                        row = tgt_index[(p, i, r2)]
                        d[row][c] = d[row][c] + (entry if sign == 1 else -entry)
        diffs.append(d)
    aug = []
    for (p, i, j) in gen_lists[0]:
        aug.append(A.augmentation[i] * B.augmentation[j])
    return _AugmentedComplex(ring, levels, diffs, aug)


def irrelevant_power_resolution(ring, t):
    """Free resolution of S modulo the t-th power ideal of the irrelevant
    generators.

    That ideal is the product over factors of the blockwise power ideals;
    disjoint variable blocks make the tensor product of the blockwise module
    resolutions exact, and adjoining S with the product augmentation resolves
    the quotient.
    """
    acc = _block_power_complex(ring, 0, t)
    for k in range(1, ring.nblocks):
        acc = _tensor_augmented(acc, _block_power_complex(ring, k, t))
    modules = [FreeModule(ring, [(0,) * ring.nblocks])]
    modules += [FreeModule(ring, degs) for degs in acc.degrees_by_level]
    diffs = [[list(acc.augmentation)]] + acc.diffs
    return FreeResolution(ring, modules, diffs,
                          presented=f"S/B[{t}]")
