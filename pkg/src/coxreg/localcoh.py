"""Local cohomology supported on the irrelevant ideal, via Ext stabilization.

H^i_B(M)_u is the stabilized value of dim Ext^i(S/B^[t], M)_u, where B^[t] is
generated by the t-th powers of the irrelevant generators (a cofinal system).
The quotient S/B^[t] is resolved once per t; every differential entry of that
resolution is a signed monomial, which makes the Hom-into-S complex split
into strands indexed by the set of variables with negative fine degree.  Each
strand class is a tiny scalar complex, computed once and counted with
multiplicity, so free modules are cheap at any twist.  Quotient modules get
an honest sparse complex on standard-monomial slices; ideals go through the
long exact sequence of 0 -> I -> S -> S/I -> 0 with induced-map ranks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .groebner import normal_form
from .resolution import irrelevant_power_resolution
from .ring import _monomial_mul
from .scalars import binomial


class StabilizationNotReached(RuntimeError):
    """The Ext values kept moving up to the t cap; raise the cap to retry."""

    def __init__(self, values, t_cap):
        super().__init__(
            f"Ext dimensions {values} did not repeat three times by t={t_cap}")
        self.values = values
        self.t_cap = t_cap


class TwistedFree:
    """The free module S(-shift)."""

    def __init__(self, ring, shift=None):
        self.ring = ring
        self.shift = tuple(shift) if shift is not None else (0,) * ring.nblocks


class CyclicQuotient:
    """The module S/I."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.ring = ideal.ring


class IdealModule:
    """The ideal I viewed as a submodule of S."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.ring = ideal.ring


@dataclass
class LocalCohomologyRequest:
    module: object
    index: int
    twist: tuple
    t_start: int = 2
    t_cap: int = 8

    def __post_init__(self):
        if self.t_start < 1 or self.t_cap < self.t_start + 2:
            raise ValueError("need t_start >= 1 and t_cap >= t_start + 2")


@lru_cache(maxsize=None)
def _bounded_count(total, parts, cap):
    """Tuples of `parts` ints in [0, cap] summing to `total`."""
    if total < 0 or total > parts * cap:
        return 0
    if parts == 0:
        return 1 if total == 0 else 0
    return sum(_bounded_count(total - v, parts - 1, cap)
               for v in range(min(cap, total) + 1))


def _bounded_tuples(total, parts, cap):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for v in range(min(cap, total), -1, -1):
        for rest in _bounded_tuples(total - v, parts - 1, cap):
            yield (v,) + rest


class ExtEngine:
    """All Ext^i(S/B^[t], -) machinery for one ring at one power t."""

    _cache = {}

    def __init__(self, ring, t):
        self.ring = ring
        self.t = t
        self.field = ring.field
        self.resolution = irrelevant_power_resolution(ring, t)
        self._build_labels()
        self._strands = {}
        self._quotient = {}
        self._nf_cache = {}

    @classmethod
    def get(cls, ring, t):
        key = (ring, t)
        if key not in cls._cache:
            cls._cache[key] = cls(ring, t)
        return cls._cache[key]

    def _build_labels(self):
        """Monomial label of each generator: differentials multiply by signed
        monomials, so labels are well defined up to the common fine grading."""
        res = self.resolution
        nv = self.ring.nvars
        labels = [[(0,) * nv]]
        coeffs = []
        for j, d in enumerate(res.differentials):
            prev = labels[j]
            level = [None] * res.modules[j + 1].rank
            cmat = {}
            for r, row in enumerate(d):
                for c, p in enumerate(row):
                    if p.is_zero():
                        continue
                    (mono, coeff), = p.terms.items()
                    cmat[(r, c)] = coeff
                    lab = tuple(a + b for a, b in zip(prev[r], mono))
                    if level[c] is None:
                        level[c] = lab
                    elif level[c] != lab:
                        raise AssertionError("inconsistent monomial labels")
            labels.append(level)
            coeffs.append(cmat)
        self.labels = labels
        self.supports = [[frozenset(i for i, e in enumerate(lab) if e)
                          for lab in level] for level in labels]
        self.entry_coeffs = coeffs

    @property
    def length(self):
        return len(self.resolution.modules) - 1

    # -- strand classes (Hom into S) ------------------------------------

    def _strand_class(self, neg):
        """Scalar subcomplex spanned by generators whose label support
        contains every negative coordinate; same shape for every strand in
        the class."""
        if neg in self._strands:
            return self._strands[neg]
        nodes = [[c for c in range(self.resolution.modules[j].rank)
                  if neg <= self.supports[j][c]]
                 for j in range(self.length + 1)]
        idx = [{c: k for k, c in enumerate(lvl)} for lvl in nodes]
        diffs = []
        for j in range(self.length):
            tri = []
            for (r, c), coeff in self.entry_coeffs[j].items():
                if r in idx[j] and c in idx[j + 1]:
                    tri.append((idx[j + 1][c], idx[j][r], coeff))
            diffs.append(tri)
        dims = []
        reps = []
        for i in range(self.length + 1):
            d_in = diffs[i - 1] if i >= 1 else []
            d_out = [(dst, mid, cf) for (dst, mid, cf) in diffs[i]] \
                if i < self.length else []
            mid = len(nodes[i])
            dims.append(linalg.homology_dimension(d_in, d_out, mid, self.field)
                        if mid else 0)
            reps.append(linalg.homology_representatives(d_in, d_out, mid,
                                                        self.field)
                        if mid else [])
        out = (nodes, dims, reps)
        self._strands[neg] = out
        return out

    def _negative_patterns(self):
        blocks = []
        for k in range(self.ring.nblocks):
            s = self.ring.block_starts[k]
            coords = range(s, s + self.ring.block_sizes[k])
            blocks.append([frozenset(sub) for n in range(len(list(coords)) + 1)
                           for sub in itertools.combinations(coords, n)])
        for combo in itertools.product(*blocks):
            yield frozenset().union(*combo)

    def _strand_count(self, neg, u):
        """Number of fine degrees with the given negative coordinate set and
        block degrees u."""
        total = 1
        for k in range(self.ring.nblocks):
            s = self.ring.block_starts[k]
            size = self.ring.block_sizes[k]
            nneg = len([i for i in neg if s <= i < s + size])
            nfree = size - nneg
            uk = u[k]
            ways = 0
            for ssum in range(-self.t * nneg, -nneg + 1) if nneg else [0]:
                negways = _bounded_count(-ssum - nneg, nneg, self.t - 1) \
                    if nneg else 1
                rest = uk - ssum
                if nfree == 0:
                    freeways = 1 if rest == 0 else 0
                else:
                    freeways = binomial(rest + nfree - 1, nfree - 1) \
                        if rest >= 0 else 0
                ways += negways * freeways
            total *= ways
            if total == 0:
                return 0
        return total

    def _strand_degrees(self, neg, u):
        """Enumerate the fine degrees of one class at block degrees u."""
        per_block = []
        for k in range(self.ring.nblocks):
            s = self.ring.block_starts[k]
            size = self.ring.block_sizes[k]
            block_neg = sorted(i for i in neg if s <= i < s + size)
            free = [i for i in range(s, s + size) if i not in neg]
            opts = []
            lo = -self.t * len(block_neg)
            for ssum in range(lo, -len(block_neg) + 1) if block_neg else [0]:
                for vt in _bounded_tuples(-ssum - len(block_neg),
                                          len(block_neg), self.t - 1):
                    negvals = {i: -v - 1 for i, v in zip(block_neg, vt)}
                    rest = u[k] - ssum
                    if rest < 0:
                        continue
                    for ft in _compositions_iter(rest, len(free)):
                        vals = dict(negvals)
                        vals.update({i: v for i, v in zip(free, ft)})
                        opts.append(vals)
            per_block.append(opts)
        for combo in itertools.product(*per_block):
            w = [0] * self.ring.nvars
            for vals in combo:
                for i, v in vals.items():
                    w[i] = v
            yield tuple(w)

    def free_ext_dim(self, i, u, shift=None):
        """dim Ext^i(S/B^[t], S(-shift))_u by strand-class counting."""
        if i < 0 or i > self.length:
            return 0
        if shift is not None:
            u = tuple(a - b for a, b in zip(u, shift))
        total = 0
        for neg in self._negative_patterns():
            count = self._strand_count(neg, u)
            if count == 0:
                continue
            _, dims, _ = self._strand_class(neg)
            if dims[i]:
                total += dims[i] * count
        return total

    # -- quotient modules -----------------------------------------------

    def _nf_monomial(self, ideal, mono):
        key = (id(ideal), mono)
        hit = self._nf_cache.get(key)
        if hit is None:
            hit = normal_form(self.ring.monomial(mono), ideal.groebner())
            self._nf_cache[key] = hit
        return hit

    def quotient_complex(self, ideal, u):
        """Sparse Hom complex into S/I at twist u, on standard monomials."""
        key = (id(ideal), tuple(u))
        if key in self._quotient:
            return self._quotient[key]
        res = self.resolution
        bases = []
        index = []
        for j in range(self.length + 1):
            lvl = []
            for c, a in enumerate(res.modules[j].degrees):
                v = tuple(x + y for x, y in zip(u, a))
                for m in ideal.standard_monomials(v):
                    lvl.append((c, m))
            bases.append(lvl)
            index.append({cm: k for k, cm in enumerate(lvl)})
        diffs = []
        for j in range(self.length):
            tri = []
            d = res.differentials[j]
            for pos, (r, m) in enumerate(bases[j]):
                for c in range(res.modules[j + 1].rank):
                    p = d[r][c]
                    if p.is_zero():
                        continue
                    (mono, coeff), = p.terms.items()
                    prod = _monomial_mul(m, mono)
                    if (c, prod) in index[j + 1]:
                        tri.append((index[j + 1][(c, prod)], pos, coeff))
                    else:
                        nf = self._nf_monomial(ideal, prod)
                        for m2, c2 in nf.terms.items():
                            tri.append((index[j + 1][(c, m2)], pos,
                                        self.field.mul(coeff, c2)))
            diffs.append(tri)
        out = (bases, index, diffs)
        self._quotient[key] = out
        return out

    def quotient_ext_dim(self, ideal, i, u):
        """dim Ext^i(S/B^[t], S/I)_u."""
        if i < 0 or i > self.length:
            return 0
        bases, _, diffs = self.quotient_complex(ideal, u)
        d_in = diffs[i - 1] if i >= 1 else []
        d_out = diffs[i] if i < self.length else []
        return linalg.homology_dimension(d_in, d_out, len(bases[i]),
                                         self.field)

    # -- the connecting map S -> S/I on Ext -----------------------------

    def alpha_rank(self, ideal, i, u):
        """Rank of Ext^i(S/B^[t], S)_u -> Ext^i(S/B^[t], S/I)_u.

        Free-side cocycle representatives are harvested strand by strand,
        projected onto standard monomials, and ranked modulo the boundaries
        of the quotient complex.
        """
        if self.free_ext_dim(i, u) == 0:
            return 0
        bases, index, diffs = self.quotient_complex(ideal, u)
        if not bases[i]:
            return 0
        fld = self.field
        ncols_total = len(bases[i])
        cols = []
        if i >= 1 and bases[i - 1]:
            bmat = {}
            for dst, src, cf in diffs[i - 1]:
                bmat.setdefault(src, {})[dst] = fld.add(
                    bmat.get(src, {}).get(dst, fld.zero), cf)
            for src in range(len(bases[i - 1])):
                col = [fld.zero] * ncols_total
                for dst, cf in bmat.get(src, {}).items():
                    col[dst] = cf
                cols.append(col)
        nboundary = len(cols)
        for neg in self._negative_patterns():
            nodes, dims, reps = self._strand_class(neg)
            if not dims[i]:
                continue
            if self._strand_count(neg, u) == 0:
                continue
            for w in self._strand_degrees(neg, u):
                for rep in reps[i]:
                    col = [fld.zero] * ncols_total
                    for node_pos, coeff in rep.items():
                        c = nodes[i][node_pos]
                        mono = tuple(wi + li for wi, li in
                                     zip(w, self.labels[i][c]))
                        if (c, mono) in index[i]:
                            col[index[i][(c, mono)]] = fld.add(
                                col[index[i][(c, mono)]], coeff)
                        else:
                            nf = self._nf_monomial(ideal, mono)
                            for m2, c2 in nf.terms.items():
                                k = index[i][(c, m2)]
                                col[k] = fld.add(col[k], fld.mul(coeff, c2))
                    cols.append(col)
        if len(cols) == nboundary:
            return 0
        full = linalg.rank(cols, ncols_total, fld)
        base = linalg.rank(cols[:nboundary], ncols_total, fld) \
            if nboundary else 0
        return full - base


def _compositions_iter(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_iter(total - first, parts - 1):
            yield (first,) + rest


def ext_slice_dimension(module, i, u, t):
    """dim Ext^i(S/B^[t], M)_u for a free, cyclic-quotient, or ideal M."""
    u = tuple(u)
    engine = ExtEngine.get(module.ring, t)
    if isinstance(module, TwistedFree):
        return engine.free_ext_dim(i, u, shift=module.shift)
    if isinstance(module, CyclicQuotient):
        return engine.quotient_ext_dim(module.ideal, i, u)
    if isinstance(module, IdealModule):
        ideal = module.ideal
        if i < 0:
            return 0
        if i == 0:
            return engine.free_ext_dim(0, u) - engine.alpha_rank(ideal, 0, u)
        coker = 0
        qdim = engine.quotient_ext_dim(ideal, i - 1, u)
        if qdim:
            coker = qdim - engine.alpha_rank(ideal, i - 1, u)
        kerdim = 0
        fdim = engine.free_ext_dim(i, u)
        if fdim:
            if engine.quotient_ext_dim(ideal, i, u) == 0:
                kerdim = fdim
            else:
                kerdim = fdim - engine.alpha_rank(ideal, i, u)
        return coker + kerdim
    raise TypeError(f"unsupported module type {type(module).__name__}")


def local_cohomology_dim(module, i=None, u=None, t_start=2, t_cap=8):
    """Stabilized dim H^i_B(M)_u; raises StabilizationNotReached at the cap.

    Accepts either a LocalCohomologyRequest or (module, i, u) directly.
    """
    if isinstance(module, LocalCohomologyRequest):
        req = module
        module, i, u = req.module, req.index, req.twist
        t_start, t_cap = req.t_start, req.t_cap
    values = []
    for t in range(t_start, t_cap + 1):
        values.append(ext_slice_dimension(module, i, u, t))
        if len(values) >= 3 and values[-1] == values[-2] == values[-3]:
            return values[-1]
    raise StabilizationNotReached(values, t_cap)
