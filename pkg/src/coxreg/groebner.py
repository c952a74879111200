"""Groebner bases and ideal arithmetic in Cox rings.

Buchberger with normal pair selection plus the product and chain criteria,
always finishing with a reduced basis.  Intersections go through an auxiliary
variable of multidegree zero, so multihomogeneity survives elimination;
saturation by a single element uses the usual trick with 1 - t*g.
"""

from __future__ import annotations

import itertools

from . import linalg
from .ring import (BlockElim, Grevlex, Polynomial, ProductSpace,
                   _monomial_div, _monomial_divides, _monomial_lcm,
                   _monomial_mul)


def normal_form(f, basis, order=None):
    """Fully reduce f modulo a list of polynomials."""
    if not basis:
        return f
    ring = f.ring
    order = order or ring.order
    fld = ring.field
    key = order.key
    table = [(g.leading_monomial(order), fld.inv(g.leading_coefficient(order)), g)
             for g in basis if not g.is_zero()]
    rem = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, lc_inv, g in table:
            if _monomial_divides(lm, m):
                hit = (lm, lc_inv, g)
                break
        if hit is None:
            rem[m] = c
            continue
        lm, lc_inv, g = hit
        factor = fld.mul(c, lc_inv)
        shift = _monomial_div(m, lm)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            tm = _monomial_mul(gm, shift)
            v = fld.sub(work.get(tm, fld.zero), fld.mul(factor, gc))
            if fld.is_zero(v):
                work.pop(tm, None)
            else:
                work[tm] = v
    return Polynomial(ring, rem)


def _s_polynomial(f, g, order):
    ring = f.ring
    fld = ring.field
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = _monomial_lcm(lf, lg)
    mf = ring.monomial(_monomial_div(lcm, lf), fld.inv(f.leading_coefficient(order)))
    mg = ring.monomial(_monomial_div(lcm, lg), fld.inv(g.leading_coefficient(order)))
    return mf * f - mg * g


def buchberger(gens, order=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    order = order or ring.order
    key = order.key
    basis = [g.monic(order) for g in gens]
    lms = [g.leading_monomial(order) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        i, j = min(pairs, key=lambda p: key(_monomial_lcm(lms[p[0]], lms[p[1]])))
        pairs.discard((i, j))
        lcm = _monomial_lcm(lms[i], lms[j])
        if lcm == _monomial_mul(lms[i], lms[j]):
            continue
        # chain criterion, strict version needing no pair bookkeeping
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _monomial_divides(lms[k], lcm):
                continue
            if (_monomial_lcm(lms[i], lms[k]) != lcm
                    and _monomial_lcm(lms[j], lms[k]) != lcm):
                skip = True
                break
        if skip:
            continue
        r = normal_form(_s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        n = len(basis)
        basis.append(r)
        lms.append(r.leading_monomial(order))
        pairs.update((n, t) for t in range(n))
    return _reduce_basis(basis, order)


def _reduce_basis(basis, order):
    key = order.key
    by_lm = sorted(basis, key=lambda g: key(g.leading_monomial(order)))
    minimal = []
    min_lms = []
    for g in by_lm:
        lm = g.leading_monomial(order)
        if not any(_monomial_divides(p, lm) for p in min_lms):
            minimal.append(g)
            min_lms.append(lm)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order)
        if not r.is_zero():
            out.append(r.monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)))
    return out


class Ideal:
    """A multihomogeneous ideal with cached Groebner bases.

    Generators are checked to be homogeneous in the Z^l grading; everything
    downstream relies on that.
    """

    def __init__(self, ring, gens, _check=True):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        if _check:
            for g in self.gens:
                if not g.is_homogeneous():
                    raise ValueError(f"generator is not multihomogeneous: {g}")
        self._gb = {}
        self._saturation = None

    @classmethod
    def parse(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner(self, order=None):
        order = order or self.ring.order
        if order not in self._gb:
            self._gb[order] = buchberger(self.gens, order)
        return self._gb[order]

    def normal_form(self, f, order=None):
        return normal_form(f, self.groebner(order), order or self.ring.order)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def is_zero(self):
        return not self.groebner()

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, tuple(self.groebner())))

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens over {self.ring!r})"

    # -- graded slices ----------------------------------------------------

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.groebner()]

    def standard_monomials(self, u):
        """Monomials of multidegree u outside the leading-term ideal."""
        lms = self.leading_monomials()
        return [m for m in self.ring.slice_monomials(u)
                if not any(_monomial_divides(lm, m) for lm in lms)]

    def quotient_slice_dimension(self, u):
        """dim_k (S/I)_u, counted by standard monomials."""
        return len(self.standard_monomials(u))

    def slice_dimension(self, u):
        return self.ring.slice_dimension(u) - self.quotient_slice_dimension(u)

    def slice_basis(self, u):
        """Polynomials spanning I_u: monomial multiples of the Groebner
        basis, pruned to an independent set."""
        fld = self.ring.field
        monos = self.ring.slice_monomials(u)
        if not monos:
            return []
        col = {m: i for i, m in enumerate(monos)}
        cands = []
        for g in self.groebner():
            shift = tuple(a - b for a, b in zip(u, g.degree))
            if any(s < 0 for s in shift):
                continue
            for m in self.ring.slice_monomials(shift):
                cands.append(self.ring.monomial(m) * g)
        rows = []
        for p in cands:
            row = [fld.zero] * len(monos)
            for m, c in p.terms.items():
                row[col[m]] = c
            rows.append(row)
        keep = linalg.independent_rows(rows, len(monos), fld)
        return [cands[i] for i in keep]

    # -- derived ideals ----------------------------------------------------

    def power(self, m):
        if m < 0:
            raise ValueError("negative ideal power")
        if m == 0:
            return Ideal(self.ring, [self.ring.one()], _check=False)
        out = []
        for combo in itertools.combinations_with_replacement(self.gens, m):
            p = combo[0]
            for q in combo[1:]:
                p = p * q
            out.append(p)
        return Ideal(self.ring, out, _check=False)

    def saturation(self, with_respect_to=None):
        """Saturate, by default with the irrelevant ideal of the product."""
        if with_respect_to is None:
            if self._saturation is None:
                self._saturation = saturate_irrelevant(self)
            return self._saturation
        return saturate(self, with_respect_to)

    # -- dimension ---------------------------------------------------------

    def krull_dimension(self):
        """Krull dimension of S/I, from the leading-term ideal."""
        supports = [frozenset(i for i, e in enumerate(lm) if e)
                    for lm in self.leading_monomials()]
        if frozenset() in supports:
            return -1
        nvars = self.ring.nvars
        allvars = range(nvars)
        for size in range(nvars, -1, -1):
            for T in itertools.combinations(allvars, size):
                tset = set(T)
                if not any(s <= tset for s in supports):
                    return size
        return 0

    def codimension(self):
        """Codimension of the vanishing locus inside the product.

        The cone over the subvariety has dimension krull - l less than the
        cone over the product, factor by factor.
        """
        return self.ring.nvars - self.krull_dimension()


# -- elimination-based operations ------------------------------------------

class _ExtendedRing(ProductSpace):
    """Base ring with one auxiliary variable of multidegree zero in front."""

    def __init__(self, base):
        ProductSpace.__init__(self, base.factors, base.field)
        self.base = base
        self.nvars = base.nvars + 1
        self.variable_names = ("t_",) + base.variable_names
        self._name_index = {n: i for i, n in enumerate(self.variable_names)}
        self.order = BlockElim(1)

    def multidegree(self, exps):
        return self.base.multidegree(exps[1:])

    def __eq__(self, other):
        return isinstance(other, _ExtendedRing) and other.base == self.base

    def __hash__(self):
        return hash(("ext", self.base))

    def lift(self, poly, t_exp=0):
        return Polynomial(self, {(t_exp,) + m: c for m, c in poly.terms.items()})

    def project(self, poly):
        return Polynomial(self.base, {m[1:]: c for m, c in poly.terms.items()})

    def aux(self):
        return self.variable(0)


def _eliminate_aux(ext, gens):
    gb = buchberger(gens, ext.order)
    return [ext.project(g) for g in gb if all(m[0] == 0 for m in g.terms)]


def intersect(I, J):
    """I cap J via t*I + (1 - t)*J with the auxiliary variable eliminated."""
    ext = _ExtendedRing(I.ring)
    t = ext.aux()
    one = ext.one()
    gens = [t * ext.lift(f) for f in I.groebner()]
    gens += [(one - t) * ext.lift(g) for g in J.groebner()]
    return Ideal(I.ring, _eliminate_aux(ext, gens), _check=False)


def exact_divide(f, g):
    """f / g when g divides f exactly; raises otherwise."""
    ring = f.ring
    fld = ring.field
    order = ring.order
    lg = g.leading_monomial(order)
    lc_inv = fld.inv(g.leading_coefficient(order))
    work = dict(f.terms)
    quot = {}
    key = order.key
    while work:
        m = max(work, key=key)
        if not _monomial_divides(lg, m):
            raise ValueError("division is not exact")
        shift = _monomial_div(m, lg)
        c = fld.mul(work[m], lc_inv)
        quot[shift] = c
        for gm, gc in g.terms.items():
            tm = _monomial_mul(gm, shift)
            v = fld.sub(work.get(tm, fld.zero), fld.mul(c, gc))
            if fld.is_zero(v):
                work.pop(tm, None)
            else:
                work[tm] = v
    return Polynomial(ring, quot)


def colon(I, g):
    """The colon ideal (I : g) for a single polynomial g."""
    if isinstance(g, Ideal):
        out = None
        for gen in g.gens:
            c = colon(I, gen)
            out = c if out is None else intersect(out, c)
        return out if out is not None else I
    principal = Ideal(I.ring, [g], _check=False)
    meet = intersect(I, principal)
    return Ideal(I.ring, [exact_divide(h, g) for h in meet.groebner()],
                 _check=False)


def saturate_by_element(I, g):
    """(I : g^infinity) by eliminating t from I + (1 - t*g)."""
    ext = _ExtendedRing(I.ring)
    gens = [ext.lift(f) for f in I.groebner()]
    gens.append(ext.one() - ext.aux() * ext.lift(g))
    return Ideal(I.ring, _eliminate_aux(ext, gens), _check=False)


def saturate(I, J):
    """(I : J^infinity), intersecting the saturations by each generator."""
    if isinstance(J, Polynomial):
        return saturate_by_element(I, J)
    out = None
    for g in J.gens if isinstance(J, Ideal) else J:
        s = saturate_by_element(I, g)
        out = s if out is None else intersect(out, s)
    return out if out is not None else I


def saturate_irrelevant(I):
    """Saturation with the irrelevant ideal of the product.

    Done block by block: saturating with the ideal of one factor's variables,
    then the next, agrees with saturating by the full irrelevant ideal.
    """
    ring = I.ring
    out = I
    for k in range(ring.nblocks):
        out = saturate(out, ring.block_variables(k))
    return out


def is_saturated(I):
    return I.saturation() == I


def _binary_form_mul(a, b, fld):
    out = [fld.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if fld.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = fld.add(out[i + j], fld.mul(ca, cb))
    return out


def substitution_map_rank(ring, parametrization, u):
    """Rank of the degree-u slice of a substitution into binary forms.

    Each ring variable is sent to a binary form in auxiliary variables
    t0, t1, given as a coefficient tuple (c_0, ..., c_d) for
    c_0*t0^d + c_1*t0^(d-1)*t1 + ... + c_d*t1^d.  Forms within a variable
    block must share a degree, so the slice S_u maps into a single graded
    piece of k[t0, t1]; the rank of that linear map is returned.
    """
    fld = ring.field
    forms = [[fld(c) for c in f] for f in parametrization]
    if len(forms) != ring.nvars:
        raise ValueError("one binary form per variable is required")
    for k in range(ring.nblocks):
        s = ring.block_starts[k]
        degs = {len(forms[i]) - 1 for i in range(s, s + ring.block_sizes[k])}
        if len(degs) != 1:
            raise ValueError(f"block {k} has forms of mixed degrees")
    monos = ring.slice_monomials(tuple(u))
    if not monos:
        return 0
    target_deg = sum((len(forms[i]) - 1) * e for i, e in enumerate(monos[0]))
    rows = []
    for m in monos:
        img = [fld.one]
        for i, e in enumerate(m):
            for _ in range(e):
                img = _binary_form_mul(img, forms[i], fld)
        row = img + [fld.zero] * (target_deg + 1 - len(img))
        rows.append(row)
    return linalg.rank(rows, target_deg + 1, fld)
