"""Mechanized vanishing statements: hypothesis checkers and verifiers.

Everything here reduces to cone arithmetic on multidegrees plus calls into
the exact cohomology engines.  Checkers return reports with explicit
witnesses when a hypothesis fails, so a false answer is always auditable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .cohomology import koszul_chop, line_bundle_h, sheaf_cohomology_dim
from .groebner import Ideal, saturate_irrelevant
from .localcoh import CyclicQuotient, IdealModule, TwistedFree
from .resolution import generic_form, koszul_resolution
from .ring import ProductSpace


def is_nef(space, a):
    return all(x >= 0 for x in a)


def is_big_nef(space, a):
    return all(x >= 1 for x in a)


@dataclass
class DivisorOnProduct:
    degree: tuple
    form: object = None

    def __post_init__(self):
        self.degree = tuple(self.degree)
        if self.form is not None and self.form.degree != self.degree:
            raise ValueError("explicit form degree does not match")


@dataclass
class HypothesisReport:
    holds: bool
    witnesses: list = field(default_factory=list)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _subset_twists(degrees, e, m, L, nblocks):
    """All (subset, first choice, twist) triples of the main hypothesis."""
    for subset in itertools.combinations(range(len(degrees)), e):
        for s1 in subset:
            twist = list(L)
            for b in range(nblocks):
                twist[b] -= (m + 1) * degrees[s1][b]
                for s in subset:
                    if s != s1:
                        twist[b] -= degrees[s][b]
            yield subset, s1, tuple(twist)


def check_theorem_main(space, generators, e, m, L, t_cap=8):
    """Hypothesis-and-conclusion check of the main vanishing statement.

    The hypothesis asks that L minus (m+1) times a chosen first degree minus
    the rest of each e-subset stays big and nef.  When it holds, the engine
    verifies h^i of the saturated (m+1)-st ideal power twisted by K+L for
    every 1 <= i <= dim X, and reports the outcome.
    """
    L = tuple(L)
    degrees = [g.degree for g in generators]
    forms = [g.form for g in generators]
    if any(f is None for f in forms):
        raise ValueError("explicit forms are required for verification")
    I = Ideal(space, forms)
    sat = I.saturation()
    if sat.codimension() != e:
        raise ValueError(
            f"saturated ideal has codimension {sat.codimension()}, not {e}")
    witnesses = [(subset, s1, twist)
                 for subset, s1, twist in _subset_twists(degrees, e, m, L,
                                                         space.nblocks)
                 if not is_big_nef(space, twist)]
    report = HypothesisReport(holds=not witnesses, witnesses=witnesses)
    if not report.holds:
        return report, False
    power = sat if m == 0 else saturate_irrelevant(sat.power(m + 1))
    target = tuple(k + l for k, l in zip(space.canonical_degree, L))
    for i in range(1, space.dim + 1):
        if sheaf_cohomology_dim(IdealModule(power), i, target,
                                t_cap=t_cap) != 0:
            return report, False
    return report, True


def regularity_region_predicted(space, generator_degrees, dimY, L, path):
    """Predicted regularity of the ideal sheaf at K+L from degree data alone.

    True iff L minus each e-subset of generator degrees minus every natural
    shift of total weight dimY+1 is big and nef.  The corollary path demands
    all generator degrees componentwise positive; the remark path instead
    demands that the structure sheaf is (K+L)-regular, checked in closed
    form.
    """
    L = tuple(L)
    degrees = [tuple(d) for d in generator_degrees]
    e = space.dim - dimY
    if path == "corollary":
        if any(min(d) < 1 for d in degrees):
            raise ValueError("a generator degree has a zero component; "
                             "use path='remark'")
    elif path == "remark":
        target = tuple(k + l for k, l in zip(space.canonical_degree, L))
        ok, _ = is_L_regular(TwistedFree(space), target)
        if not ok:
            raise ValueError("structure sheaf is not regular at K+L; the "
                             "remark path does not apply")
    else:
        raise ValueError(f"unknown path {path!r}")
    for subset in itertools.combinations(range(len(degrees)), e):
        base = [L[b] - sum(degrees[s][b] for s in subset)
                for b in range(space.nblocks)]
        for u in _compositions(dimY + 1, space.nblocks):
            if not is_big_nef(space, [base[b] - u[b]
                                      for b in range(space.nblocks)]):
                return False
    return True


def is_L_regular(M, L, t_cap=8):
    """Direct regularity check: h^i(M~ x O(L-u)) = 0 for all natural shifts
    u of total weight i, 1 <= i <= dim X.  Returns (ok, witnesses)."""
    if isinstance(M, Ideal):
        M = IdealModule(M)
    space = M.ring
    L = tuple(L)
    witnesses = []
    for i in range(1, space.dim + 1):
        for u in _compositions(i, space.nblocks):
            twist = tuple(L[b] - u[b] for b in range(space.nblocks))
            h = sheaf_cohomology_dim(M, i, twist, t_cap=t_cap)
            if h != 0:
                witnesses.append((i, u, h))
    return not witnesses, witnesses


def sharpness_witness(space, e, big_nef_degrees, N, cross_check=False,
                      seed=0):
    """The nonvanishing slot showing the big-and-nef hypothesis is sharp.

    For a complete intersection of divisors of the given degrees, computes
    h^i(I_Y x K x O(sum of degrees) x N) by the Koszul chop and returns the
    (i, dimension) of the nonzero entry, or (None, 0) when the whole range
    vanishes.  Optionally cross-checks against the Ext engine on explicit
    generic forms.
    """
    degrees = [tuple(d) for d in big_nef_degrees]
    if any(min(d) < 1 for d in degrees):
        raise ValueError("divisor degrees must be big and nef")
    N = tuple(N)
    twist = tuple(k + sum(d[b] for d in degrees) + N[b]
                  for b, k in enumerate(space.canonical_degree))
    dims, valid = koszul_chop(space, degrees, twist)
    if not valid:
        raise RuntimeError("intermediate vanishing failed; the chop makes "
                           "no claim here")
    hits = [(i, d) for i, d in enumerate(dims) if d]
    if cross_check:
        kos = koszul_resolution(space, degrees, seed=seed)
        forms = [kos.differentials[0][0][c].scale(space.field.one)
                 for c in range(len(degrees))]
        I = Ideal(space, [f if f.leading_coefficient() else f
                          for f in forms])
        for i in range(space.dim + 1):
            got = sheaf_cohomology_dim(IdealModule(I), i, twist)
            want = dims[i]
            if got != want:
                raise AssertionError(
                    f"chop and Ext engine disagree at i={i}: {want} vs {got}")
    if not hits:
        return None, 0
    return hits[0]


def multiplication_map_check(space, L1, L2, mode="direct-rank",
                             allow_large=False, t_cap=8):
    """Surjectivity of the section multiplication H0(L1) x H0(L2) -> H0(L1+L2).

    direct-rank multiplies monomial bases and compares the span with the
    closed-form target dimension; diagonal-vanishing forms X x X with the
    diagonal ideal of blockwise 2x2 minors and tests h^1 of the adjoint
    twist.  The diagonal route is guarded to small ambient rings unless
    allow_large is set.
    """
    L1, L2 = tuple(L1), tuple(L2)
    if mode == "direct-rank":
        target = tuple(a + b for a, b in zip(L1, L2))
        want = space.slice_dimension(target)
        if want == 0:
            return True
        col = {m: i for i, m in enumerate(space.slice_monomials(target))}
        fld = space.field
        products = set()
        for m1 in space.slice_monomials(L1):
            for m2 in space.slice_monomials(L2):
                products.add(tuple(a + b for a, b in zip(m1, m2)))
        rows = []
        for m in products:
            row = [fld.zero] * len(col)
            row[col[m]] = fld.one
            rows.append(row)
        return linalg.rank(rows, len(col), fld) == want
    if mode == "diagonal-vanishing":
        if 2 * space.nvars > 8 and not allow_large:
            raise ValueError("diagonal mode wants <= 8 ambient variables; "
                             "pass allow_large=True to override")
        double = ProductSpace(space.factors + space.factors,
                              field=space.field)
        gens = []
        for k in range(space.nblocks):
            left = double.block_variables(k)
            right = double.block_variables(space.nblocks + k)
            for i in range(len(left)):
                for j in range(i + 1, len(left)):
                    gens.append(left[i] * right[j] - left[j] * right[i])
        I_diag = Ideal(double, gens)
        twist = tuple(k + l for k, l in
                      zip(double.canonical_degree, L1 + L2))
        return sheaf_cohomology_dim(IdealModule(I_diag), 1, twist,
                                    t_cap=t_cap) == 0
    raise ValueError(f"unknown mode {mode!r}")


def multiplication_hypothesis(space, L1, L2, ample_degrees):
    """Report whether each L_j minus the sum of the given ample degrees is
    big and nef, the hypothesis under which surjectivity is guaranteed."""
    total = [sum(a[b] for a in ample_degrees) for b in range(space.nblocks)]
    witnesses = []
    for name, L in (("L1", tuple(L1)), ("L2", tuple(L2))):
        reduced = tuple(L[b] - total[b] for b in range(space.nblocks))
        if not is_big_nef(space, reduced):
            witnesses.append((name, reduced))
    return HypothesisReport(holds=not witnesses, witnesses=witnesses)


def wahl_vanishing_check(space, m, l1, l2):
    """Vanishing controlling the m-th Wahl (Gaussian) map on the line.

    On P1 x P1 the diagonal is the (1,1) divisor, so the (m+1)-st power of
    its ideal sheaf is O(-(m+1), -(m+1)) and the adjoint h^1 collapses to a
    closed-form line-bundle computation.
    """
    if space.factors != (1,):
        raise ValueError("the Wahl reduction is implemented for P(1)")
    double = ProductSpace((1, 1), field=space.field)
    return line_bundle_h(double, (l1 - m - 3, l2 - m - 3), 1) == 0
