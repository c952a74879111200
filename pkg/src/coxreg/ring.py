"""Cox rings of products of projective spaces.

Variables come in blocks, one block per projective factor, and the ring is
graded by Z^l.  Monomials are exponent tuples over all variables; polynomials
are kept in canonical sorted form under the active monomial order.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .scalars import GF, DEFAULT_PRIME, binomial

_BLOCK_LETTERS = ("x", "y", "z")


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class MonomialOrder:
    """Total, multiplicative well-order on monomials, as a sort key.

    Larger key means larger monomial.
    """

    def key(self, exps):
        raise NotImplementedError

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


class Grevlex(MonomialOrder):
    """Graded reverse lexicographic on total degree."""

    kind = "grevlex"

    def key(self, exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self):
        return "grevlex"

    def __eq__(self, other):
        return isinstance(other, Grevlex)

    def __hash__(self):
        return hash("grevlex")


class BlockElim(MonomialOrder):
    """Elimination order: the leading ``nelim`` variables dominate.

    Within and across the split the tie-break is grevlex, so eliminating the
    leading block from a Groebner basis yields a basis of the elimination
    ideal.
    """

    kind = "elimination"

    def __init__(self, nelim):
        self.nelim = nelim

    def key(self, exps):
        lead = exps[: self.nelim]
        return (sum(lead), tuple(-e for e in reversed(lead)),
                sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self):
        return f"elim({self.nelim})"

    def __eq__(self, other):
        return isinstance(other, BlockElim) and other.nelim == self.nelim

    def __hash__(self):
        return hash(("elim", self.nelim))


def _monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class ProductSpace:
    """The ambient product P^{n_1} x ... x P^{n_l} and its Cox ring."""

    def __init__(self, factors, field=None):
        factors = tuple(int(n) for n in factors)
        if not factors or any(n < 1 for n in factors):
            raise ValueError("factors must be a nonempty tuple of positive integers")
        self.factors = factors
        self.nblocks = len(factors)
        self.dim = sum(factors)
        self.field = field if field is not None else GF(DEFAULT_PRIME)
        self.block_sizes = tuple(n + 1 for n in factors)
        self.nvars = sum(self.block_sizes)
        starts = []
        s = 0
        for b in self.block_sizes:
            starts.append(s)
            s += b
        self.block_starts = tuple(starts)
        self.canonical_degree = tuple(-n - 1 for n in factors)
        self.order = Grevlex()
        names = []
        for k, size in enumerate(self.block_sizes):
            prefix = _BLOCK_LETTERS[k] if k < 3 else f"w{k + 1}_"
            names.extend(f"{prefix}{i}" for i in range(size))
        self.variable_names = tuple(names)
        self._name_index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return (isinstance(other, ProductSpace)
                and other.factors == self.factors and other.field == self.field)

    def __hash__(self):
        return hash((self.factors, self.field))

    def __repr__(self):
        inner = ",".join(str(n) for n in self.factors)
        return f"P({inner}) over {self.field}"

    # -- blocks and degrees ------------------------------------------------

    def block_of_var(self, i):
        for k in range(self.nblocks - 1, -1, -1):
            if i >= self.block_starts[k]:
                return k
        raise IndexError(i)

    def multidegree(self, exps):
        """Z^l degree of an exponent tuple."""
        deg = []
        for k in range(self.nblocks):
            s = self.block_starts[k]
            deg.append(sum(exps[s:s + self.block_sizes[k]]))
        return tuple(deg)

    def variable(self, i):
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def zero(self):
        return Polynomial(self, {})

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else coeff
        return Polynomial(self, {tuple(exps): c})

    def irrelevant_generators(self):
        """One variable from each block multiplied together, all choices."""
        gens = []
        for choice in itertools.product(*[
            range(self.block_starts[k], self.block_starts[k] + self.block_sizes[k])
            for k in range(self.nblocks)
        ]):
            exps = [0] * self.nvars
            for i in choice:
                exps[i] += 1
            gens.append(self.monomial(exps))
        return gens

    def block_variables(self, k):
        s = self.block_starts[k]
        return [self.variable(i) for i in range(s, s + self.block_sizes[k])]

    # -- degree slices -----------------------------------------------------

    def slice_dimension(self, u):
        if len(u) != self.nblocks:
            raise ValueError("multidegree length mismatch")
        if any(c < 0 for c in u):
            return 0
        d = 1
        for uk, nk in zip(u, self.factors):
            d *= binomial(uk + nk, nk)
        return d

    def slice_monomials(self, u):
        """All exponent tuples of multidegree u, sorted descending."""
        if len(u) != self.nblocks:
            raise ValueError("multidegree length mismatch")
        if any(c < 0 for c in u):
            return []
        per_block = [
            list(_compositions(uk, size))
            for uk, size in zip(u, self.block_sizes)
        ]
        out = [
            tuple(itertools.chain.from_iterable(parts))
            for parts in itertools.product(*per_block)
        ]
        out.sort(key=self.order.key, reverse=True)
        return out

    # -- parsing and printing ----------------------------------------------

    def parse(self, text):
        return parse_polynomial(self, text)


@lru_cache(maxsize=None)
def _compositions(total, parts):
    """Tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


class Polynomial:
    """Multigraded polynomial in canonical form.

    ``terms`` maps exponent tuples to nonzero coefficients; the printed and
    iteration order is descending in the ring's monomial order.  The
    multidegree is recorded when the polynomial is homogeneous.
    """

    __slots__ = ("ring", "terms", "_sorted", "degree")

    def __init__(self, ring, terms):
        self.ring = ring
        fld = ring.field
        self.terms = {m: c for m, c in terms.items() if not fld.is_zero(c)}
        self._sorted = None
        self.degree = self._homogeneous_degree()

    def _homogeneous_degree(self):
        deg = None
        for m in self.terms:
            d = self.ring.multidegree(m)
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg

    def sorted_terms(self):
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self.terms.items(),
                                  key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        return self.is_zero() or self.degree is not None

    def leading_monomial(self, order=None):
        key = (order or self.ring.order).key
        return max(self.terms, key=key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = fld.add(out.get(m, fld.zero), c)
            if fld.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.ring, out)

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        fld = self.ring.field
        if not isinstance(other, Polynomial):
            out = {m: fld.mul(c, fld(other)) for m, c in self.terms.items()}
            return Polynomial(self.ring, out)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _monomial_mul(m1, m2)
                v = fld.add(out.get(m, fld.zero), fld.mul(c1, c2))
                if fld.is_zero(v):
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.mul(v, c) for m, v in self.terms.items()})

    def monic(self, order=None):
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variable_names
        pieces = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(c)
            elif c == self.ring.field.one:
                body = mono
            else:
                body = f"{c}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                out += f" - {body[1:]}"
            else:
                out += f" + {body}"
        return out

    __repr__ = __str__


# -- parser ----------------------------------------------------------------

_TOKEN_CHARS = set("+-*^/() \t")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser for the +,-,*,^ polynomial grammar."""

    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        poly = self.expression()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return poly

    def expression(self):
        sign = 1
        tok = self.peek()
        if tok[0] in "+-":
            self.advance()
            sign = -1 if tok[0] == "-" else 1
        poly = self.term()
        if sign < 0:
            poly = -poly
        while True:
            tok = self.peek()
            if tok[0] == "+":
                self.advance()
                poly = poly + self.term()
            elif tok[0] == "-":
                self.advance()
                poly = poly - self.term()
            else:
                return poly

    def term(self):
        poly = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.advance()
                poly = poly * self.power()
            elif tok[0] in ("name", "int", "("):
                # implicit multiplication, e.g. "2x0" or "x0 y1"
                poly = poly * self.power()
            else:
                return poly

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "^":
            self.advance()
            etok = self.expect("int")
            e = int(etok[1])
            out = self.ring.one()
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self):
        tok = self.advance()
        if tok[0] == "int":
            value = int(tok[1])
            nxt = self.peek()
            if nxt[0] == "/":
                self.advance()
                dtok = self.expect("int")
                return self.ring.one() * self.ring.field(value, int(dtok[1]))
            return self.ring.one() * self.ring.field(value)
        if tok[0] == "name":
            idx = self.ring._name_index.get(tok[1])
            if idx is None:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            return self.ring.variable(idx)
        if tok[0] == "(":
            poly = self.expression()
            self.expect(")")
            return poly
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_polynomial(ring, text):
    """Parse ``text`` into a canonical Polynomial over ``ring``."""
    return _Parser(ring, text).parse()


def degree_slice_dimension(ring, u):
    return ring.slice_dimension(tuple(u))


def degree_slice_basis(ring, u):
    return ring.slice_monomials(tuple(u))
