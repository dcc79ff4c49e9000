"""Words, noncommutative polynomials, tensor squares, and the star map.

Elements of the free algebra over a generator alphabet, with LaurentScalar
coefficients.  No relations are applied here; normalization against a
presentation lives in `rewrite`.
"""

from __future__ import annotations

from .scalars import LaurentScalar

Word = tuple  # tuple of generator ids


class Generator:
    """A named generator symbol; `central` symbols commute with everything."""

    __slots__ = ("gid", "name", "central")

    def __init__(self, gid: int, name: str, central: bool = False):
        self.gid = gid
        self.name = name
        self.central = central

    def __repr__(self):
        flag = ", central" if self.central else ""
        return f"Generator({self.gid}, {self.name!r}{flag})"


class MonomialOrder:
    """Deg-lex order: total degree first, then leftmost difference.

    `ranked_ids` lists generator ids from smallest to largest.
    """

    __slots__ = ("ranked_ids", "rank")

    def __init__(self, ranked_ids):
        self.ranked_ids = list(ranked_ids)
        self.rank = {g: r for r, g in enumerate(self.ranked_ids)}

    def key(self, word: Word):
        rank = self.rank
        return (len(word), tuple(rank[g] for g in word))

    def compare(self, u: Word, v: Word) -> int:
        """-1, 0, or 1 as u <, =, > v."""
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)


class NCPolynomial:
    """Finite linear combination of words with LaurentScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {w: c for w, c in terms.items() if c}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return NCPolynomial()

    @staticmethod
    def one():
        return NCPolynomial({(): LaurentScalar.one()})

    @staticmethod
    def monomial(word: Word, coeff: LaurentScalar | None = None):
        if coeff is None:
            coeff = LaurentScalar.one()
        return NCPolynomial({tuple(word): coeff})

    @staticmethod
    def generator(gid: int):
        return NCPolynomial({(gid,): LaurentScalar.one()})

    @staticmethod
    def scalar(s: LaurentScalar):
        return NCPolynomial({(): s})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __mul__(self, other):
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w)
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = out
        return res

    def scale(self, s: LaurentScalar):
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = {}
        for w, c in self.terms.items():
            p = s * c
            if p:
                res.terms[w] = p
        return res

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def map_coefficients(self, fn):
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = {}
        for w, c in self.terms.items():
            p = fn(c)
            if p:
                res.terms[w] = p
        return res

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NCPolynomial(0)"
        parts = " + ".join(f"({c})*{list(w)}" for w, c in self.terms.items())
        return f"NCPolynomial({parts})"


def substitute(p: NCPolynomial, images: dict) -> NCPolynomial:
    """Algebra map: replace each generator by its image polynomial.

    Generators absent from `images` are mapped to themselves.
    """
    out = NCPolynomial.zero()
    for w, c in p.terms.items():
        acc = NCPolynomial.scalar(c)
        for g in w:
            img = images.get(g)
            if img is None:
                img = NCPolynomial.generator(g)
            acc = acc * img
        out = out + acc
    return out


def apply_star(p: NCPolynomial, starmap: dict) -> NCPolynomial:
    """The star anti-involution: reverse words, star generators, conjugate.

    `starmap` sends generator id -> NCPolynomial star image.  Raises KeyError
    for a generator without a star image.
    """
    out = NCPolynomial.zero()
    for w, c in p.terms.items():
        acc = NCPolynomial.scalar(c.conjugate())
        for g in reversed(w):
            acc = acc * starmap[g]
        out = out + acc
    return out


class TensorPoly:
    """Element of a tensor power of the free algebra.

    Keys are tuples of `arity` words; the product is componentwise
    concatenation: (u1 (x) u2)(v1 (x) v2) = u1v1 (x) u2v2.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: c for k, c in terms.items() if c}

    @staticmethod
    def unit(arity: int):
        return TensorPoly(arity, {((),) * arity: LaurentScalar.one()})

    @staticmethod
    def of(*components: Word):
        return TensorPoly(len(components), {tuple(tuple(w) for w in components): LaurentScalar.one()})

    def __add__(self, other):
        assert self.arity == other.arity
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorPoly(self.arity, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorPoly(self.arity, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        assert self.arity == other.arity
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(k)
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TensorPoly(self.arity, out)

    def scale(self, s: LaurentScalar):
        return TensorPoly(self.arity, {k: s * c for k, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def component_polys(self, slot: int):
        """Collect the polynomial appearing in one tensor slot, per context."""
        out = {}
        for k, c in self.terms.items():
            ctx = k[:slot] + k[slot + 1:]
            out.setdefault(ctx, NCPolynomial.zero())
            out[ctx] = out[ctx] + NCPolynomial.monomial(k[slot], c)
        return out

    def map_slots(self, fn):
        """Apply `fn: NCPolynomial -> NCPolynomial` to every slot of every term."""
        out = TensorPoly(self.arity)
        for k, c in self.terms.items():
            polys = [fn(NCPolynomial.monomial(w)) for w in k]
            # expand the product of slot polynomials back into tensor terms
            acc = TensorPoly(self.arity, {((),) * self.arity: c})
            for slot, poly in enumerate(polys):
                nxt = {}
                for key, cc in acc.terms.items():
                    for w, cw in poly.terms.items():
                        nk = key[:slot] + (key[slot] + w,) + key[slot + 1:]
                        s = nxt.get(nk)
                        p = cc * cw
                        s = p if s is None else s + p
                        if s:
                            nxt[nk] = s
                        else:
                            nxt.pop(nk, None)
                acc = TensorPoly(self.arity, nxt)
            out = out + acc
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __repr__(self):
        return f"TensorPoly(arity={self.arity}, {len(self.terms)} terms)"
