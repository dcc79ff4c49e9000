"""Oriented-rule normalization, termination and local-confluence certification.

A presentation carries an alphabet, a deg-lex monomial order, and rewrite
rules whose right-hand sides are strictly smaller than their left-hand sides.
That orientation certificate doubles as a termination proof, so `normalize`
always halts (a step budget guards against pathological user input).
Confluence is checked, never assumed and never repaired.
"""

from __future__ import annotations

from .ncpoly import Generator, MonomialOrder, NCPolynomial, Word, apply_star
from .scalars import LaurentScalar

DEFAULT_BUDGET = 10 ** 6


class RewriteBudgetExceeded(Exception):
    """Raised when a normalize call exceeds its rule-application budget."""


class RewriteRule:
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Word, rhs: NCPolynomial):
        self.lhs = tuple(lhs)
        self.rhs = rhs

    def __repr__(self):
        return f"RewriteRule({list(self.lhs)} -> {self.rhs!r})"


class Presentation:
    """Alphabet + monomial order + oriented rules + optional star/Hopf data.

    Immutable after construction.  `certify()` runs the orientation check
    (raising on failure) and, when requested, the local-confluence check.
    """

    def __init__(self, label, alphabet, order: MonomialOrder, rules,
                 star=None, hopf=None, convention=None):
        self.label = label
        self.alphabet = list(alphabet)
        self.order = order
        self.rules = list(rules)
        self.star = star  # dict gid -> NCPolynomial, or None
        self.hopf = hopf
        self.convention = convention
        self.by_name = {g.name: g for g in self.alphabet}
        self.by_id = {g.gid: g for g in self.alphabet}
        self.central_ids = frozenset(g.gid for g in self.alphabet if g.central)
        # rules indexed by first generator id, longest lhs first
        self._index = {}
        for rule in self.rules:
            self._index.setdefault(rule.lhs[0], []).append(rule)
        for lst in self._index.values():
            lst.sort(key=lambda r: -len(r.lhs))

    # -- canonical words ---------------------------------------------------

    def canonical_word(self, word: Word) -> Word:
        """Move central generators to the front, sorted among themselves."""
        if not self.central_ids or not any(g in self.central_ids for g in word):
            return tuple(word)
        central = sorted((g for g in word if g in self.central_ids),
                         key=self.order.rank.__getitem__)
        rest = [g for g in word if g not in self.central_ids]
        return tuple(central) + tuple(rest)

    def canonical(self, p: NCPolynomial) -> NCPolynomial:
        if not self.central_ids:
            return p
        out = NCPolynomial.zero()
        for w, c in p.terms.items():
            out = out + NCPolynomial.monomial(self.canonical_word(w), c)
        return out

    # -- redex search ------------------------------------------------------

    def _find_redex(self, word: Word):
        index = self._index
        n = len(word)
        for pos in range(n):
            rules = index.get(word[pos])
            if not rules:
                continue
            for rule in rules:
                L = len(rule.lhs)
                if pos + L <= n and word[pos:pos + L] == rule.lhs:
                    return pos, rule
        return None

    def _all_redexes(self, word: Word):
        out = []
        index = self._index
        n = len(word)
        for pos in range(n):
            rules = index.get(word[pos])
            if not rules:
                continue
            for rule in rules:
                L = len(rule.lhs)
                if pos + L <= n and word[pos:pos + L] == rule.lhs:
                    out.append((pos, rule))
        return out

    # -- normalization -----------------------------------------------------

    def normalize(self, p: NCPolynomial, budget: int = DEFAULT_BUDGET,
                  rng=None) -> NCPolynomial:
        """Rewrite to normal form.

        Deterministic strategy: leftmost redex, longest lhs first.  Passing
        an `rng` picks a random redex each step instead (used to certify
        strategy independence of confluent presentations).
        """
        out = {}
        stack = [(self.canonical_word(w), c) for w, c in p.terms.items()]
        steps = 0
        while stack:
            word, coeff = stack.pop()
            if rng is None:
                hit = self._find_redex(word)
            else:
                redexes = self._all_redexes(word)
                hit = redexes[rng.randrange(len(redexes))] if redexes else None
            if hit is None:
                s = out.get(word)
                s = coeff if s is None else s + coeff
                if s:
                    out[word] = s
                else:
                    out.pop(word, None)
                continue
            pos, rule = hit
            steps += 1
            if steps > budget:
                raise RewriteBudgetExceeded(
                    f"normalize exceeded {budget} rule applications in {self.label}")
            prefix = word[:pos]
            suffix = word[pos + len(rule.lhs):]
            for w_r, c_r in rule.rhs.terms.items():
                stack.append((self.canonical_word(prefix + w_r + suffix),
                              coeff * c_r))
        res = NCPolynomial.__new__(NCPolynomial)
        res.terms = out
        return res

    def normalize_word(self, word: Word, **kw) -> NCPolynomial:
        return self.normalize(NCPolynomial.monomial(word), **kw)

    # -- identity checking -------------------------------------------------

    def verify_identity(self, lhs: NCPolynomial, rhs: NCPolynomial,
                        budget: int = DEFAULT_BUDGET):
        """Return (holds, residual): holds iff normalize(lhs - rhs) == 0."""
        residual = self.normalize(lhs - rhs, budget=budget)
        return residual.is_zero(), residual

    def apply_star(self, p: NCPolynomial) -> NCPolynomial:
        if self.star is None:
            raise ValueError(f"presentation {self.label} has no star structure")
        return apply_star(p, self.star)

    # -- parsing helpers ---------------------------------------------------

    def gen(self, name: str) -> NCPolynomial:
        return NCPolynomial.generator(self.by_name[name].gid)

    def gid(self, name: str) -> int:
        return self.by_name[name].gid

    def __repr__(self):
        return (f"Presentation({self.label!r}, {len(self.alphabet)} generators, "
                f"{len(self.rules)} rules)")


# -- certification ----------------------------------------------------------

def check_rule_orientation(pres: Presentation):
    """Confirm every rhs monomial is strictly smaller than its lhs.

    Returns a list of (rule, offending word); empty means certified.
    """
    bad = []
    order = pres.order
    for rule in pres.rules:
        lhs = pres.canonical_word(rule.lhs)
        for w in rule.rhs.terms:
            if order.compare(pres.canonical_word(w), lhs) >= 0:
                bad.append((rule, w))
    return bad


def _critical_superwords(r1: RewriteRule, r2: RewriteRule):
    """Overlap words for a rule pair: suffix/prefix overlaps and containment."""
    a, b = r1.lhs, r2.lhs
    words = []
    # proper suffix of a == proper prefix of b
    for k in range(1, min(len(a), len(b))):
        if a[len(a) - k:] == b[:k]:
            words.append((a + b[k:], 0, len(a) - k))
    # b contained in a
    if len(b) <= len(a):
        for pos in range(len(a) - len(b) + 1):
            if a[pos:pos + len(b)] == b:
                words.append((a, 0, pos))
    return words


def check_local_confluence(pres: Presentation, budget: int = DEFAULT_BUDGET):
    """Reduce every critical pair both ways; report surviving differences.

    Returns a list of dicts describing unresolved pairs; empty means the
    presentation is locally confluent (hence confluent, by termination).
    """
    failures = []
    for r1 in pres.rules:
        for r2 in pres.rules:
            for word, pos1, pos2 in _critical_superwords(r1, r2):
                if r1 is r2 and pos1 == pos2:
                    continue
                # route 1: apply r1 at pos1 first
                p1 = (NCPolynomial.monomial(word[:pos1]) * r1.rhs
                      * NCPolynomial.monomial(word[pos1 + len(r1.lhs):]))
                # route 2: apply r2 at pos2 first
                p2 = (NCPolynomial.monomial(word[:pos2]) * r2.rhs
                      * NCPolynomial.monomial(word[pos2 + len(r2.lhs):]))
                diff = pres.normalize(p1 - p2, budget=budget)
                if not diff.is_zero():
                    failures.append({
                        "word": word,
                        "rule1": r1,
                        "rule2": r2,
                        "residual": diff,
                    })
    return failures


def certify(pres: Presentation, confluence: bool = True):
    """Raise ValueError unless the presentation passes certification."""
    bad = check_rule_orientation(pres)
    if bad:
        rule, w = bad[0]
        raise ValueError(
            f"{pres.label}: rule {rule!r} not decreasing (monomial {w})")
    if confluence:
        failures = check_local_confluence(pres)
        if failures:
            f = failures[0]
            raise ValueError(
                f"{pres.label}: critical pair on {f['word']} does not resolve; "
                f"residual {f['residual']!r}")
    return pres


def orient_relation(pres_order: MonomialOrder, relation: NCPolynomial,
                    canonical_word=None) -> RewriteRule | None:
    """Turn a relation `p = 0` into the rule `leading -> -(rest)/lead_coeff`.

    Returns None for the zero relation.  Raises for a relation whose leading
    coefficient is not a unit of the scalar ring.
    """
    if canonical_word is not None:
        canon = {}
        for w, c in relation.terms.items():
            cw = canonical_word(w)
            s = canon.get(cw)
            s = c if s is None else s + c
            if s:
                canon[cw] = s
            else:
                canon.pop(cw, None)
        relation = NCPolynomial(canon)
    if relation.is_zero():
        return None
    lead = max(relation.terms, key=pres_order.key)
    coeff = relation.terms[lead]
    rest = NCPolynomial({w: c for w, c in relation.terms.items() if w != lead})
    rhs = (-rest).scale(coeff.inverse())
    return RewriteRule(lead, rhs)


def make_alphabet(names, central=()):
    """Generators with ids in listing order; `central` is a set of names."""
    return [Generator(i, n, central=n in central) for i, n in enumerate(names)]


def scalar_poly(s) -> NCPolynomial:
    if isinstance(s, LaurentScalar):
        return NCPolynomial.scalar(s)
    return NCPolynomial.scalar(LaurentScalar.from_rational(s))
