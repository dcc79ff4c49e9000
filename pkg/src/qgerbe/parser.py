"""Expression parser and pretty-printer for the command-line tools.

Grammar:
    expr    := ["+"|"-"] term {("+"|"-") term}
    term    := factor {factor | "*" factor}
    factor  := primary {"^" int | "'"}
    primary := rational | "q" | "i" | name | "(" expr ")"

Juxtaposition and `*` both denote the (noncommutative) product, postfix `'`
is the star, and `q`, `i` are reserved scalar symbols.  `format_expr` is the
inverse: parse(format(p)) returns p exactly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .ncpoly import NCPolynomial
from .rewrite import Presentation
from .scalars import GaussianRational, LaurentScalar, format_scalar, scalar_term_count

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^'()]))")


class ExprSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}",
                                  len(text) - len(stripped))
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, pres: Presentation | None):
        self.text = text
        self.pres = pres
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> NCPolynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> NCPolynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                p = p - t if val == "-" else p + t
            else:
                return p

    def term(self) -> NCPolynomial:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                p = p * self.factor()
            else:
                return p

    def factor(self) -> NCPolynomial:
        p = self.primary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                self.next()
                p = self._power(p, self._int_literal())
            elif kind == "op" and val == "'":
                self.next()
                if self.pres is None or self.pres.star is None:
                    raise ExprSyntaxError("star not available here", pos)
                p = self.pres.apply_star(p)
            else:
                return p

    def _int_literal(self) -> int:
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val, pos = self.next()
        if kind != "num" or "/" in val:
            raise ExprSyntaxError("expected an integer exponent", pos)
        return sign * int(val)

    def _power(self, p: NCPolynomial, n: int) -> NCPolynomial:
        if n >= 0:
            out = NCPolynomial.one()
            for _ in range(n):
                out = out * p
            return out
        if set(p.terms) == {()}:
            s = p.terms[()]
            inv = s.inverse()
            out = LaurentScalar.one()
            for _ in range(-n):
                out = out * inv
            return NCPolynomial.scalar(out)
        raise ExprSyntaxError("negative power of a non-scalar", self.peek()[2])

    def primary(self) -> NCPolynomial:
        kind, val, pos = self.next()
        if kind == "num":
            return NCPolynomial.scalar(LaurentScalar.from_rational(Fraction(val)))
        if kind == "name":
            if val == "q":
                return NCPolynomial.scalar(LaurentScalar.q_power(1))
            if val == "i":
                return NCPolynomial.scalar(LaurentScalar.imag_unit())
            if self.pres is None or val not in self.pres.by_name:
                raise ExprSyntaxError(f"unknown generator {val!r}", pos)
            return self.pres.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ExprSyntaxError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_expr(text: str, pres: Presentation | None) -> NCPolynomial:
    return _Parser(text, pres).parse()


def parse_scalar(text: str) -> LaurentScalar:
    """Parse an expression containing no generator symbols."""
    p = parse_expr(text, None)
    if p.is_zero():
        return LaurentScalar.zero()
    return p.terms[()]


def parse_gaussian(text: str) -> GaussianRational:
    """Parse an exact q-free complex scalar like `3/5 + 4/5 i`."""
    s = parse_scalar(text)
    if any(e != 0 for e in s.terms):
        raise ExprSyntaxError("expected a q-free scalar", 0)
    return s.terms.get(0, GaussianRational(0))


# -- pretty-printing ---------------------------------------------------------

def format_expr(p: NCPolynomial, pres: Presentation) -> str:
    """Deterministic rendering; parse(format(p), pres) == p exactly."""
    if p.is_zero():
        return "0"
    rendered = []  # (sign, body)
    for word in sorted(p.terms, key=pres.order.key, reverse=True):
        coeff = p.terms[word]
        word_str = " ".join(pres.by_id[g].name for g in word)
        if scalar_term_count(coeff) > 1:
            body = f"({format_scalar(coeff)})"
            sign = "+"
        else:
            s = format_scalar(coeff)
            sign = "-" if s.startswith("-") else "+"
            body = s.lstrip("-")
            if body == "1" and word_str:
                body = ""
        if word_str:
            body = f"{body} {word_str}".strip()
        rendered.append((sign, body))
    first_sign, first_body = rendered[0]
    out = first_body if first_sign == "+" else f"-{first_body}"
    for sign, body in rendered[1:]:
        out += f" {sign} {body}"
    return out


# -- matrix literals ---------------------------------------------------------

_DIAG_RE = re.compile(r"\s*diag\s*\((.*)\)\s*$", re.DOTALL)


def parse_matrix(text: str):
    """Numeric matrix literal: `diag(i,-i)` or a JSON array.

    JSON entries are numbers or [re, im] pairs; rows are arrays of entries.
    Returns a complex numpy array.
    """
    import numpy as np

    m = _DIAG_RE.match(text)
    if m:
        entries = [complex(parse_gaussian(part))
                   for part in _split_commas(m.group(1))]
        return np.diag(entries).astype(complex)
    data = json.loads(text)
    rows = []
    for row in data:
        out_row = []
        for entry in row:
            if isinstance(entry, (int, float)):
                out_row.append(complex(entry))
            else:
                re_part, im_part = entry
                out_row.append(complex(re_part, im_part))
        rows.append(out_row)
    return np.array(rows, dtype=complex)


def _split_commas(text):
    depth = 0
    parts = []
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current or parts:
        parts.append("".join(current))
    return parts
