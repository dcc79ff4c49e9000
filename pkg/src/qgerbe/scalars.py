"""Exact scalar arithmetic: Gaussian rationals times integer powers of q.

Every coefficient in the symbolic engine lives in this ring.  The deformation
parameter q is treated as a real indeterminate (conjugation fixes q-powers and
negates imaginary parts); numeric evaluation substitutes a positive real q.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        ipart = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re} {sign} {ipart})"


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


class LaurentScalar:
    """Laurent polynomial in q over the Gaussian rationals.

    Stored as a map q-exponent -> GaussianRational with no zero coefficients.
    Immutable by convention; all operations return fresh values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return LaurentScalar()

    @staticmethod
    def one():
        return LaurentScalar({0: _GR_ONE})

    @staticmethod
    def from_rational(r, im=0):
        return LaurentScalar({0: GaussianRational(r, im)})

    @staticmethod
    def from_gaussian(g: GaussianRational):
        return LaurentScalar({0: g})

    @staticmethod
    def q_power(k: int, coeff=None):
        if coeff is None:
            coeff = _GR_ONE
        elif not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        return LaurentScalar({k: coeff})

    @staticmethod
    def imag_unit():
        return LaurentScalar({0: GaussianRational(0, 1)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _GR_ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, _GR_ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = out
        return res

    def conjugate(self):
        """Negate the imaginary part of every coefficient; q-exponents fixed."""
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = {e: c.conjugate() for e, c in self.terms.items()}
        return res

    def subs_q_inverse(self):
        """The ring map q -> q^-1 (negates every exponent)."""
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = {-e: c for e, c in self.terms.items()}
        return res

    def inverse(self):
        """Inverse of a monomial scalar c*q^k; raises for non-units."""
        if len(self.terms) != 1:
            raise ValueError("only monomial scalars are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentScalar({-e: c.inverse()})

    # -- predicates and evaluation ----------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: _GR_ONE}

    def eval_at(self, q0: float) -> complex:
        """Substitute q -> q0 (a positive real)."""
        if not q0 > 0:
            raise ValueError(f"q must be positive, got {q0}")
        return sum((complex(c) * q0 ** e for e, c in self.terms.items()), 0j)

    def __eq__(self, other):
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentScalar({self})"

    def __str__(self):
        return format_scalar(self)


def _format_part(coeff: Fraction, imag: bool, exp: int) -> str:
    """One rendered product `rat[*i][*q^k]`, without a leading sign."""
    pieces = []
    mag = abs(coeff)
    if mag != 1 or (not imag and exp == 0):
        pieces.append(str(mag))
    if imag:
        pieces.append("i")
    if exp != 0:
        pieces.append("q" if exp == 1 else f"q^{exp}")
    return "*".join(pieces) if pieces else "1"


def format_scalar(s: LaurentScalar) -> str:
    """Render in the `3/2*i*q^-2 + q` style; parses back exactly."""
    if not s.terms:
        return "0"
    parts = []  # (sign, body)
    for e in sorted(s.terms, reverse=True):
        c = s.terms[e]
        if c.re:
            parts.append(("-" if c.re < 0 else "+", _format_part(c.re, False, e)))
        if c.im:
            parts.append(("-" if c.im < 0 else "+", _format_part(c.im, True, e)))
    first_sign, first_body = parts[0]
    out = (first_body if first_sign == "+" else "-" + first_body)
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def scalar_term_count(s: LaurentScalar) -> int:
    """Number of rendered summands (used to decide parenthesisation)."""
    return sum((1 if c.re else 0) + (1 if c.im else 0) for c in s.terms.values())
