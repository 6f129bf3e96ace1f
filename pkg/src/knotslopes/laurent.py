"""Exact sparse Laurent polynomials in the quantum variable q.

Exponents are stored as integer multiples of 1/4 (the "quarter-key"
lattice), so intermediate torus-knot terms like q^(ab n(n+2)/4) and
q^(1/2) are exact without a general rational exponent type.  A fully
assembled colored Jones value must be integral, meaning every exponent
is a whole power of q (every key divisible by 4).

Coefficients are arbitrary-precision Python integers throughout.
"""

import re
from fractions import Fraction

__all__ = ["LaurentPoly", "parse_poly"]


class LaurentPoly:
    """A Laurent polynomial sum(c_e * q^e) with exponents e in (1/4)Z.

    The internal map ``terms`` sends the quarter-key 4*e to the integer
    coefficient c_e.  Zero coefficients are never stored and the zero
    polynomial is the empty map.  Instances are treated as immutable;
    all arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: c for k, c in terms.items() if c != 0}

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: int(c)})

    @classmethod
    def monomial(cls, coeff, exponent):
        """Build coeff * q^exponent. The exponent may be an int or a
        Fraction with denominator dividing 4."""
        key = _to_key(exponent)
        return cls({key: int(coeff)})

    @classmethod
    def from_quarter_keys(cls, terms):
        """Build directly from a {quarter-key: coefficient} map."""
        return cls(dict(terms))

    # ------------------------------------------------------------------
    # ring structure

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    # degrees and structure

    def is_zero(self):
        return not self.terms

    def deg(self):
        """Maximum exponent, as an exact Fraction (denominator divides 4)."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial (empty state sum?)")
        return Fraction(max(self.terms), 4)

    def mindeg(self):
        """Minimum exponent, as an exact Fraction (denominator divides 4)."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial (empty state sum?)")
        return Fraction(min(self.terms), 4)

    def mirror(self):
        """Substitute q -> 1/q (the mirror-image rule for colored Jones)."""
        return LaurentPoly({-k: c for k, c in self.terms.items()})

    def is_integral(self):
        """True when every exponent is a whole integer power of q."""
        return all(k % 4 == 0 for k in self.terms)

    def shift(self, exponent):
        """Multiply by q^exponent."""
        d = _to_key(exponent)
        return LaurentPoly({k + d: c for k, c in self.terms.items()})

    def coefficient(self, exponent):
        return self.terms.get(_to_key(exponent), 0)

    def evaluate_int(self, value):
        """Evaluate at an integer q=value; only valid for integral polynomials
        when value is not +-1 ... in practice used at q=-1 (determinant)."""
        total = Fraction(0)
        for k, c in self.terms.items():
            e = Fraction(k, 4)
            if e.denominator != 1:
                raise ValueError("cannot evaluate fractional exponents at an integer")
            total += c * Fraction(value) ** e.numerator
        return total

    # ------------------------------------------------------------------
    # canonical text form

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            e = Fraction(k, 4)
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e == 1:
                body = "q" if mag == 1 else "%dq" % mag
            else:
                body = ("q^%s" if mag == 1 else "%dq^%%s" % mag) % _fmt_exp(e)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


def _fmt_exp(e):
    if e.denominator == 1:
        return str(e.numerator)
    return "%d/%d" % (e.numerator, e.denominator)


def _to_key(exponent):
    e = Fraction(exponent)
    key = e * 4
    if key.denominator != 1:
        raise ValueError("exponent %s is not a multiple of 1/4" % e)
    return key.numerator


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?\s*
    (?:
        (?P<coeff>\d+)\s*(?:\*\s*)?(?P<qc>q(?:\s*\^\s*(?P<expc>-?\d+(?:/\d+)?))?)?
      | (?P<qb>q(?:\s*\^\s*(?P<expb>-?\d+(?:/\d+)?))?)
    )
    \s*
    """,
    re.VERBOSE,
)


def parse_poly(text):
    """Parse the canonical text form back into a LaurentPoly.

    Accepts arbitrary whitespace around signs and terms, e.g.
    ``-q^-6 + 2q^-5 - 4q^-4`` or ``1`` or ``q + q^3 - q^4``.
    """
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero()
    pos = 0
    out = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse polynomial at %r" % s[pos:])
        sign = m.group("sign")
        if sign is None and not first:
            raise ValueError("missing sign between terms in %r" % text)
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if sign == "-":
            coeff = -coeff
        qpart = m.group("qc") or m.group("qb")
        exp = m.group("expc") or m.group("expb")
        if qpart is None:
            e = Fraction(0)
        elif exp is None:
            e = Fraction(1)
        else:
            e = Fraction(exp)
        k = _to_key(e)
        out[k] = out.get(k, 0) + coeff
        pos = m.end()
        first = False
    return LaurentPoly(out)
