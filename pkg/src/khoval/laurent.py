"""Laurent polynomials in one variable with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["LaurentPolynomial"]

_DISPLAY = {"q": "q", "sqrt_t": "t^(1/2)", "A": "A", "t": "t"}


class LaurentPolynomial:
    """Immutable map exponent -> nonzero Fraction, tagged with its variable.

    Supported tags are ``"q"``, ``"sqrt_t"`` (powers of t^(1/2)) and ``"A"``.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms=None, var="q"):
        clean = {}
        for e, c in dict(terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self.var = var

    @classmethod
    def monomial(cls, exponent, coeff=1, var="q"):
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c, var="q"):
        return cls({0: c}, var)

    # -- inspection
    @property
    def terms(self):
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __getitem__(self, exponent):
        return self._terms.get(exponent, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_degree(self):
        return min(self._terms) if self._terms else None

    @property
    def max_degree(self):
        return max(self._terms) if self._terms else None

    def is_integral(self):
        return all(c.denominator == 1 for c in self._terms.values())

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other:
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self:
            for e2, c2 in other:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPolynomial({e * k: Fraction(1) / c ** (-k)}, self.var)
        out = LaurentPolynomial.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other):
        """Quotient and remainder, both Laurent; remainder has degree span below ``other``'s."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._terms)
        quot = {}
        lead_e, lead_c = other.max_degree, other[other.max_degree]
        span = other.max_degree - other.min_degree
        while rem and max(rem) - min(rem) >= span:
            top = max(rem)
            factor = rem[top] / lead_c
            shift = top - lead_e
            quot[shift] = factor
            for e, c in other:
                v = rem.get(e + shift, 0) - factor * c
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return LaurentPolynomial(quot, self.var), LaurentPolynomial(rem, self.var)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def substitute_power(self, scale, var, sign=1):
        """Replace x^e by sign^e * y^(scale*e) where y is ``var``; sign is +1 or -1."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        out = {}
        for e, c in self:
            ne = e * scale
            if ne != int(ne):
                raise ValueError(f"exponent {e} does not map to an integer power")
            out[int(ne)] = out.get(int(ne), 0) + c * sign ** abs(e)
        return LaurentPolynomial(out, var)

    # -- comparison and display
    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.var == other.var and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == LaurentPolynomial.constant(other, self.var)._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.var, tuple(self._terms.items())))

    def to_dict(self):
        """Exponent -> coefficient as strings, the serialization form."""
        return {str(e): str(c) for e, c in self}

    @classmethod
    def from_dict(cls, data, var):
        return cls({int(e): Fraction(c) for e, c in data.items()}, var)

    def __repr__(self):
        return f"LaurentPolynomial({self.to_dict()}, var={self.var!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        half = self.var == "sqrt_t"
        x = "t" if half else _DISPLAY.get(self.var, self.var)
        text = ""
        for e, c in sorted(self._terms.items(), reverse=True):
            power = Fraction(e, 2) if half else e
            if power == 0:
                body = str(abs(c))
            else:
                p = x if power == 1 else f"{x}^{power}" if power > 0 and power.denominator == 1 else f"{x}^({power})"
                body = p if abs(c) == 1 else f"{abs(c)}*{p}"
            if not text:
                text = ("-" if c < 0 else "") + body
            else:
                text += (" - " if c < 0 else " + ") + body
        return text
