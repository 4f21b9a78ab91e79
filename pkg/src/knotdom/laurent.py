"""Exact arithmetic on integer Laurent polynomials.

A Laurent polynomial over Z is stored sparsely as a sorted tuple of
(exponent, coefficient) pairs with no zero coefficients; the zero
polynomial is the empty tuple.  Exponents may be negative, coefficients
are arbitrary-precision Python ints.  Values are immutable and hashable,
so they can be shared freely between threads.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial with integer coefficients.

    >>> t = LaurentPoly.t()
    >>> (1 + t) * (1 - t + t**2)
    LaurentPoly('1 + t^3')
    >>> (t**-2 - t**-1 + 1).normalize()
    LaurentPoly('1 - t + t^2')
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for exp, coeff in self.terms:
            if coeff == 0:
                raise ValueError(f"stored coefficient is zero at exponent {exp}")
            if exp in seen:
                raise ValueError(f"duplicate exponent {exp}")
            seen.add(exp)
        if list(self.terms) != sorted(self.terms):
            object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_dict(coeffs: Mapping[int, int]) -> LaurentPoly:
        return LaurentPoly(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @staticmethod
    def const(c: int) -> LaurentPoly:
        return LaurentPoly(((0, c),)) if c else LaurentPoly()

    @staticmethod
    def t(exp: int = 1, coeff: int = 1) -> LaurentPoly:
        """The monomial coeff * t^exp."""
        return LaurentPoly(((exp, coeff),)) if coeff else LaurentPoly()

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def is_unit(self) -> bool:
        """True for +-t^k, the units of Z[t, t^-1]."""
        return len(self.terms) == 1 and self.terms[0][1] in (1, -1)

    @property
    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def max_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def coefficient(self, exp: int) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def leading_coefficient(self) -> int:
        if not self.terms:
            return 0
        return self.terms[-1][1]

    # -- ring operations --------------------------------------------------

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return _coerce(other) + (-self)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units +-t^k can be inverted")
            e, c = self.terms[0]
            return LaurentPoly(((e * n, 1 if c == 1 or n % 2 == 0 else -1),))
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by the unit t^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def substitute_power(self, w: int) -> LaurentPoly:
        """Replace t by t^w.  For w = 0 this evaluates at 1."""
        out: dict[int, int] = {}
        for e, c in self.terms:
            out[e * w] = out.get(e * w, 0) + c
        return LaurentPoly.from_dict(out)

    def mirror(self) -> LaurentPoly:
        """Replace t by t^-1."""
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.terms)))

    # -- normalization and divisibility ------------------------------------

    def normalize(self) -> LaurentPoly:
        """Multiply by a unit +-t^k so the minimum degree is 0 and the
        constant coefficient is positive.  The zero polynomial is fixed."""
        if not self.terms:
            return self
        shifted = self.shift(-self.min_degree)
        if shifted.terms[0][1] < 0:
            shifted = -shifted
        return shifted

    def divided_by(self, divisor: LaurentPoly) -> LaurentPoly | None:
        """Literal exact division in Z[t, t^-1].

        Returns q with self = divisor * q, or None when no such Laurent
        polynomial exists.  Raises ZeroDivisionError on a zero divisor.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        shift = self.min_degree - divisor.min_degree
        num = [Fraction(c) for c in _dense(self.shift(-self.min_degree))]
        den = [Fraction(c) for c in _dense(divisor.shift(-divisor.min_degree))]
        if len(num) < len(den):
            return None
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        rem = num[:]
        for i in range(len(quot) - 1, -1, -1):
            q = rem[i + len(den) - 1] / den[-1]
            quot[i] = q
            if q:
                for j, d in enumerate(den):
                    rem[i + j] -= q * d
        if any(rem) or any(q.denominator != 1 for q in quot):
            return None
        return LaurentPoly.from_dict({i: int(q) for i, q in enumerate(quot)}).shift(shift)

    # -- evaluation ---------------------------------------------------------

    def eval_int(self, x: int) -> int | Fraction:
        """Exact value at a nonzero integer; negative exponents give
        rationals, normalized knot polynomials give ints."""
        if x == 0:
            raise ValueError("cannot evaluate at 0: negative exponents")
        total = Fraction(0)
        for e, c in self.terms:
            total += c * Fraction(x) ** e
        return int(total) if total.denominator == 1 else total

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly('{format_poly(self)}')"


def _coerce(value: LaurentPoly | int) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.const(value)
    return NotImplemented


def _dense(p: LaurentPoly) -> list[int]:
    """Dense coefficient list of a polynomial with min degree 0."""
    out = [0] * (p.max_degree + 1)
    for e, c in p.terms:
        out[e] = c
    return out


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product in Z[t, t^-1]."""
    return a * b


def normalize(a: LaurentPoly) -> LaurentPoly:
    return a.normalize()


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """Division up to units: both arguments are normalized first.

    Returns the (normalized) quotient, or None when the normalized
    divisor is not a factor.  Raises ZeroDivisionError when b = 0.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    return a.normalize().divided_by(b.normalize())


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    """True when b divides a up to units +-t^k."""
    return exact_div(a, b) is not None


def eval_int(a: LaurentPoly, x: int) -> int | Fraction:
    return a.eval_int(x)


def is_prime_power(n: int) -> bool:
    """True iff n = p^e with p prime and e >= 1.  By convention 1 is not
    a prime power."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    if n == 1:
        return False
    p = None
    m = n
    for d in range(2, m):
        if d * d > m:
            break
        if m % d == 0:
            p = d
            while m % d == 0:
                m //= d
            break
    if p is None:
        return True  # n itself is prime
    return m == 1


# Report form: terms in ascending exponent, "c t^e" pieces joined by
# " + " / " - ", e.g. "1 - t + t^2".  Bit-exact for golden tests.

_TERM_RE = re.compile(r"(?:(\d+)\s*\*?\s*)?t(?:\^(-?\d+))?|(\d+)")


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.terms:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the textual form produced by format_poly.

    Accepts an optional "*" between coefficient and t, so both
    "2 - 3t + 2t^2" and "2 - 3*t + 2*t^2" round-trip.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return LaurentPoly()
    coeffs: dict[int, int] = {}
    pos = 0
    sign = 1
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        if not first or s[pos] in "+-":
            if s[pos] == "+":
                sign = 1
            elif s[pos] == "-":
                sign = -1
            else:
                raise ValueError(f"expected '+' or '-' at offset {pos} in {text!r}")
            pos += 1
            while pos < len(s) and s[pos].isspace():
                pos += 1
        first = False
        m = _TERM_RE.match(s, pos)
        if not m or m.start() != pos:
            raise ValueError(f"malformed term at offset {pos} in {text!r}")
        coeff_str, exp_str, const_str = m.groups()
        if const_str is not None:
            exp, coeff = 0, int(const_str)
        else:
            coeff = int(coeff_str) if coeff_str else 1
            exp = int(exp_str) if exp_str else 1
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
        pos = m.end()
    return LaurentPoly.from_dict(coeffs)
