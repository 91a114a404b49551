"""Univariate polynomials and rational functions over the rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class Poly:
    """Polynomial with exact rational coefficients, ``coeffs[i]`` multiplies x**i.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, deg: int, c=1) -> Poly:
        return cls([0] * deg + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __eq__(self, other):
        if isinstance(other, (Poly, Rational)):
            return self.coeffs == self._coerce(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, (Poly, Rational)):
            return NotImplemented
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (Poly, Rational)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            c = _frac(other)
            return Poly(a * c for a in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading()
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number or another Poly (composition)."""
        acc = Poly() if isinstance(x, Poly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> Poly:
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def content_primitive(self) -> Poly:
        """Scale to integer coefficients with gcd 1 and positive leading term."""
        from math import gcd, lcm

        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Poly(i // g for i in ints)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Poly({self.format('x')})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Reduced ratio of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __repr__(self):
        return f"RatFunc(({self.num.format()})/({self.den.format()}))"


def series_coeffs(f: RatFunc, terms: int) -> list[Fraction]:
    """First ``terms`` Taylor coefficients of ``f`` at 0 by exact long division."""
    b0 = f.den[0]
    if b0 == 0:
        raise ZeroDivisionError("pole at origin")
    den = f.den.coeffs
    out: list[Fraction] = []
    for i in range(terms):
        acc = f.num[i]
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc / b0)
    return out


def poly_integrate(p: Poly, lower=-1, upper: Poly | None = None) -> Poly:
    """Definite integral of ``p`` from ``lower`` to ``upper(w)`` as a polynomial in w.

    ``upper`` defaults to 2w - 1.
    """
    if upper is None:
        upper = Poly([-1, 2])
    anti = p.antiderivative()
    return anti(upper) - anti(_frac(lower))


def cauchy_product(a: Sequence, b: Sequence) -> list:
    """Convolution of two coefficient sequences, truncated to the shorter length."""
    n = min(len(a), len(b))
    return [sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(n)]
