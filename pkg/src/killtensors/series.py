"""Poincare series of Killing-tensor dimensions and the Legendre/Papoulis identity.

``G_n(t) = sum_k dim(rank-k Killing tensors on S^n) t^k`` has numerator
over ``(1-t)^(2n-1)``; ``H_n(t)`` (same for CP_n) has numerator over
``(1-t)^(4n-1)``.  Numerators are extracted by multiplying a truncated
series by the expected denominator and checking that the next ``2n``
coefficients past the expected degree vanish.  That is a finite witness,
not a proof of polynomiality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exactnum import Poly, RatFunc, poly_integrate, series_coeffs
from .repdim import cpn_killing_dim, sphere_killing_dim

T = Poly.x()
ONE_MINUS_T = Poly([1, -1])


class SeriesError(ArithmeticError):
    pass


def legendre(m: int) -> Poly:
    """Legendre polynomial L_m via Rodrigues' formula, exactly."""
    if m < 0:
        raise ValueError("Legendre degree must be >= 0")
    p = Poly([-1, 0, 1]) ** m
    for _ in range(m):
        p = p.derivative()
    return p * Fraction(1, 2**m * factorial(m))


def papoulis(k: int) -> Poly:
    """P_{2k+1}(w): scaled integral of (sum_i (2i+1) L_i)^2 from -1 to 2w-1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    s = Poly()
    for i in range(k + 1):
        s = s + legendre(i) * (2 * i + 1)
    return poly_integrate(s * s, -1) * Fraction(1, 2 * (k + 1) ** 2)


def conjectured_H(n: int) -> RatFunc:
    """-1/(t (1-t)^(2n)) * P_{2n-1}(t/(t-1)) as a reduced rational function."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = papoulis(n - 1)
    deg = p.degree
    t_minus_1 = Poly([-1, 1])
    # P(t/(t-1)) = sum_j c_j t^j (t-1)^(deg-j) / (t-1)^deg
    num = Poly()
    for j, c in enumerate(p.coeffs):
        if c:
            num = num + T**j * t_minus_1 ** (deg - j) * c
    if num[0] != 0:
        raise SeriesError("identity malformed")
    num = num // T
    den = -(ONE_MINUS_T ** (2 * n)) * t_minus_1**deg
    return RatFunc(num, den)


def one_minus_t_form(f: RatFunc) -> tuple[Poly, int]:
    """Write ``f`` as ``num / (1-t)^e``; raises if the denominator is not of that form."""
    e = f.den.degree
    if f.den != (ONE_MINUS_T**e).monic():
        raise SeriesError("denominator is not a power of (1-t)")
    return f.num * (-1) ** e, e


def _numerator_from_series(coeffs: list[int], exponent: int, expected_deg: int) -> Poly:
    mult = (ONE_MINUS_T**exponent).coeffs
    prod = [sum(mult[j] * coeffs[i - j] for j in range(min(i, exponent) + 1)) for i in range(len(coeffs))]
    tail = prod[expected_deg + 1 :]
    if any(tail):
        raise SeriesError("not polynomial of expected degree")
    return Poly(prod[: expected_deg + 1])


def g_numerator(n: int) -> Poly:
    """Numerator of G_n(t) over (1-t)^(2n-1); a row of the Catalan triangle."""
    if n < 2:
        raise ValueError("n must be >= 2")
    expected = n - 2
    terms = expected + 1 + 2 * n
    coeffs = [sphere_killing_dim(n, k) for k in range(terms)]
    return _numerator_from_series(coeffs, 2 * n - 1, expected)


def h_numerator(n: int) -> Poly:
    """Numerator of H_n(t) over (1-t)^(4n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    expected = 2 * n - 2
    terms = expected + 1 + 2 * n
    coeffs = [cpn_killing_dim(n, k) for k in range(terms)]
    return _numerator_from_series(coeffs, 4 * n - 1, expected)


@dataclass
class PoincareReport:
    n: int
    terms: int
    first_mismatch: int | None
    coefficients: list[int] = field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def summary(self) -> str:
        if self.ok:
            return f"verified to {self.terms} terms"
        return f"mismatch at coefficient {self.first_mismatch}"


def verify_poincare(n: int, terms: int) -> PoincareReport:
    """Compare the Papoulis-form H_n against the dimension formula term by term."""
    coeffs = series_coeffs(conjectured_H(n), terms)
    mismatch = None
    for k, c in enumerate(coeffs):
        if c != cpn_killing_dim(n, k):
            mismatch = k
            break
    ints = [int(c) if c.denominator == 1 else c for c in coeffs]
    return PoincareReport(n, terms, mismatch, ints)
