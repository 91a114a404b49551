from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from killtensors.exactnum import (
    Echelon,
    ExactMatrix,
    Poly,
    RatFunc,
    Rational,
    cauchy_product,
    column_rank,
    kernel_basis,
    poly_gcd,
    rank,
    series_coeffs,
)

sympy = pytest.importorskip("sympy")

small_ints = st.integers(-6, 6)
polys = st.lists(small_ints, max_size=6).map(Poly)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
)


def test_rational_is_exact_fraction():
    assert Rational(1, 3) + Rational(1, 6) == Rational(1, 2)
    assert Rational is Fraction


def test_poly_strips_trailing_zeros():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly([0, 0]).is_zero


def test_poly_format():
    assert Poly([1, 4, 10, 4, 1]).format("t") == "1+4t+10t^2+4t^3+t^4"
    assert Poly([0, -1, Fraction(1, 2)]).format("w") == "-w+1/2w^2"


def test_poly_division_identity():
    a = Poly([3, 0, -2, 5])
    b = Poly([1, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_poly_gcd_common_factor():
    f = Poly([1, 1])
    a = f * Poly([2, 0, 1])
    b = f * Poly([-3, 1])
    assert poly_gcd(a, b) == f.monic()


def test_ratfunc_reduces():
    f = RatFunc(Poly([1, -1]) * Poly([2, 1]), Poly([1, -1]) ** 2)
    assert f.den.degree == 1
    assert f == RatFunc(Poly([2, 1]), Poly([1, -1]))


def test_series_known_coefficients():
    f = RatFunc(Poly([1, 1, 1]), Poly([1, -1]) ** 7)
    assert series_coeffs(f, 4) == [1, 8, 36, 119]
    g = RatFunc(Poly([1, 1]), Poly([1, -1]) ** 5)
    assert series_coeffs(g, 2)[1] == 6


def test_series_pole_at_origin():
    with pytest.raises(ZeroDivisionError):
        series_coeffs(RatFunc(Poly([1]), Poly([0, 1])), 3)


def test_series_agrees_with_sympy():
    t = sympy.symbols("t")
    num, den = Poly([2, -1, 3]), Poly([1, -2, 0, 1])
    ours = series_coeffs(RatFunc(num, den), 12)
    expr = (2 - t + 3 * t**2) / (1 - 2 * t + t**3)
    ref = sympy.Poly(sympy.series(expr, t, 0, 12).removeO(), t).all_coeffs()[::-1]
    assert ours == [Fraction(int(c)) for c in ref]


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(polys, polys)
def test_poly_evaluation_is_homomorphism(a, b):
    x = Fraction(3, 7)
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@settings(max_examples=40)
@given(polys, st.lists(small_ints, min_size=1, max_size=4).filter(lambda c: c[0] != 0).map(Poly))
def test_series_of_product_is_cauchy_product(a, den):
    f = RatFunc(a, den)
    g = RatFunc(Poly([1, 2]), den * Poly([1, -1]))
    n = 8
    assert series_coeffs(f * g, n) == cauchy_product(series_coeffs(f, n), series_coeffs(g, n))[:n]


@settings(max_examples=60)
@given(matrices)
def test_rank_matches_sympy(rows):
    m = ExactMatrix.from_dense(rows)
    assert rank(m) == sympy.Matrix(rows).rank()
    assert m.rank() == m.T.rank()


@settings(max_examples=60)
@given(matrices)
def test_kernel_basis_is_kernel(rows):
    m = ExactMatrix.from_dense(rows)
    k = kernel_basis(m)
    assert k.shape == (m.shape[1], m.shape[1] - rank(m))
    assert (m @ k).is_zero()
    assert rank(k) == k.shape[1]


def test_rank_rational_entries():
    m = ExactMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert m.rank() == 1


def test_rank_identity_and_zero():
    assert ExactMatrix.identity(5).rank() == 5
    assert ExactMatrix.zeros(3, 4).rank() == 0
    assert kernel_basis(ExactMatrix.zeros(2, 3)).shape == (3, 3)


def test_sparse_text_roundtrip():
    m = ExactMatrix(3, 4, {(0, 1): Fraction(-2, 3), (2, 3): 5})
    text = m.dumps()
    assert text.splitlines()[0] == "3 4"
    assert ExactMatrix.loads(text) == m


def test_echelon_incremental():
    e = Echelon(3)
    assert e.add({0: 1, 1: 1})
    assert e.add({1: 1, 2: 1})
    assert not e.add({0: 1, 2: -1})
    assert e.rank == 2
    assert e.contains({0: 2, 1: 4, 2: 2})
    (v,) = e.null_space()
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0


def test_column_rank_of_dict_vectors():
    assert column_rank(4, [{0: 1}, {1: 2}, {0: 3, 1: 6}]) == 2


def test_large_integer_entries_stay_exact():
    big = 10**30
    m = ExactMatrix.from_dense([[big, big + 1], [big + 1, big + 2]])
    assert m.rank() == 2
