from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from killtensors.repdim import (
    BranchTerm,
    TensorSpaceSpec,
    branching_terms,
    cpn_killing_dim,
    cpn_killing_dim_closed,
    cpn_table,
    rank2_su_branching,
    sphere_killing_dim,
    sphere_killing_dim_rank3,
    two_row_irrep_dim,
)

CPN_TABLE = {
    1: [3, 6, 10, 15, 21],
    2: [8, 36, 119, 322, 756],
    3: [15, 120, 664, 2850, 10142],
    4: [24, 300, 2500, 15600, 78252],
    5: [35, 630, 7370, 62965, 422919],
    6: [48, 1176, 18375, 205800, 1782032],
    7: [63, 2016, 40544, 576072, 6246072],
}


def weyl_dim(parts, rank):
    """Weyl dimension formula for GL(rank) with partition ``parts``."""
    lam = list(parts) + [0] * (rank - len(parts))
    out = Fraction(1)
    for i, j in combinations(range(rank), 2):
        out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert out.denominator == 1
    return int(out)


@pytest.mark.parametrize("n", range(1, 8))
def test_cpn_table_rows(n):
    assert [cpn_killing_dim(n, k) for k in range(1, 6)] == CPN_TABLE[n]


def test_cpn_table_function_covers_grid():
    table = cpn_table()
    assert table[(2, 3)] == 119
    assert table[(7, 5)] == 6246072
    assert all(table[(n, 0)] == 1 for n in range(1, 8))


@given(st.integers(1, 12), st.integers(0, 8), st.integers(0, 5))
def test_two_row_dim_matches_weyl(n, p, q):
    assert two_row_irrep_dim(n, p, q) == weyl_dim((p + q, q), n + 1)


@given(st.integers(1, 15), st.integers(0, 8))
def test_sphere_dim_matches_weyl(n, k):
    assert sphere_killing_dim(n, k) == weyl_dim((k, k), n + 1)


def test_sphere_examples():
    assert sphere_killing_dim(2, 0) == 1
    assert sphere_killing_dim(3, 1) == 6
    assert sphere_killing_dim(2, 2) == 6
    assert sphere_killing_dim(TensorSpaceSpec(3, 2)) == 20


@pytest.mark.parametrize("n", range(1, 31))
def test_sphere_low_rank_closed_forms(n):
    assert sphere_killing_dim(n, 1) == n * (n + 1) // 2
    assert sphere_killing_dim(n, 3) == sphere_killing_dim_rank3(n)


@pytest.mark.parametrize("k", range(1, 5))
def test_cpn_fixed_rank_polynomials(k):
    for n in range(1, 31):
        assert cpn_killing_dim(n, k) == cpn_killing_dim_closed(k, n)


def test_closed_form_range():
    with pytest.raises(ValueError, match="no closed form"):
        cpn_killing_dim_closed(5, 2)


def test_branching_terms_order_and_sum():
    terms = branching_terms(2, 4)
    assert [(t.p, t.q) for t in terms] == [(4, 0), (2, 1), (0, 2)]
    assert isinstance(terms[0], BranchTerm)
    for n in range(1, 6):
        for k in range(1, 7):
            s = sum(t.dim_factor**2 for t in branching_terms(n, k))
            s_prev = sum(t.dim_factor**2 for t in branching_terms(n, k - 1))
            assert s - s_prev == cpn_killing_dim(n, k)


def test_cpn_one_is_triangular():
    # CP_1 is a round 2-sphere
    for k in range(10):
        assert cpn_killing_dim(1, k) == sphere_killing_dim(2, k)


def test_rank2_branching():
    assert rank2_su_branching(2) == [27, 0, 8, 1]
    assert rank2_su_branching(3) == [84, 20, 15, 1]
    for n in range(2, 20):
        assert sum(rank2_su_branching(n)) == cpn_killing_dim(n, 2)
    with pytest.raises(ValueError):
        rank2_su_branching(1)


def test_invalid_specs():
    with pytest.raises(ValueError):
        TensorSpaceSpec(0, 1)
    with pytest.raises(ValueError):
        TensorSpaceSpec(1, -1)
    with pytest.raises(ValueError):
        two_row_irrep_dim(2, -1, 0)
    assert TensorSpaceSpec(3, 2).d == 8
