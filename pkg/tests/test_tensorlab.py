import itertools
from math import comb, factorial

import numpy as np
import pytest

from killtensors import tensorlab as tl
from killtensors.exactnum import ExactMatrix
from killtensors.repdim import cpn_killing_dim, sphere_killing_dim


# -- dense floating-point reference, built without the sparse machinery ------


def _dense_young(d, k):
    """Matrix of the row-symmetrize-then-column-antisymmetrize operator on (R^d)^(2k)."""
    n = d ** (2 * k)
    basis = np.eye(n).reshape((n,) + (d,) * (2 * k))

    def sym(a):
        out = np.zeros_like(a)
        for p1 in itertools.permutations(range(k)):
            for p2 in itertools.permutations(range(k)):
                perm = [0] + [1 + i for i in p1] + [1 + k + i for i in p2]
                out += np.transpose(a, perm)
        return out

    def alt(a):
        out = np.zeros_like(a)
        for flips in itertools.product((0, 1), repeat=k):
            perm = list(range(2 * k + 1))
            for i, f in enumerate(flips):
                if f:
                    perm[1 + i], perm[1 + k + i] = perm[1 + k + i], perm[1 + i]
            out += (-1) ** sum(flips) * np.transpose(a, perm)
        return out

    return alt(sym(basis)).reshape(n, n).T


def _dense_constraints(d, k, jmix):
    n = d ** (2 * k)
    basis = np.eye(n).reshape((n,) + (d,) * (2 * k))
    blocks = []
    der = np.zeros_like(basis)
    for s in range(2 * k):
        moved = np.moveaxis(basis, 1 + s, -1)
        der += np.moveaxis(moved @ jmix.T, -1, 1 + s)
    blocks.append(der.reshape(n, n).T)
    for s, u in itertools.combinations(range(2 * k), 2):
        tr = np.einsum(basis, list(range(2 * k + 1)), jmix, [1 + s, 1 + u], [i for i in range(2 * k + 1) if i not in (1 + s, 1 + u)])
        blocks.append(tr.reshape(n, -1).T)
    return np.vstack(blocks)


def _dense_jmix(n):
    d = 2 * n + 2
    j = np.zeros((d, d))
    for i in range(n + 1):
        j[2 * i + 1, 2 * i] = 1
        j[2 * i, 2 * i + 1] = -1
    return j


def dense_cpn_dim(n, k):
    d = 2 * n + 2
    y = _dense_young(d, k)
    c = _dense_constraints(d, k, _dense_jmix(n))
    return np.linalg.matrix_rank(y) - np.linalg.matrix_rank(c @ y)


# -- ambient model ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ambient_model_relations(n):
    m = tl.build_ambient(n)
    j = np.array(m.jmix.to_dense(), dtype=float)
    assert m.d == 2 * n + 2
    assert np.array_equal(j @ j, -np.eye(m.d))
    assert np.array_equal(j.T @ j, np.eye(m.d))
    js = np.array(m.jskew.to_dense(), dtype=float)
    assert np.array_equal(js, -js.T)
    assert round(abs(np.linalg.det(js))) == 1
    assert np.sum(js * js) == m.d
    assert j[1, 0] == 1  # J e_0 = e_1


# -- Young spaces -------------------------------------------------------------------


def test_young_space_dimensions():
    assert tl.young_two_row_space(1, 1).dim == 6
    assert tl.young_two_row_space(1, 2).dim == 20
    assert tl.sphere_two_row_space(2, 2).dim == 6


def test_young_candidate_sets_agree():
    a = tl.young_two_row_space(1, 2, candidates="all")
    b = tl.young_two_row_space(1, 2, candidates="semistandard")
    assert a.dim == b.dim == 20
    for v in b.vectors:
        a.coordinates(v)  # raises if outside the span


def test_young_symmetrizer_is_quasi_idempotent():
    k = 2
    for v in tl.young_two_row_space(1, k).vectors[:5]:
        twice = tl.young_symmetrize(v, k)
        scale = factorial(k + 1) * factorial(k)
        assert twice == {i: scale * c for i, c in v.items()}


def test_young_space_matches_dense_projector():
    for d, k in [(3, 2), (4, 2), (5, 1)]:
        sparse = tl.TensorSubspace(None, d, k, tl.two_row_basis(d, k))
        assert sparse.dim == np.linalg.matrix_rank(_dense_young(d, k))


def test_basis_dump_roundtrip():
    space = tl.young_two_row_space(1, 1)
    b = space.basis
    assert b.shape == (16, 6)
    assert ExactMatrix.loads(b.dumps()) == b


# -- constraints ----------------------------------------------------------------------


def test_j_trace_of_j_is_d():
    model = tl.build_ambient(1)
    j = {(a, b): v for (a, b), v in model.jskew.entries()}
    assert tl.j_trace(j, model, 0, 1) == {(): 4}
    assert tl.j_trace({(0, 2): 1, (2, 0): -1}, model, 0, 1) == {}
    assert tl.derivation(j, model) == {}


def test_derivation_kills_complex_line():
    model = tl.build_ambient(1)
    assert tl.derivation({(0, 1): 1, (1, 0): -1}, model) == {}


def test_constraint_matrices_shapes_and_kernel():
    model = tl.build_ambient(1)
    space = tl.young_two_row_space(1, 1)
    jt = tl.j_trace_constraints(space, model)
    dv = tl.derivation_constraints(space, model)
    assert jt.shape == (1, 6)
    assert dv.shape == (16, 6)
    stacked = ExactMatrix.from_rows(6, [jt.row(i) for i in range(jt.shape[0])] + [dv.row(i) for i in range(dv.shape[0])])
    assert 6 - stacked.rank() == 3


def test_derivation_commutes_with_traces():
    model = tl.build_ambient(1)
    for v in tl.young_two_row_space(1, 2).vectors[:8]:
        for s, u in itertools.combinations(range(4), 2):
            assert tl.j_trace(tl.derivation(v, model), model, s, u) == tl.derivation(tl.j_trace(v, model, s, u), model)


def test_solutions_satisfy_constraints():
    sol = tl.oracle_cpn_solution(1, 2)
    model = tl.build_ambient(1)
    for t in sol.tensors():
        assert tl.derivation(t, model) == {}
        for s, u in itertools.combinations(range(4), 2):
            assert tl.j_trace(t, model, s, u) == {}
        assert tl.young_symmetrize(t, 2) == {i: 12 * c for i, c in t.items()}


# -- oracle dimensions -----------------------------------------------------------------


@pytest.mark.parametrize("n,k,expected", [(1, 1, 3), (1, 2, 6), (1, 3, 10), (2, 1, 8), (2, 2, 36), (3, 1, 15)])
def test_oracle_cpn(n, k, expected):
    assert tl.oracle_cpn_dim(n, k) == expected == cpn_killing_dim(n, k)


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (2, 1)])
def test_oracle_matches_dense_reference(n, k):
    assert tl.oracle_cpn_dim(n, k) == dense_cpn_dim(n, k)


def test_oracle_k0():
    assert tl.oracle_cpn_dim(2, 0) == 1


def test_oracle_sphere_in_budget():
    for n in range(1, 10):
        for k in range(0, 5):
            if (n + 1) ** (2 * k) <= 10**4:
                assert tl.oracle_sphere_dim(n, k) == sphere_killing_dim(n, k), (n, k)


def test_sphere_line_is_one_dimensional():
    assert [tl.oracle_sphere_dim(1, k) for k in range(5)] == [1] * 5


@pytest.mark.parametrize("n", [1, 2, 3])
def test_killing_field_space(n):
    assert tl.killing_field_space(n).dim == n * (n + 2)


# -- generation -------------------------------------------------------------------------


@pytest.mark.parametrize("n,k,triple", [(1, 2, (6, 6, 6)), (1, 3, (10, 10, 10)), (2, 2, (36, 36, 36))])
def test_generation_surjective(n, k, triple):
    g = tl.generation_rank(n, k)
    assert (g.source_dim, g.target_dim, g.rank) == triple
    assert g.surjective
    assert g.source_dim == comb(n * (n + 2) + k - 1, k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generation_rank_one(n):
    g = tl.generation_rank(n, 1)
    assert g.source_dim == g.target_dim == g.rank == n * (n + 2)


# -- budget -------------------------------------------------------------------------------


def test_budget_error_message():
    with pytest.raises(tl.OracleTooLarge, match="oracle instance too large"):
        tl.oracle_cpn_dim(5, 4)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv(tl.BUDGET_ENV, "100")
    with pytest.raises(tl.OracleTooLarge, match="cap 100"):
        tl.oracle_cpn_dim(1, 2)
    monkeypatch.setenv(tl.BUDGET_ENV, "300")
    assert tl.oracle_cpn_dim(1, 2) == 6


# -- SU(n+1) decomposition ----------------------------------------------------------------


def test_casimir_decomposition_rank2_cp2():
    dims = [m for _, m in tl.su_isotypic_dims(2, 2)]
    assert dims == [27, 8, 1]
