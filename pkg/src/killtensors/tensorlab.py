"""Brute-force tensor oracle for Killing-tensor dimensions.

Tensors on R^d with 2k slots are sparse dicts ``{index tuple: int/Fraction}``.
Slots ``0..k-1`` form the first row of the two-row Young diagram and slots
``k..2k-1`` the second; column ``i`` pairs slots ``(i, k+i)``.  The Young
symmetrizer used is ``A o S``: symmetrize within rows, then antisymmetrize
each column.  It is left unnormalized, so ``Y(Y v) = (k+1)! k! Y(v)``.

The CP_n model is R^(2n+2) with g the identity and the complex structure
pairing coordinates ``2i`` and ``2i+1``: ``Jmix e_{2i} = e_{2i+1}``.  With
g the identity, J^{ab} and J_{ab} have the same components.

Nothing here uses the closed-form dimension formulas.  The oracle works with
real tensors and the J-derivation condition directly.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .exactnum import Echelon, ExactMatrix, column_rank, echelon_of_rows
from .exactnum.matrix import _primitive
from .repdim import TensorSpaceSpec

DEFAULT_BUDGET = 70_000
BUDGET_ENV = "KILLTENSORS_ORACLE_BUDGET"


class OracleTooLarge(ValueError):
    pass


def size_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def _check_budget(d: int, k: int, budget: int | None = None) -> None:
    cap = size_budget() if budget is None else budget
    if d ** (2 * k) > cap:
        raise OracleTooLarge(f"oracle instance too large: {d}^{2 * k} = {d ** (2 * k)} coordinates exceeds cap {cap}")


# ---------------------------------------------------------------------------
# ambient model


@dataclass(frozen=True)
class AmbientModel:
    n: int
    d: int
    g: ExactMatrix
    jmix: ExactMatrix
    jskew: ExactMatrix
    # jcol[b] = (a, s): the only nonzero in column b of Jmix is Jmix[a][b] = s
    jcol: tuple = field(repr=False, default=())


def build_ambient(n: int) -> AmbientModel:
    if n < 1:
        raise ValueError("n must be >= 1")
    d = 2 * n + 2
    entries = {}
    jcol = []
    for i in range(n + 1):
        entries[2 * i + 1, 2 * i] = 1
        entries[2 * i, 2 * i + 1] = -1
        jcol += [(2 * i + 1, 1), (2 * i, -1)]
    jmix = ExactMatrix(d, d, entries)
    g = ExactMatrix.identity(d)
    # J_{ab} = J_a^c g_{bc}
    jskew = jmix @ g.T
    return AmbientModel(n, d, g, jmix, jskew, tuple(jcol))


# ---------------------------------------------------------------------------
# sparse tensor operations


def _add(acc: dict, key, v) -> None:
    nv = acc.get(key, 0) + v
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def _row_arrangements(values: tuple) -> list[tuple[tuple, int]]:
    """Distinct orderings of ``values`` with the number of permutations giving each."""
    mult = 1
    for c in Counter(values).values():
        mult *= factorial(c)
    return [(p, mult) for p in sorted(set(itertools.permutations(values)))]


def row_symmetrize(t: dict, k: int) -> dict:
    out: dict = {}
    for idx, c in t.items():
        for r1, m1 in _row_arrangements(idx[:k]):
            for r2, m2 in _row_arrangements(idx[k:]):
                _add(out, r1 + r2, c * m1 * m2)
    return out


def column_antisymmetrize(t: dict, k: int) -> dict:
    out: dict = {}
    for idx, c in t.items():
        for flips in itertools.product((0, 1), repeat=k):
            new = list(idx)
            sign = 1
            for i, f in enumerate(flips):
                if f:
                    new[i], new[k + i] = new[k + i], new[i]
                    sign = -sign
            _add(out, tuple(new), sign * c)
    return out


def young_symmetrize(t: dict, k: int) -> dict:
    return column_antisymmetrize(row_symmetrize(t, k), k)


def derivation(t: dict, model: AmbientModel) -> dict:
    """(J t)_{a b ... e} = J_a^l t_{l b ... e} + ... + J_e^l t_{a b ... l}."""
    out: dict = {}
    jcol = model.jcol
    for idx, c in t.items():
        for s, lam in enumerate(idx):
            a, sign = jcol[lam]
            _add(out, idx[:s] + (a,) + idx[s + 1 :], sign * c)
    return out


def j_trace(t: dict, model: AmbientModel, s: int, u: int) -> dict:
    """Contraction J^{ab} t_{..a..b..} over slots s < u."""
    out: dict = {}
    jcol = model.jcol
    for idx, c in t.items():
        a, sign = jcol[idx[u]]
        # J^{ab} = Jmix[a][b]; column idx[u] has its nonzero in row a
        if a == idx[s]:
            _add(out, idx[:s] + idx[s + 1 : u] + idx[u + 1 :], sign * c)
    return out


def lie_action(t: dict, x: np.ndarray) -> dict:
    """Derivation action of an arbitrary matrix: sum over slots of X_a^l t_{..l..}."""
    out: dict = {}
    cols = [[(a, int(x[a, b])) for a in range(x.shape[0]) if x[a, b]] for b in range(x.shape[1])]
    for idx, c in t.items():
        for s, lam in enumerate(idx):
            for a, v in cols[lam]:
                _add(out, idx[:s] + (a,) + idx[s + 1 :], v * c)
    return out


def flat_index(idx: tuple, d: int) -> int:
    f = 0
    for i in idx:
        f = f * d + i
    return f


def unflat_index(f: int, d: int, rank: int) -> tuple:
    out = []
    for _ in range(rank):
        f, r = divmod(f, d)
        out.append(r)
    return tuple(reversed(out))


def to_flat(t: dict, d: int) -> dict[int, object]:
    return {flat_index(i, d): v for i, v in t.items()}


# ---------------------------------------------------------------------------
# two-row Young space


@dataclass
class TensorSubspace:
    spec: TensorSpaceSpec | None
    d: int
    k: int
    vectors: list[dict] = field(repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.d ** (2 * self.k)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> ExactMatrix:
        """Columns are the basis tensors, rows the flattened multi-index."""
        return ExactMatrix.from_columns(self.ambient_dim, [to_flat(v, self.d) for v in self.vectors])

    def combine(self, coeffs) -> dict:
        out: dict = {}
        for c, v in zip(coeffs, self.vectors):
            if c:
                for idx, x in v.items():
                    _add(out, idx, c * x)
        return out

    def coordinates(self, t: dict) -> list[Fraction]:
        """Coordinates of ``t`` in this basis; ValueError if ``t`` is not in the span."""
        cols = [to_flat(v, self.d) for v in self.vectors] + [{k: -v for k, v in to_flat(t, self.d).items()}]
        # kernel of [B | -t] restricted to last coordinate 1
        rows: dict[int, dict[int, object]] = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        ech = echelon_of_rows(len(cols), (_primitive(r) for r in rows.values()))
        last = len(cols) - 1
        for vec in ech.null_space():
            if vec.get(last):
                scale = vec[last]
                return [vec.get(j, Fraction(0)) / scale for j in range(last)]
        if not t:
            return [Fraction(0)] * last
        raise ValueError("tensor not in subspace")


def _semistandard_two_row(d: int, k: int):
    for top in itertools.combinations_with_replacement(range(d), k):
        for bot in itertools.combinations_with_replacement(range(d), k):
            if all(a < b for a, b in zip(top, bot)):
                yield top + bot


def _all_row_pairs(d: int, k: int):
    rows = list(itertools.combinations_with_replacement(range(d), k))
    for top in rows:
        for bot in rows:
            yield top + bot


def two_row_basis(d: int, k: int, candidates: str = "auto") -> list[dict]:
    """Independent tensors spanning the image of the Young symmetrizer on (R^d)^{⊗2k}.

    ``candidates="all"`` feeds the symmetrizer every pair of row multisets
    (the image of every basis tensor is one of these) and keeps an
    independent subset, so the span is the full image.  ``"semistandard"``
    uses only semistandard fillings and checks they are independent.
    ``"auto"`` picks ``"all"`` when there are at most 1000 candidates.
    """
    if candidates == "auto":
        candidates = "all" if comb(d + k - 1, k) ** 2 <= 1000 else "semistandard"
    if candidates == "all":
        ech = Echelon(d ** (2 * k))
        out = []
        for idx in _all_row_pairs(d, k):
            v = young_symmetrize({idx: 1}, k)
            if v and ech.add(_primitive(to_flat(v, d))):
                out.append(v)
        return out
    if candidates == "semistandard":
        out = [young_symmetrize({idx: 1}, k) for idx in _semistandard_two_row(d, k)]
        r = column_rank(d ** (2 * k), (to_flat(v, d) for v in out))
        if r != len(out):
            raise ArithmeticError("semistandard symmetrized tensors are dependent")
        return out
    raise ValueError(f"unknown candidate set {candidates!r}")


def young_two_row_space(n: int, k: int, candidates: str = "auto", budget: int | None = None) -> TensorSubspace:
    """Two-row (k, k) symmetry class inside (R^(2n+2))^{⊗2k}."""
    spec = TensorSpaceSpec(n, k)
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_budget(spec.d, k, budget)
    return TensorSubspace(spec, spec.d, k, two_row_basis(spec.d, k, candidates))


def sphere_two_row_space(n: int, k: int, candidates: str = "all", budget: int | None = None) -> TensorSubspace:
    """Same symmetry class on R^(n+1), the model for Killing tensors on S^n."""
    spec = TensorSpaceSpec(n, k)
    d = n + 1
    if k == 0:
        return TensorSubspace(spec, d, 0, [{(): 1}])
    _check_budget(d, k, budget)
    return TensorSubspace(spec, d, k, two_row_basis(d, k, candidates))


# ---------------------------------------------------------------------------
# constraints


def _slot_pairs(k: int):
    return list(itertools.combinations(range(2 * k), 2))


def j_trace_constraints(space: TensorSubspace, model: AmbientModel) -> ExactMatrix:
    """Matrix of all J-traces (every unordered slot pair) on the space's coordinates.

    Row ``p * d^(2k-2) + f`` holds pair number ``p`` at flat output index ``f``.
    """
    if space.d != model.d:
        raise ValueError("space and model dimensions differ")
    d, k = space.d, space.k
    block = d ** (2 * k - 2)
    pairs = _slot_pairs(k)
    rows: dict[int, dict[int, Fraction]] = {}
    for j, v in enumerate(space.vectors):
        for p, (s, u) in enumerate(pairs):
            for idx, c in j_trace(v, model, s, u).items():
                rows.setdefault(p * block + flat_index(idx, d), {})[j] = Fraction(c)
    return ExactMatrix._from_row_dicts(len(pairs) * block, space.dim, rows)


def derivation_constraints(space: TensorSubspace, model: AmbientModel) -> ExactMatrix:
    """Matrix of the derivation action J on the space's coordinates (rows: flat ambient index)."""
    if space.d != model.d:
        raise ValueError("space and model dimensions differ")
    d = space.d
    rows: dict[int, dict[int, Fraction]] = {}
    for j, v in enumerate(space.vectors):
        for idx, c in derivation(v, model).items():
            rows.setdefault(flat_index(idx, d), {})[j] = Fraction(c)
    return ExactMatrix._from_row_dicts(space.ambient_dim, space.dim, rows)


def _constraint_rows(space: TensorSubspace, model: AmbientModel):
    """Primitive integer rows of both constraint maps (J-trace and derivation)."""
    d, k = space.d, space.k
    pairs = _slot_pairs(k)
    rows: dict[tuple, dict[int, int]] = {}
    for j, v in enumerate(space.vectors):
        for p, (s, u) in enumerate(pairs):
            for idx, c in j_trace(v, model, s, u).items():
                rows.setdefault((p, idx), {})[j] = c
        for idx, c in derivation(v, model).items():
            rows.setdefault((-1, idx), {})[j] = c
    return [_primitive(r) for r in rows.values()]


@dataclass
class OracleSolution:
    young: TensorSubspace
    coeffs: list[dict[int, Fraction]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def tensors(self) -> list[dict]:
        """Solution basis as ambient tensors, each scaled to primitive integers."""
        out = []
        for c in self.coeffs:
            t = self.young.combine([c.get(j, 0) for j in range(self.young.dim)])
            out.append(_primitive(t))
        return out

    def subspace(self) -> TensorSubspace:
        y = self.young
        return TensorSubspace(y.spec, y.d, y.k, self.tensors())


def oracle_cpn_solution(n: int, k: int, candidates: str = "auto", budget: int | None = None) -> OracleSolution:
    model = build_ambient(n)
    young = young_two_row_space(n, k, candidates, budget)
    ech = echelon_of_rows(young.dim, _constraint_rows(young, model))
    return OracleSolution(young, ech.null_space())


def oracle_cpn_dim(n: int, k: int, candidates: str = "auto", budget: int | None = None) -> int:
    """Dimension of the J-trace-free, J-invariant two-row tensors (k, k) on R^(2n+2)."""
    if k == 0:
        return 1
    model = build_ambient(n)
    young = young_two_row_space(n, k, candidates, budget)
    ech = echelon_of_rows(young.dim, _constraint_rows(young, model))
    return young.dim - ech.rank


def oracle_sphere_dim(n: int, k: int, candidates: str = "all", budget: int | None = None) -> int:
    return sphere_two_row_space(n, k, candidates, budget).dim


def killing_field_space(n: int) -> TensorSubspace:
    """k = 1 solution: J-trace-free 2-forms killed by the derivation action."""
    return oracle_cpn_solution(n, 1).subspace()


# ---------------------------------------------------------------------------
# generation by Killing fields


def _dense(t: dict, d: int, rank: int, dtype=object) -> np.ndarray:
    a = np.zeros((d,) * rank, dtype=dtype)
    for idx, v in t.items():
        a[idx] = v
    return a


def _dense_row_symmetrize(a: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(a)
    for p1 in itertools.permutations(range(k)):
        for p2 in itertools.permutations(range(k, 2 * k)):
            out = out + np.transpose(a, p1 + p2)
    return out


@dataclass(frozen=True)
class GenerationRank:
    source_dim: int
    target_dim: int
    rank: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def kernel_dim(self) -> int:
        return self.source_dim - self.rank


def generation_rank(n: int, k: int, budget: int | None = None) -> GenerationRank:
    """Rank of symmetric products of Killing fields projected onto the rank-k oracle space.

    The map sends K_1 ⊙ ... ⊙ K_k (K_j in slots (j, k+j)) through the Young
    symmetrizer and the orthogonal projection onto the solution space W.
    Its matrix against a basis w of W is <w, Y t> = 2^k <S w, t> because S
    and A are self-adjoint and A w = 2^k w; the rank is computed exactly.
    """
    fields = killing_field_space(n).vectors
    m = len(fields)
    sol = oracle_cpn_solution(n, k, budget=budget)
    d = sol.young.d
    ws = sol.tensors()
    source = list(itertools.combinations_with_replacement(range(m), k))
    if not ws:
        return GenerationRank(len(source), 0, 0)

    wmax = max(abs(v) for w in ws for v in w.values())
    kmax = max(abs(v) for f in fields for v in f.values())
    bound = wmax * factorial(k) ** 2 * kmax**k * d ** (2 * k)
    dtype = np.int64 if bound < 2**62 else object

    kap = np.stack([_dense(f, d, 2, dtype) for f in fields])  # (m, d, d)
    rows = []
    for w in ws:
        sw = _dense_row_symmetrize(_dense(w, d, 2 * k, dtype), k)
        # contract column j = slots (j, k+j) with a Killing field, one column at a time
        cur = sw[np.newaxis]
        for j in range(k):
            # axes: batch, j field axes, then kk remaining first-row and kk second-row slots
            kk = k - j
            axes_t = [1 + j, 1 + j + kk]
            cur = np.tensordot(cur, kap, axes=(axes_t, [1, 2]))
            # tensordot puts the new field axis last; move it next to the others
            cur = np.moveaxis(cur, -1, j + 1)
        cur = cur[0]
        rows.append({c: int(cur[tuple(idx)]) for c, idx in enumerate(source) if cur[tuple(idx)]})
    ech = echelon_of_rows(len(source), (_primitive(r) for r in rows if r))
    return GenerationRank(len(source), len(ws), ech.rank)


# ---------------------------------------------------------------------------
# SU(n+1) isotypic decomposition by the quadratic Casimir


def u_generators(n: int) -> list[tuple[np.ndarray, int]]:
    """Real d x d matrices spanning u(n+1) with their squared Frobenius norms."""
    d = 2 * n + 2
    one = np.eye(2, dtype=np.int64)
    jb = np.array([[0, -1], [1, 0]], dtype=np.int64)
    gens = []

    def block(entries):
        x = np.zeros((d, d), dtype=np.int64)
        for (a, b), m in entries:
            x[2 * a : 2 * a + 2, 2 * b : 2 * b + 2] += m
        return x

    for a in range(n + 1):
        gens.append((block([((a, a), jb)]), 2))
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            gens.append((block([((a, b), one), ((b, a), -one)]), 4))
            gens.append((block([((a, b), jb), ((b, a), jb)]), 4))
    return gens


def su_isotypic_dims(n: int, k: int) -> list[tuple[Fraction, int]]:
    """Casimir eigenvalues on the oracle space with their eigenspace dimensions.

    Sorted by eigenvalue, largest first.  Eigenvalues are located in floating
    point, then every eigenspace dimension is computed by exact rank, and the
    dimensions are checked to add up to the whole space.
    """
    sol = oracle_cpn_solution(n, k)
    d = sol.young.d
    ws = sol.tensors()
    gens = u_generators(n)

    # 4 * Casimir = -4 sum X_i^2 / |X_i|^2, integer weights
    def casimir(t):
        out: dict = {}
        for x, nrm in gens:
            for idx, v in lie_action(lie_action(t, x), x).items():
                _add(out, idx, -v * (4 // nrm))
        return out

    cws = [casimir(w) for w in ws]
    amb = d ** (2 * k)
    B = np.zeros((amb, len(ws)))
    CB = np.zeros((amb, len(ws)))
    for j, (w, cw) in enumerate(zip(ws, cws)):
        for idx, v in w.items():
            B[flat_index(idx, d), j] = v
        for idx, v in cw.items():
            CB[flat_index(idx, d), j] = v
    coords = np.linalg.lstsq(B, CB, rcond=None)[0]
    approx = sorted(set(round(float(e.real), 6) for e in np.linalg.eigvals(coords)))
    eigen = sorted({Fraction(e).limit_denominator(1000) for e in approx}, reverse=True)

    out = []
    for lam in eigen:
        vecs = []
        for w, cw in zip(ws, cws):
            diff = dict(cw)
            for idx, v in w.items():
                _add(diff, idx, -lam * v)
            vecs.append(to_flat(diff, d))
        r = column_rank(amb, vecs)
        out.append((lam / 4, len(ws) - r))
    if sum(m for _, m in out) != len(ws):
        raise ArithmeticError("Casimir eigenspaces do not exhaust the space")
    return out
