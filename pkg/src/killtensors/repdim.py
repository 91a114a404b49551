"""Closed-form dimensions of Killing-tensor spaces on S^n and CP_n.

Everything here is integer arithmetic.  Factorial ratios are formed as a
single numerator and denominator and divided once at the end; a nonzero
remainder raises :class:`ConsistencyError`.

Rank-2 SU(n+1) branching
------------------------
The four SU(n+1) summands of the rank-2 Killing tensors on CP_n have
highest weights (2,0,...,0,2), (0,1,0,...,0,1,0), (1,0,...,0,1) and 0, with
dimensions

    n(n+1)^2(n+4)/4,  (n-2)(n+1)^2(n+2)/4,  n(n+2),  1.

The third one is the adjoint representation of SU(n+1).  These add up to
n(n+1)^2(n+2)/2 for every n >= 2.  At n = 2 the second weight does not
exist and its formula correctly gives 0.  The Casimir decomposition in
:func:`killtensors.tensorlab.su_isotypic_dims` gives [27, 0, 8, 1] at
n = 2 and [84, 20, 15, 1] at n = 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial


class ConsistencyError(ArithmeticError):
    """A closed formula produced a non-integral value."""


@dataclass(frozen=True)
class TensorSpaceSpec:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")

    @property
    def d(self) -> int:
        """Real dimension 2n+2 of the standard SU(n+1) module."""
        return 2 * self.n + 2


@dataclass(frozen=True)
class BranchTerm:
    p: int
    q: int
    dim_factor: int


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"{num}/{den} is not an integer")
    return q


def _spec(n_or_spec, k=None) -> TensorSpaceSpec:
    if isinstance(n_or_spec, TensorSpaceSpec):
        return n_or_spec
    return TensorSpaceSpec(n_or_spec, k)


def sphere_killing_dim(n, k=None) -> int:
    """Dimension of rank-k Killing tensors on the round n-sphere.

    Accepts either a :class:`TensorSpaceSpec` or ``(n, k)``.
    """
    s = _spec(n, k)
    n, k = s.n, s.k
    f = factorial
    return _exact_div(f(n + k - 1) * f(n + k), f(k) * f(k + 1) * f(n - 1) * f(n))


def two_row_irrep_dim(n: int, p: int, q: int) -> int:
    """Dimension of the SL(n+1) irreducible with two-row diagram (p+q, q).

    First row has p + q boxes, second row q boxes.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    f = factorial
    return _exact_div(f(n + q - 1) * f(n + p + q) * (p + 1), f(q) * f(p + q + 1) * f(n - 1) * f(n))


def branching_terms(n, k=None) -> list[BranchTerm]:
    """All (p, q) with p + 2q = k, ordered by q, with their irrep dimensions."""
    s = _spec(n, k)
    return [BranchTerm(s.k - 2 * q, q, two_row_irrep_dim(s.n, s.k - 2 * q, q)) for q in range(s.k // 2 + 1)]


def _square_sum(n: int, k: int) -> int:
    if k < 0:
        return 0
    return sum(t.dim_factor**2 for t in branching_terms(n, k))


def cpn_killing_dim(n, k=None) -> int:
    """Dimension of rank-k Killing tensors on CP_n with the Fubini-Study metric."""
    s = _spec(n, k)
    return _square_sum(s.n, s.k) - _square_sum(s.n, s.k - 1)


def cpn_killing_dim_closed(k: int, n: int) -> int:
    """Fixed-rank polynomial formulas for k = 1..4.

    Each one is the degree-2k interpolant of :func:`cpn_killing_dim` and is
    checked against it for n up to 30 in the tests.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k == 1:
        return n * (n + 2)
    if k == 2:
        return _exact_div(n * (n + 1) ** 2 * (n + 2), 2)
    if k == 3:
        return _exact_div(n * (n + 1) ** 2 * (5 * n**3 + 26 * n**2 + 35 * n + 24), 36)
    if k == 4:
        return _exact_div(n * (n + 1) ** 2 * (n + 2) ** 2 * (7 * n**3 + 38 * n**2 + 39 * n + 36), 288)
    raise ValueError(f"no closed form stored for k={k}")


def sphere_killing_dim_rank3(n: int) -> int:
    return _exact_div(n * (n + 1) ** 2 * (n + 2) ** 2 * (n + 3), 144)


def rank2_su_branching(n: int) -> list[int]:
    """SU(n+1) summand dimensions of the rank-2 Killing tensors on CP_n.

    Ordered as the weights (2,0..0,2), (0,1,0..0,1,0), (1,0..0,1), 0; see
    the module notes for the third entry.
    """
    if n < 2:
        raise ValueError("rank-2 SU(n+1) branching needs n >= 2")
    dims = [
        _exact_div(n * (n + 1) ** 2 * (n + 4), 4),
        _exact_div((n - 2) * (n + 1) ** 2 * (n + 2), 4),
        n * (n + 2),
        1,
    ]
    if sum(dims) != cpn_killing_dim(n, 2):
        raise ConsistencyError(f"rank-2 branching does not sum to the total at n={n}")
    return dims


def cpn_table(max_n: int = 7, max_k: int = 5) -> dict[tuple[int, int], int]:
    """``{(n, k): dim}`` for 1 <= n <= max_n, 0 <= k <= max_k."""
    return {(n, k): cpn_killing_dim(n, k) for n in range(1, max_n + 1) for k in range(0, max_k + 1)}
