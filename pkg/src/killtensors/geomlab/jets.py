"""Truncated multivariate Taylor arithmetic (forward-mode jets).

A jet field is a numpy array whose last axis holds Taylor coefficients in
the monomial basis of :class:`JetAlgebra`; the other axes are tensor
indices.  Coefficients of total degree above the algebra order are
dropped.  A field computed from data valid to order N and then
differentiated r times is valid to order N - r, and callers only read
values within that range.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np


class JetAlgebra:
    def __init__(self, nvars: int, order: int):
        self.nvars = nvars
        self.order = order
        monos = [
            e
            for deg in range(order + 1)
            for e in sorted(
                (e for e in itertools.product(range(deg + 1), repeat=nvars) if sum(e) == deg),
                reverse=True,
            )
        ]
        self.monomials = monos
        self.size = len(monos)
        index = {e: i for i, e in enumerate(monos)}
        self.index = index

        mul = np.zeros((self.size,) * 3)
        for i, a in enumerate(monos):
            for j, b in enumerate(monos):
                c = tuple(x + y for x, y in zip(a, b))
                if sum(c) <= order:
                    mul[i, j, index[c]] = 1.0
        self.mul_table = mul

        # deriv[v, t, s]: coefficient of monomial t in d/dx_v of monomial s
        deriv = np.zeros((nvars, self.size, self.size))
        for s, e in enumerate(monos):
            for v in range(nvars):
                if e[v]:
                    lowered = e[:v] + (e[v] - 1,) + e[v + 1 :]
                    deriv[v, index[lowered], s] = e[v]
        self.deriv = deriv
        self.linear = [index[tuple(int(i == v) for i in range(nvars))] for v in range(nvars)] if order >= 1 else []

    # -- construction ------------------------------------------------------
    def const(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        out = np.zeros(a.shape + (self.size,))
        out[..., 0] = a
        return out

    def variables(self, point) -> np.ndarray:
        """Coordinate functions x_v = point_v + h_v as a (nvars, size) field."""
        point = np.asarray(point, dtype=float)
        out = self.const(point)
        for v in range(self.nvars):
            if self.order >= 1:
                out[v, self.linear[v]] = 1.0
        return out

    def polynomial(self, coeffs: dict) -> np.ndarray:
        """Scalar field from ``{exponent tuple: coefficient}`` in the offset variables."""
        out = np.zeros(self.size)
        for e, c in coeffs.items():
            if sum(e) <= self.order:
                out[self.index[tuple(e)]] += c
        return out

    def random_polynomials(self, shape, rng: np.random.Generator, degree: int = 2, denom: int = 8) -> np.ndarray:
        """Fields with pseudo-random rational coefficients p/denom on monomials up to ``degree``."""
        out = np.zeros(tuple(shape) + (self.size,))
        for i, e in enumerate(self.monomials):
            if sum(e) <= degree:
                out[..., i] = rng.integers(-denom, denom + 1, size=shape) / denom
        return out

    # -- arithmetic ----------------------------------------------------------
    def value(self, a: np.ndarray) -> np.ndarray:
        return a[..., 0]

    def gradient(self, a: np.ndarray) -> np.ndarray:
        """First partials at the base point, derivative axis last."""
        return np.stack([a[..., i] for i in self.linear], axis=-1)

    def hessian(self, a: np.ndarray) -> np.ndarray:
        h = np.zeros(a.shape[:-1] + (self.nvars, self.nvars))
        for i, e in enumerate(self.monomials):
            if sum(e) == 2:
                vs = [v for v in range(self.nvars) for _ in range(e[v])]
                scale = factorial(e[vs[0]]) if vs[0] == vs[1] else 1
                h[..., vs[0], vs[1]] = a[..., i] * scale
                h[..., vs[1], vs[0]] = a[..., i] * scale
        return h

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product with broadcasting over tensor axes."""
        return np.einsum("...i,...j,ijt->...t", a, b, self.mul_table, optimize=True)

    def einsum(self, spec: str, *ops: np.ndarray) -> np.ndarray:
        """Contraction of one or two jet fields; ``spec`` names only the tensor axes."""
        ins, out = spec.split("->")
        ins = ins.split(",")
        if len(ins) == 1:
            return np.einsum(f"{ins[0]}X->{out}X", ops[0])
        if len(ins) != 2:
            raise ValueError("jet einsum takes one or two operands")
        return np.einsum(f"{ins[0]}X,{ins[1]}Y,XYZ->{out}Z", ops[0], ops[1], self.mul_table, optimize=True)

    def scale(self, c: np.ndarray, spec: str, a: np.ndarray) -> np.ndarray:
        """Contract a constant (non-jet) array with a jet field."""
        ins, out = spec.split("->")
        s1, s2 = ins.split(",")
        return np.einsum(f"{s1},{s2}X->{out}X", c, a)

    def recip(self, a: np.ndarray) -> np.ndarray:
        a0 = a[..., :1]
        h = a.copy()
        h[..., 0] = 0.0
        term = np.zeros_like(a)
        term[..., 0] = 1.0
        total = term.copy()
        x = -h / a0
        for _ in range(self.order):
            term = self.mul(term, x)
            total = total + term
        return total / a0

    def inv_matrix(self, g: np.ndarray) -> np.ndarray:
        """Inverse of a square matrix field g[a, b, :] by the Neumann series."""
        g0inv = np.linalg.inv(g[..., 0])
        h = g.copy()
        h[..., 0] = 0.0
        x = -self.scale(g0inv, "ab,bc->ac", h)
        term = self.const(np.eye(g.shape[0]))
        total = term.copy()
        for _ in range(self.order):
            term = self.einsum("ab,bc->ac", term, x)
            total = total + term
        return self.einsum("ab,bc->ac", total, self.const(g0inv))

    def d(self, a: np.ndarray) -> np.ndarray:
        """Partial derivatives; the new derivative axis comes first."""
        return np.einsum("vts,...s->v...t", self.deriv, a)


class Jet:
    """Scalar jet with operator overloading, for direct use and testing."""

    __slots__ = ("alg", "c")

    def __init__(self, alg: JetAlgebra, coeffs):
        self.alg = alg
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, alg: JetAlgebra, v: int, value: float) -> Jet:
        c = np.zeros(alg.size)
        c[0] = value
        c[alg.linear[v]] = 1.0
        return cls(alg, c)

    @classmethod
    def constant(cls, alg: JetAlgebra, value: float) -> Jet:
        return cls(alg, alg.const(value))

    @property
    def value(self) -> float:
        return float(self.c[0])

    @property
    def first(self) -> np.ndarray:
        return self.alg.gradient(self.c)

    @property
    def second(self) -> np.ndarray:
        return self.alg.hessian(self.c)

    def _wrap(self, other) -> Jet:
        return other if isinstance(other, Jet) else Jet.constant(self.alg, other)

    def __add__(self, other):
        return Jet(self.alg, self.c + self._wrap(other).c)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.alg, self.c - self._wrap(other).c)

    def __rsub__(self, other):
        return Jet(self.alg, self._wrap(other).c - self.c)

    def __neg__(self):
        return Jet(self.alg, -self.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.alg, self.c * other)
        return Jet(self.alg, self.alg.mul(self.c, other.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.alg, self.c / other)
        return self * Jet(self.alg, self.alg.recip(other.c))

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, e: int):
        out = Jet.constant(self.alg, 1.0)
        for _ in range(e):
            out = out * self
        return out


def SecondOrderScalar(value: float, first, second) -> Jet:
    """Jet of order 2 built from a value, gradient and symmetric Hessian."""
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    alg = _second_order_algebra(len(first))
    c = np.zeros(alg.size)
    c[0] = value
    for v in range(alg.nvars):
        c[alg.linear[v]] = first[v]
    for i, e in enumerate(alg.monomials):
        if sum(e) == 2:
            vs = [v for v in range(alg.nvars) for _ in range(e[v])]
            c[i] = second[vs[0], vs[1]] / (2.0 if vs[0] == vs[1] else 1.0)
    return Jet(alg, c)


_ALGEBRAS: dict[tuple[int, int], JetAlgebra] = {}


def algebra(nvars: int, order: int) -> JetAlgebra:
    key = (nvars, order)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = JetAlgebra(nvars, order)
    return _ALGEBRAS[key]


def _second_order_algebra(nvars: int) -> JetAlgebra:
    return algebra(nvars, 2)
