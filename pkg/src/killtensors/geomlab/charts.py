"""Coordinate charts on S^m and CP_n with curvature from Taylor jets.

Index conventions
-----------------
``gamma[c, a, b]`` is the Christoffel symbol Gamma^c_{ab}.  ``riemann_mixed[a, b, c, d]``
is R_{ab}^c_d defined by (nabla_a nabla_b - nabla_b nabla_a) X^c = R_{ab}^c_d X^d,
so that on the unit sphere R_{abcd} = g_{ac} g_{bd} - g_{bc} g_{ad}.
``riemann[a, b, c, d]`` lowers the third index: R_{abcd} = g_{ce} R_{ab}^e_d.

Fubini-Study normalization
--------------------------
Real coordinates x in R^(2n) with z_j = x_{2j} + i x_{2j+1}, s = 1 + |x|^2 and
y = I x (y_{2j} = -x_{2j+1}, y_{2j+1} = x_{2j}):

    g_ab = delta_ab / s - (x_a x_b + y_a y_b) / s^2

This is the Fubini-Study metric of holomorphic sectional curvature 4 (CP_1
is the round sphere of radius 1/2).  The Kahler form is
J_ab = g(e_a, I e_b) with I e_{2j} = e_{2j+1}, and J_a^b = J_ac g^{bc}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jets import JetAlgebra, algebra


def complex_structure(dim: int) -> np.ndarray:
    """Constant matrix I of multiplication by i: I[:, 2j] = e_{2j+1}."""
    m = np.zeros((dim, dim))
    for j in range(dim // 2):
        m[2 * j + 1, 2 * j] = 1.0
        m[2 * j, 2 * j + 1] = -1.0
    return m


class Geometry:
    """Metric jet field at a point plus everything derived from it."""

    def __init__(self, alg: JetAlgebra, metric: np.ndarray):
        self.alg = alg
        self.dim = metric.shape[0]
        self.g = metric
        self.ginv = alg.inv_matrix(metric)
        dg = alg.d(metric)  # dg[c, a, b] = d_c g_ab
        # Gamma_{c,ab} lowered: 1/2 (d_a g_bc + d_b g_ac - d_c g_ab)
        low = 0.5 * (np.einsum("abcX->cabX", dg) + np.einsum("bacX->cabX", dg) - dg)
        self.gamma = alg.einsum("ce,eab->cab", self.ginv, low)
        dgam = alg.d(self.gamma)  # dgam[a, c, b, d] = d_a Gamma^c_{bd}
        quad = alg.einsum("cae,ebd->abcd", self.gamma, self.gamma)
        # R_{ab}^c_d = d_a Gamma^c_{bd} - d_b Gamma^c_{ad} + Gamma^c_{ae} Gamma^e_{bd} - Gamma^c_{be} Gamma^e_{ad}
        first = np.einsum("acbdX->abcdX", dgam)
        self.riemann_mixed = first - np.einsum("abcdX->bacdX", first) + quad - np.einsum("abcdX->bacdX", quad)
        self.riemann = alg.einsum("ce,abed->abcd", self.g, self.riemann_mixed)
        self.kahler: np.ndarray | None = None
        self.jmixed: np.ndarray | None = None

    def set_complex_structure(self, imat: np.ndarray) -> None:
        # J_ab = g(e_a, I e_b) = g_ac I^c_b
        self.kahler = self.alg.scale(imat, "cb,ac->ab", self.g)
        self.jmixed = self.alg.einsum("ac,bc->ab", self.kahler, self.ginv)

    @property
    def jup(self) -> np.ndarray:
        """J^{ab} = g^{ac} g^{bd} J_cd."""
        t = self.alg.einsum("ac,cd->ad", self.ginv, self.kahler)
        return self.alg.einsum("ad,bd->ab", t, self.ginv)

    def cov_deriv(self, t: np.ndarray) -> np.ndarray:
        """Levi-Civita derivative of a covariant field; every tensor axis is a lower index.

        The derivative axis is prepended.
        """
        alg = self.alg
        out = alg.d(t)
        nax = t.ndim - 1
        for s in range(nax):
            moved = np.moveaxis(t, s, 0)  # (e, rest..., X)
            term = alg.einsum("eai,e...->ai...", self.gamma, moved)  # Gamma^e_ai t_..e..
            term = np.moveaxis(term, 1, s + 1)
            out = out - term
        return out


@dataclass
class ChartFrame:
    space: str
    dim_param: int
    point: np.ndarray
    metric: np.ndarray
    christoffel: np.ndarray
    christoffel_derivs: np.ndarray
    riemann: np.ndarray
    kahler_form: np.ndarray | None = None
    complex_structure: np.ndarray | None = None
    geometry: Geometry | None = field(default=None, repr=False)

    @property
    def scalar_curvature(self) -> float:
        ginv = np.linalg.inv(self.metric)
        ric = np.einsum("acbd,cd->ab", self.riemann, ginv)  # R_ab = g^{cd} R_{cadb}
        return float(np.einsum("ab,ab->", ric, ginv))

    @property
    def ricci(self) -> np.ndarray:
        """R_bd = R_ab^a_d."""
        g = self.geometry
        return np.einsum("abad->bd", g.riemann_mixed[..., 0])


def _sphere_metric(alg: JetAlgebra, point) -> np.ndarray:
    x = alg.variables(point)
    s = alg.const(1.0) + alg.einsum("v,v->", x, x)
    conf = 4.0 * alg.recip(alg.mul(s, s))
    return np.einsum("ab,X->abX", np.eye(alg.nvars), conf)


def _fs_metric(alg: JetAlgebra, point) -> np.ndarray:
    m = alg.nvars
    x = alg.variables(point)
    imat = complex_structure(m)
    y = alg.scale(imat, "ab,b->a", x)
    s = alg.const(1.0) + alg.einsum("v,v->", x, x)
    inv_s = alg.recip(s)
    inv_s2 = alg.mul(inv_s, inv_s)
    outer = alg.einsum("a,b->ab", x, x) + alg.einsum("a,b->ab", y, y)
    return np.einsum("ab,X->abX", np.eye(m), inv_s) - alg.mul(outer, inv_s2[None, None, :])


def _frame(space, param, point, geo: Geometry) -> ChartFrame:
    alg = geo.alg
    v = alg.value
    return ChartFrame(
        space=space,
        dim_param=param,
        point=np.asarray(point, dtype=float),
        metric=v(geo.g),
        christoffel=v(geo.gamma),
        christoffel_derivs=v(alg.d(geo.gamma)),
        riemann=v(geo.riemann),
        kahler_form=None if geo.kahler is None else v(geo.kahler),
        complex_structure=None if geo.jmixed is None else v(geo.jmixed),
        geometry=geo,
    )


def sphere_geometry(m: int, point, order: int = 2) -> Geometry:
    return Geometry(algebra(m, order), _sphere_metric(algebra(m, order), point))


def fs_geometry(n: int, point, order: int = 2) -> Geometry:
    alg = algebra(2 * n, order)
    geo = Geometry(alg, _fs_metric(alg, point))
    geo.set_complex_structure(complex_structure(2 * n))
    return geo


def sphere_chart(m: int, point=None, order: int = 2) -> ChartFrame:
    """Unit-sphere metric 4 delta/(1+|x|^2)^2 in stereographic coordinates."""
    if m < 1:
        raise ValueError("m must be >= 1")
    point = np.zeros(m) if point is None else np.asarray(point, dtype=float)
    if point.shape != (m,):
        raise ValueError(f"point must have {m} coordinates")
    return _frame("sphere", m, point, sphere_geometry(m, point, order))


def fs_chart(n: int, point=None, order: int = 2) -> ChartFrame:
    """Fubini-Study metric on the affine chart C^n = R^(2n) of CP_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    point = np.zeros(2 * n) if point is None else np.asarray(point, dtype=float)
    if point.shape != (2 * n,):
        raise ValueError(f"point must have {2 * n} coordinates")
    return _frame("cpn", n, point, fs_geometry(n, point, order))
