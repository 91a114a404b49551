"""Curvature identities and prolongation/tractor connections checked at sample points.

A section of a bundle built from forms is a tuple of jet fields, one per
slot, each with its covariant indices first.  A connection is Levi-Civita
on every slot plus an algebraic part ``A_b`` mapping the section to a new
tuple with a leading form index b.  Applying it twice and antisymmetrizing
the two derivative indices gives the curvature acting on the section.  The
Levi-Civita derivative also acts on the first derivative index, and that
term drops out of the antisymmetrization because the connection is torsion
free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .charts import Geometry, complex_structure, fs_geometry, sphere_geometry

Section = tuple
Algebraic = Callable[[Geometry, Section], Section]

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tol)

    def line(self) -> str:
        return f"{self.name}: max deviation {self.deviation:.3e} {'PASS' if self.passed else 'FAIL'}"


# -- connections ---------------------------------------------------------------


def _killing_part(geo: Geometry, sec: Section) -> Section:
    # nabla_b (sigma_c, mu_cd) = (nabla_b sigma_c - mu_bc, nabla_b mu_cd - R_cd^e_b sigma_e)
    sigma, mu = sec
    alg = geo.alg
    top = -np.einsum("...bcX->b...cX", mu)
    bottom = -alg.einsum("cdeb,...e->b...cd", geo.riemann_mixed, sigma)
    return top, bottom


def _lambda2_tractor_part(geo: Geometry, sec: Section) -> Section:
    # nabla_a (sigma_b, mu_bc) = (nabla_a sigma_b - mu_ab, nabla_a mu_bc - g_ac sigma_b + g_ab sigma_c)
    sigma, mu = sec
    alg = geo.alg
    top = -np.einsum("...abX->a...bX", mu)
    bottom = alg.einsum("ab,...c->a...bc", geo.g, sigma) - alg.einsum("ac,...b->a...bc", geo.g, sigma)
    return top, bottom


def _riemannian_tractor_part(geo: Geometry, sec: Section) -> Section:
    # nabla_a (sigma, mu_b) = (nabla_a sigma - mu_a, nabla_a mu_b + g_ab sigma)
    sigma, mu = sec
    top = -np.einsum("...aX->a...X", mu)
    bottom = geo.alg.einsum("ab,...->a...b", geo.g, sigma)
    return top, bottom


def _kahler_tractor_part(geo: Geometry, sec: Section) -> Section:
    # nabla_b (sigma, mu_c, rho) = (nabla_b sigma - mu_b, nabla_b mu_c + g_bc sigma + J_bc rho, nabla_b rho - J_b^c mu_c)
    sigma, mu, rho = sec
    alg = geo.alg
    top = -np.einsum("...bX->b...X", mu)
    mid = alg.einsum("bc,...->b...c", geo.g, sigma) + alg.einsum("bc,...->b...c", geo.kahler, rho)
    bottom = -alg.einsum("bc,...c->b...", geo.jmixed, mu)
    return top, mid, bottom


def apply_connection(geo: Geometry, part: Algebraic, sec: Section) -> Section:
    lc = [geo.cov_deriv(s) for s in sec]
    alg_terms = part(geo, sec)
    return tuple(a + b for a, b in zip(lc, alg_terms))


def connection_curvature(geo: Geometry, part: Algebraic, sec: Section) -> Section:
    """Values of (nabla_a nabla_b - nabla_b nabla_a) applied to ``sec``, indices (a, b, slot...)."""
    twice = apply_connection(geo, part, apply_connection(geo, part, sec))
    out = []
    for t in twice:
        v = geo.alg.value(t)
        out.append(v - np.swapaxes(v, 0, 1))
    return tuple(out)


# -- sampling ------------------------------------------------------------------


def _rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(0 if seed is None else seed)


def sample_points(rng: np.random.Generator, dim: int, samples: int) -> list[np.ndarray]:
    return [rng.uniform(-1.0, 1.0, size=dim) for _ in range(samples)]


def _skew(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a - np.swapaxes(a, 0, 1))


def _maxabs(*arrays) -> float:
    return max((float(np.max(np.abs(a))) if np.size(a) else 0.0) for a in arrays)


# -- pointwise identities ------------------------------------------------------


def cpn_curvature_model(g: np.ndarray, j: np.ndarray) -> np.ndarray:
    """g_ac g_bd - g_bc g_ad + J_ac J_bd - J_bc J_ad + 2 J_ab J_cd."""
    e = np.einsum
    return (
        e("ac,bd->abcd", g, g)
        - e("bc,ad->abcd", g, g)
        + e("ac,bd->abcd", j, j)
        - e("bc,ad->abcd", j, j)
        + 2 * e("ab,cd->abcd", j, j)
    )


def sphere_curvature_model(g: np.ndarray) -> np.ndarray:
    return np.einsum("ac,bd->abcd", g, g) - np.einsum("bc,ad->abcd", g, g)


def riemann_symmetry_defect(r: np.ndarray) -> float:
    """Largest violation of R_abcd = -R_bacd = -R_abdc = R_cdab and R_[abc]d = 0."""
    cyc = r + np.einsum("abcd->bcad", r) + np.einsum("abcd->cabd", r)
    return _maxabs(
        r + np.swapaxes(r, 0, 1),
        r + np.swapaxes(r, 2, 3),
        r - np.einsum("abcd->cdab", r),
        cyc,
    )


def check_cpn_curvature(n: int, samples: int = 10, tol: float = DEFAULT_TOL, seed: int | None = 0) -> CheckResult:
    """Max componentwise gap between the chart curvature and the constant holomorphic model."""
    if n not in (1, 2, 3):
        raise ValueError("check_cpn_curvature supports n in {1, 2, 3}")
    dev = 0.0
    for p in sample_points(_rng(seed), 2 * n, samples):
        geo = fs_geometry(n, p)
        v = geo.alg.value
        model = cpn_curvature_model(v(geo.g), v(geo.kahler))
        dev = max(dev, _maxabs(v(geo.riemann) - model))
    return CheckResult("cpn-curvature", dev, tol)


def check_sphere_curvature(m: int, samples: int = 10, tol: float = DEFAULT_TOL, seed: int | None = 0) -> CheckResult:
    dev = 0.0
    for p in sample_points(_rng(seed), m, samples):
        geo = sphere_geometry(m, p)
        v = geo.alg.value
        dev = max(dev, _maxabs(v(geo.riemann) - sphere_curvature_model(v(geo.g))))
    return CheckResult("sphere-curvature", dev, tol)


def _invariants(geo: Geometry) -> dict[str, float]:
    v = geo.alg.value
    out = {
        "riemann-symmetries": riemann_symmetry_defect(v(geo.riemann)),
        "metric-parallel": _maxabs(v(geo.cov_deriv(geo.g))),
    }
    if geo.kahler is not None:
        out["kahler-parallel"] = _maxabs(v(geo.cov_deriv(geo.kahler)))
        g, im = v(geo.g), complex_structure(geo.dim)
        out["hermitian"] = _maxabs(im.T @ g @ im - g)
    return out


def check_invariants(space: str, n: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int | None = 0) -> list[CheckResult]:
    """Riemann symmetries, nabla g = 0, and on CP_n nabla J = 0 and J-invariance of g."""
    dim = 2 * n if space == "cpn" else n
    worst: dict[str, float] = {}
    for p in sample_points(_rng(seed), dim, samples):
        geo = fs_geometry(n, p) if space == "cpn" else sphere_geometry(n, p)
        for k, d in _invariants(geo).items():
            worst[k] = max(worst.get(k, 0.0), d)
    return [CheckResult(k, d, tol) for k, d in worst.items()]


# -- exact algebraic identity --------------------------------------------------


def check_mu_identity(n: int) -> bool:
    """Exact check of the curvature action on 2-forms for the CP_n model curvature.

    With g = identity and R given by the constant holomorphic model,
    verifies for every basis 2-form mu that

        R_ab^e_[c mu_d]e + R_cd^e_[a mu_b]e
          = J_bc xi_ad - J_ac xi_bd - J_bd xi_ac + J_ad xi_bc - 2 J_ab xi_cd - 2 J_cd xi_ab

    where xi_ab = J_[a^c mu_b]c.  The check runs on the tangent model R^(2n)
    and on R^(2n+2).  Every term carries one antisymmetrization, so both
    sides are compared after multiplying by 2, in integers.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return all(_mu_identity_in_dim(dim) for dim in (2 * n, 2 * n + 2))


def _mu_identity_in_dim(dim: int) -> bool:
    g = np.eye(dim, dtype=np.int64)
    j = complex_structure(dim).astype(np.int64).T  # J_ab = g_ac I^c_b
    r = cpn_curvature_model(g, j)  # with g = identity, R_ab^e_d = R_abed
    e = np.einsum
    for a in range(dim):
        for b in range(a + 1, dim):
            mu = np.zeros((dim, dim), dtype=np.int64)
            mu[a, b], mu[b, a] = 1, -1
            # 2 R_ab^e_[c mu_d]e = R_ab^e_c mu_de - R_ab^e_d mu_ce
            t = e("abec,de->abcd", r, mu) - e("abed,ce->abcd", r, mu)
            lhs2 = t + e("cdab->abcd", t)
            xi2 = e("ac,bc->ab", j, mu) - e("bc,ac->ab", j, mu)  # 2 xi_ab
            rhs2 = (
                e("bc,ad->abcd", j, xi2)
                - e("ac,bd->abcd", j, xi2)
                - e("bd,ac->abcd", j, xi2)
                + e("ad,bc->abcd", j, xi2)
                - 2 * e("ab,cd->abcd", j, xi2)
                - 2 * e("cd,ab->abcd", j, xi2)
            )
            if not np.array_equal(lhs2, rhs2):
                return False
    return True


# -- connection checks ---------------------------------------------------------


def _form_sections(alg, rng, dim: int, count: int) -> list[Section]:
    out = []
    for _ in range(count):
        sigma = alg.random_polynomials((dim,), rng)
        mu = _skew(alg.random_polynomials((dim, dim), rng))
        out.append((sigma, mu))
    return out


def _scalar_vector_sections(alg, rng, dim: int, count: int, scalars: int) -> list[Section]:
    out = []
    for _ in range(count):
        parts = [alg.random_polynomials((), rng), alg.random_polynomials((dim,), rng)]
        if scalars == 2:
            parts.append(alg.random_polynomials((), rng))
        out.append(tuple(parts))
    return out


def check_killing_connection_flat_on_sphere(
    m: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int | None = 0, sections: int = 2
) -> CheckResult:
    """Curvature of the Killing connection on the unit m-sphere, which must vanish.

    The algebraic part contains R, and its derivative needs third metric
    derivatives, so the metric jets are carried to order 3.
    """
    if m not in (2, 3):
        raise ValueError("check_killing_connection_flat_on_sphere supports m in {2, 3}")
    rng = _rng(seed)
    dev = 0.0
    for p in sample_points(rng, m, samples):
        geo = sphere_geometry(m, p, order=3)
        for sec in _form_sections(geo.alg, rng, m, sections):
            dev = max(dev, _maxabs(*connection_curvature(geo, _killing_part, sec)))
    return CheckResult("killing-connection-flat", dev, tol)


def check_sphere_tractors(
    m: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int | None = 0, sections: int = 2
) -> list[CheckResult]:
    """Flatness of the tractor connection and its Lambda^2 version on the unit sphere.

    Also compares the Lambda^2 tractor connection with the Killing connection
    on the same sections; on the unit sphere they coincide term by term.
    """
    rng = _rng(seed)
    flat_t = flat_l2 = agree = 0.0
    for p in sample_points(rng, m, samples):
        geo = sphere_geometry(m, p, order=3)
        for sec in _scalar_vector_sections(geo.alg, rng, m, sections, scalars=1):
            flat_t = max(flat_t, _maxabs(*connection_curvature(geo, _riemannian_tractor_part, sec)))
        for sec in _form_sections(geo.alg, rng, m, sections):
            flat_l2 = max(flat_l2, _maxabs(*connection_curvature(geo, _lambda2_tractor_part, sec)))
            a = apply_connection(geo, _killing_part, sec)
            b = apply_connection(geo, _lambda2_tractor_part, sec)
            agree = max(agree, _maxabs(*(geo.alg.value(x - y) for x, y in zip(a, b))))
    return [
        CheckResult("tractor-flat", flat_t, tol),
        CheckResult("lambda2-tractor-flat", flat_l2, tol),
        CheckResult("lambda2-equals-killing", agree, tol),
    ]


def check_killing_connection_cpn(
    n: int, samples: int = 3, tol: float = DEFAULT_TOL, seed: int | None = 0, sections: int = 1
) -> CheckResult:
    """Curvature of the Killing connection on CP_n against its closed form.

    The sigma slot must vanish and the mu slot must equal
    2 (J_bc xi_ad - J_ac xi_bd - J_bd xi_ac + J_ad xi_bc - 2 J_ab xi_cd - 2 J_cd xi_ab)
    with xi_ab = J_[a^c mu_b]c, since nabla R = 0.
    """
    if n not in (1, 2):
        raise ValueError("check_killing_connection_cpn supports n in {1, 2}")
    rng = _rng(seed)
    dev = 0.0
    e = np.einsum
    for p in sample_points(rng, 2 * n, samples):
        geo = fs_geometry(n, p, order=3)
        v = geo.alg.value
        j, jm = v(geo.kahler), v(geo.jmixed)
        for sec in _form_sections(geo.alg, rng, 2 * n, sections):
            top, bottom = connection_curvature(geo, _killing_part, sec)
            mu = v(sec[1])
            t = e("ac,bc->ab", jm, mu)
            xi = 0.5 * (t - t.T)
            rhs = (
                e("bc,ad->abcd", j, xi)
                - e("ac,bd->abcd", j, xi)
                - e("bd,ac->abcd", j, xi)
                + e("ad,bc->abcd", j, xi)
                - 2 * e("ab,cd->abcd", j, xi)
                - 2 * e("cd,ab->abcd", j, xi)
            )
            dev = max(dev, _maxabs(top, bottom - 2 * rhs))
    return CheckResult("killing-connection-curvature", dev, tol)


def check_ktractor_curvature(
    n: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int | None = 0, sections: int = 2
) -> CheckResult:
    """Curvature of the Kahler tractor connection against 2 J_ab (rho, J_c^d mu_d, -sigma)."""
    if n not in (1, 2):
        raise ValueError("check_ktractor_curvature supports n in {1, 2}")
    rng = _rng(seed)
    dev = 0.0
    for p in sample_points(rng, 2 * n, samples):
        geo = fs_geometry(n, p)
        v = geo.alg.value
        j, jm = v(geo.kahler), v(geo.jmixed)
        for sec in _scalar_vector_sections(geo.alg, rng, 2 * n, sections, scalars=2):
            curv = connection_curvature(geo, _kahler_tractor_part, sec)
            sigma, mu, rho = (v(s) for s in sec)
            expected = (
                2 * j * rho,
                2 * np.einsum("ab,cd,d->abc", j, jm, mu),
                -2 * j * sigma,
            )
            dev = max(dev, _maxabs(*(c - x for c, x in zip(curv, expected))))
    return CheckResult("ktractor-curvature", dev, tol)


def _pairings(geo: Geometry, s: Section, t: Section) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric and skew tractor pairings as scalar jets; leading axes broadcast."""
    alg = geo.alg
    ss, ms, rs = s
    st, mt, rt = t
    sym = alg.mul(ss, st) + _bilinear(alg, geo.ginv, ms, mt) + alg.mul(rs, rt)
    skew = alg.mul(ss, rt) + _bilinear(alg, geo.jup, ms, mt) - alg.mul(rs, st)
    return sym, skew


def _bilinear(alg, m: np.ndarray, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    # m^{bc} u_b w_c
    mw = alg.einsum("bc,...c->...b", m, w)
    return np.einsum("...bX,...bY,XYZ->...Z", u, mw, alg.mul_table, optimize=True)


def check_tractor_parallelism(
    n: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int | None = 0, sections: int = 2
) -> CheckResult:
    """Leibniz rule for both tractor pairings: d(S, T) = (nabla S, T) + (S, nabla T)."""
    if n not in (1, 2):
        raise ValueError("check_tractor_parallelism supports n in {1, 2}")
    rng = _rng(seed)
    dev = 0.0
    for p in sample_points(rng, 2 * n, samples):
        geo = fs_geometry(n, p)
        alg = geo.alg
        secs = _scalar_vector_sections(alg, rng, 2 * n, 2 * sections, scalars=2)
        for s, t in zip(secs[::2], secs[1::2]):
            ds = apply_connection(geo, _kahler_tractor_part, s)
            dt = apply_connection(geo, _kahler_tractor_part, t)
            base = _pairings(geo, s, t)
            left = _pairings(geo, ds, _lift(alg, t))
            right = _pairings(geo, _lift(alg, s), dt)
            for whole, l_, r_ in zip(base, left, right):
                d_whole = alg.value(alg.d(whole))
                dev = max(dev, _maxabs(d_whole - alg.value(l_) - alg.value(r_)))
    return CheckResult("tractor-parallelism", dev, tol)


def _lift(alg, sec: Section) -> Section:
    # broadcast an undifferentiated section against a derivative axis
    return tuple(s[None, ...] for s in sec)


# -- batteries -----------------------------------------------------------------

SUPPORTED = {"sphere": (2, 3), "cpn": (1, 2)}


def run_battery(space: str, n: int, samples: int = 5, tol: float = DEFAULT_TOL, seed: int = 0) -> list[CheckResult]:
    """Every identity check for one space, in a fixed order."""
    if space not in SUPPORTED:
        raise ValueError(f"unknown space {space!r}")
    if n not in SUPPORTED[space]:
        raise ValueError(f"geometry battery supports {space} n in {SUPPORTED[space]}, got {n}")
    if space == "sphere":
        results = [check_sphere_curvature(n, samples, tol, seed)]
        results += check_invariants("sphere", n, samples, tol, seed)
        results.append(check_killing_connection_flat_on_sphere(n, samples, tol, seed))
        results += check_sphere_tractors(n, samples, tol, seed)
        return results
    results = [check_cpn_curvature(n, samples, tol, seed)]
    results += check_invariants("cpn", n, samples, tol, seed)
    results.append(CheckResult("mu-identity", 0.0 if check_mu_identity(n) else 1.0, tol))
    results.append(check_killing_connection_cpn(n, samples, tol, seed))
    results.append(check_ktractor_curvature(n, samples, tol, seed))
    results.append(check_tractor_parallelism(n, samples, tol, seed))
    return results


def worst(results: Sequence[CheckResult]) -> float:
    return max(r.deviation for r in results)
