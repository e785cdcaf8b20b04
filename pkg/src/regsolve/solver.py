"""Construct continuous rational solutions from a passing pointwise test.

For each cluster of special points (points sharing one minimal polynomial
under one shear) the local solution is

    beta_i = C_i + (psi - sum_j C_j g_j) * g_i / sum_j g_j^2,

where the C_j are constants for a single rational point and low-degree
interpolating polynomials in the sheared coordinate for multi-point
clusters (so that one rational chart can serve every point of the cluster;
the identity sum_i beta_i g_i = psi holds exactly for *any* choice of C).

Charts exclude the other clusters through products of the cluster
polynomials m_k = u_k(x')^2 + (y - w_k(x'))^2, which vanish exactly on
cluster k.  A power N large enough that psi_j^N * beta_ij extends by zero
across the excluded points is found by probing; the glued data

    b = sum_j psi_j^(2N),   b_i = sum_j psi_j^(2N) * beta_ij

satisfies b > 0 on the whole plane and b*psi = sum_i b_i g_i exactly, so
phi_i = b_i / b solves the original equation exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import univar as uv
from .bipoly import BiPoly, PolynomialError
from .config import ProbeConfig
from .points import AlgebraicPoint, ZeroSetError, common_real_zeros
from .pointwise import FactoredSystem, PTReport, PointRecord, check_pt
from .ratfun import CRFun, FailureReport, RatFun, certify_continuous, limit_test
from .intervals import Iv

import numpy as np


class SolverError(RuntimeError):
    pass


@dataclass
class LocalSolution:
    cluster: list[AlgebraicPoint]
    c: list[Fraction]  # constants at the cluster's representative point
    c_exprs: list[BiPoly]  # constant/interpolated coefficient functions
    beta: list[RatFun]
    excluded: list[AlgebraicPoint]  # the other clusters' points
    exact: bool


@dataclass
class GlueData:
    N: int
    psi_j: list[BiPoly]
    a_ij: list[list[RatFun]]  # [i][j]
    b: BiPoly
    b_i: list[RatFun]


@dataclass
class Solution:
    phi_i: list[CRFun]
    glue: GlueData
    mode: str  # "exact" | "numeric"
    pole_bound_points: list[AlgebraicPoint]
    report: PTReport
    locals_: list[LocalSolution] = field(default_factory=list)


@dataclass
class PTFailure:
    report: PTReport


@dataclass
class Inconclusive:
    report: PTReport | None
    detail: str = ""


def _cluster_special_points(fs: FactoredSystem, records: list[PointRecord]):
    """Group the special points (and their constant records) by cluster key."""
    rec_by_id = {id(r.point): r for r in records if r.kind == "special"}
    groups: dict = {}
    order = []
    for p in fs.special_points:
        key = p.cluster_key()
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((p, rec_by_id[id(p)]))
    return [groups[k] for k in order]


def local_solution(psi: CRFun, fs: FactoredSystem, cluster, cfg: ProbeConfig) -> LocalSolution:
    """Local solution valid away from the other clusters.

    `cluster` is a list of (point, PointRecord) pairs whose records carry
    verified constants.  The algebraic identity sum beta_i g_i = psi is
    asserted exactly before returning.
    """
    r = len(fs.g_list)
    pts = [p for p, _ in cluster]
    recs = [rec for _, rec in cluster]
    exact = all(rec.exact for rec in recs)
    if len(cluster) == 0:
        c = [Fraction(0)] * r
        c_exprs = [BiPoly.zero()] * r
    elif len(cluster) == 1:
        c = list(recs[0].c)
        c_exprs = [BiPoly.const(ci) for ci in c]
    else:
        # interpolate the per-point constants along the shear coordinate
        exact = False
        s = pts[0].shear
        t_vals = []
        for p in pts:
            p.refine(Fraction(1, 2 ** 52))
            bx, by = p.box.mid()
            t_vals.append(bx + s * by)
        c = list(recs[0].c)
        c_exprs = []
        tpoly = BiPoly.x() + BiPoly.const(s) * BiPoly.y()
        for i in range(r):
            samples = [(t_vals[m], Fraction(float(recs[m].c[i])).limit_denominator(10 ** 12))
                       for m in range(len(pts))]
            coeffs = _lagrange_frac(samples)
            expr = BiPoly.zero()
            power = BiPoly.one()
            for cf in coeffs:
                expr = expr + power * cf
                power = power * tpoly
            c_exprs.append(expr)
    s2 = fs.sum_g_squares()
    shift = BiPoly.zero()
    for ce, gj in zip(c_exprs, fs.g_list):
        shift = shift + ce * gj
    beta = []
    for i in range(r):
        num = c_exprs[i] * psi.ratfun.den * s2 + (psi.ratfun.num - psi.ratfun.den * shift) * fs.g_list[i]
        beta.append(RatFun(num, psi.ratfun.den * s2))
    # Sigma beta_i g_i = psi, for any C (cross-multiplied)
    acc_num = BiPoly.zero()
    for bi, gi in zip(beta, fs.g_list):
        acc_num = acc_num + bi.num * _prod([bj.den for j, bj in enumerate(beta) if bj is not bi]) * gi
    common_den = _prod([bi.den for bi in beta])
    lhs = acc_num * psi.ratfun.den
    rhs = psi.ratfun.num * common_den
    if lhs != rhs:
        raise SolverError("local solution identity failed; this is a bug")
    return LocalSolution(pts, c, c_exprs, beta, [], exact)


def _prod(ps: list[BiPoly]) -> BiPoly:
    acc = BiPoly.one()
    for p in ps:
        acc = acc * p
    return acc


def _lagrange_frac(samples: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    out = [Fraction(0)]
    for i, (xi, yi) in enumerate(samples):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(samples):
            if j == i:
                continue
            basis = uv.umul(basis, [-xj, Fraction(1)])
            denom *= xi - xj
        term = uv.uscale(basis, yi / denom)
        out = [
            (out[k] if k < len(out) else Fraction(0)) + (term[k] if k < len(term) else Fraction(0))
            for k in range(max(len(out), len(term)))
        ]
    return [Fraction(c).limit_denominator(10 ** 18) for c in out]


def chart_polys(clusters: list[list[AlgebraicPoint]], cfg: ProbeConfig | None = None) -> list[BiPoly]:
    """One positive chart-excluding polynomial per cluster.

    psi_j vanishes exactly on the union of the *other* clusters, so chart j
    covers cluster j; with a single cluster the chart is all of the plane
    and psi_1 = 1.  The charts are certified to have no common real zero.
    """
    cfg = cfg or ProbeConfig()
    m = len(clusters)
    if m <= 1:
        return [BiPoly.one()] * max(m, 1)
    mks = [_cluster_poly(cl) for cl in clusters]
    psis = []
    for j in range(m):
        acc = BiPoly.one()
        for k in range(m):
            if k != j:
                acc = acc * mks[k]
        psis.append(acc)
    try:
        common = common_real_zeros(psis, seed=cfg.seed)
    except ZeroSetError as e:
        raise SolverError(f"chart certification failed ({e}); a new shear is required")
    if common:
        raise SolverError("chart polynomials share a real zero; a new shear is required")
    return psis


def _cluster_poly(cluster: list[AlgebraicPoint]) -> BiPoly:
    """m_k = u(x')^2 + (y - w(x'))^2 mapped back to plane coordinates."""
    p0 = cluster[0]
    s = p0.shear
    tpoly = BiPoly.x() + BiPoly.const(s) * BiPoly.y()
    u = _compose_univariate(p0.minpoly_u, tpoly)
    w = _compose_univariate(p0.y_expr_w, tpoly)
    return u * u + (BiPoly.y() - w) * (BiPoly.y() - w)


def _compose_univariate(p: BiPoly, arg: BiPoly) -> BiPoly:
    acc = BiPoly.zero()
    for c in reversed(p.coeffs_in("x")):
        acc = acc * arg + c
    return acc


def lojasiewicz_exponent(psi_chart: BiPoly, f: RatFun, zeros: list[AlgebraicPoint],
                         cfg: ProbeConfig) -> int:
    """Least N <= n_max with psi_chart^N * f -> 0 at every given zero."""
    if not zeros or f.is_zero():
        return 1
    trails = []
    for n in range(1, cfg.n_max + 1):
        power = RatFun.from_poly(psi_chart ** n)
        ok = True
        for z in zeros:
            v = limit_test(power * f, z, cfg)
            trails.append({"N": n, "point": z.approx, "kind": v.kind})
            if not v.limit_is(0.0, cfg.tol * 4):
                ok = False
                break
        if ok:
            return n
    raise SolverError(f"exponent search exhausted at n_max={cfg.n_max}: {trails[-6:]}")


def glue(locals_: list[LocalSolution], fs: FactoredSystem, psi: CRFun,
         cfg: ProbeConfig) -> GlueData:
    """Combine the chart-local solutions into one global identity."""
    m = len(locals_)
    r = len(fs.g_list)
    clusters = [ls.cluster for ls in locals_]
    psis = chart_polys(clusters, cfg) if m >= 2 else [BiPoly.one()] * max(m, 1)
    N = 1
    if m >= 2:
        for j in range(m):
            zeros = [p for k in range(m) if k != j for p in locals_[k].cluster]
            for i in range(r):
                n = lojasiewicz_exponent(psis[j], locals_[j].beta[i], zeros, cfg)
                N = max(N, n)
    if m == 0:
        raise SolverError("glue called without local solutions")
    a_ij: list[list[RatFun]] = []
    for i in range(r):
        row = []
        for j in range(m):
            row.append(RatFun.from_poly(psis[j] ** N) * locals_[j].beta[i])
        a_ij.append(row)
    b = BiPoly.zero()
    for j in range(m):
        b = b + psis[j] ** (2 * N)
    b_i = []
    for i in range(r):
        acc = RatFun.zero()
        for j in range(m):
            acc = acc + RatFun.from_poly(psis[j] ** N) * a_ij[i][j]
        b_i.append(acc)
    # b * psi = sum_i b_i g_i, cross-multiplied to the zero polynomial
    acc = RatFun.zero()
    for bi, gi in zip(b_i, fs.g_list):
        acc = acc + bi * RatFun.from_poly(gi)
    diff = acc - RatFun.from_poly(b) * psi.ratfun
    if not diff.is_zero():
        raise SolverError("gluing identity failed; this is a bug")
    return GlueData(N, psis, a_ij, b, b_i)


# -- final assembly ------------------------------------------------------------------


def _den_vanishes_at(den: BiPoly, p: AlgebraicPoint) -> bool:
    """Exact test: does `den` vanish at the algebraic point p?"""
    if p.is_rational():
        xq, yq = p.exact_coords()
        return den.eval_exact(xq, yq) == 0
    s = p.shear
    G = den if s == 0 else den.substitute(BiPoly.x() - BiPoly.const(s) * BiPoly.y(), BiPoly.y())
    mp = uv.from_bipoly(p.minpoly_u, "x")
    w = uv.from_bipoly(p.y_expr_w, "x")
    q = uv.compose_y_mod(G, w, mp)
    if uv.is_zero(q):
        return True
    shared = uv.ugcd(mp, q)
    if uv.deg(shared) == 0:
        return False
    # does p's own root lie among the shared roots?
    root = p._root
    chain = uv.sturm_chain(shared)
    lo, hi = root.lo, root.hi
    while uv.ueval(shared, lo) == 0 or uv.ueval(shared, hi) == 0:
        p.refine(p.box.width() / 2 ** 8)
        root = p._root
        lo, hi = root.lo, root.hi
        if root.exact is not None:
            return uv.ueval(shared, root.exact) == 0
    return uv.sturm_count(chain, lo, hi) > 0


def _attach_extensions(rf: RatFun, candidates: list[AlgebraicPoint],
                       claimed: list, cfg: ProbeConfig):
    """CRFun from a reduced solution component; extension per vanishing point."""
    if rf.is_polynomial() or rf.num.is_zero():
        return CRFun(RatFun(rf.num, BiPoly.one(), _reduced=True), [], "CertifiedExact"), True
    extensions = []
    exact_all = True
    seen: list[AlgebraicPoint] = []
    for p in candidates:
        if any(p.same_point(q) for q in seen):
            continue
        if not _den_vanishes_at(rf.den, p):
            continue
        seen.append(p)
        v = limit_test(rf, p, cfg)
        if v.kind == "unknown":
            raise SolverError(
                f"continuity probe inconclusive for a solution component at {p.approx}"
            )
        if v.kind != "limit":
            raise SolverError(
                f"solution component fails to extend at {p.approx}; this is a bug"
            )
        from .ratfun import _exact_extension_value

        val = _exact_extension_value(rf, p, v, cfg, claimed)
        if val is None:
            exact_all = False
            extensions.append((p, v.value))
        else:
            extensions.append((p, val))
    status = "CertifiedExact" if exact_all else "CertifiedNumeric"
    return CRFun(rf, extensions, status), exact_all


def solve(f_list: list[CRFun], phi: CRFun, cfg: ProbeConfig | None = None):
    """Full pipeline; returns Solution, PTFailure or Inconclusive."""
    cfg = cfg or ProbeConfig()
    r = len(f_list)
    if all(f.is_zero() for f in f_list):
        if phi.is_zero():
            zero = CRFun.from_poly(BiPoly.zero())
            g = GlueData(1, [BiPoly.one()], [[RatFun.zero()] for _ in range(r)],
                         BiPoly.one(), [RatFun.zero()] * r)
            rep = PTReport("pass", zero, [], detail="degenerate zero system")
            return Solution([zero] * r, g, "exact", [], rep)
        return PTFailure(PTReport("fail", None, [],
                                  detail="all coefficients vanish but phi does not"))
    report = check_pt(f_list, phi, cfg)
    if report.verdict == "fail":
        return PTFailure(report)
    if report.verdict == "inconclusive":
        return Inconclusive(report, report.detail)
    fs = report.system
    psi = report.psi
    try:
        clusters = _cluster_special_points(fs, report.per_point)
        if clusters:
            locals_ = [local_solution(psi, fs, cl, cfg) for cl in clusters]
        else:
            locals_ = [local_solution(psi, fs, [], cfg)]
        for j, ls in enumerate(locals_):
            ls.excluded = [p for k, other in enumerate(locals_) for p in other.cluster if k != j]
        gd = glue(locals_, fs, psi, cfg)
    except (SolverError, ZeroSetError, PolynomialError) as e:
        return Inconclusive(report, f"solution construction: {e}")

    phi_rfs = [gd.b_i[i] / RatFun.from_poly(gd.b) for i in range(r)]
    # exact check: sum phi_i f_i = phi
    acc = RatFun.zero()
    for pr, f in zip(phi_rfs, f_list):
        acc = acc + pr * f.ratfun
    if not (acc - phi.ratfun).is_zero():
        return Inconclusive(report, "assembled solution failed the exact identity; this is a bug")

    candidates: list[AlgebraicPoint] = list(fs.special_points)
    for f in [phi, psi, *f_list]:
        for q in f.p_set():
            candidates.append(q)
    claimed = list(psi.extensions)
    mode_exact = all(p.is_rational() for p in fs.special_points)
    try:
        phis = []
        for i in range(r):
            crf, exact_i = _attach_extensions(phi_rfs[i], candidates, claimed, cfg)
            phis.append(crf)
            mode_exact = mode_exact and exact_i
    except SolverError as e:
        return Inconclusive(report, str(e))
    for ls in (locals_ or []):
        mode_exact = mode_exact and ls.exact
    if cfg.mode == "exact" and not mode_exact:
        return Inconclusive(report, "exact mode requested but only a numeric certificate exists")

    pole_points: list[AlgebraicPoint] = []
    for p in candidates + [q for crf in phis for q in crf.p_set()]:
        if not any(p.same_point(q) for q in pole_points):
            pole_points.append(p)
    pole_points.sort(key=lambda p: p.sort_key())
    return Solution(phis, gd, "exact" if mode_exact else "numeric", pole_points, report, locals_)
