"""Decide the pointwise solvability test for f_1, ..., f_r and phi.

Pipeline: clear denominators (h), split off the common factor g so that
h*f_i = g*g_i exactly with the g_i sharing no factor, divide phi through by
g to get psi (necessarily continuous when the test can pass at all), then
at every special point (common real zero of the g_i) search for constants
c with

    B_i = (psi - sum_j c_j g_j) * g_i / sum_j g_j^2  ->  0.

Everywhere else the test holds automatically because some g_i is nonzero;
extension points of the inputs are still checked explicitly (cheap, and
they carry the evaluation-based constants for the report).

Verdicts are three-valued.  Fail is always backed by a re-checkable
witness: either certified interval growth of some R_i = psi*g_i/sum g^2,
or a failed continuity certification of psi itself.  A constant search
that merely does not converge yields Inconclusive, never Fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bipoly import BiPoly, PolynomialError, exact_div, multi_gcd
from .config import ProbeConfig
from .points import AlgebraicPoint, ZeroSetError, common_real_zeros
from .ratfun import (
    CRFun,
    FailureReport,
    LimitVerdict,
    RatFun,
    certify_continuous,
    limit_test,
)

TWO_PI = 2.0 * math.pi


class DegenerateSystemError(ValueError):
    pass


@dataclass
class FactoredSystem:
    h: BiPoly
    g: BiPoly
    g_list: list[BiPoly]
    special_points: list[AlgebraicPoint]
    f_list: list[CRFun]

    def sum_g_squares(self) -> BiPoly:
        acc = BiPoly.zero()
        for gi in self.g_list:
            acc = acc + gi * gi
        return acc


@dataclass
class PointRecord:
    point: AlgebraicPoint
    kind: str  # "special" | "p_point" | "degenerate"
    status: str  # "pass" | "fail" | "inconclusive"
    c: list[Fraction] | None = None
    exact: bool = False
    b_verdicts: list[LimitVerdict] = field(default_factory=list)
    witness: dict | None = None
    detail: str = ""


@dataclass
class PTReport:
    verdict: str  # "pass" | "fail" | "inconclusive"
    psi: CRFun | None = None
    per_point: list[PointRecord] = field(default_factory=list)
    system: FactoredSystem | None = None
    detail: str = ""


def factor_common(f_list: list[CRFun], cfg: ProbeConfig | None = None) -> FactoredSystem:
    """h*f_i = g*g_i with multi_gcd(g_i) = 1 and the finite special-point set."""
    cfg = cfg or ProbeConfig()
    if all(f.is_zero() for f in f_list):
        raise DegenerateSystemError("degenerate system: every coefficient function is zero")
    dens = []
    for f in f_list:
        if f.ratfun.den not in dens:
            dens.append(f.ratfun.den)
    h = BiPoly.one()
    for d in dens:
        h = h * d
    lam = []
    for f in f_list:
        lam.append(f.ratfun.num * exact_div(h, f.ratfun.den))
    g = multi_gcd([p for p in lam if not p.is_zero()])
    g_list = [exact_div(p, g) if not p.is_zero() else BiPoly.zero() for p in lam]
    for f, gi in zip(f_list, g_list):
        # h*f_i = g*g_i, cross-multiplied
        assert (h * f.ratfun.num) - (g * gi * f.ratfun.den) == BiPoly.zero()
    nonzero = [p for p in g_list if not p.is_zero()]
    if multi_gcd(nonzero).is_constant() and not all(p.is_constant() for p in nonzero):
        points = common_real_zeros(nonzero, seed=cfg.seed)
    else:
        points = []
    return FactoredSystem(h, g, g_list, points, list(f_list))


def divide_out(phi: CRFun, fs: FactoredSystem, cfg: ProbeConfig | None = None):
    """psi = (h*phi)/g certified continuous, or the failure that sinks the test."""
    cfg = cfg or ProbeConfig()
    psi_rf = RatFun(fs.h * phi.ratfun.num, fs.g * phi.ratfun.den)
    out = certify_continuous(psi_rf, cfg)
    if isinstance(out, FailureReport):
        return out
    assert (fs.h * phi.ratfun.num) * out.ratfun.den == (fs.g * out.ratfun.num) * phi.ratfun.den
    return out


# -- constant search -----------------------------------------------------------------


def _residual_funs(psi: CRFun, fs: FactoredSystem) -> list[RatFun]:
    """R_i = psi * g_i / sum g_j^2."""
    s = fs.sum_g_squares()
    return [RatFun(psi.ratfun.num * gi, psi.ratfun.den * s) for gi in fs.g_list]


def _b_fun(psi: CRFun, fs: FactoredSystem, c: list[Fraction], i: int) -> RatFun:
    """B_i for the constant vector c, as an exact rational function."""
    s = fs.sum_g_squares()
    shift = BiPoly.zero()
    for cj, gj in zip(c, fs.g_list):
        if cj:
            shift = shift + gj * cj
    num = (psi.ratfun.num - psi.ratfun.den * shift) * fs.g_list[i]
    return RatFun(num, psi.ratfun.den * s)


def _lsq_constants(psi: CRFun, fs: FactoredSystem, p: AlgebraicPoint, cfg: ProbeConfig):
    """Per-radius least squares for c, then extrapolation to radius zero.

    Returns (c_extrapolated, residual_trail) using plain float sampling; the
    result is only a candidate and is always verified by exact probes.
    """
    from .univar import simplest_in_interval

    r0 = float(cfg.r0)
    rho = float(cfg.rho)
    K = max(cfg.angles, 32)
    p.refine(Fraction(1, 2 ** 48))
    if p.is_rational():
        ax, ay = p.exact_coords()
    else:
        ax = simplest_in_interval(p.box.x_lo, p.box.x_hi)
        ay = simplest_in_interval(p.box.y_lo, p.box.y_hi)
    # translate everything to the point so float sampling keeps precision
    sx = BiPoly.x() + BiPoly.const(ax)
    sy = BiPoly.y() + BiPoly.const(ay)
    r_count = len(fs.g_list)
    theta = TWO_PI * (np.arange(K) + 0.31830988618) / K
    ct, st = np.cos(theta), np.sin(theta)
    radii = [r0 * rho ** k for k in range(3, cfg.k_max + 1)]
    cs, residuals = [], []
    sden = fs.sum_g_squares().substitute(sx, sy)
    pnum = psi.ratfun.num.substitute(sx, sy)
    pden = psi.ratfun.den.substitute(sx, sy)
    gsh = [gi.substitute(sx, sy) for gi in fs.g_list]
    for r in radii:
        xs = r * ct
        ys = r * st
        s = sden.eval_float(xs, ys)
        pn = pnum.eval_float(xs, ys)
        pd = pden.eval_float(xs, ys)
        gvals = [gi.eval_float(xs, ys) for gi in gsh]
        ok = (s != 0) & (pd != 0) & np.isfinite(s) & np.isfinite(pd)
        for gv in gvals:
            ok &= np.isfinite(gv)
        if ok.sum() < 8:
            continue
        rows = []
        rhs = []
        for i in range(r_count):
            base = gvals[i][ok] / s[ok]
            rhs.append((pn[ok] / pd[ok]) * base)
            rows.append(np.stack([gvals[j][ok] * base for j in range(r_count)], axis=1))
        A = np.concatenate(rows, axis=0)
        b = np.concatenate(rhs, axis=0)
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        cs.append(sol)
        res = A @ sol - b
        residuals.append(float(np.sqrt(np.mean(res ** 2))))
    if not cs:
        return None, []
    # quadratic-in-r extrapolation over the deepest fits
    tail = min(len(cs), 6)
    V = np.stack([np.ones(tail), np.array(radii[-tail:]), np.array(radii[-tail:]) ** 2], axis=1)
    C = np.stack(cs[-tail:], axis=0)
    coef, *_ = np.linalg.lstsq(V, C, rcond=None)
    return coef[0], residuals


def find_constants(psi: CRFun, fs: FactoredSystem, p: AlgebraicPoint,
                   cfg: ProbeConfig) -> PointRecord:
    """Search constants making every B_i vanish continuously at p."""
    r_funs = _residual_funs(psi, fs)
    witnesses = []
    for i, R in enumerate(r_funs):
        v = limit_test(R, p, cfg)
        if v.kind == "unbounded":
            p.refine(Fraction(1, 2 ** 48))
            return PointRecord(p, "special", "fail", witness={
                "which": i, "verdict": "unbounded", "evidence": v.evidence,
                "growth_factor": cfg.growth_factor,
                "function": {"num": R.num.to_str(), "den": R.den.to_str()},
                "point": [p.approx[0], p.approx[1]],
            }, b_verdicts=[v], detail="R_i certified unbounded at the point")
        witnesses.append(v)
        if v.kind == "unknown":
            return PointRecord(p, "special", "inconclusive", b_verdicts=[v],
                               detail="boundedness probe returned unknown")

    cand, residuals = _lsq_constants(psi, fs, p, cfg)
    if cand is None:
        return PointRecord(p, "special", "inconclusive", detail="no usable probe samples")

    def verify(c: list[Fraction]) -> tuple[bool, list[LimitVerdict]]:
        vs = []
        for i in range(len(fs.g_list)):
            v = limit_test(_b_fun(psi, fs, c, i), p, cfg)
            vs.append(v)
            if not v.limit_is(0.0, cfg.tol * 4):
                return False, vs
        return True, vs

    if cfg.mode != "numeric":
        c_rat = [Fraction(float(v)).limit_denominator(10 ** 6) for v in cand]
        okq, vs = verify(c_rat)
        if okq:
            return PointRecord(p, "special", "pass", c=c_rat, exact=True, b_verdicts=vs)
    if cfg.mode != "exact":
        c_float = [Fraction(float(v)).limit_denominator(10 ** 14) for v in cand]
        okf, vs = verify(c_float)
        if okf:
            return PointRecord(p, "special", "pass", c=c_float, exact=False, b_verdicts=vs)
    # stable large residual across shrinking radii: no constants can work
    if len(residuals) >= 4:
        tail = residuals[-4:]
        if min(tail) > 100 * cfg.tol and max(tail) <= 2.0 * min(tail):
            bounded_w = [v for v in vs if v.kind == "bounded_no_limit"]
            if bounded_w:
                return PointRecord(p, "special", "fail", c=None, b_verdicts=vs, witness={
                    "verdict": "bounded_no_limit",
                    "residual_trail": residuals,
                    "evidence": bounded_w[0].evidence,
                }, detail="best-fit residual stabilized away from zero")
    return PointRecord(p, "special", "inconclusive", b_verdicts=vs,
                       detail="constant search did not verify")


def _trivial_record(psi: CRFun, fs: FactoredSystem, p: AlgebraicPoint,
                    cfg: ProbeConfig) -> PointRecord:
    """Record for a point where some g_i is nonzero: the test holds by evaluation."""
    sden = fs.sum_g_squares()
    p.refine(Fraction(1, 2 ** 40))
    cx, cy = p.approx
    sval = sden.eval_float(np.asarray(cx), np.asarray(cy))
    if not np.isfinite(sval) or abs(float(sval)) < 1e-300:
        return PointRecord(p, "p_point", "inconclusive", detail="could not evaluate at the point")
    gv = [float(gi.eval_float(np.asarray(cx), np.asarray(cy))) for gi in fs.g_list]
    try:
        pv = float(psi.ratfun.num.eval_float(np.asarray(cx), np.asarray(cy))
                   / psi.ratfun.den.eval_float(np.asarray(cx), np.asarray(cy)))
    except ZeroDivisionError:
        pv = float("nan")
    if not np.isfinite(pv):
        ext = psi.extension_at(p)
        if ext is None:
            return PointRecord(p, "p_point", "inconclusive", detail="psi not evaluable at the point")
        pv = float(ext) if isinstance(ext, Fraction) else 0.5 * (ext[0] + ext[1])
    c = [Fraction(pv * g / float(sval)).limit_denominator(10 ** 12) for g in gv]
    if p.is_rational():
        xq, yq = p.exact_coords()
        try:
            pvq = psi.eval_exact(xq, yq)
            sq = sden.eval_exact(xq, yq)
            c = [pvq * gi.eval_exact(xq, yq) / sq for gi in fs.g_list]
        except ZeroDivisionError:
            pass
    vs = []
    for i in range(len(fs.g_list)):
        v = limit_test(_b_fun(psi, fs, c, i), p, cfg)
        vs.append(v)
        if not v.limit_is(0.0, cfg.tol * 4):
            return PointRecord(p, "p_point", "inconclusive", c=c, b_verdicts=vs,
                               detail="evaluation-based constants did not verify")
    return PointRecord(p, "p_point", "pass", c=c, exact=p.is_rational(), b_verdicts=vs)


def check_pt(f_list: list[CRFun], phi: CRFun, cfg: ProbeConfig | None = None) -> PTReport:
    """Full three-valued decision of the pointwise test."""
    cfg = cfg or ProbeConfig()
    if all(f.is_zero() for f in f_list):
        if phi.is_zero():
            rec = PointRecord(_origin(), "degenerate", "pass", c=[Fraction(0)] * len(f_list),
                              exact=True)
            return PTReport("pass", CRFun.from_poly(BiPoly.zero()), [rec],
                            detail="all coefficients vanish and so does phi")
        return PTReport("fail", None, [], detail="all coefficients vanish but phi does not")
    try:
        fs = factor_common(f_list, cfg)
    except (ZeroSetError, PolynomialError) as e:
        return PTReport("inconclusive", None, [], detail=f"factorization stage: {e}")
    psi = divide_out(phi, fs, cfg)
    if isinstance(psi, FailureReport):
        if psi.reason in ("curve", "point"):
            return PTReport("fail", None, [], fs,
                            detail=f"phi/g admits no continuous extension ({psi.detail})")
        return PTReport("inconclusive", None, [], fs, detail=psi.detail)
    records = []
    for p in fs.special_points:
        records.append(find_constants(psi, fs, p, cfg))
    extras: list[AlgebraicPoint] = []
    for f in [phi, *f_list]:
        for q in f.p_set():
            if any(q.same_point(s) for s in fs.special_points):
                continue
            if any(q.same_point(e) for e in extras):
                continue
            extras.append(q)
    for q in extras:
        records.append(_trivial_record(psi, fs, q, cfg))
    verdict = "pass"
    if any(r.status == "fail" for r in records):
        verdict = "fail"
    elif any(r.status == "inconclusive" for r in records):
        verdict = "inconclusive"
    return PTReport(verdict, psi, records, fs)


def _origin() -> AlgebraicPoint:
    from .points import rational_point

    return rational_point(0, 0)
