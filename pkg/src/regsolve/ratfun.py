"""Reduced rational functions, continuity probes, and certified extensions.

`RatFun` is a gcd-reduced quotient of two bivariate polynomials with the
denominator normalized.  `CRFun` adds finitely many certified extension
points (the places where the reduced denominator vanishes but the function
extends continuously) and is the carrier for every "continuous rational
function" in the pipeline.

`limit_test` classifies the behavior of a rational function near a point by
interval-evaluating it on shrinking probe circles: a family of angles on
radii r0*rho^k.  Verdicts are Limit (with an enclosure of width <= tol),
BoundedNoLimit, Unbounded (with a re-checkable growth witness), or Unknown.
The classification is a semi-decision: Unknown is always an admissible
outcome, and Fail-type verdicts are backed by certified interval bounds.

`certify_continuous` decides whether the real zero set of the reduced
denominator is a curve (then the function cannot be continuous) or a finite
point set.  The decision is exact: vertical lines come from the content,
every non-vertical curve shows up as a positive real-root count of a slice
between consecutive roots of Res_y(den, den_y)*lc_y(den), and a finite zero
set consists precisely of the critical zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import univar as uv
from .bipoly import BiPoly, PolynomialError, poly_gcd, exact_div, squarefree_radical
from .config import ProbeConfig
from .intervals import Iv, iv_cos, iv_sin
from .points import AlgebraicPoint, ZeroSetError, common_real_zeros

TWO_PI = 2.0 * math.pi


class RatFun:
    """Reduced quotient num/den with den normalized, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly, _reduced: bool = False):
        if den.is_zero():
            raise PolynomialError("denominator is the zero polynomial")
        if not _reduced:
            if num.is_zero():
                num, den = BiPoly.zero(), BiPoly.one()
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = exact_div(num, g)
                    den = exact_div(den, g)
                dn = den.normalize()
                # den = c * dn with c rational; fold c into num
                (t, lead_dn) = dn.lead_term()
                c = den.terms[t] / lead_dn
                num = num * (1 / c)
                den = dn
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: BiPoly) -> "RatFun":
        return RatFun(p, BiPoly.one(), _reduced=True)

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(BiPoly.zero(), BiPoly.one(), _reduced=True)

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(BiPoly.const(c), BiPoly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == BiPoly.one()

    def __eq__(self, o):
        return isinstance(o, RatFun) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, o: "RatFun") -> "RatFun":
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: "RatFun") -> "RatFun":
        return RatFun(self.num * o.den - o.num * self.den, self.den * o.den)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _reduced=True)

    def __mul__(self, o) -> "RatFun":
        if isinstance(o, (int, Fraction)):
            return RatFun(self.num * o, self.den)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o: "RatFun") -> "RatFun":
        if o.is_zero():
            raise PolynomialError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            if self.is_zero():
                raise PolynomialError("negative power of zero")
            return RatFun(self.den ** (-e), self.num ** (-e))
        return RatFun(self.num ** e, self.den ** e, _reduced=True)

    def eval_exact(self, xv: Fraction, yv: Fraction) -> Fraction:
        d = self.den.eval_exact(xv, yv)
        if d == 0:
            raise ZeroDivisionError("evaluation at a zero of the denominator")
        return self.num.eval_exact(xv, yv) / d

    def to_str(self) -> str:
        if self.is_polynomial():
            return self.num.to_str()
        ns = self.num.to_str()
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den.to_str()})"

    def __repr__(self):
        return f"RatFun({self.to_str()})"


def reduce(num: BiPoly, den: BiPoly) -> RatFun:
    """Construct the canonical reduced form of num/den."""
    return RatFun(num, den)


# -- verdicts -------------------------------------------------------------------


@dataclass
class LimitVerdict:
    kind: str  # "limit" | "bounded_no_limit" | "unbounded" | "unknown"
    value: tuple[float, float] | None = None
    evidence: dict = field(default_factory=dict)

    def is_limit(self) -> bool:
        return self.kind == "limit"

    def limit_is(self, target: float, tol: float) -> bool:
        if self.kind != "limit" or self.value is None:
            return False
        lo, hi = self.value
        return lo >= target - tol and hi <= target + tol


@dataclass
class FailureReport:
    reason: str  # "curve" | "point" | "inconclusive"
    detail: str = ""
    verdicts: list = field(default_factory=list)

    def __bool__(self):
        return False


class CRFun:
    """A rational function together with its certified continuous extensions."""

    __slots__ = ("ratfun", "extensions", "status")

    def __init__(self, ratfun: RatFun, extensions=None, status: str = "Claimed"):
        self.ratfun = ratfun
        self.extensions = list(extensions or [])  # (AlgebraicPoint, Fraction | (lo, hi))
        self.status = status  # CertifiedExact | CertifiedNumeric | Claimed

    @staticmethod
    def from_poly(p: BiPoly) -> "CRFun":
        return CRFun(RatFun.from_poly(p), [], "CertifiedExact")

    def p_set(self) -> list[AlgebraicPoint]:
        return [pt for pt, _ in self.extensions]

    def is_zero(self) -> bool:
        return self.ratfun.is_zero()

    def extension_at(self, pt: AlgebraicPoint):
        for q, v in self.extensions:
            if q.same_point(pt):
                return v
        return None

    def eval_exact(self, xv: Fraction, yv: Fraction) -> Fraction:
        d = self.ratfun.den.eval_exact(xv, yv)
        if d != 0:
            return self.ratfun.num.eval_exact(xv, yv) / d
        for q, v in self.extensions:
            if q.is_rational() and q.exact_coords() == (Fraction(xv), Fraction(yv)):
                if isinstance(v, Fraction):
                    return v
                raise ZeroDivisionError("extension value known only as an interval")
        raise ZeroDivisionError("evaluation at an uncertified zero of the denominator")

    def to_str(self) -> str:
        return self.ratfun.to_str()

    def __repr__(self):
        return f"CRFun({self.to_str()}, extensions={len(self.extensions)}, {self.status})"


def p_set(f: CRFun) -> list[AlgebraicPoint]:
    """The indeterminacy set: extension points of a certified function."""
    return f.p_set()


# -- probe circles -----------------------------------------------------------------


class _ProbeCtx:
    """Probe context holding the function translated to the point.

    Expanded polynomials evaluated in doubles near a distant zero lose all
    significant digits to cancellation; translating the polynomials to the
    probe center once (exact rational shift) makes every circle evaluation
    graded by degree in the probe radius, so interval enclosures stay tight
    at any center.  The leftover gap between the exact point and its
    rational anchor is carried as a tiny interval offset.
    """

    __slots__ = ("num_s", "den_s", "offx", "offy", "cxf", "cyf", "scale")

    def __init__(self, R: RatFun, p: AlgebraicPoint, r_min: float):
        width = Fraction(max(r_min, 1e-250)) / 2 ** 16
        p.refine(min(width, Fraction(1, 2 ** 48)))
        b = p.box
        if p.is_rational():
            ax, ay = p.exact_coords()
        else:
            from .univar import simplest_in_interval
            ax = simplest_in_interval(b.x_lo, b.x_hi)
            ay = simplest_in_interval(b.y_lo, b.y_hi)
        shift_x = BiPoly.x() + BiPoly.const(ax)
        shift_y = BiPoly.y() + BiPoly.const(ay)
        self.num_s = R.num.substitute(shift_x, shift_y)
        self.den_s = R.den.substitute(shift_x, shift_y)
        fx_lo, fx_hi = float(b.x_lo - ax), float(b.x_hi - ax)
        fy_lo, fy_hi = float(b.y_lo - ay), float(b.y_hi - ay)
        self.offx = Iv(np.nextafter(fx_lo, -np.inf), np.nextafter(fx_hi, np.inf))
        self.offy = Iv(np.nextafter(fy_lo, -np.inf), np.nextafter(fy_hi, np.inf))
        self.cxf = float(ax)
        self.cyf = float(ay)
        self.scale = max(abs(float(ax)), abs(float(ay)), 1.0)


def _circle_eval(ctx: _ProbeCtx, r: float, K: int):
    """Interval values on K circle angles around the context's center.

    Angles hitting the denominator's zero enclosure are re-tried at small
    deterministic angular offsets (jitter); still-bad angles are masked out.
    Returned xs/ys are absolute sample coordinates (for witnesses).
    """
    base = TWO_PI * np.arange(K) / K
    xs = np.zeros(K)
    ys = np.zeros(K)
    vlo = np.zeros(K)
    vhi = np.zeros(K)
    ok = np.zeros(K, dtype=bool)
    riv = Iv.point(r)
    theta = base.copy()
    for attempt in range(6):
        todo = ~ok
        if not todo.any():
            break
        t = theta[todo]
        x = ctx.offx + riv * iv_cos(t)
        y = ctx.offy + riv * iv_sin(t)
        vn = ctx.num_s.eval_iv(x, y)
        vd = ctx.den_s.eval_iv(x, y)
        q, good = vn.divide(vd)
        idx = np.flatnonzero(todo)
        sel = idx[good]
        vlo[sel] = q.lo[good]
        vhi[sel] = q.hi[good]
        xs[sel] = ctx.cxf + x.mid()[good]
        ys[sel] = ctx.cyf + y.mid()[good]
        ok[sel] = True
        # deterministic jitter for the rest
        theta = np.where(ok, theta, base + (attempt + 1) * TWO_PI / (K * 17.0))
    return Iv(vlo, vhi), ok, xs, ys


@dataclass
class _Row:
    r: float
    lo: float
    hi: float
    spread: float
    absmax_lo: float
    absmax_hi: float
    argmax: tuple[float, float]
    valid: bool

    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def to_json(self) -> dict:
        return {
            "radius": self.r,
            "min": self.lo,
            "max": self.hi,
            "spread": self.spread,
            "absmax_lower": self.absmax_lo,
            "absmax_upper": self.absmax_hi,
            "argmax": [self.argmax[0], self.argmax[1]],
        }


def _probe_row(ctx: _ProbeCtx, r: float, K: int) -> _Row:
    vals, ok, xs, ys = _circle_eval(ctx, r, K)
    n_ok = int(ok.sum())
    if n_ok < max(8, (3 * K) // 4):
        return _Row(r, 0.0, 0.0, 0.0, 0.0, 0.0, (0.0, 0.0), False)
    lo = float(vals.lo[ok].min())
    hi = float(vals.hi[ok].max())
    a = vals.abs()
    alos = a.lo[ok]
    ahis = a.hi[ok]
    i = int(np.argmax(alos))
    sel = np.flatnonzero(ok)[i]
    return _Row(r, lo, hi, hi - lo, float(alos.max()), float(ahis.max()),
                (float(xs[sel]), float(ys[sel])), True)


def _angle_table(ctx: _ProbeCtx, r: float, K: int) -> list[dict]:
    vals, ok, xs, ys = _circle_eval(ctx, r, K)
    out = []
    for t in range(K):
        if ok[t]:
            out.append({
                "angle_index": t,
                "angle": TWO_PI * t / K,
                "x": float(xs[t]),
                "y": float(ys[t]),
                "lower": float(vals.lo[t]),
                "upper": float(vals.hi[t]),
            })
    return out


def limit_test(R: RatFun, p: AlgebraicPoint, cfg: ProbeConfig) -> LimitVerdict:
    """Classify R near p on shrinking probe circles (see module docstring)."""
    if R.num.is_zero():
        return LimitVerdict("limit", (0.0, 0.0), {"trivial": "zero function"})
    r0 = float(cfg.r0)
    rho = float(cfg.rho)
    K = cfg.angles
    tol = cfg.tol
    ctx = _ProbeCtx(R, p, r0 * rho ** cfg.k_max)
    scale = ctx.scale
    rows: list[_Row] = []
    for k in range(cfg.k_max + 1):
        rows.append(_probe_row(ctx, r0 * rho ** k, K))
    if not all(row.valid for row in rows):
        return LimitVerdict("unknown", None, {"radii": [r.to_json() for r in rows],
                                              "detail": "probe circles hit the polar set"})
    ev = {"radii": [r.to_json() for r in rows]}

    # -- certified unbounded growth over the last radii --------------------------
    g = cfg.growth_factor
    grow = 0
    for a, b in zip(rows, rows[1:]):
        if b.absmax_lo >= g * max(a.absmax_hi, 1e-300) and b.absmax_lo > 1.0:
            grow += 1
        else:
            grow = 0
    if grow >= 3:
        half = _probe_row(ctx, rows[-1].r / 2, K)
        if half.valid and half.absmax_lo >= rows[-1].absmax_lo:
            ev["recheck"] = half.to_json()
            return LimitVerdict("unbounded", None, ev)

    # -- limit: look for shrinking spread + drift, then refine the enclosure -----
    spreads = [row.spread for row in rows]
    drifts = [abs(b.mid() - a.mid()) for a, b in zip(rows, rows[1:])]
    decaying = all(
        spreads[i + 1] <= 0.85 * spreads[i] + tol / 16 for i in range(len(spreads) - 4, len(spreads) - 1)
    ) if len(spreads) >= 5 else False
    tight = spreads[-1] < tol and (drifts[-1] < tol if drifts else True)
    if decaying or tight:
        r = rows[-1].r
        prev = rows[-1]
        floor = max(scale * 1e-12, 1e-280)
        for _ in range(80):
            r = r / 2
            if r < floor:
                break
            nxt = _probe_row(ctx, r, K)
            if not nxt.valid:
                break
            drift = abs(nxt.mid() - prev.mid())
            prev = nxt
            if nxt.spread <= tol / 2 and drift <= tol / 16:
                enc_lo = nxt.lo - drift - tol / 8
                enc_hi = nxt.hi + drift + tol / 8
                half = _probe_row(ctx, r / 2, K)
                if half.valid and half.lo >= enc_lo - tol and half.hi <= enc_hi + tol:
                    ev["enclosure_radius"] = r
                    return LimitVerdict("limit", (enc_lo, enc_hi), ev)
                break

    # -- bounded with stable angular spread ---------------------------------------
    tail = rows[-3:]
    bounded = all(row.absmax_hi <= 1e12 for row in rows)
    stable_spread = (
        min(row.spread for row in tail) > 2 * tol
        and max(row.spread for row in tail) <= 1.6 * min(row.spread for row in tail)
        and max(row.absmax_hi for row in tail) <= 1.6 * max(min(row.absmax_hi for row in tail), 1e-300)
    )
    if bounded and stable_spread:
        ev["angle_table"] = _angle_table(ctx, rows[-1].r, K)
        return LimitVerdict("bounded_no_limit", None, ev)
    return LimitVerdict("unknown", None, ev)


def locally_bounded(R: RatFun, p: AlgebraicPoint, cfg: ProbeConfig) -> str:
    """'yes' | 'no' | 'unknown' — boundedness of R near p on punctured disks."""
    v = limit_test(R, p, cfg)
    if v.kind in ("limit", "bounded_no_limit"):
        return "yes"
    if v.kind == "unbounded":
        return "no"
    return "unknown"


# -- continuity certification -----------------------------------------------------


def _slice_root_count(prim: BiPoly, x0: Fraction) -> int:
    """Number of real y-roots of prim(x0, y)."""
    vals = [c.eval_exact(x0, Fraction(0)) for c in prim.coeffs_in("y")]
    upoly = uv.trim([Fraction(v) for v in vals])
    if uv.is_zero(upoly):
        return 1 << 30  # identically zero slice: a whole vertical line
    if uv.deg(upoly) == 0:
        return 0
    sf = uv.squarefree_part(upoly)
    chain = uv.sturm_chain(sf)
    bound = uv.root_bound(sf)
    return uv.sturm_count(chain, -bound - 1, bound + 1)


def denominator_zero_structure(den: BiPoly, seed: int = 0):
    """Exact decision: is Z(den) a curve, or a finite set (then which points)?

    Returns ("curve", detail) or ("finite", [AlgebraicPoint]) or
    ("inconclusive", detail).
    """
    if den.is_constant():
        return ("finite", [])
    rad = squarefree_radical(den)
    # vertical lines live in the content w.r.t. y
    cont, _ = rad.content_and_primitive("y")
    if not cont.is_constant():
        croots = uv.isolate_real_roots(uv.from_bipoly(cont, "x"))
        if croots:
            return ("curve", "denominator vanishes along vertical line(s)")
        prim = exact_div(rad, cont)
    else:
        prim = rad
    if not prim.depends_on("y"):
        # primitive and y-free means constant; only the content mattered
        return ("finite", [])
    # slice counting between the critical x-values
    from .bipoly import resultant as _res

    prim_y = prim.derivative("y")
    disc = uv.from_bipoly(_res(prim, prim_y, "y"), "x")
    if uv.is_zero(disc):
        return ("inconclusive", "unexpected vanishing discriminant of a squarefree denominator")
    lc = uv.from_bipoly(prim.coeffs_in("y")[-1], "x")
    dpoly = uv.squarefree_part(uv.umul(disc, lc))
    roots = uv.isolate_real_roots(dpoly)
    shrink = Fraction(1, 2 ** 20)
    roots = [uv.refine_root(dpoly, r, shrink) if r.exact is None else r for r in roots]
    samples: list[Fraction] = []
    if not roots:
        samples.append(Fraction(0))
    else:
        lo0 = (roots[0].lo if roots[0].exact is None else roots[0].exact)
        samples.append(lo0 - 1)
        for a, b in zip(roots, roots[1:]):
            ahi = a.hi if a.exact is None else a.exact
            blo = b.lo if b.exact is None else b.exact
            while ahi >= blo:
                # adjacent brackets still touching: separate the distinct roots
                a = uv.refine_root(dpoly, a, (a.hi - a.lo) / 2 ** 8)
                b = uv.refine_root(dpoly, b, (b.hi - b.lo) / 2 ** 8)
                ahi = a.hi if a.exact is None else a.exact
                blo = b.lo if b.exact is None else b.exact
            samples.append(simplest_between(ahi, blo))
        hiN = (roots[-1].hi if roots[-1].exact is None else roots[-1].exact)
        samples.append(hiN + 1)
    for x0 in samples:
        if _slice_root_count(prim, x0) > 0:
            return ("curve", f"denominator vanishes on every slice near x = {float(x0):.6g}")
    try:
        pts = common_real_zeros([rad, rad.derivative("x"), rad.derivative("y")], seed=seed)
    except ZeroSetError as e:
        return ("inconclusive", f"critical system: {e}")
    return ("finite", pts)


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    mid = uv.simplest_in_interval(a, b)
    if a < mid < b:
        return mid
    return (a + b) / 2


def certify_continuous(R: RatFun, cfg: ProbeConfig | None = None,
                       claimed: list | None = None) -> CRFun | FailureReport:
    """Certify a reduced rational function as continuous on the whole plane.

    On success the result carries one extension entry per real zero of the
    reduced denominator.  `claimed` optionally supplies (point, value) hints
    whose values are preferred when they survive the residue check.
    """
    cfg = cfg or ProbeConfig()
    if R.is_polynomial() or R.num.is_zero():
        return CRFun(RatFun(R.num, BiPoly.one(), _reduced=True), [], "CertifiedExact")
    kind, payload = denominator_zero_structure(R.den, seed=cfg.seed)
    if kind == "curve":
        return FailureReport("curve", f"discontinuity along a curve: {payload}")
    if kind == "inconclusive":
        return FailureReport("inconclusive", str(payload))
    points: list[AlgebraicPoint] = payload
    extensions = []
    exact_all = True
    verdicts = []
    for pt in points:
        v = limit_test(R, pt, cfg)
        verdicts.append((pt, v))
        if v.kind == "unknown":
            return FailureReport("inconclusive", "limit probe returned unknown", verdicts)
        if v.kind != "limit":
            return FailureReport(
                "point",
                f"no continuous extension near ({pt.approx[0]:.6g}, {pt.approx[1]:.6g})",
                verdicts,
            )
        value = _exact_extension_value(R, pt, v, cfg, claimed)
        if value is None:
            exact_all = False
            extensions.append((pt, v.value))
        else:
            extensions.append((pt, value))
    status = "CertifiedExact" if exact_all else "CertifiedNumeric"
    return CRFun(R, extensions, status)


def _exact_extension_value(R, pt, verdict, cfg, claimed) -> Fraction | None:
    lo, hi = verdict.value
    cand: Fraction | None = None
    if claimed:
        for q, v in claimed:
            if isinstance(v, Fraction) and q.same_point(pt):
                cand = v
                break
    if cand is None:
        mid = Fraction(0.5 * (lo + hi)).limit_denominator(10 ** 6)
        cand = mid
    if not (lo - cfg.tol <= float(cand) <= hi + cfg.tol):
        return None
    # residue check on three extra shrunken circles: |R - cand| must shrink
    # no reduction: only evaluation matters for the residue probe
    shifted = RatFun(R.num * cand.denominator - R.den * cand.numerator,
                     R.den * cand.denominator, _reduced=True)
    base = float(verdict.evidence.get("enclosure_radius", float(cfg.r0) * float(cfg.rho) ** cfg.k_max))
    ctx = _ProbeCtx(shifted, pt, base / 8)
    for j in (1, 2, 3):
        row = _probe_row(ctx, base * 0.5 ** j, cfg.angles)
        if not row.valid or row.absmax_hi > cfg.tol * 0.5 ** j:
            return None
    return cand


def crf_arith(a: CRFun, b: CRFun, op: str, cfg: ProbeConfig | None = None) -> CRFun:
    """Ring operations on certified functions; extensions are recomputed."""
    if op == "add":
        rf = a.ratfun + b.ratfun
    elif op == "mul":
        rf = a.ratfun * b.ratfun
    elif op == "sub":
        rf = a.ratfun - b.ratfun
    else:
        raise ValueError(f"unsupported operation {op!r}")
    out = certify_continuous(rf, cfg, claimed=None)
    if isinstance(out, FailureReport):
        raise PolynomialError(
            f"combination of certified functions failed re-certification ({out.reason})"
        )
    return out
