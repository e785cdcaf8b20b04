"""Versioned JSON encoding of points, verdicts, reports and solutions.

Schema 1.  Rationals are strings "p/q" (or "p"), polynomials and rational
functions are canonical expression strings that re-parse under the package
grammar, algebraic points carry {minpoly, box, approx} plus the shear-line
data needed to rebuild them exactly.  Encoding is deterministic given the
same inputs and seed.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import univar as uv
from .bipoly import BiPoly
from .config import ProbeConfig
from .points import AlgebraicPoint, rational_point
from .pointwise import PTReport, PointRecord
from .ratfun import CRFun, LimitVerdict, RatFun
from .solver import GlueData, Solution

SCHEMA = 1


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def point_to_json(p: AlgebraicPoint) -> dict:
    p.refine(Fraction(1, 2 ** 48))
    out = {
        "minpoly": p.minpoly_u.to_str(),
        "box": [frac_str(p.box.x_lo), frac_str(p.box.x_hi),
                frac_str(p.box.y_lo), frac_str(p.box.y_hi)],
        "approx": [p.approx[0], p.approx[1]],
        "shear": frac_str(p.shear),
        "y_poly": p.y_expr_w.to_str(),
    }
    if p.is_rational():
        x, y = p.exact_coords()
        out["exact"] = [frac_str(x), frac_str(y)]
    else:
        out["root"] = [frac_str(p._root.lo), frac_str(p._root.hi)]
    return out


def point_from_json(d: dict) -> AlgebraicPoint:
    from .exprparse import parse_expr

    if "exact" in d:
        return rational_point(parse_frac(d["exact"][0]), parse_frac(d["exact"][1]))
    minpoly = parse_expr(d["minpoly"]).num
    y_poly = parse_expr(d["y_poly"]).num
    lo, hi = parse_frac(d["root"][0]), parse_frac(d["root"][1])
    return AlgebraicPoint(parse_frac(d["shear"]), minpoly, y_poly, uv.RealRoot(None, lo, hi))


def value_to_json(v) -> object:
    if isinstance(v, Fraction):
        return frac_str(v)
    return [float(v[0]), float(v[1])]


def value_from_json(v):
    if isinstance(v, str):
        return parse_frac(v)
    return (float(v[0]), float(v[1]))


def verdict_to_json(v: LimitVerdict, include_evidence: bool = True) -> dict:
    out = {"kind": v.kind}
    if v.value is not None:
        out["value"] = [v.value[0], v.value[1]]
    if include_evidence:
        out["evidence"] = v.evidence
    return out


def crfun_to_json(c: CRFun) -> dict:
    return {
        "expr": c.to_str(),
        "status": c.status,
        "extensions": [
            {"point": point_to_json(p), "value": value_to_json(v)} for p, v in c.extensions
        ],
    }


def crfun_from_json(d: dict) -> CRFun:
    from .exprparse import parse_expr

    rf = parse_expr(d["expr"])
    exts = [(point_from_json(e["point"]), value_from_json(e["value"]))
            for e in d.get("extensions", [])]
    return CRFun(rf, exts, d.get("status", "Claimed"))


def record_to_json(r: PointRecord) -> dict:
    return {
        "point": point_to_json(r.point),
        "kind": r.kind,
        "status": r.status,
        "c": [frac_str(q) for q in r.c] if r.c is not None else None,
        "exact": r.exact,
        "b_verdicts": [verdict_to_json(v, include_evidence=False) for v in r.b_verdicts],
        "witness": r.witness,
        "detail": r.detail,
    }


def report_to_json(rep: PTReport) -> dict:
    out = {
        "schema": SCHEMA,
        "verdict": rep.verdict,
        "detail": rep.detail,
        "psi": crfun_to_json(rep.psi) if rep.psi is not None else None,
        "per_point": [record_to_json(r) for r in rep.per_point],
    }
    if rep.system is not None:
        fsys = rep.system
        out["system"] = {
            "h": fsys.h.to_str(),
            "g": fsys.g.to_str(),
            "g_list": [g.to_str() for g in fsys.g_list],
            "special_points": [point_to_json(p) for p in fsys.special_points],
        }
    return out


def glue_to_json(g: GlueData) -> dict:
    return {
        "N": g.N,
        "psi_j": [p.to_str() for p in g.psi_j],
        "b": g.b.to_str(),
        "b_i": [r.to_str() for r in g.b_i],
        "a_ij": [[r.to_str() for r in row] for row in g.a_ij],
    }


def solution_to_json(sol: Solution, f_list: list[CRFun], phi: CRFun,
                     certificates: list | None = None) -> dict:
    out = {
        "schema": SCHEMA,
        "status": "solved",
        "mode": sol.mode,
        "f": [f.to_str() for f in f_list],
        "phi": phi.to_str(),
        "phi_i": [crfun_to_json(c) for c in sol.phi_i],
        "glue": glue_to_json(sol.glue),
        "pole_bound_points": [point_to_json(p) for p in sol.pole_bound_points],
        "pt_report": report_to_json(sol.report),
    }
    if certificates is not None:
        out["certificates"] = [certificate_to_json(c) for c in certificates]
    return out


def certificate_to_json(c) -> dict:
    return {"kind": c.kind, "passed": c.passed, "inconclusive": c.inconclusive,
            "payload": c.payload}


def solution_from_json(d: dict):
    """Rebuild (solution, f_list, phi) from a stored document."""
    from .exprparse import parse_expr

    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    f_list = [crfun_from_json({"expr": s}) if isinstance(s, str) else crfun_from_json(s)
              for s in d["f"]]
    phi = crfun_from_json({"expr": d["phi"]} if isinstance(d["phi"], str) else d["phi"])
    phis = [crfun_from_json(c) for c in d["phi_i"]]
    gd = d["glue"]
    glue = GlueData(
        int(gd["N"]),
        [parse_expr(s).num for s in gd["psi_j"]],
        [[_ratfun_from_str(s) for s in row] for row in gd.get("a_ij", [])],
        parse_expr(gd["b"]).num,
        [_ratfun_from_str(s) for s in gd["b_i"]],
    )
    poles = [point_from_json(p) for p in d.get("pole_bound_points", [])]
    rep = PTReport(d.get("pt_report", {}).get("verdict", "pass"))
    sol = Solution(phis, glue, d["mode"], poles, rep)
    return sol, f_list, phi


def _ratfun_from_str(s: str) -> RatFun:
    from .exprparse import parse_expr

    return parse_expr(s)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=True) + "\n"
