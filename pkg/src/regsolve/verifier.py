"""Independent re-verification of solutions and failure witnesses.

Certificates are self-contained: each one carries enough payload (expression
strings, sample trails, point data) to be re-checked without access to the
solver's internal state.  `passed` is the re-check outcome, computed here
from scratch:

* exact identities re-expand sum(phi_i * f_i) - phi and demand the zero
  polynomial;
* numeric identities re-sample the residual on seeded points;
* continuity re-runs the limit probe at every stored extension point and
  re-derives the denominator's zero set to catch dropped extensions;
* pole bounds re-check the point-set inclusion of Theorem-style bounds;
* unbounded witnesses re-evaluate the stored samples in exact arithmetic
  and confirm the declared growth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bipoly import BiPoly
from .config import ProbeConfig
from .points import AlgebraicPoint
from .pointwise import PTReport
from .ratfun import CRFun, RatFun, denominator_zero_structure, limit_test
from .solver import PTFailure, Solution, _den_vanishes_at


@dataclass
class Certificate:
    kind: str  # ExactIdentity | NumericResidual | ContinuityAtPoint | PoleBound | UnboundedWitness
    passed: bool
    payload: dict = field(default_factory=dict)
    inconclusive: bool = False


def verify_identity(sol: Solution, f_list: list[CRFun], phi: CRFun,
                    cfg: ProbeConfig | None = None) -> Certificate:
    """Re-check sum(phi_i * f_i) = phi, exactly or by seeded residual sampling."""
    cfg = cfg or ProbeConfig()
    payload = {
        "phi_i": [c.to_str() for c in sol.phi_i],
        "f": [f.to_str() for f in f_list],
        "phi": phi.to_str(),
    }
    if sol.mode == "exact":
        acc = RatFun.zero()
        for pr, f in zip(sol.phi_i, f_list):
            acc = acc + pr.ratfun * f.ratfun
        residual = acc - phi.ratfun
        payload["cross_multiplied"] = residual.num.to_str()
        return Certificate("ExactIdentity", residual.num.is_zero(), payload)
    rng = random.Random(cfg.seed ^ 0x1DE)
    worst = 0.0
    used = 0
    attempts = 0
    while used < 1000 and attempts < 20000:
        attempts += 1
        xv = Fraction(rng.randint(-4000, 4000), 1000)
        yv = Fraction(rng.randint(-4000, 4000), 1000)
        try:
            total = phi.ratfun.eval_exact(xv, yv) * -1
            for pr, f in zip(sol.phi_i, f_list):
                total += pr.ratfun.eval_exact(xv, yv) * f.ratfun.eval_exact(xv, yv)
        except ZeroDivisionError:
            continue
        used += 1
        worst = max(worst, abs(float(total)))
    payload["samples"] = used
    payload["max_residual"] = worst
    return Certificate("NumericResidual", used >= 1000 and worst <= cfg.tol, payload)


_zero_structure_cache: dict = {}


def _den_points(den: BiPoly, seed: int):
    key = (den, seed)
    if key not in _zero_structure_cache:
        _zero_structure_cache[key] = denominator_zero_structure(den, seed=seed)
    return _zero_structure_cache[key]


def verify_continuity(sol: Solution, cfg: ProbeConfig | None = None) -> list[Certificate]:
    """One certificate per solution component: extensions complete and correct."""
    cfg = cfg or ProbeConfig()
    out = []
    for idx, crf in enumerate(sol.phi_i):
        payload = {"component": idx, "expr": crf.to_str(), "points": []}
        if crf.ratfun.is_polynomial() or crf.is_zero():
            out.append(Certificate("ContinuityAtPoint", True, payload))
            continue
        kind, data = _den_points(crf.ratfun.den, cfg.seed)
        if kind != "finite":
            out.append(Certificate("ContinuityAtPoint", False, payload | {"detail": str(data)},
                                   inconclusive=(kind == "inconclusive")))
            continue
        required: list[AlgebraicPoint] = data
        ok = True
        inconc = False
        for q in required:
            stored = crf.extension_at(q)
            if stored is None:
                ok = False
                payload["points"].append({"point": list(q.approx), "status": "missing extension"})
                continue
            v = limit_test(crf.ratfun, q, cfg)
            if v.kind == "unknown":
                ok = False
                inconc = True
                payload["points"].append({"point": list(q.approx), "status": "probe unknown"})
                continue
            if v.kind != "limit":
                ok = False
                payload["points"].append({"point": list(q.approx), "status": v.kind})
                continue
            lo, hi = v.value
            tv = float(stored) if isinstance(stored, Fraction) else 0.5 * (stored[0] + stored[1])
            match = lo - cfg.tol <= tv <= hi + cfg.tol
            ok = ok and match
            payload["points"].append({
                "point": list(q.approx),
                "stored": str(stored) if isinstance(stored, Fraction) else list(stored),
                "enclosure": [lo, hi],
                "status": "ok" if match else "value mismatch",
            })
        # stored extensions must also sit on the denominator's zero set
        for q, _ in crf.extensions:
            if not _den_vanishes_at(crf.ratfun.den, q):
                ok = False
                payload["points"].append({"point": list(q.approx),
                                          "status": "extension off the zero set"})
        out.append(Certificate("ContinuityAtPoint", ok, payload, inconclusive=inconc))
    return out


def _vanishes(f: CRFun, q: AlgebraicPoint) -> bool:
    """Exact test: does the (continuous extension of) f vanish at q?"""
    if f.is_zero():
        return True
    if not _den_vanishes_at(f.ratfun.den, q):
        return _den_vanishes_at(f.ratfun.num, q)
    stored = f.extension_at(q)
    if stored is None:
        return False
    if isinstance(stored, Fraction):
        return stored == 0
    return stored[0] <= 0 <= stored[1]


def verify_pole_bound(sol: Solution, f_list: list[CRFun], phi: CRFun,
                      cfg: ProbeConfig | None = None) -> Certificate:
    """P(phi_i) must be finite and inside Z(f) ∪ P(f_1) ∪ ... ∪ P(f_r) ∪ P(phi)."""
    cfg = cfg or ProbeConfig()
    allowed_points: list[AlgebraicPoint] = []
    for f in [phi, *f_list]:
        allowed_points.extend(f.p_set())
    payload = {"checked": [], "allowed_P_points": [list(q.approx) for q in allowed_points]}
    ok = True
    for idx, crf in enumerate(sol.phi_i):
        for q, _ in crf.extensions:
            in_p = any(q.same_point(a) for a in allowed_points)
            in_z = (not in_p) and all(_vanishes(f, q) for f in f_list)
            in_bound = any(q.same_point(b) for b in sol.pole_bound_points)
            good = (in_p or in_z) and in_bound
            ok = ok and good
            payload["checked"].append({
                "component": idx,
                "point": list(q.approx),
                "in_P_sets": in_p,
                "in_common_zero_set": in_z,
                "in_recorded_bound": in_bound,
            })
    return Certificate("PoleBound", ok, payload)


def confirm_witness(failure: PTFailure | dict, cfg: ProbeConfig | None = None) -> Certificate:
    """Re-validate an unboundedness witness from its own payload.

    The stored samples are re-evaluated in exact rational arithmetic; the
    re-computed magnitudes must reproduce the declared growth factor across
    at least three radius steps, and the samples must converge to the
    witness point.
    """
    cfg = cfg or ProbeConfig()
    w = _extract_witness(failure)
    if w is None:
        return Certificate("UnboundedWitness", False, {"detail": "no witness found"})
    payload = {"witness": {k: w[k] for k in ("which", "verdict", "growth_factor") if k in w}}
    if w.get("verdict") != "unbounded":
        payload["detail"] = "witness is not an unboundedness claim"
        return Certificate("UnboundedWitness", False, payload)
    try:
        from .exprparse import parse_expr
        fn = w["function"]
        R = parse_expr(fn["num"]) / parse_expr(fn["den"])
        rows = w["evidence"]["radii"]
        px, py = w["point"]
    except (KeyError, TypeError) as e:
        return Certificate("UnboundedWitness", False, {"detail": f"malformed witness: {e}"})
    mags = []
    radii = []
    converges = True
    for row in rows:
        xq, yq = Fraction(row["argmax"][0]), Fraction(row["argmax"][1])
        try:
            val = abs(R.eval_exact(xq, yq))
        except ZeroDivisionError:
            return Certificate("UnboundedWitness", False, {"detail": "witness sample on the polar set"})
        mags.append(val)
        radii.append(row["radius"])
        dist = max(abs(float(xq) - px), abs(float(yq) - py))
        if dist > 2.0 * row["radius"] + 1e-12:
            converges = False
    payload["magnitudes"] = [float(m) for m in mags]
    payload["radii"] = radii
    payload["converges_to_point"] = converges
    growth_ok = 0
    ratios = []
    for a, b in zip(mags, mags[1:]):
        if a > 0:
            ratio = float(b / a)
            ratios.append(ratio)
            growth_ok = growth_ok + 1 if ratio >= cfg.growth_factor else 0
    payload["ratios"] = ratios
    passed = converges and growth_ok >= 3 and radii == sorted(radii, reverse=True)
    return Certificate("UnboundedWitness", passed, payload)


def _extract_witness(failure) -> dict | None:
    if isinstance(failure, dict):
        return failure
    report: PTReport | None = getattr(failure, "report", None)
    if report is None:
        return None
    for rec in report.per_point:
        if rec.status == "fail" and rec.witness and rec.witness.get("verdict") == "unbounded":
            return rec.witness
    return None


def verify_all(sol: Solution, f_list: list[CRFun], phi: CRFun,
               cfg: ProbeConfig | None = None) -> list[Certificate]:
    certs = [verify_identity(sol, f_list, phi, cfg)]
    certs.extend(verify_continuity(sol, cfg))
    certs.append(verify_pole_bound(sol, f_list, phi, cfg))
    return certs
