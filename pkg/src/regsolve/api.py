"""Command handlers shared by the CLI (thin client) and the HTTP service.

Each handler takes a problem document (already-parsed JSON) plus a
ProbeConfig and returns (exit_code, report_document).  Exit codes: 0 the
test passed / the system was solved / the stored artifact verified, 1 a
definite failure with witness, 2 inconclusive, 3 malformed input.
"""

from __future__ import annotations

from .config import ProbeConfig
from .exprparse import ParseError, parse_expr
from .pointwise import check_pt
from .ratfun import CRFun, FailureReport, certify_continuous
from .serialize import (
    SCHEMA,
    certificate_to_json,
    crfun_to_json,
    point_to_json,
    report_to_json,
    solution_from_json,
    solution_to_json,
)
from .solver import Inconclusive, PTFailure, Solution, solve
from .verifier import confirm_witness, verify_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class InputError(ValueError):
    pass


def make_config(options: dict | None, overrides: dict | None = None) -> ProbeConfig:
    merged = dict(options or {})
    for k, v in (overrides or {}).items():
        if v is not None:
            merged[k] = v
    try:
        return ProbeConfig.from_dict(merged)
    except (ValueError, TypeError) as e:
        raise InputError(f"bad options: {e}") from e


def _parse_problem(problem: dict, cfg: ProbeConfig, need_phi: bool):
    if not isinstance(problem, dict):
        raise InputError("problem document must be a JSON object")
    raw_f = problem.get("f")
    if not isinstance(raw_f, list) or not raw_f:
        raise InputError("problem must list at least one coefficient function under 'f'")
    f_list = []
    for i, s in enumerate(raw_f):
        try:
            rf = parse_expr(str(s))
        except ParseError as e:
            raise InputError(f"f[{i}]: {e}") from e
        f_list.append(rf)
    phi_rf = None
    if problem.get("phi") is not None:
        try:
            phi_rf = parse_expr(str(problem["phi"]))
        except ParseError as e:
            raise InputError(f"phi: {e}") from e
    elif need_phi:
        raise InputError("problem is missing the right-hand side 'phi'")
    return f_list, phi_rf


def _certify_inputs(f_rfs, phi_rf, cfg: ProbeConfig):
    """All inputs must be continuous rational; failures map to exit codes."""
    certified = []
    for i, rf in enumerate(f_rfs):
        out = certify_continuous(rf, cfg)
        if isinstance(out, FailureReport):
            if out.reason == "inconclusive":
                return None, (EXIT_INCONCLUSIVE, f"f[{i}] certification inconclusive: {out.detail}")
            raise InputError(f"f[{i}] is not a continuous rational function: {out.detail}")
        certified.append(out)
    phi_c = None
    if phi_rf is not None:
        out = certify_continuous(phi_rf, cfg)
        if isinstance(out, FailureReport):
            if out.reason == "inconclusive":
                return None, (EXIT_INCONCLUSIVE, f"phi certification inconclusive: {out.detail}")
            raise InputError(f"phi is not a continuous rational function: {out.detail}")
        phi_c = out
    return (certified, phi_c), None


def run_analyze(problem: dict, cfg: ProbeConfig) -> tuple[int, dict]:
    f_rfs, phi_rf = _parse_problem(problem, cfg, need_phi=False)
    exprs = list(f_rfs) + ([phi_rf] if phi_rf is not None else [])
    names = [f"f[{i}]" for i in range(len(f_rfs))] + (["phi"] if phi_rf is not None else [])
    results = []
    worst = EXIT_OK
    for name, rf in zip(names, exprs):
        out = certify_continuous(rf, cfg)
        if isinstance(out, FailureReport):
            code = EXIT_INCONCLUSIVE if out.reason == "inconclusive" else EXIT_FAIL
            worst = max(worst, code)
            results.append({"name": name, "expr": rf.to_str(), "certified": False,
                            "reason": out.reason, "detail": out.detail})
        else:
            results.append({"name": name, "expr": rf.to_str(), "certified": True,
                            "status": out.status,
                            "P": [point_to_json(p) for p in out.p_set()],
                            "extensions": crfun_to_json(out)["extensions"]})
    return worst, {"schema": SCHEMA, "command": "analyze", "functions": results}


def run_check_pt(problem: dict, cfg: ProbeConfig) -> tuple[int, dict]:
    f_rfs, phi_rf = _parse_problem(problem, cfg, need_phi=True)
    prepared, early = _certify_inputs(f_rfs, phi_rf, cfg)
    if early:
        code, detail = early
        return code, {"schema": SCHEMA, "command": "check-pt", "verdict": "inconclusive",
                      "detail": detail}
    f_list, phi = prepared
    rep = check_pt(f_list, phi, cfg)
    doc = report_to_json(rep)
    doc["command"] = "check-pt"
    code = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[rep.verdict]
    return code, doc


def run_solve(problem: dict, cfg: ProbeConfig) -> tuple[int, dict]:
    f_rfs, phi_rf = _parse_problem(problem, cfg, need_phi=True)
    prepared, early = _certify_inputs(f_rfs, phi_rf, cfg)
    if early:
        code, detail = early
        return code, {"schema": SCHEMA, "command": "solve", "status": "inconclusive",
                      "detail": detail}
    f_list, phi = prepared
    out = solve(f_list, phi, cfg)
    if isinstance(out, Solution):
        certs = verify_all(out, f_list, phi, cfg)
        doc = solution_to_json(out, f_list, phi, certs)
        doc["command"] = "solve"
        ok = all(c.passed for c in certs)
        return (EXIT_OK if ok else EXIT_INCONCLUSIVE), doc
    if isinstance(out, PTFailure):
        doc = {"schema": SCHEMA, "command": "solve", "status": "pt_failure",
               "pt_report": report_to_json(out.report)}
        wit = confirm_witness(out, cfg)
        doc["witness_certificate"] = certificate_to_json(wit)
        return EXIT_FAIL, doc
    assert isinstance(out, Inconclusive)
    doc = {"schema": SCHEMA, "command": "solve", "status": "inconclusive",
           "detail": out.detail}
    if out.report is not None:
        doc["pt_report"] = report_to_json(out.report)
    return EXIT_INCONCLUSIVE, doc


def run_verify(doc: dict, cfg: ProbeConfig) -> tuple[int, dict]:
    """Re-check a stored solution (or a stored failure witness)."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise InputError("verify expects a schema-1 solution document")
    if doc.get("status") == "pt_failure":
        witness = None
        for rec in doc.get("pt_report", {}).get("per_point", []):
            if rec.get("status") == "fail" and rec.get("witness"):
                witness = rec["witness"]
                break
        if witness is None:
            raise InputError("stored failure carries no witness to confirm")
        cert = confirm_witness(witness, cfg)
        return (EXIT_OK if cert.passed else EXIT_FAIL), {
            "schema": SCHEMA, "command": "verify", "verified": cert.passed,
            "certificates": [certificate_to_json(cert)],
        }
    try:
        sol, f_list, phi = solution_from_json(doc)
    except (KeyError, ValueError, ParseError) as e:
        raise InputError(f"malformed solution document: {e}") from e
    certs = verify_all(sol, f_list, phi, cfg)
    ok = all(c.passed for c in certs)
    inconc = any(c.inconclusive for c in certs)
    code = EXIT_OK if ok else (EXIT_INCONCLUSIVE if inconc else EXIT_FAIL)
    return code, {"schema": SCHEMA, "command": "verify", "verified": ok,
                  "certificates": [certificate_to_json(c) for c in certs]}
