"""rsolve: command-line client for the solver.

    rsolve check-pt problem.json      decide the pointwise test (PT)
    rsolve solve    problem.json      construct continuous rational solutions
    rsolve analyze  problem.json      certify each listed function, report P(f)
    rsolve verify   solution.json     re-check a stored solution or witness

Problem files are UTF-8 JSON: {"f": ["x^3", "y^3"], "phi": "x^2*y^2",
"options": {...}}.  Exit codes: 0 pass/solved/verified, 1 fail, 2
inconclusive, 3 input error.  Output is deterministic given (file, flags,
seed); the seed falls back to the RSOLVE_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import api
from .serialize import dumps


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsolve", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("command", choices=["check-pt", "solve", "verify", "analyze"])
    ap.add_argument("file", help="problem (or stored solution) JSON file")
    ap.add_argument("--tol", type=float, default=None, help="probe tolerance (default 1e-8)")
    ap.add_argument("--seed", type=int, default=None,
                    help="random seed (default: RSOLVE_SEED or 0)")
    ap.add_argument("--mode", choices=["exact", "numeric", "auto"], default=None)
    ap.add_argument("--max-exponent", type=int, default=None, dest="max_exponent",
                    help="cap for the gluing exponent search (default 20)")
    ap.add_argument("--output", choices=["json", "text"], default="json")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
        return api.EXIT_INPUT
    except json.JSONDecodeError as e:
        print(f"error: {args.file} is not valid JSON: {e}", file=sys.stderr)
        return api.EXIT_INPUT

    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("RSOLVE_SEED", "0"))
    overrides = {"tol": args.tol, "seed": seed, "mode": args.mode,
                 "n_max": args.max_exponent}
    try:
        cfg = api.make_config(doc.get("options") if isinstance(doc, dict) else None, overrides)
        if args.command == "check-pt":
            code, out = api.run_check_pt(doc, cfg)
        elif args.command == "solve":
            code, out = api.run_solve(doc, cfg)
        elif args.command == "analyze":
            code, out = api.run_analyze(doc, cfg)
        else:
            code, out = api.run_verify(doc, cfg)
    except api.InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return api.EXIT_INPUT
    if args.output == "json":
        sys.stdout.write(dumps(out))
    else:
        sys.stdout.write(render_text(out))
    return code


def render_text(doc: dict) -> str:
    """Human-readable report in the usual notation (PT, P(f), Z(f_1,...,f_r))."""
    cmd = doc.get("command", "?")
    lines = [f"== rsolve {cmd} =="]
    if cmd == "check-pt":
        lines.append(f"PT verdict: {doc['verdict'].upper()}")
        if doc.get("detail"):
            lines.append(f"  {doc['detail']}")
        sysd = doc.get("system")
        if sysd:
            lines.append(f"h = {sysd['h']};  g = {sysd['g']}")
            lines.append("g_i = " + ", ".join(sysd["g_list"]))
            pts = ", ".join(_pt(p) for p in sysd["special_points"]) or "(empty)"
            lines.append(f"Z(g_1,...,g_r) = {{{pts}}}")
        if doc.get("psi"):
            lines.append(f"psi = {doc['psi']['expr']}")
        for rec in doc.get("per_point", []):
            c = ", ".join(rec["c"]) if rec.get("c") else "-"
            lines.append(f"  at {_pt(rec['point'])}: {rec['status']} (c = [{c}])")
    elif cmd == "solve":
        status = doc.get("status")
        lines.append(f"status: {status}")
        if status == "solved":
            lines.append(f"mode: {doc['mode']}")
            for i, c in enumerate(doc["phi_i"]):
                lines.append(f"phi_{i + 1} = {c['expr']}")
                for e in c["extensions"]:
                    lines.append(f"    extended at {_pt(e['point'])} by {e['value']}")
            lines.append(f"glue: N = {doc['glue']['N']}, b = {doc['glue']['b']}")
            ok = all(c["passed"] for c in doc.get("certificates", []))
            lines.append(f"certificates: {'all passed' if ok else 'FAILURES'}")
            for c in doc.get("certificates", []):
                lines.append(f"  [{'ok' if c['passed'] else 'XX'}] {c['kind']}")
        elif doc.get("detail"):
            lines.append(doc["detail"])
    elif cmd == "analyze":
        for fn in doc.get("functions", []):
            if fn["certified"]:
                pts = ", ".join(_pt(p) for p in fn["P"]) or ""
                lines.append(f"{fn['name']} = {fn['expr']}: continuous rational ({fn['status']})")
                lines.append(f"    P(f) = {{{pts}}}")
                for e in fn["extensions"]:
                    lines.append(f"    extended at {_pt(e['point'])} by {e['value']}")
            else:
                lines.append(f"{fn['name']} = {fn['expr']}: NOT certified ({fn['detail']})")
    elif cmd == "verify":
        lines.append(f"verified: {doc.get('verified')}")
        for c in doc.get("certificates", []):
            lines.append(f"  [{'ok' if c['passed'] else 'XX'}] {c['kind']}")
    return "\n".join(lines) + "\n"


def _pt(p: dict) -> str:
    if "exact" in p:
        return f"({p['exact'][0]}, {p['exact'][1]})"
    a = p.get("approx", ["?", "?"])
    return f"(~{a[0]:.6g}, ~{a[1]:.6g})"


if __name__ == "__main__":
    raise SystemExit(main())
