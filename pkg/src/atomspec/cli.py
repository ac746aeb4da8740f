"""Command-line front end: ``atomspec space|filtration|ring|verify``."""
from __future__ import annotations

import argparse
import json
import sys

from . import filtration as fl
from . import finspace as fs
from . import suites
from . import tailspace as ts
from .errors import InputError, NonUniformError
from .models import BUILTINS, builtin_space, complete
from .order_core import kolmogorov_collapse, to_dot
from .pid import modules as pm
from .spectrum import (
    AtomSpace,
    FiniteView,
    Support,
    amin,
    lambda_open_check,
    load_atom_space,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return doc


def _load_space(args) -> tuple[str, AtomSpace]:
    if args.builtin and args.input:
        raise InputError("give either an input file or --builtin, not both")
    if args.builtin:
        return args.builtin, builtin_space(args.builtin)
    if not args.input:
        raise InputError("an input file or --builtin NAME is required")
    doc = _read_json(args.input)
    if args.max_points is not None and "descriptors" not in doc:
        inner = doc.get("space", doc)
        n = len(inner.get("points", []))
        if n > args.max_points:
            raise InputError(f"{n} points exceeds --max-points {args.max_points}")
    return args.input, load_atom_space(doc)


def _window(A: AtomSpace) -> list:
    """Named points plus the indexed window (end probes are left out of reports)."""
    v = A.view
    if isinstance(v, FiniteView):
        return v.sample(A.points)
    sm = ts.sample(v.schema, A.points, v.carrier)
    return list(sm.named) + list(sm.window)


def _tail_dot(A: AtomSpace, pts: list) -> str:
    v = A.view
    lines = ["digraph space {", "  rankdir=BT;"]
    lines += [f'  "{v.name(p)}";' for p in pts]
    for p in pts:
        above = [q for q in pts if q != p and v.leq(p, q) and not v.leq(q, p)]
        for q in above:
            if not any(r not in (p, q) and r in above and v.leq(r, q) and not v.leq(q, r) for r in pts):
                lines.append(f'  "{v.name(p)}" -> "{v.name(q)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _kolmogorov(A: AtomSpace) -> tuple[bool, list[str]]:
    v = A.view
    if isinstance(v, FiniteView):
        ok = fs.is_kolmogorov(v.space)
        if ok:
            return True, []
        _, proj = fs.kolmogorov_quotient(v.space)
        return False, sorted({c for p, c in proj.items() if c != p})
    pts = v.sample(A.points)
    us = {}
    bad = []
    for p in pts:
        U = v.minimal_open(p)
        if U in us:
            bad.append(f"{us[U]}~{v.name(p)}")
        else:
            us[U] = v.name(p)
    return not bad, bad


def run_space(args) -> int:
    name, A = _load_space(args)
    if args.complete:
        A = complete(A)
    v = A.view
    checks = [args.check] if args.check else ["alexandroff", "kolmogorov"]
    pts = _window(A)
    out: dict = {"input": name, "kind": v.kind, "points": v.describe(A.points)}
    if "alexandroff" in checks:
        verdict = v.is_alexandroff()
        out["alexandroff"] = {"holds": verdict.holds, "witness": v.describe(verdict.witnesses) if not verdict else None}
    if "kolmogorov" in checks:
        ok, wit = _kolmogorov(A)
        out["kolmogorov"] = {"holds": ok, "witness": wit or None}
    out["minimal_opens"] = {v.name(p): v.describe(v.minimal_open(p)) for p in pts}
    if args.order:
        out["order"] = [[v.name(p), v.name(q)] for p in pts for q in pts if p != q and v.leq(p, q)]
    if args.quotient and isinstance(v, FiniteView):
        Q, proj = fs.kolmogorov_quotient(v.space)
        out["kolmogorov_quotient"] = {"points": list(Q.points), "projection": proj}

    if args.dot:
        if isinstance(v, FiniteView):
            P = v.order()
            sys.stdout.write(to_dot(kolmogorov_collapse(P)[0] if args.quotient else P, "space"))
        else:
            sys.stdout.write(_tail_dot(A, pts))
        return EXIT_OK
    if args.json:
        print(json.dumps(out, indent=2, ensure_ascii=False))
        return EXIT_OK
    print(f"space: {name} ({v.kind}{', completed' if args.complete else ''})")
    print(f"points: {out['points']}")
    for key in ("alexandroff", "kolmogorov"):
        if key in out:
            r = out[key]
            wit = r["witness"]
            if isinstance(wit, list):
                wit = ", ".join(wit)
            print(f"{key}: {'true' if r['holds'] else 'false'}" + (f", witness {wit.strip('{}')}" if wit else ""))
    print("minimal opens:")
    for p, U in out["minimal_opens"].items():
        print(f"  U({p}) = {U}")
    if "order" in out:
        print("specialization order (x <= y):")
        for a, b in out["order"]:
            print(f"  {a} <= {b}")
    if "kolmogorov_quotient" in out:
        print("kolmogorov quotient: " + ", ".join(out["kolmogorov_quotient"]["points"]))
    return EXIT_OK


def _dims_row(A: AtomSpace, F: fl.FiltrationResult, p) -> tuple[str, str, str]:
    s = F.stage_of(p)
    if s is fl.OMEGA:
        return str(s), fl.fmt(None), str(fl.adim(A, p))
    return str(s), fl.fmt(fl.dim_point(A, p, F)), str(fl.adim(A, p))


def _supports(A: AtomSpace, label: str | None) -> dict[str, Support]:
    sup = dict(A.supports) or {"X": Support(A.points)}
    if label is not None:
        if label not in sup:
            raise InputError(f"unknown support {label!r}; available: {', '.join(sorted(sup))}")
        sup = {label: sup[label]}
    return sup


def run_filtration(args) -> int:
    name, A = _load_space(args)
    if args.complete:
        A = complete(A)
    v = A.view
    F = fl.gabriel_filtration(A, stage_cap=args.stage_cap)
    pts = _window(A)
    rows = {v.name(p): _dims_row(A, F, p) for p in pts}
    sups = {}
    for label, s in _supports(A, args.support).items():
        g = fl.gkdim(A, s.points, F)
        entry = {
            "set": v.describe(s.points),
            "gkdim": str(g),
            "dim": fl.fmt(fl.dim_open(A, s.points, F)) if g is not fl.OMEGA else fl.fmt(None),
            "adim": str(fl.adim(A, s.points)),
        }
        if args.amin:
            m = amin(A, s.points)
            entry["amin"] = v.describe(m)
            entry["amin_finite"] = m.is_finite()
            entry["lambda_not_open"] = v.describe(lambda_open_check(A, m).not_open_at)
        sups[label] = entry
    rep = fl.verify_theorems(A, name, F)
    code = EXIT_OK if rep.ok else EXIT_FAIL

    if args.json:
        print(json.dumps({
            "input": name,
            "stages": [v.describe(s) for s in F.stages],
            "residual": v.describe(F.residual),
            "stage_cap_hit": F.stage_cap_hit,
            "points": {p: dict(zip(("gkdim", "dim", "adim"), r)) for p, r in rows.items()},
            "supports": sups,
            "theorems": rep.to_json(),
        }, indent=2, ensure_ascii=False))
        return code
    print(f"filtration: {name}{' (completed)' if args.complete else ''}")
    for k, s in enumerate(F.stages):
        print(f"  stage {k}: {v.describe(s)}")
    if F.residual:
        print(f"  stage ≥ω: {v.describe(F.residual)}")
    if F.stage_cap_hit:
        print(f"  (stopped at --stage-cap {args.stage_cap})")
    width = max([len(p) for p in rows] + [5])
    print(f"{'point':<{width}}  gkdim  dim             adim")
    for p, (g, d, a) in rows.items():
        print(f"{p:<{width}}  {g:<5}  {d:<14}  {a}")
    for label, e in sups.items():
        print(f"support {label} = {e['set']}: gkdim={e['gkdim']} dim={e['dim']} adim={e['adim']}")
        if args.amin:
            size = "finite" if e["amin_finite"] else "infinite"
            print(f"  AMin {size}: {e['amin']}")
            if e["lambda_not_open"] != "{}":
                print(f"  Λ not open at: {e['lambda_not_open']}")
    print("theorems:")
    for c in rep.checks:
        verdict = "pass" if c.holds else ("fail (outside hypothesis)" if c.consistent else "FAIL")
        wit = f"  witnesses: {', '.join(c.witnesses)}" if c.witnesses and not c.holds else ""
        print(f"  {c.key:<9} {verdict}{wit}")
    return code


def _load_module(path: str) -> pm.PresentedModule:
    return pm.load_module(_read_json(path))


def run_ring(args) -> int:
    M = _load_module(args.input)
    an = pm.analyze(M)
    R = M.ring
    cls = an.classification
    oracle = None
    code = EXIT_OK
    if args.oracle:
        try:
            wit = pm.monoform_witness(M)
            brute = pm.monoform_bruteforce(M)
            oracle = {"applicable": True, "monoform": brute, "agrees": brute == cls.monoform}
            if wit is not None:
                oracle["witness_N"] = sorted(list(x) for x in wit.submodule)
            if brute != cls.monoform:
                code = EXIT_FAIL
        except InputError as e:
            oracle = {"applicable": False, "reason": str(e)}

    if args.json:
        out = an.to_json()
        out["spectrum_preview"] = pm.spec_preview(R, args.primes)
        if oracle is not None:
            out["oracle"] = oracle
        print(json.dumps(out, indent=2, ensure_ascii=False))
        return code
    if args.classify:
        print(cls.summary())
    else:
        facs = ", ".join(R.fmt(d) for d in an.factors) or "none"
        print(f"module over {R.name}: free rank {an.free_rank}, invariant factors {facs}")
        print(f"ASupp = {an.describe(an.asupp)}")
        print(f"AAss = {an.describe(an.aass)}")
        print(f"AMin = {an.describe(an.amin)}")
        print(f"Λ(M) = {an.describe(an.lam)}")
        print(f"gkdim={an.gkdim} kdim={an.kdim} dim={fl.fmt(an.dim)} adim={an.adim}")
        print(f"monoform={str(cls.monoform).lower()} compressible={str(cls.compressible).lower()} "
              f"simple={str(cls.simple).lower()} critical={cls.critical if cls.critical is not None else 'none'}")
        print("spectrum: " + ", ".join(pm.spec_preview(R, args.primes)) + ", ...")
    if oracle is not None:
        if not oracle["applicable"]:
            print(f"oracle: not applicable ({oracle['reason']})")
        else:
            state = "agrees" if oracle["agrees"] else "DISAGREES"
            print(f"oracle: {state} (brute-force monoform={str(oracle['monoform']).lower()})")
            if code == EXIT_FAIL:
                print(f"oracle disagreement on module {json.dumps(M.to_json())}")
    return code


def run_verify(args) -> int:
    results = suites.run_scope(args.scope)
    reports = []
    if args.scope in ("all", "symbolic"):
        for name in BUILTINS:
            A = builtin_space(name)
            reports.append(fl.verify_theorems(A, name))
            if name in ("grmod_kx", "goodearl"):
                reports.append(fl.verify_theorems(complete(A), name + "+completion"))
    ok = all(r.ok for r in results) and all(r.ok for r in reports)
    if args.json:
        print(json.dumps({
            "scope": args.scope,
            "ok": ok,
            "criteria": [
                {"number": r.number, "title": r.title, "passed": r.ok, "detail": r.detail} for r in results
            ],
            "theorems": [r.to_json() for r in reports],
        }, indent=2, ensure_ascii=False))
        return EXIT_OK if ok else EXIT_FAIL
    for r in results:
        print(r.line())
    if reports:
        keys = [c.key for c in reports[0].checks]
        width = max(len(r.name) for r in reports)
        print()
        print(f"{'model':<{width}}  " + "  ".join(f"{k:<8}" for k in keys))
        for r in reports:
            cells = []
            for c in r.checks:
                cells.append("pass" if c.holds else ("fail*" if c.consistent else "FAIL"))
            print(f"{r.name:<{width}}  " + "  ".join(f"{x:<8}" for x in cells))
        print("(fail* = fails where the theorem's hypothesis does not hold, as predicted)")
    print("verify:", "ok" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="atomspec", description="Atom spectra, filtrations and PID module analysis.")
    sub = ap.add_subparsers(dest="command", required=True)

    def model_args(p):
        p.add_argument("input", nargs="?", help="space, poset, schema or atom-space JSON file")
        p.add_argument("--builtin", choices=BUILTINS, help="use a shipped model instead of a file")
        p.add_argument("--complete", action="store_true", help="apply the Alexandroff completion first")
        p.add_argument("--max-points", type=int, default=None, help="reject finite inputs with more points")
        p.add_argument("--json", action="store_true", help="print a JSON report")

    p = sub.add_parser("space", help="specialization order, minimal opens, Alexandroff/Kolmogorov verdicts")
    model_args(p)
    p.add_argument("--check", choices=["alexandroff", "kolmogorov"], help="report only this verdict")
    p.add_argument("--order", action="store_true", help="list the specialization order")
    p.add_argument("--quotient", action="store_true", help="also compute the Kolmogorov quotient")
    p.add_argument("--dot", action="store_true", help="print the order as a DOT graph")
    p.set_defaults(func=run_space)

    p = sub.add_parser("filtration", help="stages, dimensions and theorem verdicts")
    model_args(p)
    p.add_argument("--amin", action="store_true", help="report minimal atoms of each support")
    p.add_argument("--support", help="restrict support reports to this label")
    p.add_argument("--stage-cap", type=int, default=fl.DEFAULT_STAGE_CAP, help="maximum number of stages")
    p.set_defaults(func=run_filtration)

    p = sub.add_parser("ring", help="analyse a presented module over Z or F_p[x]")
    p.add_argument("input", help="module JSON file")
    p.add_argument("--classify", action="store_true", help="print only the classification")
    p.add_argument("--oracle", action="store_true", help="cross-check monoform with the brute-force oracle")
    p.add_argument("--primes", type=int, default=5, help="maximal points listed in the spectrum preview")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.set_defaults(func=run_ring)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("scope", nargs="?", default="all", choices=suites.SCOPES)
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.set_defaults(func=run_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "stage_cap", 1) < 1 or getattr(args, "primes", 1) < 1:
        print("error: numeric options must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NonUniformError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
