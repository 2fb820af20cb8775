"""Command-line front end.

Exit codes: 0 success / valid, 1 not Shannon-type / violated / failed
assertion, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine, rules
from .balance import balance_report
from .expr import ParseError, canonical, render, subset_str
from .linform import I as cmi, UnknownVariableError, VarContext
from .semantics import INEQ_TOL, PMFError, copy_distribution, entropy_vector, evaluate, format_pmf, parse_pmf
from .shannon import Certificate, check_shannon, elementals, verify_certificate, verify_witness

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, data: dict) -> None:
    if args.report == "structured":
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _ctx(args):
    if getattr(args, "vars", None):
        return VarContext(v.strip() for v in args.vars.split(",") if v.strip())
    return None


def _form(args):
    if args.file:
        text = Path(args.file).read_text().strip()
    elif args.ineq is not None:
        text = args.ineq
    else:
        raise UsageError("an inequality is required (inline or --file)")
    return canonical(text, _ctx(args))


def _names(s: str | None) -> list[str]:
    return [v.strip() for v in (s or "").split(",") if v.strip()]


def cmd_canon(args):
    f = _form(args)
    _emit(args, render(f), {"form": render(f), "variables": list(f.ctx.names)})
    return EXIT_OK


def cmd_balance(args):
    f = _form(args)
    res = balance_report(f)
    lines = [render(res.form)]
    for v in res.negative:
        lines.append(f"# warning: r_{v} = {res.r[v]} < 0, input is not a valid inequality")
    _emit(
        args,
        "\n".join(lines),
        {
            "form": render(res.form),
            "r": {v: str(r) for v, r in res.r.items()},
            "negative": res.negative,
        },
    )
    return EXIT_OK


def cmd_check(args):
    f = _form(args)
    verdict = check_shannon(f)
    els = elementals(f.ctx)
    if isinstance(verdict, Certificate):
        assert verify_certificate(f, verdict)
        pairs = [(els[i].description, str(w)) for i, w in verdict.terms]
        text = "Shannon-type: " + render(f) + "\ncertificate:\n" + "".join(f"  {w} * {d}\n" for d, w in pairs)
        _emit(args, text, {"form": render(f), "shannon": True, "certificate": [list(p) for p in pairs]})
        return EXIT_OK
    assert verify_witness(f, verdict)
    pairs = [(subset_str(f.ctx, m), str(v)) for m, v in sorted(verdict.vector.items())]
    text = "not Shannon-type: " + render(f) + "\nwitness:\n" + "".join(f"  h({s}) = {v}\n" for s, v in pairs)
    _emit(args, text, {"form": render(f), "shannon": False, "witness": [list(p) for p in pairs]})
    return EXIT_FALSE


def _partition(args, f):
    return rules.Partition.of(f.ctx, args.z, _names(args.x), _names(args.y))


def cmd_zy(args):
    f = _form(args)
    p = _partition(args, f)
    d = rules.decompose_zy(f, p)
    out = d.f + d.g
    _emit(
        args,
        f"{render(out)}\n# alpha = {d.alpha}",
        {"form": render(out), "alpha": str(d.alpha), "f": render(d.f), "g": render(d.g)},
    )
    return EXIT_OK


def cmd_mmrv(args):
    f = _form(args)
    p = _partition(args, f)
    r = rules.r_z(f, p)
    out = rules.apply_mmrv(f, p)
    _emit(args, f"{render(out)}\n# r_{p.z} = {r}", {"form": render(out), "r_z": str(r)})
    return EXIT_OK


def cmd_subst(args):
    f = _form(args)
    if not args.map:
        raise UsageError("at least one --map SRC=DST is required")
    for item in args.map:
        src, sep, dst = item.partition("=")
        if not sep:
            raise UsageError(f"bad --map {item!r}; expected SRC=DST")
        f = rules.substitute(f, src.strip(), dst.strip())
    _emit(args, render(f), {"form": render(f), "variables": list(f.ctx.names)})
    return EXIT_OK


def cmd_eval(args):
    f = _form(args)
    pmf = parse_pmf(Path(args.pmf).read_text())
    val = evaluate(f, entropy_vector(pmf))
    ok = val >= -INEQ_TOL
    _emit(args, f"{val!r}\n# {'holds' if ok else 'violated'}", {"form": render(f), "value": val, "holds": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_copy(args):
    pmf = parse_pmf(Path(args.pmf).read_text())
    b, c = _names(args.b), _names(args.c)
    out = copy_distribution(pmf, args.a, b, c)
    h = entropy_vector(out)
    ctx = out.ctx
    a2 = ctx.names[-1]
    indep = evaluate(cmi(ctx, ctx.bit(a2), ctx.mask([args.a] + c), ctx.mask(b)), h)
    text = format_pmf(out) + f"# I({a2};{','.join([args.a] + c)}|{','.join(b)}) = {indep!r}\n"
    _emit(args, text, {"pmf": format_pmf(out), "copy": a2, "conditional_mi": indep})
    return EXIT_OK


def cmd_run(args):
    try:
        text = engine.load_script(args.script)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    tr = engine.run_script(text)
    _emit(args, tr.text(), tr.as_dict())
    if tr.ok:
        return EXIT_OK
    return EXIT_FALSE if tr.assertion_failed else EXIT_USAGE


def cmd_elementals(args):
    names = _names(args.vars) if args.vars else [chr(ord("A") + i) for i in range(args.n)]
    if args.n is not None and len(names) != args.n:
        raise UsageError("--n disagrees with --vars")
    ctx = VarContext(names)
    els = elementals(ctx)
    text = "".join(f"{e.id}: {e.description} >= 0\n" for e in els)
    _emit(args, text, {"elementals": [{"id": e.id, "description": e.description, "form": render(e.form)} for e in els]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "structured"), default="text")

    ineq = argparse.ArgumentParser(add_help=False)
    ineq.add_argument("ineq", nargs="?", help="inequality, e.g. 'I(A;B|C) >= 0'")
    ineq.add_argument("--file", help="read the inequality from a file")
    ineq.add_argument("--vars", help="comma-separated ground set (default: variables that occur)")

    part = argparse.ArgumentParser(add_help=False)
    part.add_argument("--z", required=True)
    part.add_argument("--x", required=True, help="comma-separated X group")
    part.add_argument("--y", default="", help="comma-separated Y group")

    parser = argparse.ArgumentParser(prog="entroprover", description="Linear information inequality prover.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("canon", parents=[common, ineq], help="canonical joint-entropy form").set_defaults(func=cmd_canon)
    sub.add_parser("balance", parents=[common, ineq], help="balanced form").set_defaults(func=cmd_balance)
    sub.add_parser("check", parents=[common, ineq], help="Shannon-type test").set_defaults(func=cmd_check)
    sub.add_parser("zy", parents=[common, ineq, part], help="apply the copy rule").set_defaults(func=cmd_zy)
    sub.add_parser("mmrv", parents=[common, ineq, part], help="apply the Ahlswede-Korner rule").set_defaults(func=cmd_mmrv)
    p = sub.add_parser("subst", parents=[common, ineq], help="identify or rename variables")
    p.add_argument("--map", action="append", help="SRC=DST, repeatable")
    p.set_defaults(func=cmd_subst)
    p = sub.add_parser("eval", parents=[common, ineq], help="evaluate on a distribution")
    p.add_argument("--pmf", required=True)
    p.set_defaults(func=cmd_eval)
    p = sub.add_parser("copy", parents=[common], help="copy-lemma distribution")
    p.add_argument("--pmf", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", default="")
    p.add_argument("--c", default="")
    p.set_defaults(func=cmd_copy)
    p = sub.add_parser("run", parents=[common], help="run a derivation script")
    p.add_argument("script", help="path, or name of a bundled script")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("elementals", parents=[common], help="list elemental inequalities")
    p.add_argument("--n", type=int)
    p.add_argument("--vars")
    p.set_defaults(func=cmd_elementals)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "elementals" and args.n is None and not args.vars:
        parser.error("elementals needs --n or --vars")
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownVariableError, PMFError, rules.RuleShapeError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
