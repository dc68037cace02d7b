"""Command line entry point.

Exit codes: 0 success, 1 mismatch or failed check, 2 usage error,
3 resource refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

from . import engine, surjections as sj, tables, verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
BUDGET_ENV = "GREXT_BUDGET"
MAX_TABLE = 8


class UsageError(Exception):
    pass


def _parse_tensor(text: str, flag: str) -> int:
    m = re.fullmatch(r"\s*T\^(\d+)\s*", text or "")
    if not m:
        raise UsageError(f"{flag} must look like T^n, got {text!r}")
    return int(m.group(1))


def _parse_window(text: str | None):
    if text is None:
        return None
    m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise UsageError(f"--window must be a:b with 0 <= a <= b, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _budget(args) -> int | None:
    if args.budget is not None:
        value = args.budget
    elif os.environ.get(BUDGET_ENV):
        try:
            value = int(os.environ[BUDGET_ENV])
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer")
    else:
        value = engine.DEFAULT_BUDGET
    return None if value <= 0 else value


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_group(free: int, torsion) -> str:
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# ext


def cmd_ext(args) -> int:
    n = _parse_tensor(args.source, "--source")
    m = _parse_tensor(args.target, "--target")
    if n < 1:
        raise UsageError("--source needs n >= 1")
    window = _parse_window(args.window) or (0, max(m - n, 0) + 1)
    groups = engine.ext_groups(n, m, window, budget=_budget(args))
    rows, all_match = [], True
    for k, g in sorted(groups.items()):
        pred = math.factorial(n) * tables.stirling(m, n) if k == m - n else 0
        ok = g.free_rank == pred and not g.torsion
        all_match &= ok
        rows.append(
            {
                "degree": k,
                "free_rank": g.free_rank,
                "torsion": list(g.torsion),
                "predicted_rank": pred,
                "verdict": "MATCH" if ok else "MISMATCH",
            }
        )
    report = engine.ext_report(n, m, window, groups)
    report["groups"] = rows
    report["verdict"] = "MATCH" if all_match else "MISMATCH"
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        text = tables.render_csv(rows, ["degree", "free_rank", "torsion", "predicted_rank", "verdict"])
    else:
        lines = [f"Ext^*(T^{n} o a, T^{m} o a), degrees {window[0]}..{window[1]}", ""]
        lines.append(f"{'degree':>6}  {'computed':<20} {'predicted':<12} verdict")
        for r in rows:
            got = _format_group(r["free_rank"], r["torsion"])
            want = _format_group(r["predicted_rank"], ())
            lines.append(f"{r['degree']:>6}  {got:<20} {want:<12} {r['verdict']}")
        lines.append("")
        lines.append(f"overall: {report['verdict']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK if all_match else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# prop


def _operand(text: str) -> sj.SignedSurjSum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"operand {text!r} is not JSON: {exc}")
    try:
        if isinstance(obj, list):
            return sj.SignedSurjSum.single(sj.Surjection.of(obj))
        if isinstance(obj, dict) and "values" in obj:
            return sj.SignedSurjSum.single(sj.Surjection.of(obj["values"], obj.get("n")))
        if isinstance(obj, dict):
            return sj.SignedSurjSum.from_json_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad operand {text!r}: {exc}")
    raise UsageError(f"operand {text!r} must be a JSON array or a signed sum object")


def _perm(text: str) -> tuple[int, ...]:
    try:
        p = tuple(json.loads(text))
    except (json.JSONDecodeError, TypeError) as exc:
        raise UsageError(f"permutation {text!r} is not a JSON array: {exc}")
    if sorted(p) != list(range(1, len(p) + 1)):
        raise UsageError(f"{text!r} is not a permutation of 1..{len(p)}")
    return p


def cmd_prop(args) -> int:
    try:
        if args.op == "decompose":
            x = _operand(args.operands[0])
            out = []
            for f, _ in x:
                d = sj.canonical_decomposition(f)
                out.append({"f": list(f.values), "s": list(d.s.values), "alpha": list(d.alpha)})
            result = out[0] if len(out) == 1 else out
        elif args.op == "compose":
            if len(args.operands) != 2:
                raise UsageError("compose needs two operands: G F (for G o F)")
            g, f = map(_operand, args.operands)
            result = sj.yoneda(g, f).to_json_obj()
        elif args.op == "external":
            if len(args.operands) < 2:
                raise UsageError("external needs at least two operands")
            result = sj.external_many([_operand(t) for t in args.operands]).to_json_obj()
        elif args.op == "act":
            if len(args.operands) != 1 or (args.left is None) == (args.right is None):
                raise UsageError("act needs one operand and exactly one of --left PERM / --right PERM")
            x = _operand(args.operands[0])
            if args.left is not None:
                result = sj.act_left(_perm(args.left), x).to_json_obj()
            else:
                result = sj.act_right(x, _perm(args.right)).to_json_obj()
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown prop operation {args.op}")
    except sj.SizeMismatch as exc:
        raise UsageError(f"{exc}; operands: {' '.join(args.operands)}")
    _emit(json.dumps(result) + "\n", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# table


def cmd_table(args) -> int:
    if not 0 <= args.max <= MAX_TABLE:
        raise UsageError(f"--max must be between 0 and {MAX_TABLE}")
    if args.kind in ("rational-ext", "rational-tor"):
        compute = tables.rational_ext if args.kind == "rational-ext" else tables.rational_tor
        rows = tables.ext_table(args.max, compute=compute)
        objs = [r.to_json_obj() for r in rows]
        ok = all(r.match for r in rows)
        if args.format == "json":
            text = tables.render_json(objs)
        elif args.format == "csv":
            text = tables.render_csv(objs, ["source", "target", "degree", "dimension"])
        else:
            title = "Rational Tor" if args.kind == "rational-tor" else "Rational Ext"
            text = f"# {title}, exponents 0..{args.max}\n\n" + tables.render_markdown_grid(rows)
            text += "\nCells read dim@degree; bold got/expected marks a disagreement with the closed form.\n"
    else:
        objs, ok = [], True
        for kind in tables.Kind:
            for d in range(args.max + 1):
                got = dict(tables.stable_homology(kind, d))
                want = dict(tables.stable_homology_prediction(kind, d))
                for i in sorted(got):
                    objs.append(
                        {
                            "functor": f"{kind.value}^{d}",
                            "degree": i,
                            "dimension": got[i],
                            "predicted": want[i],
                        }
                    )
                    ok &= got[i] == want[i]
        if args.format == "json":
            text = tables.render_json(objs)
        elif args.format == "csv":
            text = tables.render_csv(objs, ["functor", "degree", "dimension", "predicted"])
        else:
            lines = [f"# Stable homology, d = 0..{args.max}", ""]
            lines.append("| functor | nonzero degrees (dim) | predicted |")
            lines.append("|---|---|---|")
            for kind in tables.Kind:
                for d in range(args.max + 1):
                    rs = [o for o in objs if o["functor"] == f"{kind.value}^{d}"]
                    got = ", ".join(f"{o['degree']}:{o['dimension']}" for o in rs if o["dimension"]) or "0"
                    want = ", ".join(f"{o['degree']}:{o['predicted']}" for o in rs if o["predicted"]) or "0"
                    lines.append(f"| {kind.value}^{d} | {got} | {want} |")
            text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError("--only takes a comma separated list of check numbers")
    results = verify.run_checks(args.level, seed=args.seed, only=only, jobs=args.jobs)
    if args.format == "json":
        text = json.dumps([r.to_json_obj() for r in results], indent=2) + "\n"
    else:
        lines = []
        for r in results:
            lines.append(r.line())
            lines += [f"      {d}" for d in r.details]
        passed = sum(r.ok for r in results)
        lines.append(f"{passed}/{len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="grext", description="Ext groups between functors on free groups.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("ext", parents=[common], help="integral Ext^*(T^n o a, T^m o a)")
    e.add_argument("--source", required=True, help="T^n")
    e.add_argument("--target", required=True, help="T^m")
    e.add_argument("--window", help="degree range a:b (default 0:m-n+1)")
    e.add_argument("--budget", type=int, help=f"max matrix entries, <= 0 disables (env {BUDGET_ENV})")
    e.set_defaults(func=cmd_ext)

    pr = sub.add_parser("prop", parents=[common], help="surjection calculus")
    pr.add_argument("op", choices=["compose", "act", "external", "decompose"])
    pr.add_argument("operands", nargs="+", help="JSON arrays like [1,2,2] or signed sums")
    pr.add_argument("--left", help="permutation acting on the target, e.g. [2,1]")
    pr.add_argument("--right", help="permutation acting on the source")
    pr.set_defaults(func=cmd_prop)

    t = sub.add_parser("table", parents=[common], help="rational tables")
    t.add_argument("kind", choices=["rational-ext", "rational-tor", "stable-homology"])
    t.add_argument("--max", type=int, default=4, help=f"largest exponent (<= {MAX_TABLE})")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--level", choices=["quick", "full"], default="quick")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--only", help="comma separated check numbers")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except engine.ResourceError as exc:
        print(f"refused: {exc} (estimate {exc.estimate} entries)", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
