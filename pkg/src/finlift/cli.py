"""Command line front end: ``finlift parse|lift|classify|verify|orthogonal|census``.

Exit codes: 0 success, 1 a property check failed (a lift is missing or a
verification found mismatches), 2 usage, parse or bound errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Optional, TextIO

from . import classify, orthogonal
from .errors import InputError, ParseError
from .lifting import check_lifting
from .notation import parse, parse_map, render_map, render_space
from .preorder import FinMap, FinSpace, map_canonical_form, canonical_form

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _record(command: str, inputs, verdicts, key, **extra) -> dict:
    rec = {"command": command, "inputs": inputs, "verdicts": verdicts, "key": key}
    rec.update(extra)
    return rec


def _dump(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False)


def _set_text(X: FinSpace, mask: int) -> str:
    return "{" + ",".join(X.name(x) for x in range(X.n) if (mask >> x) & 1) + "}"


def _key(obj) -> str:
    return str(map_canonical_form(obj) if isinstance(obj, FinMap) else canonical_form(obj))


def _space_detail(X: FinSpace) -> dict:
    return {
        "expr": render_space(X),
        "points": [X.name(x) for x in range(X.n)],
        "relations": [f"{X.name(x)}->{X.name(y)}" for x, y in X.strict_pairs()],
        "open_sets": [_set_text(X, m) for m in sorted(X.open_masks(), key=lambda m: (bin(m).count("1"), m))],
    }


def _space_lines(X: FinSpace, indent: str = "") -> list[str]:
    d = _space_detail(X)
    return [
        f"{indent}points ({X.n}): {', '.join(d['points']) or '-'}",
        f"{indent}relations ({len(d['relations'])}): {', '.join(d['relations']) or '-'}",
        f"{indent}open sets ({len(d['open_sets'])}): {' '.join(d['open_sets'])}",
    ]


def _assignment(f: FinMap) -> dict:
    return {f.dom.name(x): f.cod.name(v) for x, v in enumerate(f.assign)}


def _predicates(obj) -> dict:
    if isinstance(obj, FinMap):
        return classify.map_predicates(obj)
    return classify.space_predicates(obj)


# ------------------------------------------------------------------ verbs


def _expressions(args) -> list[str]:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if args.expr is None:
        raise _Usage("an expression or --file is required")
    return [args.expr]


def cmd_parse(args, out: TextIO) -> int:
    for text in _expressions(args):
        obj = parse(text)
        verdicts = _predicates(obj)
        holding = [k for k, v in verdicts.items() if v]
        if isinstance(obj, FinMap):
            detail = {
                "kind": "map",
                "expr": render_map(obj),
                "domain": _space_detail(obj.dom),
                "codomain": _space_detail(obj.cod),
                "assignment": _assignment(obj),
            }
            lines = [f"map {detail['expr']}", f"  {obj.dom.n} -> {obj.cod.n} points", "  domain:"]
            lines += _space_lines(obj.dom, "    ")
            lines += ["  codomain:"] + _space_lines(obj.cod, "    ")
            lines.append("  assignment: " + ", ".join(f"{a}->{b}" for a, b in detail["assignment"].items()))
        else:
            detail = dict(kind="space", **_space_detail(obj))
            lines = [f"space {detail['expr']}"] + _space_lines(obj, "  ")
        lines.append(f"  holds: {', '.join(holding) or '-'}")
        if args.json:
            print(_dump(_record("parse", {"expr": text}, verdicts, _key(obj), detail=detail)), file=out)
        else:
            print("\n".join(lines), file=out)
    return EXIT_OK


def _square_lines(sq) -> list[str]:
    rec = orthogonal.square_record(sq)
    return [
        f"  i: {rec['i']}",
        f"  p: {rec['p']}",
        "  f: " + (", ".join(f"{a}->{b}" for a, b in rec["f"].items()) or "(empty)"),
        "  g: " + (", ".join(f"{a}->{b}" for a, b in rec["g"].items()) or "(empty)"),
    ]


def cmd_lift(args, out: TextIO) -> int:
    i, p = parse_map(args.i), parse_map(args.p)
    v = check_lifting(i, p, witnesses=args.witnesses)
    witnesses = [
        {"square": orthogonal.square_record(sq), "h": _assignment(h)} for sq, h in v.witnesses
    ]
    if args.json:
        rec = _record(
            "lift",
            {"i": args.i, "p": args.p},
            {"lifts": v.holds},
            [str(map_canonical_form(i)), str(map_canonical_form(p))],
            squares=v.squares,
            counterexample=orthogonal.square_record(v.counterexample),
        )
        if args.witnesses:
            rec["witnesses"] = witnesses
        print(_dump(rec), file=out)
    else:
        if v.holds:
            print(f"holds: {render_map(i)} /_ {render_map(p)} ({v.squares} squares)", file=out)
        else:
            print(f"fails: {render_map(i)} /_ {render_map(p)}", file=out)
            print(f"square {v.squares} has no lift:", file=out)
            print("\n".join(_square_lines(v.counterexample)), file=out)
        for w in witnesses:
            f = ", ".join(f"{a}->{b}" for a, b in w["square"]["f"].items()) or "(empty)"
            g = ", ".join(f"{a}->{b}" for a, b in w["square"]["g"].items()) or "(empty)"
            h = ", ".join(f"{a}->{b}" for a, b in w["h"].items()) or "(empty)"
            print(f"  f: {f} | g: {g} | h: {h}", file=out)
    return EXIT_OK if v.holds else EXIT_FAILED


def cmd_classify(args, out: TextIO) -> int:
    for text in _expressions(args):
        obj = parse(text)
        direct = _predicates(obj)
        lifting = {name: orthogonal.lifting_verdict(name, obj) for name in direct}
        verdicts = {name: {"direct": direct[name], "lifting": lifting[name]} for name in direct}
        if args.json:
            print(_dump(_record("classify", {"expr": text}, verdicts, _key(obj))), file=out)
            continue
        kind = "map" if isinstance(obj, FinMap) else "space"
        print(f"{kind} {render_map(obj) if kind == 'map' else render_space(obj)}", file=out)
        width = max(len(n) for n in direct)
        print(f"  {'predicate':<{width}}  direct  lifting", file=out)
        for name in direct:
            d, l = direct[name], lifting[name]
            flag = "" if d == l else "  <- disagree"
            print(f"  {name:<{width}}  {'yes' if d else 'no':<6}  {'yes' if l else 'no'}{flag}", file=out)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    if args.predicate == "all":
        names = list(classify.registry())
    else:
        classify.lifting_characterization(args.predicate)
        names = [args.predicate]
    reports = []
    for name in names:
        bound = args.bound if args.bound is not None else orthogonal.default_bound(name)
        reports.append(orthogonal.verify_correspondence(name, bound))
    records = [
        _record(
            "verify",
            {"predicate": r.predicate, "bound": r.bound},
            {"ok": r.ok, "mismatches": len(r.mismatches)},
            r.predicate,
            report=r.as_dict(),
        )
        for r in reports
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(_dump(rec) + "\n")
    if args.json:
        for rec in records:
            print(_dump(rec), file=out)
    else:
        for r in reports:
            status = "ok" if r.ok else "MISMATCH"
            print(
                f"{r.predicate:<24} bound={r.bound} instances={r.instances_checked} "
                f"direct_true={r.direct_true} mismatches={len(r.mismatches)} {status}",
                file=out,
            )
            for m in r.mismatches:
                print(f"    {m.form} | {m.expr} direct={m.direct} lifting={m.lifting}", file=out)
            for m in r.descriptive:
                print(f"    (non-gating) {m.form} | {m.expr} direct={m.direct} lifting={m.lifting}", file=out)
            if r.extension_label:
                print(f"    {r.extension_label}: {len(r.extension)}", file=out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def cmd_orthogonal(args, out: TextIO) -> int:
    res = orthogonal.evaluate_class(args.expr, args.bound, args.inner_bound)
    members = [render_map(m) for m in res.members]
    if args.json:
        rec = _record(
            "orthogonal",
            {"expr": args.expr, "bound": args.bound},
            {"members": len(members)},
            [_key(m) for m in res.members],
            members=members,
            step_bounds=res.bounds,
            caveat=res.caveat,
        )
        print(_dump(rec), file=out)
        return EXIT_OK
    if res.caveat:
        print(f"caveat: {res.caveat}", file=out)
    print(f"{args.expr}: {len(members)} maps (step bounds {res.bounds})", file=out)
    for text in members:
        print(f"  {text}", file=out)
    return EXIT_OK


def cmd_census(args, out: TextIO) -> int:
    records = list(orthogonal.census_records(args.bound, with_maps=args.maps))
    if args.json:
        for rec in records:
            holding = set(rec.pop("predicates"))
            names = classify.SPACE_PREDICATES if rec["kind"] == "space" else classify.MAP_PREDICATES
            verdicts = {name: name in holding for name in names}
            key = rec.pop("key")
            print(_dump(_record("census", {"bound": args.bound}, verdicts, key, **rec)), file=out)
        return EXIT_OK
    spaces = [r for r in records if r["kind"] == "space"]
    maps = [r for r in records if r["kind"] == "map"]
    for k in range(args.bound + 1):
        print(f"{k} points: {sum(1 for r in spaces if r['points'] == k)} spaces", file=out)
    for r in spaces:
        print(f"  {r['key']:<12} {r['expr']}", file=out)
    if args.maps:
        print(f"maps: {len(maps)}", file=out)
        for r in maps:
            print(f"  {r['expr']}", file=out)
    return EXIT_OK


# ------------------------------------------------------------------ driver


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="finlift", description="Finite spaces, lifting properties and their census.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="normalize a space or map expression")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file", help="read one expression per line")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lift", help="decide i /_ p")
    p.add_argument("i")
    p.add_argument("p")
    p.add_argument("--witnesses", action="store_true", help="print the lift found for every square")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="direct and lifting verdicts of every predicate")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file", help="read one expression per line")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="compare direct predicates with their lifting forms")
    p.add_argument("predicate", help="predicate name or 'all'")
    p.add_argument("--bound", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the line-delimited report here")

    p = sub.add_parser("orthogonal", help="census members of an orthogonal class")
    p.add_argument("expr")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--inner-bound", type=int, help="bound for intermediate steps (default: --bound)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("census", help="list spaces (and maps) up to a point bound")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--maps", action="store_true")
    p.add_argument("--json", action="store_true")
    return ap


_COMMANDS = {
    "parse": cmd_parse,
    "lift": cmd_lift,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "orthogonal": cmd_orthogonal,
    "census": cmd_census,
}


def _report_parse_error(err: ParseError, err_out: TextIO) -> None:
    print(f"parse error at offset {err.offset}: {err.message}", file=err_out)
    if err.text is not None:
        print(f"  {err.text}", file=err_out)
        print("  " + " " * len(err.text.encode("utf-8")[: err.offset].decode("utf-8", "ignore")) + "^", file=err_out)


def main(argv: Optional[Iterable[str]] = None, out: TextIO = None, err_out: TextIO = None) -> int:
    out = out or sys.stdout
    err_out = err_out or sys.stderr
    try:
        args = build_parser().parse_args(None if argv is None else list(argv))
        return _COMMANDS[args.verb](args, out)
    except _Usage as e:
        print(f"usage error: {e}", file=err_out)
    except ParseError as e:
        _report_parse_error(e, err_out)
    except (InputError, OSError) as e:
        print(f"error: {e}", file=err_out)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
