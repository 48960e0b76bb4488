"""Command-line front end.  Every subcommand prints one JSON document (or CSV) on stdout.

Exit codes: 0 success, 1 verification failure or exhausted budget,
2 usage error (bad group, element, word, point or path syntax).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .boundary import act, eval_point, limit_of_standard_path, parse_path, parse_point, verify_convergence
from .facets import polytope_for
from .groups import H3, AlphabetError, evaluate_word, get_group, parse_word
from .metric import h3_norm_case
from .oracle import BudgetExceeded, bfs_ball, bfs_norm, default_budget, geodesic_words_to, is_geodesic_word, oracle_dist
from .suites import SUITES, SuiteConfig, verify_suite


class UsageError(Exception):
    pass


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _group(name: str):
    try:
        return get_group(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element(group, text: str):
    try:
        return group.parse_element(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _word(group, text: str) -> str:
    try:
        return parse_word(group, text)
    except AlphabetError as exc:
        raise UsageError(str(exc)) from None


def cmd_dist(args) -> int:
    group = _group(args.group)
    g = _element(group, args.element)
    out = {"group": group.name, "element": group.to_json(g)}
    if group is H3:
        d, case = h3_norm_case(g)
        out.update(d=d, case=case.value)
    if args.oracle or group is not H3:
        radius = args.radius if args.radius is not None else 2 * default_budget(group)
        od = oracle_dist(group, g, radius)
        out.update(oracle=od, radius=radius)
        if group is not H3:
            out["d"] = od
    _emit(out)
    return 0


def cmd_ball(args) -> int:
    group = _group(args.group)
    ball = bfs_ball(group, args.radius, max(args.radius, default_budget(group)) if args.force else None)
    rows = ball.rows()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([*group.fields, "distance"])
        for g, d in rows:
            writer.writerow([*g, d])
        sys.stdout.write(buf.getvalue())
    else:
        _emit({
            "group": group.name,
            "radius": args.radius,
            "size": len(rows),
            "elements": [{**group.to_json(g), "d": d} for g, d in rows],
        })
    return 0


def cmd_geodesic(args) -> int:
    group = _group(args.group)
    if args.word is None and args.element is None:
        raise UsageError("give --word or --element")
    if args.word is not None:
        w = _word(group, args.word)
        g = evaluate_word(group, w)
        norm = bfs_norm(group)
        geo = is_geodesic_word(group, w, norm)
        _emit({"group": group.name, "word": w, "length": len(w), "element": group.to_json(g),
               "d": norm(g), "geodesic": geo})
        return 1 if args.check and not geo else 0
    g = _element(group, args.element)
    norm = bfs_norm(group)
    words = geodesic_words_to(group, g, cap=args.cap, norm=norm)
    _emit({"group": group.name, "element": group.to_json(g), "d": norm(g), "count": len(words),
           "capped": args.cap is not None and len(words) >= args.cap, "words": words})
    return 0


def _point(text: str):
    try:
        return parse_point(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_horo(args) -> int:
    p = _point(args.point) if getattr(args, "point", None) else None
    if args.horo_cmd == "eval":
        g = _element(H3, args.element)
        _emit({"point": str(p), "element": H3.to_json(g), "value": eval_point(p, g)})
    elif args.horo_cmd == "act":
        if (args.word is None) == (args.element is None):
            raise UsageError("give exactly one of --word or --element")
        g = evaluate_word(H3, _word(H3, args.word)) if args.word is not None else _element(H3, args.element)
        _emit({"point": str(p), "element": H3.to_json(g), "image": str(act(g, p))})
    else:
        try:
            path = parse_path(args.path)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        limit = limit_of_standard_path(path)
        res = verify_convergence(path, limit, args.window, t_max=args.t_max)
        _emit({"path": str(path), "limit": str(limit), "window": args.window, **res.to_json()})
        return 0 if res.stabilised else 1
    return 0


def cmd_polytope(args) -> int:
    group = _group(args.group)
    try:
        P = polytope_for(group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit({"group": group.name, **P.to_json()})
    return 0


def cmd_verify(args) -> int:
    cfg = SuiteConfig()
    for name in ("radius", "window", "max_len", "t_max"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    report = verify_suite(args.suite, cfg)
    _emit(report.to_json(timing=args.timing))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilhoro", description="Word metrics and horofunction boundaries of H3 and friends.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dist", help="word length of an element")
    p.add_argument("--group", default="h3")
    p.add_argument("--element", required=True, help="comma-separated exponents, e.g. 0,0,1")
    p.add_argument("--oracle", action="store_true", help="also report the BFS distance")
    p.add_argument("--radius", type=int, help="largest distance the oracle may report")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ball", help="the BFS ball with exact distances")
    p.add_argument("--group", default="h3")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--force", action="store_true", help="allow radii beyond the default budget")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("geodesic", help="check a word, or list the geodesic words to an element")
    p.add_argument("--group", default="h3")
    p.add_argument("--word")
    p.add_argument("--check", action="store_true", help="exit 1 if the word is not geodesic")
    p.add_argument("--element")
    p.add_argument("--list", action="store_true", help="list geodesic words to --element (the default)")
    p.add_argument("--cap", type=int, help="stop after this many words")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("horo", help="Busemann points of H3")
    hsub = p.add_subparsers(dest="horo_cmd", required=True)
    q = hsub.add_parser("eval", help="value of a Busemann point at an element")
    q.add_argument("--point", required=True)
    q.add_argument("--element", required=True)
    q = hsub.add_parser("act", help="image of a point under an element or word")
    q.add_argument("--point", required=True)
    q.add_argument("--word")
    q.add_argument("--element")
    q = hsub.add_parser("limit", help="limit of a standard path, checked on a window")
    q.add_argument("--path", required=True, help="gamma:+,m,n, lambda:-,m,l or word:PERIOD")
    q.add_argument("--window", type=int, default=4)
    q.add_argument("--t-max", type=int, default=40)
    p.set_defaults(func=cmd_horo)

    p = sub.add_parser("polytope", help="generator polytope and facet alphabets")
    p.add_argument("--group", default="h3")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--radius", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--max-len", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"nilhoro: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"nilhoro: budget exceeded: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
