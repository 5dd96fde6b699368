"""Command-line front end. Exit code 1 on engine errors, 2 on usage errors."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from .braid import BraidWord, braids_equal, parse_braid
from .cartan_weyl import CartanData, cartan_from_json, cartan_from_name, coxeter_number
from .counting import brute_force_f, component_lower_bound, count_f
from .diagram import build_triangulation, seed_of
from .dt import (
    DEFAULT_MAX_POWER,
    bipartite,
    color_trace,
    dt_order,
    dt_script,
    maximal_green_sequence,
    square_product,
    unfrozen_seed_of_word,
    za_bound,
    za_order,
)
from .errors import ArtifactError
from .seed import Seed, apply_script, parse_script


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _cartan(args) -> CartanData:
    if getattr(args, "cartan", None):
        try:
            text = Path(args.cartan).read_text()
        except OSError as exc:
            raise ArtifactError(f"cannot read Cartan file: {exc}") from exc
        return cartan_from_json(text)
    return cartan_from_name(args.type)


def _word(text: str | None, C: CartanData) -> BraidWord:
    return parse_braid(text or "", C)


def _seed_text(s: Seed) -> str:
    lines = [f"vertices: {' '.join(map(str, s.vertices))}"]
    lines.append(f"frozen: {' '.join(str(v) for v in s.vertices if v in s.frozen)}")
    lines.append(f"multipliers: {' '.join(map(str, s.d))}")
    lines.append("epsilon:")
    width = max(len(str(x)) for row in s.eps for x in row) if s.eps else 1
    for v, row in zip(s.vertices, s.eps):
        lines.append(f"  {str(v):>6}  " + " ".join(f"{str(x):>{width}}" for x in row))
    return "\n".join(lines)


# --- commands ------------------------------------------------------------------


def cmd_seed(args) -> str:
    C = _cartan(args)
    top, bottom = _word(args.top, C), _word(args.bottom, C)
    pattern = args.pattern if args.pattern is not None else "T" * len(top) + "B" * len(bottom)
    s = seed_of(build_triangulation(top, bottom, pattern))
    return _dump(s.to_json()) if args.json else _seed_text(s)


def cmd_mutate(args) -> str:
    try:
        data = json.loads(Path(args.seed).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ArtifactError(f"cannot read seed file: {exc}") from exc
    s = apply_script(Seed.from_json(data), parse_script(args.script))
    return _dump(s.to_json()) if args.json else _seed_text(s)


def cmd_mgs(args) -> str:
    C = _cartan(args)
    word = _word(args.word, C)
    script = maximal_green_sequence(word)
    trace, _ = color_trace(unfrozen_seed_of_word(word), script.steps)
    if args.json:
        return _dump(
            {
                "script": [str(v) for v in script.steps],
                "green_at_turn": list(trace.green_at_turn),
                "final_colors": dict(trace.final_colors),
                "maximal_green": trace.all_green_turns and trace.ends_all_red,
            }
        )
    lines = [f"script: {script.render()}", f"steps: {len(script)}"]
    for k, (v, g) in enumerate(zip(trace.steps, trace.green_at_turn), 1):
        lines.append(f"  {k:>3}. {v} {'green' if g else 'red'}")
    lines.append(f"all green at each turn: {str(trace.all_green_turns).lower()}")
    lines.append(f"ends all red: {str(trace.ends_all_red).lower()}")
    return "\n".join(lines)


def cmd_dt_check(args) -> str:
    C = _cartan(args)
    ds = dt_script(_word(args.top, C), _word(args.bottom, C))
    if args.json:
        return _dump({**ds.to_json(), "verified": True})
    sigma = " ".join(f"{k}->{ds.sigma[k]}" for k in ds.seed.vertices)
    return "\n".join(
        [
            f"word: {ds.word}",
            f"script: {ds.script.render()}",
            f"sigma: {sigma}",
            "verified: c = -P_sigma after the script, sigma is a seed isomorphism, c = -id after sigma",
        ]
    )


def _dt_order_one(cartan: CartanData, top: str, bottom: str, max_power: int) -> dict:
    ds = dt_script(parse_braid(top, cartan), parse_braid(bottom, cartan))
    order = dt_order(ds, max_power)
    return {"top": top, "bottom": bottom, "word": list(ds.word.letters), "order": order, "max": max_power}


def _dt_order_text(r: dict) -> str:
    if r["order"] is None:
        return f"DT order > {r['max']} (not found)"
    return f"DT order = {r['order']}"


def _count_one(cartan: CartanData, top: str, bottom: str) -> dict:
    res = count_f(cartan, parse_braid(top, cartan), parse_braid(bottom, cartan))
    return {"top": top, "bottom": bottom, **res.to_json()}


def _count_text(cartan: CartanData, top: str, bottom: str) -> str:
    res = count_f(cartan, parse_braid(top, cartan), parse_braid(bottom, cartan))
    g = res.g
    return "\n".join(
        [
            f"word: {' '.join(map(str, res.word_used))}",
            f"f = {res.f.render(ascending=False)}",
            f"f ascending: {res.f.render()}",
            f"g = {g.render(ascending=False)}",
            f"g ascending: {g.render()}",
            f"conjectural component count = {component_lower_bound(g)}",
        ]
    )


def _batch(path: str) -> list[tuple[str, str]]:
    """A JSON list of {"top": ..., "bottom": ...} objects."""
    try:
        data = json.loads(Path(path).read_text())
        return [(str(x.get("top", "")), str(x.get("bottom", ""))) for x in data]
    except (OSError, json.JSONDecodeError, AttributeError, TypeError) as exc:
        raise ArtifactError(f"cannot read batch file: {exc}") from exc


def _run_batch(fn: Callable, cartan: CartanData, items, jobs: int, *extra) -> list[dict]:
    if jobs <= 1:
        return [fn(cartan, t, b, *extra) for t, b in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, cartan, t, b, *extra) for t, b in items]
        return [f.result() for f in futures]


def cmd_dt_order(args) -> str:
    C = _cartan(args)
    if args.batch:
        results = _run_batch(_dt_order_one, C, _batch(args.batch), args.jobs, args.max)
        if args.json:
            return _dump(results)
        return "\n".join(f"{r['top']!r} | {r['bottom']!r}: {_dt_order_text(r)}" for r in results)
    r = _dt_order_one(C, args.top or "", args.bottom or "", args.max)
    return _dump(r) if args.json else _dt_order_text(r)


def cmd_count(args) -> str:
    C = _cartan(args)
    if args.batch:
        results = _run_batch(_count_one, C, _batch(args.batch), args.jobs)
        return _dump(results)
    if args.json:
        return _dump(_count_one(C, args.top or "", args.bottom or ""))
    return _count_text(C, args.top or "", args.bottom or "")


def cmd_za(args) -> str:
    left = cartan_from_name(args.left)
    if args.right_rank < 1:
        raise ArtifactError("right rank must be at least 1")
    right = cartan_from_name(f"A{args.right_rank}")
    seed, colors = square_product(bipartite(left), bipartite(right))
    order = za_order(seed, colors, args.max)
    bound = za_bound(left, args.right_rank)
    if args.json:
        return _dump(
            {
                "left": left.name,
                "right_rank": args.right_rank,
                "coxeter_number": coxeter_number(left),
                "order": order,
                "bound": bound,
            }
        )
    if order is None:
        return f"Za order > {args.max} (bound {bound})"
    return f"Za order = {order} (bound {bound})"


def cmd_oracle(args) -> tuple[str, int]:
    C = cartan_from_name(args.type)
    if C.name not in ("A1", "A2"):
        raise ArtifactError("the oracle supports types A1 and A2 only")
    top, bottom = _word(args.top, C), _word(args.bottom, C)
    brute = brute_force_f(C.rank, top, bottom, args.q)
    dp = count_f(C, top, bottom).f(args.q)
    agree = brute == dp
    if args.json:
        out = _dump({"q": args.q, "brute_force": brute, "dp": int(dp), "agree": agree})
    else:
        out = f"brute force = {brute}\ndp = {dp}\nverdict: {'agree' if agree else 'DISAGREE'}"
    return out, 0 if agree else 1


def cmd_braid_eq(args) -> str:
    C = _cartan(args)
    res = braids_equal(_word(args.a, C), _word(args.b, C), node_cap=args.cap)
    text = res if isinstance(res, str) else str(res).lower()
    return _dump({"equal": text}) if args.json else text


# --- parser --------------------------------------------------------------------


def _add_type(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type", help="Cartan type such as A2, B2, G2 or A1xA1")
    g.add_argument("--cartan", metavar="FILE", help="custom Cartan JSON file")


def _add_bases(p: argparse.ArgumentParser) -> None:
    p.add_argument("--top", default="", help='top word, e.g. "1 2 1"')
    p.add_argument("--bottom", default="", help="bottom word")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artifact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seed", help="seed of a triangulation")
    _add_type(p)
    _add_bases(p)
    p.add_argument("--pattern", help="T/B pattern, default all top triangles first")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("mutate", help="apply a mutation script to a seed JSON file")
    p.add_argument("--seed", required=True, metavar="FILE")
    p.add_argument("--script", required=True, help='e.g. "1:1,2:1"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("mgs", help="maximal green sequence of a word")
    _add_type(p)
    p.add_argument("--word", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mgs)

    p = sub.add_parser("dt-check", help="build and verify the DT script")
    _add_type(p)
    _add_bases(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dt_check)

    p = sub.add_parser("dt-order", help="order of the DT transformation")
    _add_type(p)
    _add_bases(p)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_POWER)
    p.add_argument("--batch", metavar="FILE", help="JSON list of {top, bottom} instances")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dt_order)

    p = sub.add_parser("za", help="Zamolodchikov order on a square product with A_N")
    p.add_argument("--left", required=True, help="Dynkin type of the left factor")
    p.add_argument("--right-rank", type=int, required=True)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_POWER)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_za)

    p = sub.add_parser("count", help="point-count polynomials f and g")
    _add_type(p)
    _add_bases(p)
    p.add_argument("--batch", metavar="FILE", help="JSON list of {top, bottom} instances")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force count over F_q against the DP")
    p.add_argument("--type", required=True, choices=["A1", "A2"])
    _add_bases(p)
    p.add_argument("--q", type=int, required=True, choices=[2, 3, 4])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("braid-eq", help="decide braid equality by bounded search")
    _add_type(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_braid_eq)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise _UsageError("--jobs must be at least 1")
        if getattr(args, "batch", None) and (args.top or args.bottom):
            raise _UsageError("--batch cannot be combined with --top/--bottom")
    except _UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    try:
        result = args.func(args)
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
