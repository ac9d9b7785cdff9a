"""Command-line interface: ``polybern {compute,enumerate,map,render,verify,egf}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bijections, excedance, tableaux, trees
from .bijections import DEFAULT_MODEL, KINDS, MAPS, MODEL_IDS, get_map, get_model
from .cache import ResultCache, resolve_cache_dir
from .callan import CallanPerm
from .errors import PolyBernError
from .oracle import egf_check

log = logging.getLogger("polybern")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
REPORT_NAME = "verify_report.json"


class UsageError(Exception):
    pass


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _read_input(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path} must hold a JSON object")
    return data


def _split_model(model: str) -> tuple[str, str]:
    """``kind`` or ``kind.weight`` to ``(kind, model id)``."""
    if model == "formula":
        raise UsageError("the formula model has no objects to enumerate or render")
    kind = model.split(".")[0]
    if kind not in KINDS:
        raise UsageError(f"unknown model {model!r}; choose from {', '.join(MODEL_IDS)}")
    mid = DEFAULT_MODEL[kind] if model == kind else model
    get_model(mid)
    return kind, mid


def _one_line(obj: Any) -> str:
    if isinstance(obj, CallanPerm):
        return str(obj)
    if isinstance(obj, excedance.ExcPerm):
        return " ".join(map(str, obj.perm))
    return _dumps(obj.to_json())


def render_object(obj: Any) -> str:
    if isinstance(obj, (tableaux.AltTableau, tableaux.PackedTableau)):
        return tableaux.render(obj)
    if isinstance(obj, trees.DoubleTree):
        return trees.render(obj)
    if isinstance(obj, excedance.ExcPerm):
        return excedance.render_board(obj)
    if isinstance(obj, CallanPerm):
        if not obj.s1 and not obj.s2:
            return ""
        return "\n".join(" ".join(map(str, s)) for s in (obj.s1, obj.s2))
    raise TypeError(f"cannot render {type(obj).__name__}")


# -- commands ----------------------------------------------------------------

def cmd_compute(args) -> int:
    if args.model != "formula":
        get_model(args.model)
    cache_dir = resolve_cache_dir(args.cache_dir)
    if cache_dir is not None and args.model != "formula":
        poly = ResultCache(cache_dir).polynomial(args.model, args.n, args.k, bijections.model_polynomial)
    else:
        poly = bijections.model_polynomial(args.model, args.n, args.k)
    print(_dumps(poly.to_list()) if args.format == "json" else str(poly))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    kind, mid = _split_model(args.model)
    weight = get_model(mid).weight
    count = 0
    for obj in KINDS[kind].enumerate(args.n, args.k):
        w = weight(obj)
        if args.format == "json":
            print(_dumps({"object": obj.to_json(), "weight": w}))
        else:
            print(f"{w}\t{_one_line(obj)}")
        count += 1
    # the trailer goes to stderr so stdout holds exactly one line per object
    print(f"count {count}", file=sys.stderr)
    return EXIT_OK


def _map_weights(spec) -> tuple[str, str]:
    if spec.weights is not None:
        return spec.weights
    return DEFAULT_MODEL[spec.domain], DEFAULT_MODEL[spec.codomain]


def cmd_map(args) -> int:
    spec = get_map(args.id)
    obj = KINDS[spec.domain].from_json(_read_input(args.input))
    image = spec.apply(obj)
    w_dom, w_cod = _map_weights(spec)
    weights = {"domain": {w_dom: get_model(w_dom).weight(obj)},
               "image": {w_cod: get_model(w_cod).weight(image)}}
    if args.format == "json":
        print(_dumps({"map": spec.id, "input": obj.to_json(), "image": image.to_json(),
                      "weights": weights}))
    else:
        print(render_object(image))
        print(f"{w_dom} = {weights['domain'][w_dom]}, {w_cod} = {weights['image'][w_cod]}")
    return EXIT_OK


def cmd_render(args) -> int:
    kind, _ = _split_model(args.model)
    obj = KINDS[kind].from_json(_read_input(args.input))
    text = render_object(obj)
    if text:
        print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    cache_dir = resolve_cache_dir(args.cache_dir)
    report = bijections.verify_all(args.max_n, args.max_k, extended=args.extended, jobs=args.jobs,
                                   cache_dir=str(cache_dir) if cache_dir else None)
    egf = egf_check(args.egf_order, args.egf_order)
    passed = report.passed and egf.passed
    data = report.to_json(timings=args.timings)
    data["egf"] = egf.to_json()
    data["passed"] = passed
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        (cache_dir / REPORT_NAME).write_text(json.dumps(data, indent=1) + "\n")
    if args.format == "json":
        print(_dumps(data))
    else:
        for cell in report.cells + report.extras:
            bad = cell.failures()
            print(f"n={cell.n} k={cell.k} models={len(cell.models)} maps={len(cell.maps)} "
                  f"{'FAIL' if bad else 'ok'}")
        print(f"egf order {args.egf_order}: {'ok' if egf.passed else 'FAIL ' + str(egf.failures)}")
        print("PASS" if passed else "FAIL")
    for failure in data["failures"]:
        print("failure: " + _dumps(failure), file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_egf(args) -> int:
    report = egf_check(args.max_n, args.max_k)
    if args.format == "json":
        print(_dumps(report.to_json()))
    else:
        for (n, k), ok in sorted(report.cells.items()):
            print(f"n={n} k={k} {'ok' if ok else 'FAIL'} {report.extracted[n, k]}")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polybern",
                                     description="Symmetrized poly-Bernoulli polynomials and their models.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "text"), default=fmt)

    p = sub.add_parser("compute", help="polynomial of one model as an ascending coefficient array")
    p.add_argument("--model", required=True, help=f"one of {', '.join(MODEL_IDS)}")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--cache-dir")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("enumerate", help="objects of a model, one per line, with weights")
    p.add_argument("--model", required=True, help="a class (callan, tableau, packed, tree, exc) or a model id")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", help="apply a map to one serialized object")
    p.add_argument("--id", required=True, help=f"one of {', '.join(MAPS)}")
    p.add_argument("--input", default="-", help="JSON file, or - for standard input")
    common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("render", help="draw one serialized object")
    p.add_argument("--model", required=True)
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="exhaustive agreement, bijection and series checks")
    p.add_argument("--max-n", type=_nonneg, default=4)
    p.add_argument("--max-k", type=_nonneg, default=4)
    p.add_argument("--extended", action="store_true", help="also check n = k = 5 for the lighter models")
    p.add_argument("--egf-order", type=_nonneg, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir")
    p.add_argument("--timings", action="store_true", help="include timings in the report")
    common(p, "text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("egf", help="compare the generating function with the formula")
    p.add_argument("--max-n", type=_nonneg, default=6)
    p.add_argument("--max-k", type=_nonneg, default=6)
    common(p, "text")
    p.set_defaults(func=cmd_egf)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, PolyBernError) as exc:
        print(f"polybern {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
