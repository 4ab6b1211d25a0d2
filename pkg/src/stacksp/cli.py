"""Command-line entry point.

Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 an enumeration limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .core import (
    consumer_best_response,
    format_price,
    instance_from_dict,
    instance_to_dict,
    pricing_from_dict,
    validate_instance,
)
from .errors import InputError, NoPath, TooLarge, Unbounded
from .experiment import render_text, run_gap_experiment
from .labelcover import assignment_to_dict, generate_planted, lc_from_dict, lc_to_dict, satisfied_count
from .reduction import decompose_islands, extract_assignment, map_from_dict, map_to_dict, reduce
from .solvers import Limits, best_single_price, exact_optimal_pricing, uniform_pricing

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instance(path):
    inst = instance_from_dict(_read_json(path))
    problems = validate_instance(inst)
    if problems:
        raise InputError("invalid instance: " + "; ".join(problems))
    return inst


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def cmd_lc_gen(args) -> int:
    lc, planted = generate_planted(
        args.left, args.right, args.labels, args.edges, args.decoys, args.corrupt, args.seed
    )
    _emit(_dump(lc_to_dict(lc)), args.out)
    if args.planted_out:
        Path(args.planted_out).write_text(_dump(assignment_to_dict(planted)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    lc = lc_from_dict(_read_json(args.in_path))
    inst, rmap = reduce(lc)
    Path(args.out_instance).write_text(_dump(instance_to_dict(inst)))
    Path(args.out_map).write_text(_dump(map_to_dict(rmap)))
    return EXIT_OK


def cmd_consumer(args) -> int:
    inst = _load_instance(args.instance)
    result = consumer_best_response(inst, pricing_from_dict(_read_json(args.pricing)))
    if args.format == "text":
        text = (f"path {' '.join(map(str, result.path))}\ncost {format_price(result.total_cost)}\n"
                f"revenue {format_price(result.revenue)}\npricable edges {result.pricable_count}\n")
    else:
        text = _dump(result.to_dict())
    _emit(text, args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    limits = Limits(max_paths=args.max_paths, max_support=args.max_support)
    if args.alg == "exact":
        result = exact_optimal_pricing(inst, limits)
        data = result.to_dict()
    elif args.alg == "single-price":
        q, result = best_single_price(inst)
        data = result.to_dict()
        data["q"] = format_price(q)
    else:
        if args.q is None:
            raise InputError("--alg uniform needs --q")
        result = uniform_pricing(inst, args.q)
        data = result.to_dict()
    if args.format == "text":
        text = f"{data['method']}: revenue {data['revenue']}, path {data['path']}\n"
    else:
        text = _dump(data)
    _emit(text, args.out)
    return EXIT_OK


def cmd_extract(args) -> int:
    inst = _load_instance(args.instance)
    rmap = map_from_dict(_read_json(args.map))
    lc = lc_from_dict(_read_json(args.lc))
    dec = decompose_islands(inst, rmap, pricing_from_dict(_read_json(args.pricing)))
    assignment = extract_assignment(lc, rmap, dec)
    satisfied = satisfied_count(lc, assignment)
    guarantee = math.ceil(dec.r / 2)
    data = {
        "assignment": assignment_to_dict(assignment),
        "satisfied": satisfied,
        "r": dec.r,
        "guarantee": guarantee,
        "revenue": format_price(dec.purchase.revenue),
        "significant": [sg.gadget for sg in dec.significant],
        "islands": [[dec.significant[a].gadget, dec.significant[w].gadget] for a, w in dec.islands],
    }
    if args.format == "text":
        text = f"satisfied {satisfied} (guarantee {guarantee}, r={dec.r}), islands {data['islands']}\n"
    else:
        text = _dump(data)
    _emit(text, args.out)
    return EXIT_OK if satisfied >= guarantee else EXIT_CHECK


def cmd_gap(args) -> int:
    lc = lc_from_dict(_read_json(args.lc))
    limits = Limits(max_paths=args.max_paths, max_support=args.max_support)
    report = run_gap_experiment(lc, limits, args.samples, args.seed)
    text = render_text(report) if args.format == "text" else _dump(report.to_dict())
    _emit(text, args.out)
    return EXIT_OK if report.all_passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stacksp", description="Stackelberg shortest-path pricing lab")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    def limits(p):
        p.add_argument("--max-paths", type=int, default=Limits.max_paths)
        p.add_argument("--max-support", type=int, default=Limits.max_support)

    p = sub.add_parser("lc-gen", help="generate a planted label cover instance")
    p.add_argument("--left", type=int, required=True)
    p.add_argument("--right", type=int, required=True)
    p.add_argument("--labels", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--decoys", type=int, default=1)
    p.add_argument("--corrupt", type=float, default=0.0)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out")
    p.add_argument("--planted-out", help="also write the hidden assignment here")
    p.set_defaults(func=cmd_lc_gen)

    p = sub.add_parser("reduce", help="compile label cover into a pricing instance")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out-instance", required=True)
    p.add_argument("--out-map", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("consumer", help="path bought under a pricing")
    p.add_argument("--instance", required=True)
    p.add_argument("--pricing", required=True)
    p.add_argument("--out")
    fmt(p)
    p.set_defaults(func=cmd_consumer)

    p = sub.add_parser("solve", help="compute a leader pricing")
    p.add_argument("--instance", required=True)
    p.add_argument("--alg", choices=("exact", "single-price", "uniform"), default="exact")
    p.add_argument("--q", help="uniform price (int or num/den)")
    p.add_argument("--out")
    limits(p)
    fmt(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extract", help="island decomposition and extracted labelling")
    p.add_argument("--instance", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--pricing", required=True)
    p.add_argument("--lc", required=True)
    p.add_argument("--out")
    fmt(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gap", help="run all solvers and bound checks on a label cover instance")
    p.add_argument("--lc", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out")
    limits(p)
    fmt(p)
    p.set_defaults(func=cmd_gap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"stacksp: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, NoPath, Unbounded) as exc:
        print(f"stacksp: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
