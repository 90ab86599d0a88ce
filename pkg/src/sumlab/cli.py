"""Command-line surface: subcommands over the library with bit-stable JSON output.

Exit codes: 0 success, 1 a claim counterexample was found (or a verify check
failed), 2 usage error, 3 budget or input-validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from ._version import __version__
from .bounds import (
    CLAIM_IDS,
    COUNTEREXAMPLE,
    asym_error_constant,
    bound_value,
    check_claim,
    structure_diagnose,
)
from .compression import CompressionSpec, compress, reduce as reduce_lines
from .constructions import CONSTRUCTIONS
from .incidence import Direction, Hyperplane, line_partition, min_line_cover
from .pointset import PointSet, affine_dimension, apply_affine, difference_set, sumset
from .search import EXHAUSTIVE, RANDOM, BudgetExceededError, SearchSpec, exhaustive_min_diff, random_probe
from .verify import SUITES, VerifySuite, verify_battery


def _load_pointset(path: str, hashes: dict) -> PointSet:
    with open(path, "rb") as fh:
        data = fh.read()
    hashes[path] = hashlib.sha256(data).hexdigest()
    return PointSet.from_json(json.loads(data))


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _emit(report: dict, args) -> None:
    if getattr(args, "timestamps", False):
        report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    text = json.dumps(report, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _provenance(hashes: dict) -> dict:
    return {"version": __version__, "input_sha256": hashes}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="sumlab", description=__doc__)
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to a file instead of stdout")
    common.add_argument("--timestamps", action="store_true", help="embed a wall-clock timestamp")

    for name, doc in (("sum", "sumset A + B"), ("diff", "difference set A - B")):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("--input", required=True, help="point-set JSON for A")
        p.add_argument("--b", required=True, help="point-set JSON for B")

    p = sub.add_parser("dim", parents=[common], help="affine dimension of a set")
    p.add_argument("--input", required=True)

    p = sub.add_parser("lines", parents=[common], help="line partition or minimal line cover")
    p.add_argument("--input", required=True)
    p.add_argument("--direction", help="comma-separated integers; omit for the minimal cover")

    p = sub.add_parser("compress", parents=[common], help="one compression step")
    p.add_argument("--input", required=True)
    p.add_argument("--b", help="optional second operand, compressed with the same spec")
    p.add_argument("--normal", required=True, help="hyperplane normal, comma-separated integers")
    p.add_argument("--offset", required=True, help="hyperplane offset, integer or p/q")
    p.add_argument("--direction", required=True)

    p = sub.add_parser("reduce", parents=[common], help="compress A to slab-plus-point form")
    p.add_argument("--input", required=True)
    p.add_argument("--b", help="second operand; defaults to a single origin point")
    p.add_argument("--direction", required=True)
    p.add_argument(
        "--denormalize",
        action="store_true",
        help="apply the inverse of the initial affine map to the outputs",
    )

    p = sub.add_parser("construct", parents=[common], help="emit a named construction")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lengths", help="comma-separated AP lengths")

    p = sub.add_parser("bounds", parents=[common], help="evaluate a bound formula")
    p.add_argument("--claim", required=True, choices=CLAIM_IDS)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.add_argument("--a1", type=int)
    p.add_argument("--eps")
    p.add_argument("--cd")

    p = sub.add_parser("claims", parents=[common], help="check one claim on an instance")
    p.add_argument("--claim", required=True, choices=CLAIM_IDS)
    p.add_argument("--input", required=True)
    p.add_argument("--b")
    p.add_argument("--direction")
    p.add_argument("--as-conjecture", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("search", parents=[common], help="exhaustive or random difference-set search")
    p.add_argument("--mode", choices=("exhaustive", "random"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--box", required=True, help="per-axis max coordinate, one int or comma-separated")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--claim", choices=CLAIM_IDS)
    p.add_argument("--as-conjecture", action="store_true")
    p.add_argument("--require-full-dim", action="store_true")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=10**8)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--dims", default="2,3,4,5")

    p = sub.add_parser("diagnose", parents=[common], help="near-extremal structure report")
    p.add_argument("--input", required=True)
    return top


def _cmd_setops(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    b = _load_pointset(args.b, hashes)
    result = sumset(a, b) if args.command == "sum" else difference_set(a, b)
    report = result.to_json()
    report["meta"] = _provenance(hashes)
    return report, 0


def _cmd_dim(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    return {"ambient": a.dim, "affine_dimension": affine_dimension(a), "meta": _provenance(hashes)}, 0


def _cmd_lines(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    if args.direction:
        part = line_partition(a, Direction.of(_parse_ints(args.direction)))
        report = {
            "direction": part.direction.to_json(),
            "count": part.count,
            "class_sizes": list(part.class_sizes()),
        }
    else:
        direction, count = min_line_cover(a)
        report = {"direction": direction.to_json(), "count": count}
    report["meta"] = _provenance(hashes)
    return report, 0


def _cmd_compress(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    spec = CompressionSpec(
        Hyperplane.of(_parse_ints(args.normal), args.offset),
        Direction.of(_parse_ints(args.direction)),
    )
    image, mapping = compress(a, spec)
    report = {
        "spec": spec.to_json(),
        "result": image.to_json(),
        "map": [
            [[str(c) for c in pre], [str(c) for c in post]]
            for pre, post in sorted(mapping.items())
        ],
    }
    if args.b:
        b = _load_pointset(args.b, hashes)
        report["b_result"] = compress(b, spec)[0].to_json()
        report["sum_before"] = len(sumset(a, b))
        report["sum_after"] = len(sumset(image, PointSet.from_json(report["b_result"])))
    report["meta"] = _provenance(hashes)
    return report, 0


def _cmd_reduce(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    if args.b:
        b = _load_pointset(args.b, hashes)
    else:
        b = PointSet.of(a.dim, [(0,) * a.dim])
    a2, b2, trace = reduce_lines(a, b, Direction.of(_parse_ints(args.direction)))
    report_a, report_b = a2, b2
    if args.denormalize and trace.initial_affine is not None:
        inverse = trace.initial_affine.inverse
        report_a = apply_affine(a2, inverse)
        report_b = apply_affine(b2, inverse) if b2.points else b2
    report = {
        "a": report_a.to_json(),
        "b": report_b.to_json(),
        "normalized_frame": not args.denormalize,
        "trace": trace.to_json(),
        "meta": _provenance(hashes),
    }
    return report, 0


def _cmd_construct(args, hashes) -> tuple[dict, int]:
    builder, wanted = CONSTRUCTIONS[args.name]
    params = {}
    for key in wanted:
        value = getattr(args, key if key != "lengths" else "lengths")
        if value is None:
            raise ValueError(f"construction {args.name} needs --{key}")
        params[key] = list(_parse_ints(value)) if key == "lengths" else value
    out = builder(**params)
    report = out.to_json()
    report["meta"] = {"construction": args.name, "params": params, "version": __version__}
    return report, 0


def _cmd_bounds(args, hashes) -> tuple[dict, int]:
    params = {
        "d": args.d,
        "n": args.n,
        "m": args.m,
        "r1": args.r1,
        "r2": args.r2,
        "a1": args.a1,
        "eps": Fraction(args.eps) if args.eps else None,
        "c_d": Fraction(args.cd) if args.cd else None,
    }
    value = bound_value(args.claim, **params)
    report = {
        "claim": args.claim,
        "params": {k: str(v) for k, v in params.items() if v is not None},
        "value": str(value),
    }
    if args.claim == "LEMMA_BASE_2D":
        report["subtracted_radical"] = {"coefficient": "5", "sqrt_of": "n"}
    if args.claim == "ASYM_THM":
        report["subtracted_radical"] = {"coefficient": str(2 ** (args.d + 1)), "sqrt_of": "n"}
        report["error_constant"] = str(asym_error_constant(args.d))
    report["meta"] = _provenance(hashes)
    return report, 0


def _cmd_claims(args, hashes) -> tuple[dict | str, int]:
    a = _load_pointset(args.input, hashes)
    b = _load_pointset(args.b, hashes) if args.b else None
    l = Direction.of(_parse_ints(args.direction)) if args.direction else None
    report = check_claim(args.claim, a, b, l, as_conjecture=args.as_conjecture)
    code = 1 if report.verdict == COUNTEREXAMPLE else 0
    if args.format == "csv":
        lines = ["claim,d,n,lhs,rhs,margin,verdict"]
        lines.append(
            f"{report.claim},{a.dim},{len(a)},{report.lhs},{report.rhs},{report.margin},{report.verdict}"
        )
        return "\n".join(lines) + "\n", code
    out = report.to_json()
    out["meta"] = _provenance(hashes)
    return out, code


def _cmd_search(args, hashes) -> tuple[dict, int]:
    if args.seed is None:
        raise ValueError("search requires --seed (no silent nondeterminism)")
    box = _parse_ints(args.box)
    if len(box) == 1 and args.d > 1:
        box = box * args.d
    spec = SearchSpec(
        d=args.d,
        n=args.n,
        box=box,
        mode=EXHAUSTIVE if args.mode == "exhaustive" else RANDOM,
        seed=args.seed,
        trials=args.trials,
        claim=args.claim,
        as_conjecture=args.as_conjecture,
        require_full_dim=args.require_full_dim,
        budget=args.budget,
    )
    if spec.mode == EXHAUSTIVE:
        result = exhaustive_min_diff(spec, prune=not args.no_prune, threads=args.threads)
    else:
        result = random_probe(spec)
    report = result.to_json()
    report["meta"] = _provenance(hashes)
    return report, 1 if result.violations else 0


def _cmd_verify(args, hashes) -> tuple[dict, int]:
    if args.seed is None:
        raise ValueError("verify requires --seed (no silent nondeterminism)")
    cfg = VerifySuite(args.suite, args.trials, args.seed, _parse_ints(args.dims))
    report = verify_battery(cfg)
    return report, 0 if report["pass"] else 1


def _cmd_diagnose(args, hashes) -> tuple[dict, int]:
    a = _load_pointset(args.input, hashes)
    report = structure_diagnose(a)
    report["meta"] = _provenance(hashes)
    return report, 0


_HANDLERS = {
    "sum": _cmd_setops,
    "diff": _cmd_setops,
    "dim": _cmd_dim,
    "lines": _cmd_lines,
    "compress": _cmd_compress,
    "reduce": _cmd_reduce,
    "construct": _cmd_construct,
    "bounds": _cmd_bounds,
    "claims": _cmd_claims,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "diagnose": _cmd_diagnose,
}


def cli_dispatch(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    hashes: dict[str, str] = {}
    try:
        report, code = _HANDLERS[args.command](args, hashes)
    except (BudgetExceededError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    if isinstance(report, str):
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(report)
        else:
            sys.stdout.write(report)
    else:
        _emit(report, args)
    return code


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))
