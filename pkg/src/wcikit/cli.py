"""Command-line front end: analyze, wellform, strata, witness, probe, census.

Every subcommand prints a single JSON document (census streams JSONL to a
file).  Exit codes: 0 computed (whatever the verdicts), 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import WCISpec, classify
from .census import CensusBounds, ProbeBudget, run_census, write_census
from .oracle import (
    DEFAULT_PRIMES,
    EXHAUSTIVE_LIMIT,
    quasi_smooth_probe,
    wf_witness_search,
)
from .poly import QQ, GF, PolySystem, parse_poly
from .weights import Stratum, Weights, singular_strata, well_form

# Used whenever --seed is omitted, so unseeded runs stay reproducible.
DEFAULT_SEED = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse {what} from {text!r}") from None


def _emit(args, obj) -> None:
    text = json.dumps(obj, indent=2)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _verbose(args, message: str) -> None:
    if getattr(args, "verbose", False):
        print(message, file=sys.stderr)


def _load_system(args, spec: WCISpec) -> PolySystem:
    """Polynomials from --poly-file (one per line, rational coefficients) or a
    generic system over GF(prime) from --seed."""
    if getattr(args, "poly_file", None):
        lines = [
            line.strip()
            for line in Path(args.poly_file).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        polys = tuple(parse_poly(line, spec.weights, QQ) for line in lines)
        sys_ = PolySystem(polys)
        if sys_.degrees != spec.degrees:
            raise ValueError(
                f"polynomial degrees {sys_.degrees} do not match --degrees {spec.degrees}"
            )
        return sys_
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    prime = getattr(args, "prime", None) or (args.primes_parsed[0] if args.primes_parsed else None)
    if prime is None:
        raise ValueError("need --prime (or --primes) to draw a generic system")
    return PolySystem.generic(spec.weights, spec.degrees, GF(prime), seed)


def cmd_analyze(args) -> int:
    spec = WCISpec(Weights.parse(args.weights), _parse_int_list(args.degrees, "degrees"))
    _emit(args, classify(spec).to_json())
    return EXIT_OK


def cmd_wellform(args) -> int:
    start = Weights.parse(args.weights)
    result, trace = well_form(start)
    _emit(
        args,
        {"input": start.to_json(), "weights": str(result),
         "entries": result.to_json(), "trace": trace.to_json()},
    )
    return EXIT_OK


def cmd_strata(args) -> int:
    w = Weights.parse(args.weights)
    strata = singular_strata(w, maximal_only=not args.all, max_size=args.max_size)
    _emit(args, {"weights": w.to_json(), "maximal_only": not args.all,
                 "strata": [s.to_json() for s in strata]})
    return EXIT_OK


def cmd_witness(args) -> int:
    spec = WCISpec(Weights.parse(args.weights), _parse_int_list(args.degrees, "degrees"))
    if args.stratum:
        stratum = Stratum.of(spec.weights, _parse_int_list(args.stratum, "stratum indices"))
        if not stratum.is_singular:
            raise ValueError(f"stratum {args.stratum} is not singular (delta 1)")
    else:
        candidates = singular_strata(spec.weights, maximal_only=True)
        if not candidates:
            raise ValueError("the ambient space is smooth; no singular stratum to search")
        stratum = candidates[0]
    args.primes_parsed = ()
    sys_ = _load_system(args, spec)
    report = wf_witness_search(spec, sys_, stratum, args.prime)
    _emit(args, report.to_json())
    return EXIT_OK


def cmd_probe(args) -> int:
    spec = WCISpec(Weights.parse(args.weights), _parse_int_list(args.degrees, "degrees"))
    args.primes_parsed = _parse_int_list(args.primes, "primes")
    args.prime = None
    sys_ = _load_system(args, spec)
    verdict = quasi_smooth_probe(
        sys_,
        args.primes_parsed,
        args.max_points,
        sample_count=args.sample_count,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
        allow_bad_primes=args.allow_bad_primes,
    )
    _emit(args, verdict.to_json())
    return EXIT_OK


_BOUND_FLAGS = ("max_n", "max_weight", "max_weight_sum", "max_k", "max_degree", "min_dim")


def _census_bounds(args) -> CensusBounds:
    base: dict = {}
    if args.config:
        base = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(base, dict):
            raise ValueError("census config must be a JSON object")
    for name in _BOUND_FLAGS:
        value = getattr(args, name)
        if value is not None:
            base[name] = value
    if args.non_linear_cone:
        base["require_non_linear_cone"] = True
    missing = [n for n in ("max_n", "max_weight", "max_weight_sum", "max_k", "max_degree")
               if n not in base]
    if missing:
        raise ValueError(f"missing census bounds: {missing} (flags or --config)")
    return CensusBounds.from_json(base)


def cmd_census(args) -> int:
    bounds = _census_bounds(args)
    if not args.output:
        raise ValueError("census needs --output PATH for the JSONL records")
    probe = None
    if args.probe:
        probe = ProbeBudget(
            primes=_parse_int_list(args.probe_primes, "probe primes"),
            max_points=args.probe_max_points,
            seed=args.probe_seed,
        )
    _verbose(args, f"census bounds: {bounds.to_json()}")
    records, summary = run_census(bounds, probe)
    write_census(records, summary, args.output, args.summary)
    _verbose(args, f"wrote {len(records)} records to {args.output}")
    print(json.dumps(summary.to_json(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcikit",
        description="Exact-arithmetic analysis of weighted complete intersections "
        "in weighted projective spaces.",
    )
    parser.add_argument("--version", action="version", version=f"wcikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write the JSON result to this path instead of stdout")
        p.add_argument("--json", action="store_true", help="JSON output (default; accepted for symmetry)")
        p.add_argument("--verbose", action="store_true", help="progress notes on stderr")

    p = sub.add_parser("analyze", help="classify a family: well-formedness, adjunction data, theorem status")
    p.add_argument("weights", help='comma-separated weights, e.g. "1,1,2,2,2"')
    p.add_argument("--degrees", required=True, help='comma-separated degrees, e.g. "3,4"')
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("wellform", help="normalize weights to a well-formed representative")
    p.add_argument("weights")
    common(p)
    p.set_defaults(func=cmd_wellform)

    p = sub.add_parser("strata", help="singular strata of a well-formed weight tuple")
    p.add_argument("weights")
    p.add_argument("--all", action="store_true", help="all singular subsets, not just the covering family")
    p.add_argument("--max-size", type=int, default=None, help="bound the subset size in --all mode")
    common(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("witness", help="rank-drop witness search along a singular stratum")
    p.add_argument("weights")
    p.add_argument("--degrees", required=True)
    p.add_argument("--stratum", default=None, help='stratum indices, e.g. "2,3,4,5" (default: top covering stratum)')
    p.add_argument("--prime", type=int, required=True, help="prime field to scan")
    p.add_argument("--seed", type=int, default=None, help=f"generic-system seed (default {DEFAULT_SEED})")
    p.add_argument("--poly-file", default=None, help="explicit polynomials, one per line")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("probe", help="finite-field quasi-smoothness probe of an explicit or generic member")
    p.add_argument("weights")
    p.add_argument("--degrees", required=True)
    p.add_argument("--primes", default=",".join(str(q) for q in DEFAULT_PRIMES),
                   help="comma-separated primes (default 3,5,7; unsafe ones are dropped)")
    p.add_argument("--max-points", type=int, default=EXHAUSTIVE_LIMIT,
                   help="exhaustive-scan threshold on p^(N+1)")
    p.add_argument("--sample-count", type=int, default=100_000,
                   help="seeded sample size beyond the exhaustive threshold")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--poly-file", default=None)
    p.add_argument("--allow-bad-primes", action="store_true",
                   help="keep primes dividing a weight or degree")
    common(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("census", help="classify every family in a bounded box; write JSONL + summary")
    p.add_argument("--config", default=None, help="JSON file with census bounds")
    p.add_argument("--max-n", dest="max_n", type=int, default=None)
    p.add_argument("--max-weight", dest="max_weight", type=int, default=None)
    p.add_argument("--max-weight-sum", dest="max_weight_sum", type=int, default=None)
    p.add_argument("--max-k", dest="max_k", type=int, default=None)
    p.add_argument("--max-degree", dest="max_degree", type=int, default=None)
    p.add_argument("--min-dim", dest="min_dim", type=int, default=None)
    p.add_argument("--non-linear-cone", action="store_true",
                   help="skip intersections with a linear cone")
    p.add_argument("--probe", action="store_true", help="spot-probe theorem-applicable records")
    p.add_argument("--probe-primes", default=",".join(str(q) for q in DEFAULT_PRIMES))
    p.add_argument("--probe-max-points", type=int, default=100_000)
    p.add_argument("--probe-seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--summary", default=None,
                   help="summary sidecar path (default: <output>.summary.json)")
    common(p)
    p.set_defaults(func=cmd_census)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return EXIT_INPUT if code not in (0,) else code
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - invariant violations
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
