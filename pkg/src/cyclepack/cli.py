"""Command line entry point: ``cyclepack <subcommand> ...``.

JSON goes to stdout, diagnostics to stderr.  ``pack`` exit codes: 0 found,
1 input error, 2 no packing exists, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classify import Hypothesis, classify
from .extremal import FAMILIES, FamilySpec, generate
from .graph import EdgeListError, read_edge_list, two_core, write_edge_list
from .packing import (
    Config,
    DEFAULT_EXACT_LIMIT,
    DEFAULT_NODE_BUDGET,
    SearchExhausted,
    Status,
    find_disjoint_cycles,
    greedy_cycle_packing,
    maximum_cycle_packing,
    triangle_number,
    verify_cycle_packing,
)
from .augment import grow_good_packing
from .reduce import ReductionState, reduce_fully, solve_with_reduction

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_EXIST = 2
EXIT_EXHAUSTED = 3

log = logging.getLogger("cyclepack")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _config(args) -> Config:
    return Config(
        exact_limit=args.exact_limit,
        node_budget=args.budget,
        jobs=getattr(args, "jobs", 1),
        seed=getattr(args, "seed", None) or 0,
        output_dir=getattr(args, "output_dir", None),
    )


def cmd_analyze(args) -> int:
    g = read_edge_list(args.file)
    cfg = _config(args)
    prof = classify(g, args.k)
    core, _ = two_core(g)
    good = grow_good_packing(g, args.k, config=cfg)
    t = triangle_number(g, cfg) if g.n <= cfg.exact_limit else None
    lower = max(len(greedy_cycle_packing(g)), len(good), t or 0)
    c_exact = None
    if g.n <= cfg.exact_limit:
        try:
            c_exact = len(maximum_cycle_packing(g, cfg))
        except SearchExhausted as exc:
            log.warning("c(G) not determined: %s", exc)
    _emit({
        "n": g.n,
        "m": g.m,
        "delta": g.min_degree,
        "h": prof.h,
        "ell": prof.ell,
        "h_minus_ell": prof.h_minus_ell,
        "two_core_size": core.n,
        "good_triangle_packing": len(good),
        "t": t,
        "c_lower": lower,
        "c_exact": c_exact,
    })
    return EXIT_OK


def cmd_pack(args) -> int:
    g = read_edge_list(args.file)
    cfg = _config(args)
    if args.exact:
        r = find_disjoint_cycles(g, args.k, mode="exact", config=cfg)
    elif args.k >= 2:
        r = solve_with_reduction(g, args.k, config=cfg)
    else:
        r = find_disjoint_cycles(g, args.k, mode="heuristic", config=cfg)
    out = {"k": args.k, "status": r.status.value, "nodes": r.nodes}
    if r.status is Status.FOUND:
        ok = verify_cycle_packing(g, r.packing)
        if not ok:
            raise AssertionError("certificate failed verification")
        out.update(r.packing.to_json())
        out["verified"] = ok
        _emit(out)
        return EXIT_OK
    _emit(out)
    if r.status is Status.NOT_EXIST:
        print(f"no {args.k} disjoint cycles exist", file=sys.stderr)
        return EXIT_NOT_EXIST
    print(f"search budget of {cfg.node_budget} nodes exhausted", file=sys.stderr)
    return EXIT_EXHAUSTED


def cmd_generate(args) -> int:
    g = generate(FamilySpec(args.family, args.k, args.n, args.m))
    if args.output:
        write_edge_list(g, args.output)
        print(f"wrote {args.family} with {g.n} vertices, {g.m} edges to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(g.to_edge_list())
    return EXIT_OK


def _write_counterexamples(report, outdir: str | None) -> None:
    if not report.counterexamples:
        return
    if outdir is None:
        print(f"{len(report.counterexamples)} counterexample(s); pass --output-dir to save them",
              file=sys.stderr)
        return
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    for idx, ce in enumerate(report.counterexamples):
        path = d / f"{report.theorem.lower()}_k{report.k}_{idx:04d}.txt"
        path.write_text(ce["edge_list"])
        print(f"counterexample written to {path}", file=sys.stderr)


def _sample_spec(args, n_min: int, n_max: int):
    from .harness import EnumerationSpec

    if args.samples is None:
        return EnumerationSpec(n_min, n_max, "exhaustive", seed=args.seed)
    return EnumerationSpec(n_min, n_max, args.mode, count=args.samples, p=args.p,
                           target=args.target, seed=args.seed)


def cmd_verify(args) -> int:
    from .harness import verify_theorem

    cfg = _config(args)
    if args.samples is None:
        n_min = 0 if args.min_n is None else args.min_n
    else:
        n_min = args.max_n if args.min_n is None else args.min_n
    spec = _sample_spec(args, n_min, args.max_n)
    report = verify_theorem(args.theorem, args.k, spec, i=args.i, jobs=args.jobs, config=cfg)
    sys.stdout.write(report.dumps())
    print(f"wall time {report.wall_time:.2f}s", file=sys.stderr)
    _write_counterexamples(report, args.output_dir)
    return EXIT_OK if not report.counterexamples else EXIT_NOT_EXIST


def cmd_hunt(args) -> int:
    from .harness import hunt_gap

    cfg = _config(args)
    lo = 4 * args.k + 1 if args.min_n is None else args.min_n
    hi = lo if args.max_n is None else args.max_n
    spec = _sample_spec(args, lo, max(lo, hi))
    report = hunt_gap(args.k, (lo, hi), spec, jobs=args.jobs, config=cfg)
    sys.stdout.write(report.dumps())
    print(f"wall time {report.wall_time:.2f}s, {len(report.counterexamples)} hit(s)", file=sys.stderr)
    _write_counterexamples(report, args.output_dir)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = read_edge_list(args.file)
    cfg = _config(args)
    i = args.k if args.i is None else args.i
    st = reduce_fully(ReductionState(g, args.k, i), config=cfg)
    for rec in st.trace.records:
        print(rec.describe())
    if st.stuck:
        print("stopped: the next rule would violate i >= -3k", file=sys.stderr)
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclepack", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_required=True):
        p.add_argument("--k", type=int, required=k_required, help="number of cycles / degree threshold")
        p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
        p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET,
                       help="branch node budget of the exact search")

    p = sub.add_parser("analyze", help="degree profile, packing bounds and c(G)")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pack", help="find k disjoint cycles")
    p.add_argument("file")
    common(p)
    p.add_argument("--exact", action="store_true", help="skip the heuristic and reductions")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("generate", help="write an extremal construction")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="apply reduction rules and print the trace")
    p.add_argument("file")
    common(p)
    p.add_argument("--i", type=int, help="slack parameter (default k)")
    p.set_defaults(func=cmd_reduce)

    def sampling(p):
        p.add_argument("--min-n", type=int)
        p.add_argument("--max-n", type=int)
        p.add_argument("--samples", type=int, help="sample this many graphs instead of enumerating")
        p.add_argument("--mode", choices=("targeted", "random"), default="targeted")
        p.add_argument("--p", type=float, help="edge probability in random mode")
        p.add_argument("--target", type=int, help="h - ell target in targeted mode")
        p.add_argument("--seed", type=_seed, required=True)
        p.add_argument("--jobs", type=_positive, default=1)
        p.add_argument("--output-dir", help="directory for counterexample edge lists")

    p = sub.add_parser("verify", help="check a theorem on enumerated or sampled graphs")
    p.add_argument("theorem", type=str.upper, choices=[h.value for h in Hypothesis])
    common(p)
    p.add_argument("--i", type=int, help="slack parameter for INDUCT")
    sampling(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hunt", help="search the open order range for graphs lacking k cycles")
    common(p)
    sampling(p)
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.command == "verify" and args.max_n is None:
        parser.error("verify needs --max-n")
    try:
        return args.func(args)
    except EdgeListError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
