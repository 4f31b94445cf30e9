"""Command-line entry point.

Exit codes: 0 success / property holds, 1 property does not hold, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.metadata import PackageNotFoundError, version

from . import bergedetect, confmodel, starsat
from .bergedetect import parse_pattern
from .errors import BudgetExceeded, HypergraphError, InvalidParams, PatternTooLarge, TrialsExhausted
from .hypercore import parse_hypergraph, serialize_hypergraph

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0.1.0"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _seed(text: str) -> int:
    value = int(text, 10)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _target(args):
    if args.star is not None:
        return args.star
    return parse_pattern(_read(args.pattern))


def _witness_json(w) -> dict:
    return {
        "vertex_map": {str(k): v for k, v in sorted(w.vertex_map.items())},
        "edge_map": [[list(pe), list(e)] for pe, e in sorted(w.edge_map.items())],
    }


def cmd_gen_regular(args) -> int:
    h = confmodel.sample_linear_nearly_regular(args.n, args.d, args.k, args.seed, args.max_trials)
    _emit(serialize_hypergraph(h), args.out)
    return EXIT_OK


def cmd_experiment_poisson(args) -> int:
    stats = confmodel.poisson_experiment(args.n, args.d, args.k, args.trials, args.seed, args.workers)
    data = stats.to_json()
    if args.json:
        _dump(data)
    else:
        for key, value in data.items():
            print(f"{key} {value}")
    return EXIT_OK


def cmd_check_berge(args) -> int:
    h = parse_hypergraph(_read(args.hypergraph))
    target = _target(args)
    if isinstance(target, int):
        w = bergedetect.find_berge_star(h, target)
    else:
        w = bergedetect.find_berge(h, target, args.budget)
    found = w is not None
    if args.json:
        out = {"contained": found}
        if args.witness and found:
            out["witness"] = _witness_json(w)
        _dump(out)
    else:
        print("contained" if found else "not contained")
        if args.witness and found:
            for v, x in sorted(w.vertex_map.items()):
                print(f"vertex {v} -> {x}")
            for pe, e in sorted(w.edge_map.items()):
                print(f"edge {pe[0]} {pe[1]} -> {' '.join(map(str, e))}")
    return EXIT_OK if found else EXIT_FALSE


def cmd_sat_value(args) -> int:
    res = starsat.sat_star_value(args.n, args.k, args.l)
    if args.json:
        _dump({
            "n": res.n, "k": res.k, "l": res.ell, "value": res.value,
            "minimizers": sorted(res.minimizers), "feasible_range": sorted(res.feasible_range),
            "chosen_a": res.chosen_a,
        })
    else:
        print(f"value {res.value}")
        print("minimizers " + " ".join(map(str, sorted(res.minimizers))))
        print(f"chosen_a {res.chosen_a if res.chosen_a is not None else '-'}")
    return EXIT_OK


def cmd_build_saturated(args) -> int:
    h = starsat.build_saturated_star(args.n, args.k, args.l, args.seed, args.max_trials, args.method)
    _emit(serialize_hypergraph(h), args.out)
    return EXIT_OK


def cmd_check_saturated(args) -> int:
    h = parse_hypergraph(_read(args.hypergraph))
    verdict = starsat.is_berge_saturated(h, _target(args), budget=args.budget)
    missing = list(verdict.missing_edge) if verdict.missing_edge is not None else None
    if args.json:
        _dump({
            "saturated": verdict.saturated, "is_free": verdict.is_free,
            "missing_edge": missing, "witness_count": verdict.witness_count,
        })
    else:
        print("saturated" if verdict.saturated else "not saturated")
        print(f"is_free {str(verdict.is_free).lower()}")
        print("missing_edge " + (" ".join(map(str, missing)) if missing else "-"))
        print(f"witness_count {verdict.witness_count}")
    return EXIT_OK if verdict.saturated else EXIT_FALSE


def cmd_build_clique_sat(args) -> int:
    h = starsat.build_saturated_clique(args.n, args.k, args.l)
    _emit(serialize_hypergraph(h), args.out)
    return EXIT_OK


def cmd_brute_min(args) -> int:
    m, h = starsat.brute_force_min_saturated(args.n, args.k, args.l, args.budget)
    if args.json:
        _dump({"value": m, "edges": [list(e) for e in h.edges]})
    else:
        print(f"value {m}")
        sys.stdout.write(serialize_hypergraph(h))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bergesat", description="Berge-star saturation and linear nearly-regular hypergraphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *names):
        for name in names:
            sp.add_argument(f"--{name}", type=int, required=True)

    sp = sub.add_parser("gen-regular", help="sample a linear nearly-d-regular hypergraph")
    common(sp, "n", "d", "k")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--max-trials", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen_regular)

    sp = sub.add_parser("experiment-poisson", help="loop/overlap statistics of the configuration model")
    common(sp, "n", "d", "k", "trials")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_experiment_poisson)

    def target(sp):
        sp.add_argument("--hypergraph", required=True)
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument("--star", type=int, metavar="L")
        group.add_argument("--pattern", metavar="FILE")
        sp.add_argument("--budget", type=int, default=bergedetect.DEFAULT_PLACEMENT_BUDGET)
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("check-berge", help="test Berge-copy containment")
    target(sp)
    sp.add_argument("--witness", action="store_true")
    sp.set_defaults(func=cmd_check_berge)

    sp = sub.add_parser("sat-value", help="evaluate the Berge-star saturation formula")
    common(sp, "n", "k", "l")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sat_value)

    sp = sub.add_parser("build-saturated", help="build a Berge-K_{1,l}-saturated hypergraph")
    common(sp, "n", "k", "l")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--max-trials", type=int, default=None)
    sp.add_argument("--method", choices=["auto", "rejection", "greedy"], default="auto")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_build_saturated)

    sp = sub.add_parser("check-saturated", help="verify Berge saturation")
    target(sp)
    sp.set_defaults(func=cmd_check_saturated)

    sp = sub.add_parser("build-clique-sat", help="Berge-K_l construction on a two-part vertex split")
    common(sp, "n", "k", "l")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_build_clique_sat)

    sp = sub.add_parser("brute-min", help="exhaustive minimum Berge-K_{1,l}-saturated hypergraph")
    common(sp, "n", "k", "l")
    sp.add_argument("--budget", type=int, default=1_000_000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_brute_min)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except _UsageError as exc:
        print(f"bergesat: error: {exc}", file=sys.stderr)
    except (HypergraphError, InvalidParams, TrialsExhausted, PatternTooLarge, BudgetExceeded,
            ValueError, OSError) as exc:
        print(f"bergesat: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
