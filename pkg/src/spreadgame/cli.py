"""Command-line entry point.

Subcommands: gen, simulate, jordan, dis, tobs, best-response, nash,
experiment.  Validation problems exit with code 2, runtime failures with 1.
Rational quantities print as num/den unless --decimal is given, so exact
values survive shell pipelines.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path

from . import experiments as exp
from .dis import binary_search_tobs, build_dis
from .game import GameConfig, best_response_admin, best_response_source, find_nash
from .graph import (bfs_spanning_tree, eccentricity, generate_random_tree,
                    generate_scale_free, jordan_centers, load_edge_list,
                    write_edge_list)
from .spread import (RateBounds, max_rate_strategy, read_strategy_csv,
                     simulate, write_outcome_csv, write_strategy_csv)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _bounds(text: str) -> RateBounds:
    return RateBounds([_fraction(tok) for tok in text.split(",")])


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",")]


def _network_args(parser: argparse.ArgumentParser, gen: bool = True) -> None:
    parser.add_argument("--network", metavar="FILE", help="edge-list file to load")
    if gen:
        parser.add_argument("--gen", choices=["tree", "ba"],
                            help="generate the network instead of loading one")
        parser.add_argument("--n", type=int, default=1000, help="node count")
        parser.add_argument("--degrees", type=_int_list, default=[2, 3],
                            help="degree set for --gen tree (comma separated)")
        parser.add_argument("--m", type=int, default=2,
                            help="attachments per node for --gen ba")
        parser.add_argument("--seed", type=int, help="generator seed")


def _resolve_network(args):
    if getattr(args, "network", None):
        with open(args.network) as fh:
            return load_edge_list(fh)
    if getattr(args, "gen", None):
        if args.seed is None:
            raise ValueError("--gen requires --seed")
        if args.gen == "tree":
            return generate_random_tree(args.n, args.degrees, args.seed)
        return generate_scale_free(args.n, args.m, args.seed)
    raise ValueError("need either --network FILE or --gen {tree,ba}")


def _read_outcome_infected(path: str) -> list[int]:
    with open(path) as fh:
        reader = csv.DictReader(fh)
        return [int(row["node"]) for row in reader if row["infected"] == "1"]


def _game_config(args) -> GameConfig:
    kwargs = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            base = GameConfig.load(fh)
        kwargs = {k: getattr(base, k) for k in
                  ("g_s", "c_s", "g_a", "c_a", "c_s_kind", "g_a_kind", "c_a_kind")}
    for flag, key in (("gs", "g_s"), ("cs", "c_s"), ("ga", "g_a"), ("ca", "c_a")):
        value = getattr(args, flag, None)
        if value is not None:
            kwargs[key] = value
    return GameConfig(**kwargs)


def _cmd_gen(args) -> int:
    if args.gen is None:
        raise ValueError("gen needs --gen {tree,ba}")
    net = _resolve_network(args)
    with open(args.out, "w") as fh:
        write_edge_list(net, fh)
    print(f"wrote {net.node_count} nodes, {net.edge_count} edges to {args.out}")
    return 0


def _cmd_simulate(args) -> int:
    net = _resolve_network(args)
    tree = bfs_spanning_tree(net, args.source)
    if args.strategy:
        with open(args.strategy) as fh:
            strategy = read_strategy_csv(tree, fh)
    else:
        strategy = max_rate_strategy(tree, args.lambda_bar)
    outcome = simulate(strategy, args.t, args.lambda_bar)
    with open(args.out, "w") as fh:
        write_outcome_csv(outcome, fh)
    margin = outcome.safety_margin
    print(f"infected={outcome.size} safety_margin={margin} out={args.out}")
    return 0


def _cmd_jordan(args) -> int:
    net = _resolve_network(args)
    if args.outcome:
        infected = _read_outcome_infected(args.outcome)
    elif args.infected and args.infected != "all":
        infected = _int_list(args.infected)
    else:
        infected = list(range(net.node_count))
    centers = sorted(jordan_centers(net, infected))
    print(" ".join(str(c) for c in centers))
    if args.source is not None:
        margin = min(eccentricity(net, args.source, [c]) for c in centers)
        print(f"safety_margin={margin}")
    return 0


def _cmd_dis(args) -> int:
    net = _resolve_network(args)
    tree = bfs_spanning_tree(net, args.source)
    plan = build_dis(tree, args.lambda_bar, args.t, args.ds)
    with open(args.out, "w") as fh:
        write_strategy_csv(plan.strategy, fh)
    print("d_t,d_s,t,infected_count,path_weight")
    print(f"{plan.d_t},{plan.d_s},{plan.t},{plan.size},{plan.weight}")
    return 0


def _cmd_tobs(args) -> int:
    net = _resolve_network(args)
    tree = bfs_spanning_tree(net, args.source)
    t_obs, plan = binary_search_tobs(tree, args.lambda_bar, args.ds, args.nobs)
    print(float(t_obs) if args.decimal else t_obs)
    print(f"infected={plan.size}")
    return 0


def _cmd_best_response(args) -> int:
    net = _resolve_network(args)
    tree = bfs_spanning_tree(net, args.source)
    cfg = _game_config(args)
    if args.player == "source":
        if args.da is None:
            raise ValueError("--player source needs --da")
        labels = best_response_source(cfg, args.da, tree, args.lambda_bar, args.t)
        print(" ".join(f"L{d}" for d in labels))
    else:
        if args.ds is None:
            raise ValueError("--player admin needs --ds")
        plan = build_dis(tree, args.lambda_bar, args.t, args.ds)
        outcome = simulate(plan.strategy, args.t, args.lambda_bar)
        radii = best_response_admin(cfg, outcome)
        print(" ".join(str(r) for r in radii))
    return 0


def _cmd_nash(args) -> int:
    net = _resolve_network(args)
    tree = bfs_spanning_tree(net, args.source)
    cfg = _game_config(args)
    report = find_nash(cfg, tree, args.lambda_bar, args.t)
    print(report.summary())
    if args.out:
        with open(args.out, "w") as fh:
            report.to_csv(fh)
        print(f"grid written to {args.out}")
    return 0


def _experiment_config(path: str) -> dict:
    """Flat key=value file mapped onto ExperimentSpec fields."""
    parsers = {"family": str, "n": int, "degrees": lambda v: tuple(_int_list(v)),
               "ba_m": int, "edge_list": str, "t_obs": _fraction,
               "bounds": _bounds, "runs": int, "base_seed": int,
               "alphas": lambda v: tuple(_int_list(v)), "workers": int,
               "g_s": float, "c_s": float, "g_a": float, "c_a": float,
               "max_redraws": int}
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in parsers:
                raise ValueError(f"{path}:{lineno}: unknown field {key!r}")
            out[key] = parsers[key](value)
    return out


def _cmd_experiment(args) -> int:
    # precedence: explicit flag > config file > ExperimentSpec default
    spec_kwargs = _experiment_config(args.config) if args.config else {}
    flag_map = {"family": args.family, "n": args.n, "ba_m": args.m,
                "t_obs": args.tobs, "bounds": args.lambda_bar,
                "runs": args.runs, "base_seed": args.seed,
                "workers": args.workers,
                "degrees": tuple(args.degrees) if args.degrees else None,
                "alphas": tuple(args.alphas) if args.alphas else None,
                "g_s": args.gs, "c_s": args.cs, "g_a": args.ga, "c_a": args.ca}
    for key, value in flag_map.items():
        if value is not None:
            spec_kwargs[key] = value
    if spec_kwargs.get("family") == "file" and args.network:
        spec_kwargs["edge_list"] = args.network
    if "base_seed" not in spec_kwargs:
        raise ValueError("experiment needs --seed (or base_seed in --config)")
    spec = exp.ExperimentSpec(**spec_kwargs)
    runners = {"dis-vs-ad": exp.run_dis_vs_ad,
               "br-source": exp.run_best_response_source,
               "br-admin": exp.run_best_response_admin,
               "incomplete-obs": exp.run_incomplete_obs}
    result = runners[args.kind](spec)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"{args.kind.replace('-', '_')}.csv"
    with open(out_path, "w") as fh:
        result.write_csv(fh)
    print(f"{len(result.rows)} rows -> {out_path} "
          f"(redraws: {result.redraws}, {100 * result.redraw_fraction:.2f}%)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadgame",
        description="Infection spreading vs. source identification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated network as an edge list")
    _network_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("simulate", help="run a spread and export the outcome")
    _network_args(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--lambda-bar", type=_bounds, default=RateBounds([1]))
    p.add_argument("--strategy", help="strategy CSV (default: all rates at bound)")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("jordan", help="print Jordan centers of an infected set")
    _network_args(p)
    p.add_argument("--infected", default="all",
                   help="'all' or comma-separated node ids")
    p.add_argument("--outcome", help="outcome CSV to take the infected set from")
    p.add_argument("--source", type=int, help="also print the safety margin")
    p.set_defaults(fn=_cmd_jordan)

    p = sub.add_parser("dis", help="plan a dominant infection strategy")
    _network_args(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--ds", type=int, required=True)
    p.add_argument("--lambda-bar", type=_bounds, default=RateBounds([1]))
    p.add_argument("--out", required=True, help="strategy CSV path")
    p.set_defaults(fn=_cmd_dis)

    p = sub.add_parser("tobs", help="observation time for a threshold")
    _network_args(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--ds", type=int, required=True)
    p.add_argument("--nobs", type=int, required=True)
    p.add_argument("--lambda-bar", type=_bounds, default=RateBounds([1]))
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(fn=_cmd_tobs)

    p = sub.add_parser("best-response", help="argmax strategies for one player")
    _network_args(p)
    p.add_argument("--player", choices=["source", "admin"], required=True)
    p.add_argument("--source", type=int, required=True, dest="source")
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--da", type=int)
    p.add_argument("--ds", type=int)
    p.add_argument("--lambda-bar", type=_bounds, default=RateBounds([1]))
    for flag in ("gs", "cs", "ga", "ca"):
        p.add_argument(f"--{flag}", type=float)
    p.add_argument("--config", help="game config file (key=value lines)")
    p.set_defaults(fn=_cmd_best_response)

    p = sub.add_parser("nash", help="equilibrium report for the game")
    _network_args(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--lambda-bar", type=_bounds, default=RateBounds([1]))
    for flag in ("gs", "cs", "ga", "ca"):
        p.add_argument(f"--{flag}", type=float)
    p.add_argument("--config", help="game config file (key=value lines)")
    p.add_argument("--out", help="write the utility grid CSV here")
    p.set_defaults(fn=_cmd_nash)

    p = sub.add_parser("experiment", help="run a harness study, write CSV")
    p.add_argument("--kind", required=True,
                   choices=["dis-vs-ad", "br-source", "br-admin", "incomplete-obs"])
    p.add_argument("--family", choices=["tree", "ba", "file"])
    p.add_argument("--network", help="edge-list file for --family file")
    p.add_argument("--n", type=int)
    p.add_argument("--degrees", type=_int_list)
    p.add_argument("--m", type=int)
    p.add_argument("--tobs", type=_fraction)
    p.add_argument("--lambda-bar", type=_bounds)
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--alphas", type=_int_list)
    p.add_argument("--workers", type=int)
    for flag in ("gs", "cs", "ga", "ca"):
        p.add_argument(f"--{flag}", type=float)
    p.add_argument("--config", help="flat key=value experiment spec file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(fn=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
