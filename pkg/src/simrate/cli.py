"""Similarity-rate analysis of multiplex networks from the command line.

Exit codes: 0 success, 1 runtime or data error, 2 usage, configuration or
parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import benchgen
from .community import load_partition, louvain, save_partition
from .config import RunConfig, load_config, parse_layer_list, parse_weights
from .integration import (
    ConfigError,
    build_essentiality_network,
    build_rate_network,
    load_weighted_graph,
    save_weighted_graph,
)
from .multiplex import ParseError, layer_stats, load_multiplex
from .pipeline import StageError, reflection_layers, run_pipeline
from .similarity import all_pair_rates, write_pair_rates_csv
from .validation import EdgeFrequencyReport, edge_frequency, overlap_report, write_reports

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat JSON run configuration")
    p.add_argument("--input", help="multiplex edge-list file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--emax", type=float, help="exponent clamp for similarity rates")
    p.add_argument("--reflection-layers", type=parse_layer_list, metavar="A,B,C")
    p.add_argument("--essential-weights", type=parse_weights, metavar="NAME=W,...")
    p.add_argument("--resolution", type=float)
    p.add_argument("--similarity", help="local similarity (jaccard, sorensen)")
    p.add_argument("--ground-truth", help="partition CSV used instead of the essentiality network")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simrate", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="per-layer active node and edge counts")
    p.add_argument("path", nargs="?", help="edge-list file (or use --input)")
    _common(p)

    p = sub.add_parser("rates", help="per-pair similarity diagnostics (pair_rates.csv)")
    _common(p)

    p = sub.add_parser("aggregate", help="write rate and essentiality networks")
    _common(p)

    p = sub.add_parser("detect", help="Louvain on a weighted-graph file")
    p.add_argument("--graph", required=True, help="weighted-graph file")
    _common(p)

    p = sub.add_parser("validate", help="overlap and edge-frequency reports")
    p.add_argument("--ex", required=True, help="experiment partition CSV")
    p.add_argument("--es", required=True, help="ground-truth partition CSV")
    p.add_argument("--es-graph", help="essentiality weighted-graph file")
    _common(p)

    p = sub.add_parser("pipeline", help="run every stage")
    _common(p)

    p = sub.add_parser("synth", help="generate a planted-partition multiplex network")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--layers", type=int, default=4)
    p.add_argument("--communities", default="20,20", help="comma-separated sizes")
    p.add_argument("--p-in", type=float, default=0.6)
    p.add_argument("--p-out", type=float, default=0.05)
    p.add_argument("--persistence", type=float, default=1.0)
    _common(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    return base.merged(
        input=args.input,
        out=args.out,
        seed=args.seed,
        emax=args.emax,
        reflection_layers=args.reflection_layers,
        essential_weights=args.essential_weights,
        resolution=args.resolution,
        similarity=args.similarity,
        ground_truth=args.ground_truth,
    )


def _need_input(cfg: RunConfig) -> str:
    if cfg.input is None:
        raise ConfigError("--input is required")
    return cfg.input


def cmd_stats(args, cfg: RunConfig) -> int:
    path = args.path or _need_input(cfg)
    net = load_multiplex(path)
    print("layer\tnodes\tedges")
    for name, nodes, edges in layer_stats(net):
        print(f"{name}\t{nodes}\t{edges}")
    return EXIT_OK


def cmd_rates(args, cfg: RunConfig) -> int:
    net = load_multiplex(_need_input(cfg))
    layers = reflection_layers(net, cfg)
    rates = all_pair_rates(net, layers, cfg.similarity, cfg.emax)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "pair_rates.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_pair_rates_csv(rates, len(layers), fh)
    print(path)
    return EXIT_OK


def cmd_aggregate(args, cfg: RunConfig) -> int:
    net = load_multiplex(_need_input(cfg))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    layers = reflection_layers(net, cfg)
    rate_net = build_rate_network(net, layers, cfg.similarity, cfg.emax)
    save_weighted_graph(rate_net, out / "rate_network.tsv")
    print(out / "rate_network.tsv")
    weights = cfg.resolved_essential_weights
    if weights:
        es = build_essentiality_network(net, weights)
        save_weighted_graph(es, out / "essentiality_network.tsv")
        print(out / "essentiality_network.tsv")
    return EXIT_OK


def cmd_detect(args, cfg: RunConfig) -> int:
    graph = load_weighted_graph(args.graph)
    part = louvain(graph, cfg.seed, cfg.resolution)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{Path(args.graph).stem}_partition.csv"
    save_partition(
        part, path, {"seed": cfg.seed, "resolution": cfg.resolution, "modularity": repr(part.score)}
    )
    print(path)
    return EXIT_OK


def cmd_validate(args, cfg: RunConfig) -> int:
    ex, es = load_partition(args.ex), load_partition(args.es)
    overlap = overlap_report(ex, es)
    summary: dict = {"es_community_count": es.community_count, "seed": cfg.seed}
    if args.es_graph:
        es_graph = load_weighted_graph(args.es_graph)
        net = load_multiplex(_need_input(cfg))
        freq = edge_frequency(es_graph, net, reflection_layers(net, cfg))
        summary.update(es_node_count=len(es_graph.active_nodes), es_edge_count=es_graph.edge_count)
    else:
        freq = EdgeFrequencyReport((), None, 0)
        summary.update(es_node_count=len(es), es_edge_count=None)
    for path in write_reports(overlap, freq, cfg.out, summary):
        print(path)
    return EXIT_OK


def cmd_pipeline(args, cfg: RunConfig) -> int:
    result = run_pipeline(cfg)
    for path in result.manifest:
        print(path)
    return EXIT_OK


def cmd_synth(args, cfg: RunConfig) -> int:
    try:
        sizes = tuple(int(s) for s in args.communities.split(","))
    except ValueError:
        raise ConfigError(f"bad --communities {args.communities!r}") from None
    spec = benchgen.PlantedSpec(
        n=args.n,
        layers=args.layers,
        communities=sizes,
        p_in=args.p_in,
        p_out=args.p_out,
        persistence=args.persistence,
        seed=cfg.seed,
    )
    for path in benchgen.write_dataset(spec, cfg.out):
        print(path)
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "rates": cmd_rates,
    "aggregate": cmd_aggregate,
    "detect": cmd_detect,
    "validate": cmd_validate,
    "pipeline": cmd_pipeline,
    "synth": cmd_synth,
}


def _exit_code(exc: BaseException) -> int:
    return EXIT_USAGE if isinstance(exc, (ConfigError, ParseError)) else EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc.cause)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
