"""End-to-end run: load, rate network, detection, validation, reports."""

from __future__ import annotations

import contextlib
import logging
from dataclasses import dataclass
from pathlib import Path

from .community import Partition, load_partition, louvain, save_partition
from .config import RunConfig
from .integration import (
    ConfigError,
    WeightedGraph,
    build_essentiality_network,
    build_rate_network,
    save_weighted_graph,
)
from .multiplex import MultiplexNetwork, load_multiplex
from .validation import EdgeFrequencyReport, edge_frequency, overlap_report, write_reports

log = logging.getLogger(__name__)


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


@contextlib.contextmanager
def stage(name: str):
    log.info("stage %s", name)
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def reflection_layers(net: MultiplexNetwork, config: RunConfig) -> list[str]:
    """Configured reflection layers, else every layer that is not essential."""
    if config.reflection_layers:
        layers = list(config.reflection_layers)
        for name in layers:
            if name not in net.layer_names:
                raise ConfigError(f"unknown reflection layer {name!r}")
        return layers
    essential = set(config.resolved_essential_weights)
    return [name for name in net.layer_names if name not in essential]


@dataclass
class PipelineResult:
    rate_network: WeightedGraph
    es_graph: WeightedGraph | None
    ex_partition: Partition
    es_partition: Partition
    manifest: list[Path]
    summary: dict


def run_pipeline(config: RunConfig, net: MultiplexNetwork | None = None) -> PipelineResult:
    """Run every stage and write outputs under ``config.out``.

    ``summary.json`` is written last and marks completion.
    """
    out = Path(config.out)
    with stage("load"):
        if net is None:
            if config.input is None:
                raise ConfigError("no input file configured")
            net = load_multiplex(config.input)
        out.mkdir(parents=True, exist_ok=True)
    with stage("rates"):
        layers = reflection_layers(net, config)
        rate_net = build_rate_network(net, layers, config.similarity, config.emax)
        rate_path = out / "rate_network.tsv"
        save_weighted_graph(rate_net, rate_path)
    manifest = [rate_path]

    es_graph = None
    with stage("essentiality"):
        weights = config.resolved_essential_weights
        if weights:
            es_graph = build_essentiality_network(net, weights)
            es_path = out / "essentiality_network.tsv"
            save_weighted_graph(es_graph, es_path)
            manifest.append(es_path)

    header = {"seed": config.seed, "resolution": config.resolution}
    with stage("detect"):
        ex = louvain(rate_net, config.seed, config.resolution)
        ex_path = out / "ex_partition.csv"
        save_partition(ex, ex_path, {**header, "modularity": repr(ex.score)})
        manifest.append(ex_path)
        if config.ground_truth is not None:
            es = load_partition(config.ground_truth)
        elif es_graph is not None:
            es = louvain(es_graph, config.seed, config.resolution)
        else:
            raise ConfigError("need essentiality weights or a ground_truth partition")
        es_path = out / "es_partition.csv"
        save_partition(es, es_path, {**header, "modularity": repr(es.score)})
        manifest.append(es_path)

    with stage("validate"):
        overlap = overlap_report(ex, es)
        if es_graph is not None:
            freq = edge_frequency(es_graph, net, layers)
        else:
            freq = EdgeFrequencyReport((), None, len(layers))
        flags = []
        if es_graph is not None and config.expected_es_edge_counts is not None:
            if es_graph.edge_count not in config.expected_es_edge_counts:
                flags.append(
                    f"es_edge_count {es_graph.edge_count} not in "
                    f"{sorted(config.expected_es_edge_counts)}"
                )
        summary = {
            "es_community_count": es.community_count,
            "es_node_count": len(es_graph.active_nodes) if es_graph else len(es),
            "es_edge_count": es_graph.edge_count if es_graph else None,
            "rate_edge_count": rate_net.edge_count,
            "rate_isolated_nodes": len(rate_net.isolated_nodes),
            "reflection_layers": layers,
            "emax": config.emax,
            "resolution": config.resolution,
            "seed": config.seed,
            "flags": flags,
        }
        manifest += write_reports(overlap, freq, out, summary)
    for flag in flags:
        log.warning("discrepancy: %s", flag)
    return PipelineResult(rate_net, es_graph, ex, es, manifest, summary)
