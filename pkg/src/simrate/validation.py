"""Compare detected communities with ground truth and report per-edge layer support."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .community import Partition
from .integration import ConfigError, WeightedGraph
from .multiplex import MultiplexNetwork, UnknownLayerError


def overlap_rate(ex_com: set | frozenset, es_com: set | frozenset) -> float:
    """Fraction of the ground-truth community found inside the experiment community."""
    if not es_com:
        raise ValueError("ground-truth community is empty")
    return len(ex_com & es_com) / len(es_com)


@dataclass(frozen=True)
class OverlapRow:
    ex_community: int
    size: int
    best_es_community: int
    overlap: float


@dataclass(frozen=True)
class OverlapReport:
    rows: tuple[OverlapRow, ...]
    mean_overlap: float

    @property
    def max_overlap(self) -> float:
        return max(r.overlap for r in self.rows)

    @property
    def min_overlap(self) -> float:
        return min(r.overlap for r in self.rows)


def overlap_report(ex: Partition, es: Partition) -> OverlapReport:
    """Best-matching ground-truth community for every experiment community.

    Nodes missing from one side are simply never counted in an
    intersection. Ties go to the lowest ground-truth id.
    """
    if ex.community_count == 0 or es.community_count == 0:
        raise ValueError("both partitions need at least one community")
    es_coms = es.communities()
    rows = []
    for cid, ex_com in enumerate(ex.communities()):
        best_id, best_o = 0, -1.0
        for eid, es_com in enumerate(es_coms):
            o = overlap_rate(ex_com, es_com)
            if o > best_o:
                best_id, best_o = eid, o
        rows.append(OverlapRow(cid, len(ex_com), best_id, best_o))
    mean = math.fsum(r.overlap for r in rows) / len(rows)
    return OverlapReport(tuple(rows), mean)


@dataclass(frozen=True)
class EdgeFrequencyReport:
    rows: tuple[tuple[tuple[str, str], int], ...]
    mean_frequency: float | None
    layer_count: int


def edge_frequency(
    es_graph: WeightedGraph, net: MultiplexNetwork, reflection_layers: Sequence[str]
) -> EdgeFrequencyReport:
    """How many reflection layers contain each ground-truth edge."""
    if not reflection_layers:
        raise ConfigError("no reflection layers given")
    layers = []
    for name in reflection_layers:
        try:
            layers.append(net.layer(name).edges)
        except UnknownLayerError:
            raise ConfigError(f"unknown reflection layer {name!r}") from None
    rows = tuple(
        (pair, sum(1 for edges in layers if pair in edges))
        for pair in sorted(es_graph.edges)
    )
    mean = sum(c for _, c in rows) / len(rows) if rows else None
    return EdgeFrequencyReport(rows, mean, len(layers))


def _round3(x: float | None) -> float | None:
    return None if x is None else round(x, 3)


def write_reports(
    overlap: OverlapReport,
    freq: EdgeFrequencyReport,
    destination: str | Path,
    summary: Mapping[str, object] | None = None,
) -> list[Path]:
    """Write overlap.csv, edge_frequency.csv and summary.json; return their paths.

    ``summary`` adds extra keys (counts, seed, flags) to summary.json, which
    is written last.
    """
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)
    overlap_path = dest / "overlap.csv"
    freq_path = dest / "edge_frequency.csv"
    summary_path = dest / "summary.json"
    try:
        with open(overlap_path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["ex_community", "size", "best_es_community", "overlap"])
            for r in overlap.rows:
                w.writerow([r.ex_community, r.size, r.best_es_community, repr(r.overlap)])
        with open(freq_path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["node_a", "node_b", "frequency"])
            for (a, b), count in freq.rows:
                w.writerow([a, b, count])
        doc: dict[str, object] = {
            "mean_overlap": _round3(overlap.mean_overlap),
            "max_overlap": _round3(overlap.max_overlap),
            "min_overlap": _round3(overlap.min_overlap),
            "mean_frequency": _round3(freq.mean_frequency),
            "ex_community_count": len(overlap.rows),
        }
        doc.update(summary or {})
        with open(summary_path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed writing reports to {dest}: {exc}") from exc
    return [overlap_path, freq_path, summary_path]
