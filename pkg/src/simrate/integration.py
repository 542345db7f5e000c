"""Collapse a multiplex network into one weighted graph.

Two builders live here: the rate network, whose edge weights are pair
similarity rates over a subset of layers, and the essentiality network,
a weighted union of designated ground-truth layers.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .multiplex import MultiplexNetwork, ParseError, UnknownLayerError, canonical_pair
from .similarity import DEFAULT_EMAX, SetSimilarity, all_pair_rates

DEFAULT_ESSENTIAL_WEIGHTS = {"friendship": 1.0, "kinship": 2.0, "soulmates": 3.5}


class ConfigError(ValueError):
    pass


class WeightedGraph:
    """Undirected graph with strictly positive edge weights and no self-loops.

    ``nodes`` is the registry (it may include isolated nodes); edges are
    keyed by the label-sorted pair.
    """

    def __init__(
        self,
        nodes: Iterable[str],
        edges: Mapping[tuple[str, str], float],
        meta: Mapping[str, str] | None = None,
    ):
        self.nodes: tuple[str, ...] = tuple(dict.fromkeys(nodes))
        known = set(self.nodes)
        self.edges: dict[tuple[str, str], float] = {}
        for (a, b), w in edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) has an unregistered endpoint")
            w = float(w)
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"edge ({a!r}, {b!r}) weight must be positive, got {w}")
            key = canonical_pair(a, b)
            if key in self.edges:
                raise ValueError(f"duplicate edge {key!r}")
            self.edges[key] = w
        self.meta: dict[str, str] = dict(meta or {})
        self._strength: dict[str, float] = dict.fromkeys(self.nodes, 0.0)
        self._adj: dict[str, dict[str, float]] = {n: {} for n in self.nodes}
        for (a, b), w in self.edges.items():
            self._strength[a] += w
            self._strength[b] += w
            self._adj[a][b] = w
            self._adj[b][a] = w

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        """m: sum of edge weights, each edge counted once."""
        return math.fsum(self.edges.values())

    @property
    def active_nodes(self) -> list[str]:
        return [n for n in self.nodes if self._adj[n]]

    @property
    def isolated_nodes(self) -> list[str]:
        return [n for n in self.nodes if not self._adj[n]]

    def strength(self, node: str) -> float:
        return self._strength[node]

    def neighbors(self, node: str) -> dict[str, float]:
        return self._adj[node]

    def weight(self, a: str, b: str) -> float:
        return self.edges.get(canonical_pair(a, b), 0.0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.edges == other.edges

    def __repr__(self) -> str:
        return f"WeightedGraph(nodes={len(self.nodes)}, edges={self.edge_count})"


def _check_layers(net: MultiplexNetwork, names: Iterable[str]) -> None:
    for name in names:
        net.layer_position(name)


def build_rate_network(
    net: MultiplexNetwork,
    layer_subset: Sequence[str] | None = None,
    similarity: str | SetSimilarity = "jaccard",
    emax: float = DEFAULT_EMAX,
) -> WeightedGraph:
    """Weighted graph with one edge per pair of nonzero similarity rate.

    All-zero similarity vectors rate 0 and produce no edge. Every node of
    ``net`` stays in the registry; nodes left without edges show up in
    ``isolated_nodes``.
    """
    layers = list(net.layer_names if layer_subset is None else layer_subset)
    if len(layers) < 2:
        raise ValueError(f"rate network needs at least 2 layers, got {len(layers)}")
    _check_layers(net, layers)
    edges = {}
    for pr in all_pair_rates(net, layers, similarity, emax):
        if pr.rate > 0:
            edges[pr.pair] = pr.rate
    meta = {
        "source_layers": ",".join(layers),
        "similarity": similarity if isinstance(similarity, str) else similarity.__name__,
        "emax": repr(float(emax)),
    }
    return WeightedGraph(sorted(net.nodes), edges, meta)


def build_essentiality_network(
    net: MultiplexNetwork, weights: Mapping[str, float]
) -> WeightedGraph:
    """Sum of per-layer weights over the layers containing each pair.

    Only nodes touched by some weighted layer are kept.
    """
    if not weights:
        raise ConfigError("essentiality weights are empty")
    for name, w in weights.items():
        try:
            net.layer_position(name)
        except UnknownLayerError:
            raise ConfigError(f"essentiality weight for unknown layer {name!r}") from None
        if not w > 0:
            raise ConfigError(f"essentiality weight for {name!r} must be positive")
    edges: dict[tuple[str, str], float] = {}
    for name, w in weights.items():
        for pair in net.layer(name).edges:
            edges[pair] = edges.get(pair, 0.0) + float(w)
    active = sorted({n for pair in edges for n in pair})
    meta = {
        "source_layers": ",".join(weights),
        "layer_weights": ",".join(f"{k}={v!r}" for k, v in weights.items()),
    }
    return WeightedGraph(active, edges, meta)


# -- weighted-graph file format ---------------------------------------------


def format_weight(w: float) -> str:
    return format(w, ".9g")


def dumps_weighted_graph(graph: WeightedGraph) -> str:
    lines = [f"# {key}: {value}\n" for key, value in graph.meta.items()]
    lines += [f"# isolated\t{node}\n" for node in sorted(graph.isolated_nodes)]
    for (a, b) in sorted(graph.edges):
        lines.append(f"{a}\t{b}\t{format_weight(graph.edges[(a, b)])}\n")
    return "".join(lines)


def save_weighted_graph(graph: WeightedGraph, path: str | Path) -> None:
    Path(path).write_text(dumps_weighted_graph(graph), encoding="utf-8")


def load_weighted_graph(path: str | Path) -> WeightedGraph:
    """Read ``a<TAB>b<TAB>weight`` lines; ``# isolated<TAB>x`` lines register x."""
    nodes: dict[str, None] = {}
    edges: dict[tuple[str, str], float] = {}
    meta: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("isolated\t"):
                    nodes.setdefault(body.split("\t", 1)[1])
                elif ": " in body:
                    key, value = body.split(": ", 1)
                    meta[key] = value
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(
                    f"expected 3 tab-separated fields, got {len(fields)}", lineno
                )
            a, b, w = fields
            if a == b:
                raise ParseError(f"self-loop on node {a!r}", lineno)
            try:
                weight = float(w)
            except ValueError:
                raise ParseError(f"bad weight {w!r}", lineno) from None
            if not weight > 0:
                raise ParseError(f"weight must be positive, got {w!r}", lineno)
            key = canonical_pair(a, b)
            if key in edges:
                raise ParseError(f"duplicate edge {key!r}", lineno)
            nodes.setdefault(a)
            nodes.setdefault(b)
            edges[key] = weight
    return WeightedGraph(sorted(nodes), edges, meta)
