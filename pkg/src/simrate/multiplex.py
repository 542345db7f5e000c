"""Multiplex network data model and edge-list ingestion.

A multiplex network is a shared node registry plus an ordered list of
undirected, unweighted layers. Every registered node resolves in every
layer; a node without edges in a layer simply has an empty neighborhood.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

Pair = tuple[str, str]


class ParseError(ValueError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnknownLayerError(KeyError):
    def __str__(self) -> str:
        return f"unknown layer {self.args[0]!r}"


def canonical_pair(a: str, b: str) -> Pair:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Layer:
    name: str
    edges: frozenset[Pair]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


class MultiplexNetwork:
    """Shared node set with an ordered list of named layers.

    Immutable after construction. ``nodes`` is the label registry in
    insertion order; ``index(label)`` gives the dense integer id.
    """

    def __init__(self, nodes: Iterable[str], layers: Iterable[Layer]):
        self.nodes: tuple[str, ...] = tuple(nodes)
        self._index = {label: i for i, label in enumerate(self.nodes)}
        if len(self._index) != len(self.nodes):
            raise ValueError("node labels must be unique")
        self.layers: tuple[Layer, ...] = tuple(layers)
        self._layer_pos: dict[str, int] = {}
        for pos, layer in enumerate(self.layers):
            if layer.name in self._layer_pos:
                raise ValueError(f"duplicate layer name {layer.name!r}")
            self._layer_pos[layer.name] = pos
        self._adj: list[list[frozenset[int]]] = []
        for layer in self.layers:
            adj: list[set[int]] = [set() for _ in self.nodes]
            for a, b in layer.edges:
                if a == b:
                    raise ValueError(f"self-loop {a!r} in layer {layer.name!r}")
                if (a, b) != canonical_pair(a, b):
                    raise ValueError(f"non-canonical edge {(a, b)!r}")
                try:
                    ia, ib = self._index[a], self._index[b]
                except KeyError as exc:
                    raise ValueError(
                        f"edge endpoint {exc.args[0]!r} in layer {layer.name!r} "
                        "is not a registered node"
                    ) from None
                adj[ia].add(ib)
                adj[ib].add(ia)
            self._adj.append([frozenset(s) for s in adj])

    @classmethod
    def from_edges(
        cls, triples: Iterable[tuple[str, str, str]], nodes: Iterable[str] = ()
    ) -> "MultiplexNetwork":
        """Build from ``(layer, a, b)`` triples; duplicates and (b, a) repeats collapse."""
        registry: dict[str, None] = dict.fromkeys(nodes)
        layer_edges: dict[str, set[Pair]] = {}
        for layer, a, b in triples:
            if a == b:
                raise ValueError(f"self-loop {a!r} in layer {layer!r}")
            registry.setdefault(a)
            registry.setdefault(b)
            layer_edges.setdefault(layer, set()).add(canonical_pair(a, b))
        layers = [Layer(name, frozenset(e)) for name, e in layer_edges.items()]
        return cls(registry, layers)

    # -- lookup -----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    @property
    def layer_names(self) -> tuple[str, ...]:
        return tuple(layer.name for layer in self.layers)

    def index(self, label: str) -> int:
        return self._index[label]

    def has_node(self, label: str) -> bool:
        return label in self._index

    def layer_position(self, name: str) -> int:
        try:
            return self._layer_pos[name]
        except KeyError:
            raise UnknownLayerError(name) from None

    def layer(self, name: str) -> Layer:
        return self.layers[self.layer_position(name)]

    def adjacency(self, name: str) -> list[frozenset[int]]:
        """Index-based neighborhoods for one layer (shared, do not mutate)."""
        return self._adj[self.layer_position(name)]

    def neighbors(self, layer: str, node: str) -> set[str]:
        adj = self.adjacency(layer)
        if node not in self._index:
            raise KeyError(node)
        return {self.nodes[j] for j in adj[self._index[node]]}

    def degree(self, layer: str, node: str) -> int:
        return len(self.adjacency(layer)[self._index[node]])

    def has_edge(self, layer: str, a: str, b: str) -> bool:
        return canonical_pair(a, b) in self.layer(layer).edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiplexNetwork):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.layers == other.layers

    def __repr__(self) -> str:
        return (
            f"MultiplexNetwork(nodes={self.node_count}, "
            f"layers={list(self.layer_names)})"
        )


def layer_stats(net: MultiplexNetwork) -> list[tuple[str, int, int]]:
    """(layer name, nodes with degree >= 1, edge count) for every layer."""
    stats = []
    for layer, adj in zip(net.layers, net._adj):
        active = sum(1 for nbrs in adj if nbrs)
        stats.append((layer.name, active, layer.edge_count))
    return stats


def neighbors(net: MultiplexNetwork, layer: str, node: str) -> set[str]:
    return net.neighbors(layer, node)


# -- edge-list I/O ----------------------------------------------------------


def _parse_lines(lines: Iterable[str]) -> Iterator[tuple[str, str, str]]:
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                f"expected 3 tab-separated fields, got {len(fields)}", lineno
            )
        layer, a, b = (f.strip() for f in fields)
        if not layer or not a or not b:
            raise ParseError("empty field", lineno)
        if a == b:
            raise ParseError(f"self-loop on node {a!r}", lineno)
        yield layer, a, b


def load_multiplex(source: TextIO | Iterable[str] | str | Path) -> MultiplexNetwork:
    """Read the ``layer<TAB>a<TAB>b`` edge-list format.

    ``source`` may be a path or any iterable of lines (an open text stream
    qualifies). Layers and nodes keep first-seen order.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return MultiplexNetwork.from_edges(_parse_lines(fh))
    return MultiplexNetwork.from_edges(_parse_lines(source))


def loads_multiplex(text: str) -> MultiplexNetwork:
    return load_multiplex(io.StringIO(text))


def iter_edge_lines(net: MultiplexNetwork) -> Iterator[str]:
    for layer in net.layers:
        for a, b in sorted(layer.edges):
            yield f"{layer.name}\t{a}\t{b}\n"


def dumps_multiplex(net: MultiplexNetwork) -> str:
    return "".join(iter_edge_lines(net))


def save_multiplex(net: MultiplexNetwork, path: str | Path, header: str = "") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header.splitlines():
            fh.write(f"# {line}\n")
        fh.writelines(iter_edge_lines(net))
