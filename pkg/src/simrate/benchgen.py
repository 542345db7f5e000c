"""Synthetic multiplex networks with planted communities."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .community import Partition, save_partition
from .integration import ConfigError
from .multiplex import Layer, MultiplexNetwork, save_multiplex


@dataclass(frozen=True)
class PlantedSpec:
    n: int = 40
    layers: int = 4
    communities: tuple[int, ...] = (20, 20)
    p_in: float = 0.6
    p_out: float = 0.05
    persistence: float = 1.0
    seed: int = 0

    def validate(self) -> None:
        if self.layers < 2:
            raise ConfigError(f"need at least 2 layers, got {self.layers}")
        if not self.communities or any(s <= 0 for s in self.communities):
            raise ConfigError("community sizes must be positive")
        if sum(self.communities) != self.n:
            raise ConfigError(
                f"community sizes sum to {sum(self.communities)}, expected n={self.n}"
            )
        for name in ("p_in", "p_out", "persistence"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")

    @property
    def structured_layers(self) -> int:
        return round(self.persistence * self.layers)


def node_labels(n: int) -> list[str]:
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def generate(spec: PlantedSpec) -> tuple[MultiplexNetwork, Partition]:
    """Sample the layers; the first ``structured_layers`` carry the blocks.

    Structured layers draw intra-block pairs with ``p_in`` and the rest with
    ``p_out``; noise layers draw every pair with ``p_out``.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    labels = node_labels(spec.n)
    block = []
    for cid, size in enumerate(spec.communities):
        block += [cid] * size
    triples = []
    for layer in range(spec.layers):
        name = f"L{layer + 1}"
        structured = layer < spec.structured_layers
        for i in range(spec.n):
            for j in range(i + 1, spec.n):
                p = spec.p_in if structured and block[i] == block[j] else spec.p_out
                if rng.random() < p:
                    triples.append((name, labels[i], labels[j]))
    drawn = MultiplexNetwork.from_edges(triples, nodes=labels)
    # layers without any edge are still part of the network
    present = {layer.name: layer for layer in drawn.layers}
    layers = [
        present.get(f"L{k + 1}", Layer(f"L{k + 1}", frozenset()))
        for k in range(spec.layers)
    ]
    net = MultiplexNetwork(labels, layers)
    planted = Partition(dict(zip(labels, block)))
    return net, planted


def write_dataset(spec: PlantedSpec, out_dir: str | Path) -> list[Path]:
    """Write ``edges.tsv`` and ``planted.csv``; returns both paths."""
    net, planted = generate(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    edges_path = out / "edges.tsv"
    planted_path = out / "planted.csv"
    header = (
        f"planted partition: n={spec.n} layers={spec.layers} "
        f"communities={','.join(map(str, spec.communities))} p_in={spec.p_in} "
        f"p_out={spec.p_out} persistence={spec.persistence} seed={spec.seed}"
    )
    save_multiplex(net, edges_path, header=header)
    save_partition(planted, planted_path, {"seed": spec.seed, "planted": "true"})
    return [edges_path, planted_path]
