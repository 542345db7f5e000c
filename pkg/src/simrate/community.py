"""Weighted modularity and Louvain-style maximization.

Modularity of a partition of a weighted graph with total edge weight m and
node strengths s_i::

    Q = (1/2m) * sum_ij [w_ij - gamma * s_i * s_j / 2m] * delta(c_i, c_j)

Louvain alternates greedy local moves with coarsening each community into
a single node. Coarsened graphs carry self-loops; a self-loop of weight w
contributes 2w to its node's strength and w to its community's internal
weight, which keeps Q unchanged under aggregation.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .integration import WeightedGraph
from .multiplex import ParseError

MOVE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of nodes to communities ``0..c-1``.

    Ids are canonical: numbered by first appearance when nodes are visited
    in sorted label order. ``score`` caches the modularity when known.
    """

    assignment: Mapping[str, int]
    score: float | None = None
    _groups: tuple[frozenset[str], ...] = field(init=False, repr=False)

    def __post_init__(self):
        relabel: dict[int, int] = {}
        canon = {}
        for node in sorted(self.assignment):
            c = self.assignment[node]
            if c not in relabel:
                relabel[c] = len(relabel)
            canon[node] = relabel[c]
        groups: list[set[str]] = [set() for _ in relabel]
        for node, c in canon.items():
            groups[c].add(node)
        object.__setattr__(self, "assignment", canon)
        object.__setattr__(self, "_groups", tuple(frozenset(g) for g in groups))

    @classmethod
    def from_groups(
        cls, groups: Iterable[Iterable[str]], score: float | None = None
    ) -> "Partition":
        assignment: dict[str, int] = {}
        for cid, group in enumerate(groups):
            for node in group:
                if node in assignment:
                    raise ValueError(f"node {node!r} assigned twice")
                assignment[node] = cid
        return cls(assignment, score)

    @property
    def nodes(self) -> list[str]:
        return sorted(self.assignment)

    @property
    def community_count(self) -> int:
        return len(self._groups)

    def communities(self) -> list[frozenset[str]]:
        return list(self._groups)

    def groups(self) -> frozenset[frozenset[str]]:
        """Grouping without ids, for comparing partitions."""
        return frozenset(self._groups)

    def __getitem__(self, node: str) -> int:
        return self.assignment[node]

    def __len__(self) -> int:
        return len(self.assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.assignment == other.assignment and self.score == other.score

    def __repr__(self) -> str:
        return f"Partition(nodes={len(self)}, communities={self.community_count}, score={self.score})"


# -- indexed graph with self-loops (Louvain working representation) ----------


class IndexedGraph:
    """Integer-indexed weighted graph; ``loops[i]`` is node i's self-loop weight."""

    def __init__(self, n: int, adj: list[dict[int, float]], loops: list[float]):
        self.n = n
        self.adj = adj
        self.loops = loops
        self.strength = [2 * loops[i] + math.fsum(adj[i].values()) for i in range(n)]
        self.m2 = math.fsum(self.strength)  # 2m

    @classmethod
    def from_weighted(cls, graph: WeightedGraph, order: Sequence[str]) -> "IndexedGraph":
        pos = {label: i for i, label in enumerate(order)}
        adj: list[dict[int, float]] = [{} for _ in order]
        for (a, b), w in graph.edges.items():
            adj[pos[a]][pos[b]] = w
            adj[pos[b]][pos[a]] = w
        return cls(len(order), adj, [0.0] * len(order))


def indexed_modularity(g: IndexedGraph, membership: Sequence[int], resolution: float = 1.0) -> float:
    if g.m2 <= 0:
        raise ValueError("modularity is undefined for a graph without edge weight")
    # fsum throughout so that one all-inclusive community gives exactly 0
    inner: dict[int, list[float]] = {}
    tot: dict[int, list[float]] = {}
    for i in range(g.n):
        c = membership[i]
        tot.setdefault(c, []).append(g.strength[i])
        s = 2 * g.loops[i] + math.fsum(w for j, w in g.adj[i].items() if membership[j] == c)
        inner.setdefault(c, []).append(s)  # internal weight, doubled
    m2 = g.m2
    return math.fsum(
        math.fsum(inner[c]) / m2 - resolution * (math.fsum(tot[c]) / m2) ** 2 for c in tot
    )


def coarsen(g: IndexedGraph, membership: Sequence[int]) -> IndexedGraph:
    """Collapse each community (ids 0..c-1) into one node."""
    c = max(membership) + 1 if g.n else 0
    adj: list[dict[int, float]] = [{} for _ in range(c)]
    loops = [0.0] * c
    for i in range(g.n):
        ci = membership[i]
        loops[ci] += g.loops[i]
        for j, w in g.adj[i].items():
            if j < i:
                continue
            cj = membership[j]
            if ci == cj:
                loops[ci] += w
            else:
                adj[ci][cj] = adj[ci].get(cj, 0.0) + w
                adj[cj][ci] = adj[cj].get(ci, 0.0) + w
    return IndexedGraph(c, adj, loops)


def _renumber(membership: list[int]) -> list[int]:
    seen: dict[int, int] = {}
    return [seen.setdefault(c, len(seen)) for c in membership]


# -- public API --------------------------------------------------------------


def _check_graph(graph: WeightedGraph) -> None:
    if graph.edge_count == 0 or graph.total_weight <= 0:
        raise ValueError("graph has no edges; modularity is undefined")


def modularity(graph: WeightedGraph, partition: Partition, resolution: float = 1.0) -> float:
    _check_graph(graph)
    known = set(graph.nodes)
    for node in partition.assignment:
        if node not in known:
            raise ValueError(f"partition node {node!r} is not in the graph")
    for node in graph.active_nodes:
        if node not in partition.assignment:
            raise ValueError(f"node {node!r} is not covered by the partition")
    order = sorted(graph.nodes)
    g = IndexedGraph.from_weighted(graph, order)
    # uncovered isolated nodes get fresh ids; they add nothing to Q
    fresh = partition.community_count
    membership = []
    for node in order:
        if node in partition.assignment:
            membership.append(partition.assignment[node])
        else:
            membership.append(fresh)
            fresh += 1
    return indexed_modularity(g, membership, resolution)


SweepHook = Callable[[int, int, float, float, int], None]


def _local_moves(
    g: IndexedGraph,
    rng: random.Random,
    resolution: float,
    level: int,
    on_sweep: SweepHook | None,
) -> tuple[list[int], int]:
    """Greedy moves until a sweep changes nothing. Returns (membership, total moves)."""
    com = list(range(g.n))
    tot = list(g.strength)
    m2 = g.m2
    m = m2 / 2
    total_moves = 0
    sweep = 0
    order = list(range(g.n))
    while True:
        rng.shuffle(order)
        q_before = indexed_modularity(g, com, resolution) if on_sweep else 0.0
        moves = 0
        for i in order:
            ki = g.strength[i]
            ci = com[i]
            links: dict[int, float] = {}
            for j, w in g.adj[i].items():
                cj = com[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            scale = resolution * ki / m2
            own_gain = links.get(ci, 0.0) - scale * tot[ci]
            best_c, best_gain = ci, own_gain
            for c in sorted(links):
                gain = links[c] - scale * tot[c]
                if gain > best_gain + MOVE_TOL * m or (
                    abs(gain - best_gain) <= MOVE_TOL * m and c < best_c
                ):
                    best_c, best_gain = c, gain
            if best_c != ci and (best_gain - own_gain) / m > MOVE_TOL:
                com[i] = best_c
                moves += 1
            else:
                best_c = ci
            tot[best_c] += ki
        if on_sweep:
            on_sweep(level, sweep, q_before, indexed_modularity(g, com, resolution), moves)
        total_moves += moves
        sweep += 1
        if moves == 0:
            return _renumber(com), total_moves


def louvain(
    graph: WeightedGraph,
    seed: int,
    resolution: float = 1.0,
    on_sweep: SweepHook | None = None,
) -> Partition:
    """Louvain modularity maximization, deterministic for a given seed.

    Nodes are visited in a seeded shuffle of sorted label order each sweep.
    Equal gains go to the lowest community id. ``on_sweep(level, sweep,
    q_before, q_after, moves)`` is called after every sweep when given.
    Isolated nodes end up as singletons.
    """
    _check_graph(graph)
    rng = random.Random(seed)
    order = sorted(graph.nodes)
    g = IndexedGraph.from_weighted(graph, order)
    membership = list(range(g.n))
    level = 0
    while True:
        local, moved = _local_moves(g, rng, resolution, level, on_sweep)
        if moved == 0:
            break
        membership = [local[c] for c in membership]
        g = coarsen(g, local)
        level += 1
    part = Partition(dict(zip(order, membership)))
    return Partition(part.assignment, modularity(graph, part, resolution))


def exhaustive_best_partition(
    graph: WeightedGraph, max_nodes: int = 10, resolution: float = 1.0
) -> Partition:
    """Best partition by brute force over all set partitions of the active nodes.

    Enumerates restricted-growth strings in lexicographic order, so the
    first maximizer found is the lexicographically smallest. Isolated nodes
    are singletons.
    """
    _check_graph(graph)
    active = sorted(graph.active_nodes)
    n = len(active)
    if n > max_nodes:
        raise ValueError(f"{n} active nodes exceeds max_nodes={max_nodes}")
    pos = {label: i for i, label in enumerate(active)}
    earlier: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (a, b), w in graph.edges.items():
        i, j = pos[a], pos[b]
        if i < j:
            i, j = j, i
        earlier[i].append((j, w))
    strength = [graph.strength(label) for label in active]
    m = graph.total_weight
    m2 = 2 * m

    assign = [0] * n
    inner = [0.0] * n
    tot = [0.0] * n
    best_q = -math.inf
    best: list[int] = []

    def visit(i: int, blocks: int) -> None:
        nonlocal best_q, best
        if i == n:
            q = math.fsum(
                inner[c] / m - resolution * (tot[c] / m2) ** 2 for c in range(blocks)
            )
            if q > best_q + MOVE_TOL:
                best_q, best = q, assign[:]
            return
        for c in range(blocks + 1):
            add = 0.0
            for j, w in earlier[i]:
                if assign[j] == c:
                    add += w
            assign[i] = c
            inner[c] += add
            tot[c] += strength[i]
            visit(i + 1, max(blocks, c + 1))
            inner[c] -= add
            tot[c] -= strength[i]
            if c == blocks:
                inner[c] = 0.0
                tot[c] = 0.0

    visit(0, 0)
    assignment = dict(zip(active, best))
    nxt = max(best) + 1
    for node in graph.isolated_nodes:
        assignment[node] = nxt
        nxt += 1
    part = Partition(assignment)
    return Partition(part.assignment, modularity(graph, part, resolution))


# -- partition CSV -------------------------------------------------------------


def dumps_partition(partition: Partition, header: Mapping[str, object] | None = None) -> str:
    lines = []
    if header:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n")
    lines.append("node,community\n")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for node in partition.nodes:
        writer.writerow([node, partition.assignment[node]])
    lines.append(buf.getvalue())
    return "".join(lines)


def save_partition(
    partition: Partition, path: str | Path, header: Mapping[str, object] | None = None
) -> None:
    Path(path).write_text(dumps_partition(partition, header), encoding="utf-8")


def load_partition(path: str | Path) -> Partition:
    assignment: dict[str, int] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        rows = (line for line in fh if not line.startswith("#"))
        reader = csv.reader(rows)
        header = next(reader, None)
        if header != ["node", "community"]:
            raise ParseError(f"expected header node,community in {path}")
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(f"bad partition row {row!r} in {path}")
            try:
                assignment[row[0]] = int(row[1])
            except ValueError:
                raise ParseError(f"bad community id {row[1]!r} in {path}") from None
    return Partition(assignment)
