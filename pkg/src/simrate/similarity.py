"""Per-layer local similarity, least-squares trend fitting and the similarity rate.

For a node pair, the local similarity in each layer forms a vector. The
vector is sorted ascending, a line ``y = k*x + b`` is fitted through the
points ``(1, v1), ..., (n, vn)``, and the pair's rate is ``exp(b/k)`` with a
small case table for the degenerate fits. A high rate means the pair's
similarity is large relative to how much it varies between layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .multiplex import MultiplexNetwork, canonical_pair

DEFAULT_EMAX = 50.0
TIE_EPS = 1e-12

# Node-set similarity: (neighbors of u, neighbors of v) -> value in [0, 1].
SetSimilarity = Callable[[frozenset, frozenset], float]


def jaccard_sets(nu: frozenset | set, nv: frozenset | set) -> float:
    union = len(nu | nv)
    if union == 0:
        return 0.0
    return len(nu & nv) / union


def sorensen_sets(nu: frozenset | set, nv: frozenset | set) -> float:
    total = len(nu) + len(nv)
    if total == 0:
        return 0.0
    return 2 * len(nu & nv) / total


SIMILARITIES: dict[str, SetSimilarity] = {
    "jaccard": jaccard_sets,
    "sorensen": sorensen_sets,
}


def get_similarity(name: str) -> SetSimilarity:
    try:
        return SIMILARITIES[name]
    except KeyError:
        raise ValueError(
            f"unknown similarity {name!r}; choose from {sorted(SIMILARITIES)}"
        ) from None


def jaccard(net: MultiplexNetwork, layer: str, u: str, v: str) -> float:
    """Jaccard index of the open neighborhoods of ``u`` and ``v`` in ``layer``.

    Zero when both neighborhoods are empty.
    """
    if u == v:
        raise ValueError("similarity of a node with itself is undefined")
    adj = net.adjacency(layer)
    return jaccard_sets(adj[net.index(u)], adj[net.index(v)])


@dataclass(frozen=True)
class SimilarityVector:
    pair: tuple[str, str]
    values: tuple[float, ...]

    def sorted_values(self) -> tuple[float, ...]:
        return tuple(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)


def similarity_vector(
    net: MultiplexNetwork,
    u: str,
    v: str,
    layers: Sequence[str] | None = None,
    similarity: str | SetSimilarity = "jaccard",
) -> SimilarityVector:
    """Local similarity of (u, v) in each layer, in layer order."""
    if u == v:
        raise ValueError("similarity of a node with itself is undefined")
    fn = get_similarity(similarity) if isinstance(similarity, str) else similarity
    names = net.layer_names if layers is None else layers
    iu, iv = net.index(u), net.index(v)
    values = []
    for name in names:
        adj = net.adjacency(name)
        values.append(fn(adj[iu], adj[iv]))
    return SimilarityVector(canonical_pair(u, v), tuple(values))


@dataclass(frozen=True)
class LineFit:
    k: float
    b: float
    n: int


def fit_line(values: Sequence[float]) -> LineFit:
    """Least-squares line through ``(i, values[i-1])`` for ``i = 1..n``.

    Normal equations with the abscissae fixed to 1..n, so the slope
    reduces to ``sum((i - xbar) * y_i) / Sxx`` with ``Sxx = n(n^2-1)/12``.
    """
    n = len(values)
    if n < 2:
        raise ValueError(f"a slope needs at least 2 points, got {n}")
    xbar = (n + 1) / 2
    sxx = n * (n * n - 1) / 12
    ybar = math.fsum(values) / n
    sxy = math.fsum((i - xbar) * y for i, y in enumerate(values, start=1))
    k = sxy / sxx
    return LineFit(k=k, b=ybar - k * xbar, n=n)


# Dispatch case labels, also written to the diagnostics CSV.
CASE_ZERO = "zero"  # k = 0, b = 0
CASE_POS_B = "pos_b"  # k > 0, b > 0
CASE_ZERO_B = "zero_b"  # k > 0, b = 0
CASE_NEG_B = "neg_b"  # k > 0, b < 0
CASE_CONST_POS = "const_pos"  # k = 0, b > 0


def _snap(x: float) -> float:
    return 0.0 if abs(x) <= TIE_EPS else x


def classify(fit: LineFit) -> tuple[str, float, float]:
    """Return ``(case, k, b)`` after snapping near-zero k and b to 0."""
    if not (math.isfinite(fit.k) and math.isfinite(fit.b)):
        raise ValueError(f"non-finite fit {fit!r}")
    k, b = _snap(fit.k), _snap(fit.b)
    if k < 0:
        raise ValueError(f"negative slope {fit.k!r}; fit an ascending-sorted vector")
    if k == 0:
        if b == 0:
            return CASE_ZERO, k, b
        if b > 0:
            return CASE_CONST_POS, k, b
        raise ValueError(f"flat fit with negative intercept {fit.b!r}")
    if b > 0:
        return CASE_POS_B, k, b
    if b == 0:
        return CASE_ZERO_B, k, b
    return CASE_NEG_B, k, b


def clip_exponent(e: float, emax: float = DEFAULT_EMAX) -> float:
    return min(max(e, -emax), emax)


def rate_exponent(fit: LineFit, emax: float = DEFAULT_EMAX) -> float | None:
    """Exponent fed to exp() for this fit, or None for the zero case."""
    case, k, b = classify(fit)
    if case == CASE_ZERO:
        return None
    if case == CASE_CONST_POS:
        return emax
    if case == CASE_ZERO_B:
        return clip_exponent(1.0 / k, emax)
    return clip_exponent(b / k, emax)


def similarity_rate(fit: LineFit, emax: float = DEFAULT_EMAX) -> float:
    if not emax > 0:
        raise ValueError("emax must be positive")
    e = rate_exponent(fit, emax)
    return 0.0 if e is None else math.exp(e)


def rate_of_values(values: Sequence[float], emax: float = DEFAULT_EMAX) -> float:
    """Sort, fit and rate a raw similarity vector."""
    return similarity_rate(fit_line(sorted(values)), emax)


@dataclass(frozen=True)
class PairRate:
    pair: tuple[str, str]
    values: tuple[float, ...]
    fit: LineFit
    case: str
    rate: float


def pair_rate(
    vec: SimilarityVector | Sequence[float], emax: float = DEFAULT_EMAX
) -> PairRate:
    if isinstance(vec, SimilarityVector):
        pair, values = vec.pair, vec.values
    else:
        pair, values = ("", ""), tuple(vec)
    fit = fit_line(sorted(values))
    case, _, _ = classify(fit)
    return PairRate(pair, tuple(values), fit, case, similarity_rate(fit, emax))


def all_pair_rates(
    net: MultiplexNetwork,
    layers: Sequence[str] | None = None,
    similarity: str | SetSimilarity = "jaccard",
    emax: float = DEFAULT_EMAX,
) -> list[PairRate]:
    """Rates for every unordered node pair, ordered by (min label, max label).

    Each pair is independent, so callers may split the pair set across
    workers and merge by ``pair``.
    """
    fn = get_similarity(similarity) if isinstance(similarity, str) else similarity
    names = list(net.layer_names if layers is None else layers)
    if len(names) < 2:
        raise ValueError(f"need at least 2 layers, got {len(names)}")
    adjs = [net.adjacency(name) for name in names]
    labels = sorted(net.nodes)
    idx = [net.index(label) for label in labels]
    out = []
    for p, a in enumerate(labels):
        ia = idx[p]
        for q in range(p + 1, len(labels)):
            ib = idx[q]
            values = tuple(fn(adj[ia], adj[ib]) for adj in adjs)
            out.append(pair_rate(SimilarityVector((a, labels[q]), values), emax))
    return out


def write_pair_rates_csv(rates: Sequence[PairRate], layer_count: int, fh) -> None:
    """Per-pair diagnostics: ``node_a,node_b,ls_1..ls_L,k,b,case,rate``."""
    import csv

    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(
        ["node_a", "node_b"]
        + [f"ls_{i}" for i in range(1, layer_count + 1)]
        + ["k", "b", "case", "rate"]
    )
    for pr in rates:
        writer.writerow(
            [pr.pair[0], pr.pair[1]]
            + [repr(v) for v in pr.values]
            + [repr(pr.fit.k), repr(pr.fit.b), pr.case, repr(pr.rate)]
        )
