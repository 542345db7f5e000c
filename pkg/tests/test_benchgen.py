import math
import statistics

import pytest

from simrate.benchgen import PlantedSpec, generate, write_dataset
from simrate.integration import ConfigError, build_rate_network
from simrate.multiplex import dumps_multiplex, load_multiplex


def test_deterministic():
    spec = PlantedSpec(seed=5)
    a, pa = generate(spec)
    b, pb = generate(spec)
    assert dumps_multiplex(a) == dumps_multiplex(b) and pa == pb
    c, _ = generate(PlantedSpec(seed=6))
    assert dumps_multiplex(a) != dumps_multiplex(c)


def test_noise_free_layers_are_cliques():
    net, planted = generate(PlantedSpec(p_in=1.0, p_out=0.0, seed=1))
    for layer in net.layers:
        assert layer.edge_count == 2 * (20 * 19 // 2)
        assert all(planted[a] == planted[b] for a, b in layer.edges)


def test_all_empty():
    net, _ = generate(PlantedSpec(p_in=0.0, p_out=0.0))
    assert net.layer_count == 4
    assert all(layer.edge_count == 0 for layer in net.layers)
    assert build_rate_network(net).edge_count == 0


def test_persistence_splits_structured_and_noise_layers():
    spec = PlantedSpec(n=60, layers=4, communities=(30, 30), p_in=0.8, p_out=0.02, persistence=0.5)
    net, planted = generate(spec)
    assert spec.structured_layers == 2
    intra = [sum(planted[a] == planted[b] for a, b in layer.edges) for layer in net.layers]
    assert intra[0] > 500 and intra[1] > 500
    assert intra[2] < 40 and intra[3] < 40


def test_intra_density_within_three_sigma():
    spec = PlantedSpec(n=200, layers=2, communities=(100, 100), p_in=0.3, p_out=0.01, seed=2)
    net, planted = generate(spec)
    pairs = 2 * (100 * 99 // 2)
    sigma = math.sqrt(pairs * spec.p_in * (1 - spec.p_in))
    for layer in net.layers:
        intra = sum(planted[a] == planted[b] for a, b in layer.edges)
        assert abs(intra - pairs * spec.p_in) < 3 * sigma


def test_intra_pairs_rate_higher_than_inter():
    net, planted = generate(PlantedSpec(seed=3))
    g = build_rate_network(net)
    intra, inter = [], []
    nodes = sorted(net.nodes)
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            w = g.weight(a, b)
            (intra if planted[a] == planted[b] else inter).append(w)
    assert statistics.fmean(intra) > statistics.fmean(inter)
    # the log-rates separate too, not just a few extreme weights
    log = lambda ws: statistics.median(math.log(w) for w in ws if w > 0)
    assert log(intra) > log(inter)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p_in": 1.2},
        {"p_out": -0.1},
        {"persistence": 2.0},
        {"layers": 1},
        {"communities": (20, 10)},
        {"communities": (40, 0), "n": 40},
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ConfigError):
        generate(PlantedSpec(**kwargs))


def test_write_dataset(tmp_path):
    paths = write_dataset(PlantedSpec(seed=9), tmp_path)
    assert [p.name for p in paths] == ["edges.tsv", "planted.csv"]
    net = load_multiplex(paths[0])
    assert net.layer_names == ("L1", "L2", "L3", "L4")
    first = [p.read_bytes() for p in paths]
    write_dataset(PlantedSpec(seed=9), tmp_path)
    assert [p.read_bytes() for p in paths] == first
