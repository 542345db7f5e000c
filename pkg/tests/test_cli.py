import json
from pathlib import Path

import pytest

from oracles import table1_surrogate
from simrate.cli import main
from simrate.community import load_partition
from simrate.multiplex import MultiplexNetwork, save_multiplex


def files(directory: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


@pytest.fixture
def surrogate(tmp_path):
    path = tmp_path / "surrogate.tsv"
    save_multiplex(table1_surrogate(1), path)
    return path


@pytest.fixture
def synth(tmp_path):
    out = tmp_path / "synth"
    assert main(["synth", "--p-in", "1", "--p-out", "0", "--seed", "3", "--out", str(out)]) == 0
    return out


def test_stats(surrogate, capsys):
    assert main(["stats", str(surrogate)]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == "layer\tnodes\tedges"
    assert len(rows) == 14
    assert rows[7].split("\t")[0] == "organization" and rows[7].split("\t")[2] == "416"


def test_stats_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    assert main(["stats", "--input", str(empty)]) == 0
    assert capsys.readouterr().out.strip().splitlines() == ["layer\tnodes\tedges"]


def test_stats_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("L1\ta\tb\nL1\ta\n")
    assert main(["stats", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_is_runtime_error(tmp_path, capsys):
    assert main(["stats", str(tmp_path / "nope.tsv")]) == 1


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["stats", "--emax", "abc"]) == 2
    assert main(["pipeline", "--essential-weights", "kinship"]) == 2


def test_synth(synth):
    assert sorted(p.name for p in synth.iterdir()) == ["edges.tsv", "planted.csv"]


def test_synth_deterministic(tmp_path):
    for run in ("a", "b"):
        assert main(["synth", "--seed", "11", "--out", str(tmp_path / run)]) == 0
    assert files(tmp_path / "a") == files(tmp_path / "b")


def test_synth_invalid(tmp_path, capsys):
    assert main(["synth", "--p-in", "1.5", "--out", str(tmp_path)]) == 2
    assert "p_in" in capsys.readouterr().err


def test_pipeline_noise_free(synth, tmp_path):
    out = tmp_path / "run"
    args = ["pipeline", "--input", str(synth / "edges.tsv"), "--ground-truth",
            str(synth / "planted.csv"), "--out", str(out), "--seed", "0"]
    assert main(args) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["mean_overlap"] == 1.0
    assert summary["mean_frequency"] is None
    assert summary["es_community_count"] == 2


def test_pipeline_default_config_on_surrogate(surrogate, tmp_path):
    out = tmp_path / "run"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"input": str(surrogate), "out": str(out), "seed": 2,
                               "expected_es_edge_counts": [116, 117]}))
    assert main(["pipeline", "--config", str(cfg)]) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"rate_network.tsv", "essentiality_network.tsv", "ex_partition.csv",
                     "es_partition.csv", "overlap.csv", "edge_frequency.csv", "summary.json"}
    summary = json.loads((out / "summary.json").read_text())
    assert len(summary["reflection_layers"]) == 10
    assert summary["es_edge_count"] <= 93 + 16 + 11
    assert bool(summary["flags"]) == (summary["es_edge_count"] not in (116, 117))
    assert set(summary) >= {"mean_overlap", "mean_frequency", "ex_community_count",
                            "es_community_count", "es_node_count", "es_edge_count", "seed"}


def test_pipeline_twice_is_byte_identical(surrogate, tmp_path):
    for run in ("a", "b"):
        assert main(["pipeline", "--input", str(surrogate), "--out", str(tmp_path / run),
                     "--seed", "5"]) == 0
    assert files(tmp_path / "a") == files(tmp_path / "b")


def test_flags_override_config(surrogate, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"input": str(surrogate), "seed": 1, "emax": 50}))
    out = tmp_path / "run"
    assert main(["pipeline", "--config", str(cfg), "--out", str(out), "--emax", "5",
                 "--seed", "9"]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["emax"] == 5.0 and summary["seed"] == 9
    assert "# emax: 5.0" in (out / "rate_network.tsv").read_text()


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"inptu": "x"}))
    assert main(["pipeline", "--config", str(cfg)]) == 2
    cfg.write_text(json.dumps({"emax": -1}))
    assert main(["pipeline", "--config", str(cfg)]) == 2


def test_pipeline_stage_tagged_error(surrogate, tmp_path, capsys):
    code = main(["pipeline", "--input", str(surrogate), "--out", str(tmp_path / "o"),
                 "--essential-weights", "enemies=2"])
    assert code == 2
    assert "stage 'essentiality'" in capsys.readouterr().err


def test_rate_network_never_reads_essential_layers(surrogate, tmp_path):
    full = tmp_path / "full"
    assert main(["aggregate", "--input", str(surrogate), "--out", str(full)]) == 0
    net = table1_surrogate(1)
    keep = [layer for layer in net.layers if layer.name not in ("friendship", "kinship", "soulmates")]
    stripped_path = tmp_path / "stripped.tsv"
    save_multiplex(MultiplexNetwork(net.nodes, keep), stripped_path)
    stripped = tmp_path / "stripped"
    assert main(["aggregate", "--input", str(stripped_path), "--essential-weights", "",
                 "--out", str(stripped)]) == 0
    a = (full / "rate_network.tsv").read_text()
    b = (stripped / "rate_network.tsv").read_text()
    strip_isolated = lambda t: [l for l in t.splitlines() if not l.startswith("# isolated")]
    assert strip_isolated(a) == strip_isolated(b)
    assert (full / "essentiality_network.tsv").exists()
    assert not (stripped / "essentiality_network.tsv").exists()


def test_staged_commands_match_pipeline(surrogate, tmp_path):
    piped = tmp_path / "piped"
    assert main(["pipeline", "--input", str(surrogate), "--out", str(piped), "--seed", "4"]) == 0
    staged = tmp_path / "staged"
    assert main(["aggregate", "--input", str(surrogate), "--out", str(staged)]) == 0
    assert (staged / "rate_network.tsv").read_bytes() == (piped / "rate_network.tsv").read_bytes()
    assert main(["detect", "--graph", str(staged / "essentiality_network.tsv"), "--seed", "4",
                 "--out", str(staged)]) == 0
    es = load_partition(staged / "essentiality_network_partition.csv")
    assert es.groups() == load_partition(piped / "es_partition.csv").groups()
    assert main(["validate", "--ex", str(piped / "ex_partition.csv"), "--es",
                 str(staged / "essentiality_network_partition.csv"), "--es-graph",
                 str(staged / "essentiality_network.tsv"), "--input", str(surrogate),
                 "--seed", "4", "--out", str(staged)]) == 0
    assert (staged / "overlap.csv").read_bytes() == (piped / "overlap.csv").read_bytes()
    assert (staged / "edge_frequency.csv").read_bytes() == (piped / "edge_frequency.csv").read_bytes()


def test_rates_command(surrogate, tmp_path):
    assert main(["rates", "--input", str(surrogate), "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "pair_rates.csv").read_text().splitlines()
    assert lines[0].startswith("node_a,node_b,ls_1,") and lines[0].endswith("ls_10,k,b,case,rate")
    assert len(lines) == 1 + 78 * 77 // 2
