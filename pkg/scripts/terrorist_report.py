"""Layer statistics, essentiality network, edge frequency and overlap over seeds
for the 13-layer terrorist multiplex.

    python scripts/terrorist_report.py data/indonesian_terrorists.tsv --seeds 10 --out runs/terrorists

The edge list must use the layer names business, classmates, education,
logistical, meeting, operations, organization, religious, training,
communication, friendship, kinship, soulmates.
"""

import argparse
import csv
import statistics
from pathlib import Path

from simrate.community import louvain
from simrate.integration import DEFAULT_ESSENTIAL_WEIGHTS, build_essentiality_network, build_rate_network
from simrate.multiplex import layer_stats, load_multiplex
from simrate.validation import edge_frequency, overlap_report

PUBLISHED = {
    "business": (13, 15), "classmates": (39, 175), "education": (37, 284),
    "logistical": (31, 82), "meeting": (26, 63), "operations": (40, 267),
    "organization": (64, 416), "religious": (12, 12), "training": (39, 147),
    "communication": (75, 201), "friendship": (62, 93), "kinship": (24, 16),
    "soulmates": (9, 11),
}
REFLECTION = list(PUBLISHED)[:10]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("edges")
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--emax", type=float, default=50.0)
    parser.add_argument("--out", type=Path)
    args = parser.parse_args()

    net = load_multiplex(args.edges)
    print("layer\tnodes\tedges\tpublished")
    for name, nodes, edges in layer_stats(net):
        print(f"{name}\t{nodes}\t{edges}\t{PUBLISHED.get(name)}")

    es_graph = build_essentiality_network(net, DEFAULT_ESSENTIAL_WEIGHTS)
    freq = edge_frequency(es_graph, net, REFLECTION)
    print(f"\nessentiality network: {len(es_graph.active_nodes)} nodes, {es_graph.edge_count} edges")
    print(f"mean edge frequency over reflection layers: {freq.mean_frequency:.3f}")

    rate = build_rate_network(net, REFLECTION, emax=args.emax)
    print(f"rate network: {rate.edge_count} edges, {len(rate.isolated_nodes)} isolated nodes\n")
    print("seed\tex_comms\tes_comms\tmean\tmax\tmin")
    rows = []
    for seed in range(args.seeds):
        ex, es = louvain(rate, seed), louvain(es_graph, seed)
        rep = overlap_report(ex, es)
        rows.append((seed, rep))
        print(f"{seed}\t{ex.community_count}\t{es.community_count}\t"
              f"{rep.mean_overlap:.3f}\t{rep.max_overlap:.3f}\t{rep.min_overlap:.3f}")
    print(f"\naverage over seeds: mean {statistics.fmean(r.mean_overlap for _, r in rows):.3f}")

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        with open(args.out / "overlap_by_seed.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["seed", "ex_community", "size", "best_es_community", "overlap"])
            for seed, rep in rows:
                for r in rep.rows:
                    w.writerow([seed, r.ex_community, r.size, r.best_es_community, repr(r.overlap)])
        with open(args.out / "edge_frequency.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["node_a", "node_b", "frequency"])
            for (a, b), count in freq.rows:
                w.writerow([a, b, count])


if __name__ == "__main__":
    main()
