"""Planted-partition recovery as a function of the exponent clamp and noise.

    python scripts/recovery_sweep.py --seeds 20
"""

import argparse
import statistics

from simrate.benchgen import PlantedSpec, generate
from simrate.community import louvain
from simrate.integration import build_rate_network
from simrate.validation import overlap_report


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--emax", default="50,20,10,8,6,5,4,3,2")
    parser.add_argument("--p-out", default="0.02,0.05,0.1")
    parser.add_argument("--p-in", type=float, default=0.6)
    args = parser.parse_args()

    print("p_out\temax\tmean_overlap\tmin\tpass(>=0.9)")
    for p_out in (float(x) for x in args.p_out.split(",")):
        for emax in (float(x) for x in args.emax.split(",")):
            scores = []
            for seed in range(args.seeds):
                net, planted = generate(PlantedSpec(p_in=args.p_in, p_out=p_out, seed=seed))
                g = build_rate_network(net, emax=emax)
                if g.edge_count == 0:
                    continue
                scores.append(overlap_report(louvain(g, seed), planted).mean_overlap)
            passed = sum(s >= 0.9 for s in scores)
            print(f"{p_out}\t{emax:g}\t{statistics.fmean(scores):.3f}\t{min(scores):.3f}\t{passed}/{len(scores)}")


if __name__ == "__main__":
    main()
