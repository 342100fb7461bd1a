#!/usr/bin/env python3
"""Run the full analysis on a synthetic dataset of the paper's dimensions.

Prints the network property tables, the top players, per-birth-year
cohorts and the springboard-club rankings for both importance modes,
with wall-clock timings for each stage.

    python scripts/paper_scale.py --out-dir /tmp/footnet-paper
"""

import argparse
import time
from contextlib import contextmanager

from footnet.analysis import cohort_rankings, network_stats
from footnet.centrality import betweenness_weighted, pagerank_weighted
from footnet.cli import format_cohorts, format_ranking, format_stats
from footnet.ingest import AnalysisConfig
from footnet.netbuild import build_club_network, build_player_network
from footnet.synth import SyntheticSpec, gen_synthetic


@contextmanager
def timed(label):
    t0 = time.perf_counter()
    yield
    print(f"# {label}: {time.perf_counter() - t0:.2f}s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="/tmp/footnet-paper")
    ap.add_argument("--seed", type=int, default=2016)
    ap.add_argument("--players", type=int, default=36_000)
    ap.add_argument("--clubs", type=int, default=330)
    ap.add_argument("--transfers-per-season", type=int, default=700)
    ap.add_argument("--skip-stats", action="store_true", help="skip the clustering pass (~5s)")
    args = ap.parse_args()

    spec = SyntheticSpec(args.seed, args.players, args.clubs, 20, 15, args.transfers_per_season)
    cfg = AnalysisConfig()
    with timed("generate + load"):
        ds = gen_synthetic(spec, args.out_dir)
    with timed("player network"):
        players = build_player_network(ds, cfg)
    if not args.skip_stats:
        with timed("player network stats"):
            print(format_stats(network_stats(players)))
    with timed("PageRank"):
        scores = pagerank_weighted(players, cfg)
    names = {pid: p.name for pid, p in ds.players.items()}
    print(format_ranking(scores, names, 20))
    print(format_cohorts(cohort_rankings(scores, ds.players, range(1992, 2000)), names, 5))

    club_names = {cid: c.name for cid, c in ds.clubs.items()}
    for mode in ("value", "ranking"):
        mcfg = cfg.replace(weight_mode=mode)
        clubs = build_club_network(ds, mcfg)
        if mode == "value":
            print(format_stats(network_stats(clubs)))
        with timed(f"betweenness ({mode})"):
            bc = betweenness_weighted(clubs, mcfg)
        print(format_ranking(bc, club_names, 15))


if __name__ == "__main__":
    main()
