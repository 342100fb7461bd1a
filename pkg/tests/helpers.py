"""Seeded instance generators and brute-force oracles shared by the tests."""

import csv
import itertools
from pathlib import Path

import numpy as np

from footnet.ingest import HEADERS
from footnet.netbuild import DirectedWeightedGraph, UndirectedWeightedGraph, player_edge_weight


def write_tables(root, **tables):
    """Write ``players=[...]`` style row lists as the five CSV files.

    Missing tables are written header-only; a single default league and
    club are added when clubs/leagues are not given.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    tables.setdefault("leagues", [("L1", "League One", 10)])
    tables.setdefault("clubs", [("c1", "Club 1", "L1", 1.0, 1_000_000)])
    for name, header in HEADERS.items():
        rows = tables.get(name[:-4], [])
        with (root / name).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    return root


def random_undirected(seed, n_max=50, n_min=1):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    p = rng.uniform(0.02, 0.4)
    nodes = [f"v{i:02d}" for i in range(n)]
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(rng.choice([1.0, 2.0, 3.0])) if seed % 3 == 0 else float(rng.lognormal(2.0, 1.5))
            edges.append((nodes[i], nodes[j], w))
    return UndirectedWeightedGraph.from_edges(nodes, edges)


def random_digraph(seed, n_max=50, n_min=2, n=None, m=None):
    """Random positive-weight digraph; every third seed uses tie-prone weights."""
    rng = np.random.default_rng(seed)
    if n is None:
        n = int(rng.integers(n_min, n_max + 1))
    nodes = [f"c{i:02d}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    if m is None:
        m = int(rng.integers(0, min(len(pairs), 4 * n) + 1))
    chosen = rng.choice(len(pairs), size=min(m, len(pairs)), replace=False) if pairs else []
    arcs = []
    for k in sorted(int(c) for c in chosen):
        i, j = pairs[k]
        if seed % 3 == 0:
            w = float(rng.choice([1.0, 2.0, 4.0]))
        elif seed % 3 == 1:
            w = float(rng.choice([1.0, 2.0, 3.0, 5.0]))
        else:
            w = float(rng.uniform(0.05, 10.0))
        arcs.append((nodes[i], nodes[j], w, int(rng.integers(1, 4))))
    return DirectedWeightedGraph.from_arcs(nodes, arcs)


def random_tables(seed, max_players=50):
    """Small consistent dataset as row lists for ``write_tables``."""
    rng = np.random.default_rng(seed)
    n_players = int(rng.integers(1, max_players + 1))
    n_clubs = int(rng.integers(1, 7))
    seasons = list(range(2012, 2017))
    leagues = [("L1", "League One", 40), ("L2", "League Two", 5)]
    clubs = [(f"c{i}", f"Club {i}", leagues[i % 2][0], round(1 + 9 * rng.random(), 2), int(rng.integers(1, 10**8)))
             for i in range(n_clubs)]
    players = [(f"p{i:02d}", f"Player {i}", int(rng.integers(1980, 2000))) for i in range(n_players)]
    affiliations = []
    for pid, _, _ in players:
        for s in seasons:
            if rng.random() < 0.5:
                for c in rng.choice(n_clubs, size=int(rng.integers(1, min(2, n_clubs) + 1)), replace=False):
                    value = 0 if rng.random() < 0.1 else int(rng.integers(1, 5 * 10**7))
                    affiliations.append((pid, f"c{int(c)}", s, value))
    transfers = []
    if n_clubs > 1:
        for _ in range(int(rng.integers(0, 20))):
            a, b = rng.choice(n_clubs, 2, replace=False)
            transfers.append((players[int(rng.integers(n_players))][0], f"c{int(a)}", f"c{int(b)}", 2015))
    return dict(players=players, clubs=clubs, leagues=leagues, affiliations=affiliations, transfers=transfers)


def brute_force_projection(dataset, config):
    """All-pairs co-affiliation check, weights via the scalar edge formula."""
    by_player = {}
    for a in dataset.affiliations:
        by_player.setdefault(a.player_id, []).append(a)
    players = sorted(by_player)
    edges = {}
    for u, v in itertools.combinations(players, 2):
        shared = []
        for au in by_player[u]:
            for av in by_player[v]:
                if au.club_id == av.club_id and au.season == av.season:
                    shared.append((au.season, au.club_id, au.market_value, av.market_value))
        if shared:
            shared.sort()
            edges[(u, v)] = player_edge_weight([(s, p1, p2) for s, _, p1, p2 in shared], config)
    return players, edges


def clustering_oracle(graph):
    """Mean local clustering by explicit triangle enumeration, O(n^3)."""
    import math

    n = graph.n
    adj = [[False] * n for _ in range(n)]
    for i, j in zip(graph.src.tolist(), graph.dst.tolist()):
        adj[i][j] = adj[j][i] = True
    coeffs = []
    for v in range(n):
        k = sum(adj[v])
        if k < 2:
            coeffs.append(0.0)
            continue
        tri = 0
        for a in range(n):
            for b in range(a + 1, n):
                if adj[v][a] and adj[v][b] and adj[a][b]:
                    tri += 1
        coeffs.append(2 * tri / (k * (k - 1)))
    return math.fsum(coeffs) / n


def distance_oracle(graph):
    """Mean hop distance over reachable ordered pairs via Floyd-Warshall."""
    n = graph.n
    INF = float("inf")
    D = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for i, j in zip(graph.src.tolist(), graph.dst.tolist()):
        D[i][j] = 1
        if not graph.directed:
            D[j][i] = 1
    for k in range(n):
        Dk = D[k]
        for i in range(n):
            dik = D[i][k]
            if dik == INF:
                continue
            Di = D[i]
            for j in range(n):
                if dik + Dk[j] < Di[j]:
                    Di[j] = dik + Dk[j]
    total = pairs = 0
    for i in range(n):
        for j in range(n):
            if i != j and D[i][j] != INF:
                total += D[i][j]
                pairs += 1
    return total / pairs if pairs else None


def random_simple_graph(seed, n_max=40, directed=False):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    p = rng.uniform(0.03, 0.5)
    nodes = [f"n{i:02d}" for i in range(n)]
    if directed:
        arcs = [(nodes[i], nodes[j], 1.0) for i in range(n) for j in range(n) if i != j and rng.random() < p]
        return DirectedWeightedGraph.from_arcs(nodes, arcs)
    edges = [(nodes[i], nodes[j], 1.0) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return UndirectedWeightedGraph.from_edges(nodes, edges)
