"""Player collaboration and club transfer network construction.

Graphs keep node ids in lexicographic order and store edges as parallel
numpy arrays of node indices, which keeps the 1.4M-edge player network
cheap to hold and hand to scipy.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

import numpy as np

from .errors import DegenerateImportance, SeasonInFuture
from .ingest import AnalysisConfig, ClubRecord, Dataset, LeagueRecord, rosters

VALUE_DIVISOR = 100_000
CLUB_VALUE_DIVISOR = 1_000_000


class _Graph:
    directed = False

    def __init__(self, nodes, src, dst, weight):
        self.nodes = tuple(nodes)
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.weight = np.asarray(weight, dtype=np.float64)
        self._index = None

    @property
    def n(self):
        return len(self.nodes)

    @property
    def m(self):
        return len(self.src)

    @property
    def index(self) -> dict[str, int]:
        if self._index is None:
            self._index = {node: i for i, node in enumerate(self.nodes)}
        return self._index

    def degrees(self) -> np.ndarray:
        """Unweighted total degree (in + out for directed graphs)."""
        return np.bincount(self.src, minlength=self.n) + np.bincount(self.dst, minlength=self.n)

    def _same(self, other):
        return (
            type(self) is type(other)
            and self.nodes == other.nodes
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weight, other.weight)
        )

    def __eq__(self, other):
        return self._same(other)

    __hash__ = None


class UndirectedWeightedGraph(_Graph):
    """Undirected graph; each edge is stored once with ``src < dst``."""

    directed = False

    def __init__(self, nodes, src, dst, weight):
        super().__init__(nodes, src, dst, weight)
        if self.m:
            if np.any(self.src >= self.dst):
                raise ValueError("undirected edges must satisfy src < dst (no self-loops)")
            if np.any(self.weight < 0):
                raise ValueError("negative edge weight")

    @classmethod
    def from_edges(cls, nodes, edges):
        """Build from ``(a, b, w)`` triples; endpoint order does not matter."""
        nodes = sorted(set(nodes))
        index = {v: i for i, v in enumerate(nodes)}
        seen = {}
        for a, b, w in edges:
            i, j = index[a], index[b]
            if i == j:
                raise ValueError(f"self-loop on {a!r}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {a!r}-{b!r}")
            seen[key] = float(w)
        keys = sorted(seen)
        return cls(
            nodes,
            [k[0] for k in keys],
            [k[1] for k in keys],
            [seen[k] for k in keys],
        )

    def edges(self):
        nodes = self.nodes
        for i, j, w in zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()):
            yield nodes[i], nodes[j], w

    def edge_dict(self) -> dict[tuple[str, str], float]:
        return {(a, b): w for a, b, w in self.edges()}

    def scaled(self, factor):
        return type(self)(self.nodes, self.src, self.dst, self.weight * factor)


class DirectedWeightedGraph(_Graph):
    """Directed graph with one aggregated arc per ordered pair."""

    directed = True

    def __init__(self, nodes, src, dst, weight, count=None):
        super().__init__(nodes, src, dst, weight)
        if count is None:
            count = np.ones(self.m, dtype=np.int64)
        self.count = np.asarray(count, dtype=np.int64)
        if self.m:
            if np.any(self.src == self.dst):
                raise ValueError("self-loop arc")
            if np.any(self.weight < 0):
                raise ValueError("negative arc weight")
            if np.any((self.weight > 0) & (self.count < 1)):
                raise ValueError("weighted arc with zero transfer count")

    @classmethod
    def from_arcs(cls, nodes, arcs):
        """Build from ``(a, b, w)`` or ``(a, b, w, count)`` tuples."""
        nodes = sorted(set(nodes))
        index = {v: i for i, v in enumerate(nodes)}
        seen = {}
        for arc in arcs:
            a, b, w = arc[:3]
            c = arc[3] if len(arc) > 3 else 1
            key = (index[a], index[b])
            if key in seen:
                raise ValueError(f"duplicate arc {a!r}->{b!r}")
            seen[key] = (float(w), int(c))
        keys = sorted(seen)
        return cls(
            nodes,
            [k[0] for k in keys],
            [k[1] for k in keys],
            [seen[k][0] for k in keys],
            [seen[k][1] for k in keys],
        )

    def arcs(self):
        nodes = self.nodes
        for i, j, w, c in zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist(), self.count.tolist()):
            yield nodes[i], nodes[j], w, c

    def scaled(self, factor):
        return type(self)(self.nodes, self.src, self.dst, self.weight * factor, self.count)

    def _same(self, other):
        return super()._same(other) and np.array_equal(self.count, other.count)


# --- edge weights -----------------------------------------------------------


def player_edge_weight(co_seasons, config: AnalysisConfig) -> float:
    """Inflation-adjusted collaboration weight.

    ``co_seasons`` holds ``(season, pv1, pv2)`` triples, one per shared
    club-season. Terms are summed in season order (stable for repeats).
    """
    ref = config.reference_season
    theta = config.theta
    total = 0.0
    for season, pv1, pv2 in sorted(co_seasons, key=lambda t: t[0]):
        if season > ref:
            raise SeasonInFuture(season, ref)
        total += (pv1 + pv2) * (1 + theta * (ref - season)) / VALUE_DIVISOR
    return total


def club_importance(club: ClubRecord, league: LeagueRecord, mode: str) -> float:
    if mode == "ranking":
        r_c, r_l = club.avg_ranking, league.ranking
        if r_c is None or not r_c >= 1 or not r_l >= 1:
            raise DegenerateImportance(club.club_id)
        return 1 / (r_c * r_l)
    if mode == "value":
        cv = club.avg_value
        if cv is None or cv <= 0:
            raise DegenerateImportance(club.club_id)
        return cv / CLUB_VALUE_DIVISOR
    raise ValueError(f"unknown weight mode {mode!r}")


# --- builders ---------------------------------------------------------------


def build_player_network(dataset: Dataset, config: AnalysisConfig) -> UndirectedWeightedGraph:
    """Project the player-club affiliations onto players.

    Every (club, season) roster contributes one weight term to each pair of
    its members; terms for a pair are accumulated in (season, club) order
    so the result is bit-identical to summing them one by one.
    """
    ref = config.reference_season
    late = [a.season for a in dataset.affiliations if a.season > ref]
    if late:
        raise SeasonInFuture(min(late), ref)

    players = sorted({a.player_id for a in dataset.affiliations})
    pidx = {p: i for i, p in enumerate(players)}
    club_ids = sorted(dataset.clubs)
    cidx = {c: i for i, c in enumerate(club_ids)}

    us, vs, seasons, clubs, pvsums = [], [], [], [], []
    for (club, season), members in rosters(dataset).items():
        k = len(members)
        if k < 2:
            continue
        ids = np.fromiter((pidx[p] for p, _ in members), dtype=np.int64, count=k)
        vals = np.fromiter((v for _, v in members), dtype=np.int64, count=k)
        iu, ju = np.triu_indices(k, 1)
        us.append(ids[iu])
        vs.append(ids[ju])
        pvsums.append(vals[iu] + vals[ju])
        seasons.append(np.full(len(iu), season, dtype=np.int64))
        clubs.append(np.full(len(iu), cidx[club], dtype=np.int64))

    if not us:
        return UndirectedWeightedGraph(players, [], [], [])

    u = np.concatenate(us)
    v = np.concatenate(vs)
    season = np.concatenate(seasons)
    club = np.concatenate(clubs)
    pvsum = np.concatenate(pvsums)
    del us, vs, seasons, clubs, pvsums

    order = np.lexsort((club, season, v, u))
    u, v, season, pvsum = u[order], v[order], season[order], pvsum[order]
    del order, club

    # same operation order as player_edge_weight
    term = pvsum.astype(np.float64) * (1 + config.theta * (ref - season).astype(np.float64)) / VALUE_DIVISOR

    key = u * len(players) + v
    starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
    seg = np.repeat(np.arange(len(starts)), np.diff(np.r_[starts, len(key)]))
    rank = np.arange(len(key)) - starts[seg]

    acc = np.zeros(len(starts), dtype=np.float64)
    for r in range(int(rank.max()) + 1):
        sel = rank == r
        acc[seg[sel]] += term[sel]

    return UndirectedWeightedGraph(players, u[starts], v[starts], acc)


def build_club_network(dataset: Dataset, config: AnalysisConfig) -> DirectedWeightedGraph:
    """Aggregate transfers into arcs weighted by count times destination importance."""
    clubs = sorted(dataset.clubs)
    cidx = {c: i for i, c in enumerate(clubs)}
    counts = Counter((t.from_club_id, t.to_club_id) for t in dataset.transfers)

    importance = {}
    src, dst, weight, count = [], [], [], []
    for (a, b) in sorted(counts):
        if b not in importance:
            club = dataset.clubs[b]
            try:
                importance[b] = club_importance(club, dataset.leagues[club.league_id], config.weight_mode)
            except DegenerateImportance:
                raise DegenerateImportance(b, arc=(a, b)) from None
        c = counts[(a, b)]
        src.append(cidx[a])
        dst.append(cidx[b])
        weight.append(c * importance[b])
        count.append(c)
    return DirectedWeightedGraph(clubs, src, dst, weight, count)


# --- JSON interchange -------------------------------------------------------


def graph_to_json(graph) -> dict:
    if graph.directed:
        edges = [{"a": a, "b": b, "w": w, "count": c} for a, b, w, c in graph.arcs()]
    else:
        edges = [{"a": a, "b": b, "w": w} for a, b, w in graph.edges()]
    return {"directed": graph.directed, "nodes": list(graph.nodes), "edges": edges}


def graph_from_json(doc: dict):
    if doc["directed"]:
        arcs = [(e["a"], e["b"], e["w"], e.get("count", 1)) for e in doc["edges"]]
        return DirectedWeightedGraph.from_arcs(doc["nodes"], arcs)
    return UndirectedWeightedGraph.from_edges(doc["nodes"], [(e["a"], e["b"], e["w"]) for e in doc["edges"]])


def dump_graph(graph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_json(graph)) + "\n", encoding="utf-8")


def load_graph(path):
    return graph_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
