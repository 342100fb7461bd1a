"""Whole-network statistics, degree distribution and age-cohort rankings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .centrality import ScoreTable
from .errors import EmptyGraph, UnknownPlayer

STAT_ROWS = (
    ("node_count", "Nodes"),
    ("edge_count", "Edges"),
    ("lcc_fraction", "Fraction of nodes in LCC"),
    ("average_degree", "Average degree"),
    ("average_clustering", "Average clustering"),
    ("average_distance", "Average distance"),
)


@dataclass(frozen=True)
class NetworkStats:
    node_count: int
    edge_count: int
    lcc_fraction: float
    average_degree: float
    average_clustering: Optional[float] = None
    average_distance: Optional[float] = None

    def rows(self):
        """(table row name, value) pairs, skipping fields that do not apply."""
        for attr, label in STAT_ROWS:
            value = getattr(self, attr)
            if value is not None:
                yield label, value


def _adjacency(graph, symmetric):
    n = graph.n
    ones = np.ones(graph.m, dtype=np.int64)
    A = sp.csr_matrix((ones, (graph.src, graph.dst)), shape=(n, n))
    if symmetric:
        A = A + A.T
    A.sum_duplicates()
    A.data[:] = 1
    return A


def largest_component_fraction(graph) -> float:
    _, labels = csgraph.connected_components(_adjacency(graph, False), directed=graph.directed, connection="weak")
    return int(np.bincount(labels).max()) / graph.n


def local_clustering(graph, chunk=2048) -> np.ndarray:
    """Unweighted local clustering; nodes of degree < 2 get 0."""
    A = _adjacency(graph, True)
    n = graph.n
    deg = np.asarray(A.sum(axis=1)).ravel()
    closed = np.zeros(n, dtype=np.int64)  # twice the triangle count per node
    for lo in range(0, n, chunk):
        rows = A[lo : lo + chunk]
        closed[lo : lo + chunk] = np.asarray((rows @ A).multiply(rows).sum(axis=1)).ravel()
    out = np.zeros(n)
    ok = deg >= 2
    out[ok] = closed[ok] / (deg[ok] * (deg[ok] - 1))
    return out


def average_clustering(graph) -> float:
    return math.fsum(local_clustering(graph).tolist()) / graph.n


def average_distance(graph, chunk=512) -> Optional[float]:
    """Mean hop count over ordered reachable pairs (u != v); None if there are none."""
    A = _adjacency(graph, False).astype(np.float64)
    n = graph.n
    total = 0
    pairs = 0
    for lo in range(0, n, chunk):
        idx = np.arange(lo, min(lo + chunk, n))
        D = csgraph.shortest_path(A, directed=graph.directed, unweighted=True, indices=idx)
        finite = np.isfinite(D)
        finite[np.arange(len(idx)), idx] = False
        total += int(D[finite].sum())
        pairs += int(finite.sum())
    return total / pairs if pairs else None


def network_stats(graph) -> NetworkStats:
    if graph.n == 0:
        raise EmptyGraph()
    return NetworkStats(
        node_count=graph.n,
        edge_count=graph.m,
        lcc_fraction=largest_component_fraction(graph),
        average_degree=2 * graph.m / graph.n,
        average_clustering=None if graph.directed else average_clustering(graph),
        average_distance=average_distance(graph) if graph.directed else None,
    )


def degree_histogram(graph) -> list[tuple[int, int]]:
    if graph.n == 0:
        raise EmptyGraph()
    counts = np.bincount(graph.degrees())
    return [(int(k), int(c)) for k, c in enumerate(counts) if c]


def cohort_rankings(scores: ScoreTable, players, years=None) -> dict[int, list[tuple[str, float]]]:
    """Group a global score table by birth year, keeping score order within each year.

    ``players`` maps player id to a record with ``birth_year``. Years are
    returned newest first; ``years`` restricts which cohorts are kept.
    """
    wanted = None if years is None else set(years)
    cohorts: dict[int, list[tuple[str, float]]] = {}
    for pid, score in scores.entries:
        rec = players.get(pid)
        if rec is None:
            raise UnknownPlayer(pid)
        if wanted is not None and rec.birth_year not in wanted:
            continue
        cohorts.setdefault(rec.birth_year, []).append((pid, score))
    for members in cohorts.values():
        members.sort(key=lambda p: (-p[1], p[0]))
    return {y: cohorts[y] for y in sorted(cohorts, reverse=True)}
