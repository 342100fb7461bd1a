"""Weighted PageRank, weighted Brandes betweenness, and brute-force oracles."""

from __future__ import annotations

import heapq
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import EmptyGraph, NotConverged, TooLarge, ZeroWeightArc
from .ingest import AnalysisConfig
from .netbuild import DirectedWeightedGraph, UndirectedWeightedGraph

# relative tolerance for treating two shortest-path lengths as equal
PATH_RTOL = 1e-12

PAGERANK_ORACLE_CAP = 200
BETWEENNESS_ORACLE_CAP = 60


@dataclass(frozen=True)
class ScoreTable:
    """Node scores in ranking order: descending score, then ascending id."""

    entries: tuple[tuple[str, float], ...]
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_scores(cls, nodes, scores, **meta) -> "ScoreTable":
        pairs = [(node, float(s)) for node, s in zip(nodes, scores)]
        pairs.sort(key=lambda p: (-p[1], p[0]))
        return cls(tuple(pairs), meta)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)

    def top(self, n=None) -> "ScoreTable":
        if n is None:
            return self
        return ScoreTable(self.entries[:n], self.meta)

    def ids(self):
        return [node for node, _ in self.entries]


# --- PageRank ---------------------------------------------------------------


def _power_iterate(step, x, tol, max_iter):
    residual = math.inf
    for it in range(1, max_iter + 1):
        x_new = step(x)
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual < tol:
            return x, it, residual, True
    return x, max_iter, residual, False


def _finish_pagerank(nodes, x, it, residual, converged, config):
    if not converged and residual > 1e3 * config.pr_tolerance:
        raise NotConverged(it, residual)
    return ScoreTable.from_scores(nodes, x, iterations=it, residual=residual, converged=converged)


def pagerank_weighted(graph: UndirectedWeightedGraph, config: AnalysisConfig) -> ScoreTable:
    """Weighted PageRank with uniform teleportation and dangling redistribution.

    Each undirected edge acts as two arcs of equal weight; a node's outgoing
    probabilities are its edge weights over its strength. Nodes of strength
    zero spread their mass uniformly. Iterates from the uniform vector until
    the L1 change drops below ``config.pr_tolerance``.
    """
    n = graph.n
    if n == 0:
        raise EmptyGraph()
    d = config.damping

    keep = graph.weight > 0
    rows = np.concatenate([graph.src[keep], graph.dst[keep]])
    cols = np.concatenate([graph.dst[keep], graph.src[keep]])
    vals = np.concatenate([graph.weight[keep], graph.weight[keep]])
    strength = np.bincount(rows, weights=vals, minlength=n)
    dangling = np.flatnonzero(strength == 0)
    # transpose of the row-stochastic transition matrix
    pt = sp.csr_matrix((vals / strength[rows], (cols, rows)), shape=(n, n))

    teleport = (1 - d) / n

    def step(x):
        dangling_mass = x[dangling].sum()
        return teleport + d * (pt @ x + dangling_mass / n)

    x0 = np.full(n, 1.0 / n)
    x, it, residual, converged = _power_iterate(step, x0, config.pr_tolerance, config.pr_max_iter)
    return _finish_pagerank(graph.nodes, x, it, residual, converged, config)


def pagerank_oracle(graph: UndirectedWeightedGraph, config: AnalysisConfig) -> ScoreTable:
    """Dense-matrix PageRank reference for small graphs (n <= 200)."""
    n = graph.n
    if n == 0:
        raise EmptyGraph()
    if n > PAGERANK_ORACLE_CAP:
        raise TooLarge(n, PAGERANK_ORACLE_CAP)
    index = {v: i for i, v in enumerate(graph.nodes)}
    W = np.zeros((n, n))
    for a, b, w in graph.edges():
        W[index[a], index[b]] += w
        W[index[b], index[a]] += w
    G = np.empty((n, n))
    for i in range(n):
        s = W[i].sum()
        G[i] = W[i] / s if s > 0 else 1.0 / n
    d = config.damping
    google = d * G + (1 - d) / n
    gt = google.T.copy()

    x0 = np.full(n, 1.0 / n)
    x, it, residual, converged = _power_iterate(lambda x: gt @ x, x0, config.pr_tolerance, config.pr_max_iter)
    return _finish_pagerank(graph.nodes, x, it, residual, converged, config)


# --- betweenness ------------------------------------------------------------


def _adjacency(graph: DirectedWeightedGraph):
    adj = [[] for _ in range(graph.n)]
    for i, j, w in zip(graph.src.tolist(), graph.dst.tolist(), graph.weight.tolist()):
        if not w > 0:
            raise ZeroWeightArc(graph.nodes[i], graph.nodes[j])
        adj[i].append((j, 1.0 / w))
    return adj


def _single_source(s, adj, n):
    """Dijkstra from ``s`` then backward dependency accumulation.

    Returns the dependency vector of ``s`` with its own entry zeroed.
    """
    inf = math.inf
    rtol = PATH_RTOL
    dist = [inf] * n
    sigma = [0] * n
    preds = [None] * n
    done = [False] * n
    order = []
    dist[s] = 0.0
    sigma[s] = 1
    preds[s] = []
    heap = [(0.0, s)]
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, v = pop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        sv = sigma[v]
        for w, length in adj[v]:
            if done[w]:
                continue
            nd = d + length
            dw = dist[w]
            if nd < dw:
                if dw != inf and dw - nd <= rtol * dw:
                    sigma[w] += sv
                    preds[w].append(v)
                else:
                    dist[w] = nd
                    sigma[w] = sv
                    preds[w] = [v]
                    push(heap, (nd, w))
            elif nd - dw <= rtol * nd:
                sigma[w] += sv
                preds[w].append(v)

    delta = [0.0] * n
    for w in reversed(order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for v in preds[w]:
            delta[v] += sigma[v] * coeff
    delta[s] = 0.0
    return delta


_worker_state = {}


def _init_worker(adj, n):
    _worker_state["adj"] = adj
    _worker_state["n"] = n


def _run_sources(sources):
    adj, n = _worker_state["adj"], _worker_state["n"]
    return [_single_source(s, adj, n) for s in sources]


def _finish_betweenness(nodes, bc, normalize):
    n = len(nodes)
    if normalize:
        if n < 3:
            bc = [0.0] * n
        else:
            scale = (n - 1) * (n - 2)
            bc = [b / scale for b in bc]
    return ScoreTable.from_scores(nodes, bc, normalized=normalize)


def betweenness_weighted(graph: DirectedWeightedGraph, config: AnalysisConfig, threads: int = 1) -> ScoreTable:
    """Brandes betweenness with arc length ``1 / weight``.

    Sources may be fanned out over ``threads`` worker processes. Per-source
    dependency vectors are always summed in source order, so the result
    does not depend on the worker count.
    """
    n = graph.n
    adj = _adjacency(graph)
    sources = list(range(n))

    if threads is None or threads < 1:
        threads = os.cpu_count() or 1
    if threads > 1 and n >= 64:
        chunk = max(1, math.ceil(n / (threads * 4)))
        batches = [sources[i : i + chunk] for i in range(0, n, chunk)]
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(adj, n)) as pool:
            deltas = (delta for part in pool.map(_run_sources, batches) for delta in part)
            bc = _merge(deltas, n)
    else:
        bc = _merge((_single_source(s, adj, n) for s in sources), n)

    return _finish_betweenness(graph.nodes, bc, config.normalize_betweenness)


def _merge(deltas, n):
    bc = [0.0] * n
    for delta in deltas:
        for v in range(n):
            bc[v] += delta[v]
    return bc


def betweenness_oracle(graph: DirectedWeightedGraph, config: AnalysisConfig) -> ScoreTable:
    """Betweenness by enumerating every shortest path (n <= 60).

    Distances come from Floyd-Warshall on ``1 / weight``; each ordered pair's
    shortest paths are listed explicitly by depth-first search and each
    interior node gets its share of them.
    """
    n = graph.n
    if n > BETWEENNESS_ORACLE_CAP:
        raise TooLarge(n, BETWEENNESS_ORACLE_CAP)
    index = {v: i for i, v in enumerate(graph.nodes)}
    succ = [[] for _ in range(n)]
    D = np.full((n, n), np.inf)
    np.fill_diagonal(D, 0.0)
    for a, b, w, _ in graph.arcs():
        if not w > 0:
            raise ZeroWeightArc(a, b)
        i, j = index[a], index[b]
        succ[i].append((j, 1.0 / w))
        D[i, j] = min(D[i, j], 1.0 / w)
    for k in range(n):
        D = np.minimum(D, D[:, k : k + 1] + D[k : k + 1, :])
    dist = D.tolist()

    bc = [0.0] * n
    for s in range(n):
        for t in range(n):
            target = dist[s][t]
            if s == t or target == math.inf:
                continue
            limit = target + PATH_RTOL * target
            paths = []

            def walk(v, cum, path, on_path):
                if v == t:
                    if abs(cum - target) <= PATH_RTOL * target:
                        paths.append(list(path))
                    return
                for w, length in succ[v]:
                    if w in on_path:
                        continue
                    c = cum + length
                    if c + dist[w][t] > limit:
                        continue
                    path.append(w)
                    on_path.add(w)
                    walk(w, c, path, on_path)
                    on_path.discard(w)
                    path.pop()

            walk(s, 0.0, [s], {s})
            if not paths:
                continue
            through = [0] * n
            for p in paths:
                for v in p[1:-1]:
                    through[v] += 1
            total = len(paths)
            for v in range(n):
                if through[v]:
                    bc[v] += through[v] / total
    return _finish_betweenness(graph.nodes, bc, config.normalize_betweenness)
