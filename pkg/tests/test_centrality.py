import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from footnet.centrality import (
    ScoreTable,
    betweenness_oracle,
    betweenness_weighted,
    pagerank_oracle,
    pagerank_weighted,
)
from footnet.errors import EmptyGraph, NotConverged, TooLarge, ZeroWeightArc
from footnet.ingest import AnalysisConfig
from footnet.netbuild import DirectedWeightedGraph, UndirectedWeightedGraph

from helpers import random_digraph, random_undirected

CFG = AnalysisConfig()
RAW = CFG.replace(normalize_betweenness=False)


def linf(a: ScoreTable, b: ScoreTable):
    da, db = a.as_dict(), b.as_dict()
    assert da.keys() == db.keys()
    return max((abs(da[k] - db[k]) for k in da), default=0.0)


def path3():
    return UndirectedWeightedGraph.from_edges("abc", [("a", "b", 1.0), ("b", "c", 1.0)])


# --- ScoreTable -------------------------------------------------------------


def test_score_table_order():
    t = ScoreTable.from_scores(["b", "a", "c", "d"], [0.2, 0.2, 0.5, 0.1])
    assert t.ids() == ["c", "a", "b", "d"]
    assert t.top(2).ids() == ["c", "a"]
    assert len(t.top(None)) == 4


# --- PageRank ---------------------------------------------------------------


def test_pagerank_two_nodes():
    g = UndirectedWeightedGraph.from_edges("ab", [("a", "b", 5.0)])
    s = pagerank_weighted(g, CFG).as_dict()
    assert s["a"] == pytest.approx(0.5, abs=1e-12) and s["b"] == pytest.approx(0.5, abs=1e-12)


def test_pagerank_path_closed_form():
    # a = (1-d)/3 + d*b/2, b = (1-d)/3 + d*(a+c), c = a
    d = 0.85
    A = np.array([[1, -d / 2, 0], [-d, 1, -d], [0, -d / 2, 1]])
    exact = np.linalg.solve(A, np.full(3, (1 - d) / 3))
    assert exact == pytest.approx([0.256757, 0.486486, 0.256757], abs=1e-6)
    s = pagerank_weighted(path3(), CFG).as_dict()
    assert [s["a"], s["b"], s["c"]] == pytest.approx(exact.tolist(), abs=1e-8)
    assert s["a"] == pytest.approx(0.256757, abs=1e-6) and s["b"] == pytest.approx(0.486486, abs=1e-6)


def test_pagerank_single_node():
    g = UndirectedWeightedGraph.from_edges(["x"], [])
    assert pagerank_weighted(g, CFG).entries == (("x", 1.0),)


def test_pagerank_empty_graph():
    with pytest.raises(EmptyGraph):
        pagerank_weighted(UndirectedWeightedGraph([], [], [], []), CFG)


def test_pagerank_reports_convergence():
    meta = pagerank_weighted(path3(), CFG).meta
    assert meta["converged"] and meta["residual"] < CFG.pr_tolerance and meta["iterations"] <= CFG.pr_max_iter


def test_pagerank_not_converged():
    with pytest.raises(NotConverged) as exc:
        pagerank_weighted(path3(), CFG.replace(pr_max_iter=2))
    assert exc.value.iterations == 2
    assert exc.value.residual > 1e3 * CFG.pr_tolerance


def test_pagerank_soft_stop():
    # residual below 1e3 * tolerance at max_iter: scores returned, flagged unconverged
    soft = []
    for k in range(1, 200):
        cfg = CFG.replace(pr_tolerance=1e-6, pr_max_iter=k)
        try:
            t = pagerank_weighted(path3(), cfg)
        except NotConverged:
            continue
        if t.meta["converged"]:
            break
        soft.append(t)
        assert t.meta["iterations"] == k
        assert 1e-6 <= t.meta["residual"] <= 1e-3
    assert soft


def test_pagerank_dangling_nodes():
    g = UndirectedWeightedGraph.from_edges("abcd", [("a", "b", 2.0)])
    s = pagerank_weighted(g, CFG).as_dict()
    assert sum(s.values()) == pytest.approx(1, abs=1e-12)
    assert s["c"] == pytest.approx(s["d"]) and s["a"] == pytest.approx(s["b"]) and s["a"] > s["c"]


def test_pagerank_zero_weight_edge_is_dangling():
    g = UndirectedWeightedGraph.from_edges("abc", [("a", "b", 0.0), ("b", "c", 3.0)])
    assert linf(pagerank_weighted(g, CFG), pagerank_oracle(g, CFG)) < 1e-12


@pytest.mark.parametrize("n", [3, 5, 8])
def test_pagerank_regular_graphs_uniform(n):
    nodes = [f"v{i}" for i in range(n)]
    cycle = UndirectedWeightedGraph.from_edges(nodes, [(nodes[i], nodes[(i + 1) % n], 2.5) for i in range(n)])
    complete = UndirectedWeightedGraph.from_edges(nodes, [(a, b, 1.0) for a, b in itertools.combinations(nodes, 2)])
    for g in (cycle, complete):
        scores = [s for _, s in pagerank_weighted(g, CFG)]
        assert max(scores) - min(scores) <= CFG.pr_tolerance
        assert scores[0] == pytest.approx(1 / n, abs=CFG.pr_tolerance)


def test_pagerank_oracle_examples():
    g2 = UndirectedWeightedGraph.from_edges("ab", [("a", "b", 5.0)])
    g1 = UndirectedWeightedGraph.from_edges(["x"], [])
    for g in (g2, path3(), g1):
        assert linf(pagerank_weighted(g, CFG), pagerank_oracle(g, CFG)) < 1e-9
    empty4 = UndirectedWeightedGraph.from_edges("abcd", [])
    assert [s for _, s in pagerank_oracle(empty4, CFG)] == pytest.approx([0.25] * 4, abs=1e-15)


def test_pagerank_oracle_seed7():
    g = random_undirected(7, n_min=50)
    assert g.n == 50
    assert linf(pagerank_weighted(g, CFG), pagerank_oracle(g, CFG)) < 1e-9


def test_pagerank_oracle_cap():
    nodes = [f"v{i:03d}" for i in range(201)]
    with pytest.raises(TooLarge):
        pagerank_oracle(UndirectedWeightedGraph.from_edges(nodes, []), CFG)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.05, 0.95))
def test_pagerank_distribution(seed, d):
    g = random_undirected(seed)
    t = pagerank_weighted(g, CFG.replace(damping=d))
    scores = np.array([s for _, s in t])
    assert abs(scores.sum() - 1) <= 1e-9
    assert np.all(scores > 0)
    assert len(t) == g.n


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(1e-3, 1e3))
def test_pagerank_weight_scaling(seed, c):
    g = random_undirected(seed)
    assert linf(pagerank_weighted(g, CFG), pagerank_weighted(g.scaled(c), CFG)) <= CFG.pr_tolerance


def test_pagerank_deterministic():
    g = random_undirected(12)
    assert pagerank_weighted(g, CFG) == pagerank_weighted(g, CFG)


# --- betweenness ------------------------------------------------------------


def test_betweenness_chain_normalized():
    g = DirectedWeightedGraph.from_arcs("abc", [("a", "b", 1.0), ("b", "c", 1.0)])
    assert betweenness_weighted(g, CFG).as_dict() == {"a": 0.0, "b": 0.5, "c": 0.0}


def test_betweenness_diamond():
    g = DirectedWeightedGraph.from_arcs("abcd", [("a", "b", 1), ("a", "c", 1), ("b", "d", 1), ("c", "d", 1)])
    assert betweenness_weighted(g, RAW).as_dict() == {"a": 0.0, "b": 0.5, "c": 0.5, "d": 0.0}


def test_betweenness_uses_reciprocal_weights():
    g = DirectedWeightedGraph.from_arcs("abc", [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 0.4)])
    assert betweenness_weighted(g, RAW).as_dict() == {"a": 0.0, "b": 1.0, "c": 0.0}
    # a heavier direct arc (length 0.5 < 2) bypasses b
    g2 = DirectedWeightedGraph.from_arcs("abc", [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 2.0)])
    assert betweenness_weighted(g2, RAW).as_dict()["b"] == 0.0


def test_betweenness_tie_within_tolerance():
    # 1/3 + 1/3 + 1/3 vs 1/1: equal path lengths up to rounding
    arcs = [("s", "x", 3.0), ("x", "y", 3.0), ("y", "t", 3.0), ("s", "z", 2.0), ("z", "t", 2.0)]
    g = DirectedWeightedGraph.from_arcs("stxyz", arcs)
    s = betweenness_weighted(g, RAW).as_dict()
    assert s["z"] == pytest.approx(0.5) and s["x"] == pytest.approx(0.5 + 1.0)
    assert linf(betweenness_weighted(g, RAW), betweenness_oracle(g, RAW)) < 1e-12


def test_betweenness_zero_weight_arc():
    g = DirectedWeightedGraph.from_arcs("ab", [("a", "b", 0.0, 1)])
    with pytest.raises(ZeroWeightArc):
        betweenness_weighted(g, CFG)
    with pytest.raises(ZeroWeightArc):
        betweenness_oracle(g, CFG)


@pytest.mark.parametrize("nodes", [[], ["a"], ["a", "b"]])
def test_betweenness_small_graph_normalized_zero(nodes):
    arcs = [("a", "b", 1.0)] if len(nodes) == 2 else []
    g = DirectedWeightedGraph.from_arcs(nodes, arcs)
    assert all(s == 0.0 for _, s in betweenness_weighted(g, CFG))


def test_betweenness_oracle_examples():
    chain = DirectedWeightedGraph.from_arcs("abc", [("a", "b", 1.0), ("b", "c", 1.0)])
    diamond = DirectedWeightedGraph.from_arcs("abcd", [("a", "b", 1), ("a", "c", 1), ("b", "d", 1), ("c", "d", 1)])
    for g in (chain, diamond):
        for cfg in (CFG, RAW):
            assert betweenness_oracle(g, cfg) == betweenness_weighted(g, cfg)


def test_betweenness_oracle_seed11():
    g = random_digraph(11, n=30, m=120)
    assert (g.n, g.m) == (30, 120)
    assert linf(betweenness_weighted(g, CFG), betweenness_oracle(g, CFG)) < 1e-9


def test_betweenness_oracle_cap():
    nodes = [f"v{i:02d}" for i in range(61)]
    with pytest.raises(TooLarge):
        betweenness_oracle(DirectedWeightedGraph.from_arcs(nodes, []), CFG)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_betweenness_sources_and_sinks_zero(seed):
    g = random_digraph(seed, n_max=30)
    s = betweenness_weighted(g, RAW).as_dict()
    indeg = np.bincount(g.dst, minlength=g.n)
    outdeg = np.bincount(g.src, minlength=g.n)
    for i, node in enumerate(g.nodes):
        assert s[node] >= 0
        if indeg[i] == 0 or outdeg[i] == 0:
            assert s[node] == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(-6, 6))
def test_betweenness_power_of_two_scaling_exact(seed, k):
    g = random_digraph(seed, n_max=30)
    assert betweenness_weighted(g.scaled(2.0**k), CFG) == betweenness_weighted(g, CFG)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.floats(1e-3, 1e3))
def test_betweenness_scaling(seed, c):
    g = random_digraph(seed, n_max=30)
    assert linf(betweenness_weighted(g.scaled(c), RAW), betweenness_weighted(g, RAW)) <= 1e-9


def test_betweenness_worker_count_invariant():
    g = random_digraph(5, n=80, m=600)
    one = betweenness_weighted(g, CFG, threads=1)
    assert betweenness_weighted(g, CFG, threads=3) == one
    assert betweenness_weighted(g, CFG, threads=1) == one
