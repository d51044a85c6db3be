import itertools

import networkx as nx
import numpy as np
import pytest
from _oracles import cycle, path, petersen, planar_corpus, random_planar, star

from gridset.baselines import (
    BRUTE_FORCE_LIMIT,
    _Search,
    brute_force_ds,
    closed_neighbourhoods,
    exact_bnb,
    exact_bnb_ds,
    greedy_ds,
)
from gridset.dp import verify_dominating
from gridset.graph import build_graph, from_index_edges


def test_greedy_star_picks_centre():
    ds = greedy_ds(star(5))
    assert ds.vertices == (0,)


def test_greedy_ieee9(cases):
    assert greedy_ds(cases["case9"]).cardinality == 3


def test_greedy_ieee118_bounded(cases):
    assert 32 <= greedy_ds(cases["case118"]).cardinality <= 40


def test_greedy_tie_break_smallest_index():
    # every vertex of C6 covers 3; vertex 0 goes first
    assert greedy_ds(cycle(6)).vertices[0] == 0


def test_greedy_always_valid():
    for g in planar_corpus(count=40, seed=11):
        ds = greedy_ds(g)
        assert ds.valid and verify_dominating(g, ds.vertices)


@pytest.mark.parametrize(
    "g, size", [(path(4), 2), (petersen(), 3), (cycle(6), 2), (cycle(7), 3)],
    ids=["P4", "petersen", "C6", "C7"],
)
def test_brute_force_small(g, size):
    assert brute_force_ds(g).cardinality == size


def test_brute_force_ieee14(cases):
    assert brute_force_ds(cases["case14"]).cardinality == 4


def test_brute_force_refuses_big_graphs():
    with pytest.raises(ValueError, match="refuses"):
        brute_force_ds(path(BRUTE_FORCE_LIMIT + 1))


def test_bnb_c6():
    ds, optimal = exact_bnb_ds(cycle(6))
    assert ds.cardinality == 2 and optimal


@pytest.mark.parametrize("name, size", [("case57", 17), ("case300", 87)])
def test_bnb_benchmarks(cases, name, size):
    ds, optimal = exact_bnb_ds(cases[name])
    assert optimal and ds.valid
    assert ds.cardinality == size


def test_bnb_timeout_returns_flagged_incumbent():
    grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(9, 9))
    res = exact_bnb(build_graph(grid.edges()), time_budget=0.0)
    assert not res.optimal
    assert res.dominating_set.valid


def test_bnb_matches_brute_force():
    for g in planar_corpus(count=80, seed=5):
        ds, optimal = exact_bnb_ds(g)
        assert optimal and ds.valid
        assert ds.cardinality == brute_force_ds(g).cardinality


def test_bnb_on_nonplanar_small():
    k = build_graph(itertools.combinations(range(7), 2))
    assert exact_bnb_ds(k)[0].cardinality == 1
    assert exact_bnb_ds(petersen())[0].cardinality == 3


def test_bnb_disconnected():
    g = from_index_edges(8, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    ds, optimal = exact_bnb_ds(g)
    assert optimal and ds.cardinality == brute_force_ds(g).cardinality == 4


def _min_cover(N, U, C):
    cands = [v for v in range(len(N)) if C >> v & 1]
    for k in range(len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            acc = 0
            for v in combo:
                acc |= N[v]
            if acc & U == U:
                return k
    return None


def test_lower_bound_admissible():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(150):
        g = random_planar(rng, int(rng.integers(4, 11)), float(rng.uniform(0, 0.6)))
        N = closed_neighbourhoods(g)
        full = (1 << g.n) - 1
        U = int(rng.integers(1, full + 1))
        C = int(rng.integers(0, full + 1)) | U  # U's own vertices keep it coverable
        best = _min_cover(N, U, C)
        assert _Search(N, None).lower_bound(U, C) <= best
        checked += 1
    assert checked == 150


def test_root_lower_bound_below_optimum():
    for g in planar_corpus(count=40, seed=23):
        res = exact_bnb(g)
        assert res.root_lower_bound <= res.dominating_set.cardinality
