import networkx as nx
import numpy as np
import pytest
from _oracles import brute_branch_width, complete, cycle, path, random_planar, star
from hypothesis import given, settings
from hypothesis import strategies as st

from gridset.branchdecomp import (
    DecompositionError,
    branch_width,
    branch_width_at_most,
    centroid_edge,
    decompose,
    decomposition_from_tree,
    optimal_branch_decomposition,
    read_decomposition,
    root_decomposition,
    separators,
    validate_decomposition,
    write_decomposition,
)
from gridset.graph import (
    GraphError,
    NonPlanarError,
    from_index_edges,
    is_planar,
    planar_embedding,
)
from gridset.planarize import planarize_components


def _atlas_planar(max_edges):
    for G in nx.graph_atlas_g()[1:]:
        if 0 < G.number_of_edges() <= max_edges:
            g = from_index_edges(G.number_of_nodes(), list(G.edges()))
            if is_planar(g):
                yield g


def test_cycle_decision():
    emb = planar_embedding(cycle(3))
    assert branch_width_at_most(emb, 2)
    assert not branch_width_at_most(emb, 1)


def test_decision_needs_two_edges():
    with pytest.raises(GraphError, match="trivially"):
        branch_width_at_most(planar_embedding(path(2)), 3)


@pytest.mark.parametrize("name, k", [("case30", 3), ("case118", 4)])
def test_benchmark_decisions(cases, name, k):
    emb = planar_embedding(cases[name])
    assert branch_width_at_most(emb, k)
    assert not branch_width_at_most(emb, k - 1)


@pytest.mark.parametrize(
    "g, w",
    [(path(1), 0), (path(2), 0), (path(3), 1), (star(5), 1), (path(4), 2),
     (cycle(3), 2), (cycle(8), 2), (complete(4), 3)],
    ids=["K1", "edge", "P3", "star", "P4", "C3", "C8", "K4"],
)
def test_small_widths(g, w):
    assert branch_width(g) == w


def test_matching_has_width_zero():
    assert branch_width(from_index_edges(6, [(0, 1), (2, 3), (4, 5)])) == 0


def test_grid_width():
    G = nx.convert_node_labels_to_integers(nx.grid_2d_graph(5, 5))
    assert branch_width(from_index_edges(25, list(G.edges()))) == 5


def test_benchmark_widths(cases):
    assert branch_width(cases["case9"]) == 2
    assert optimal_branch_decomposition(planar_embedding(cases["case14"])).width == 2
    bd = decompose(cases["case118"])
    assert validate_decomposition(cases["case118"], bd) == 4


def test_atlas_matches_brute_force():
    checked = 0
    for g in _atlas_planar(9):
        bd = decompose(g)
        assert validate_decomposition(g, bd) == bd.width == brute_branch_width(g), g.edges
        checked += 1
    assert checked > 500


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 9))
def test_random_planar_matches_brute_force(seed, n):
    g = random_planar(np.random.default_rng(seed), n, 0.5)
    if g.m > 11:
        g = g.subgraph_edges(range(11))
    bd = decompose(g)
    assert validate_decomposition(g, bd) == bd.width == brute_branch_width(g)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(4, 16))
def test_edge_deletion_never_raises_width(seed, n):
    rng = np.random.default_rng(seed)
    g = random_planar(rng, n, 0.0)
    sub = g.subgraph_edges(i for i in range(g.m) if rng.random() < 0.7)
    assert branch_width(sub) <= branch_width(g)


def test_validate_path_single_tree_edge():
    g = path(3)
    bd = decomposition_from_tree(g.edges, [(0, 1)], 2)
    assert validate_decomposition(g, bd) == 1


def test_validate_c3_cherry():
    g = cycle(3)
    bd = decomposition_from_tree(g.edges, [(0, 3), (1, 3), (2, 3)], 4)
    assert validate_decomposition(g, bd) == 2


def test_validate_rejects_bad_structure():
    g = cycle(4)
    # internal node of degree 4
    bad = decomposition_from_tree(g.edges, [(0, 4), (1, 4), (2, 4), (3, 4)], 5)
    with pytest.raises(DecompositionError, match="degree"):
        validate_decomposition(g, bad)
    wrong_leaves = decomposition_from_tree(g.edges[:3], [(0, 3), (1, 3), (2, 3)], 4)
    with pytest.raises(DecompositionError, match="leaves"):
        validate_decomposition(g, wrong_leaves)


def test_rooting_adds_two_edges_and_empty_root_separator(cases):
    g = cases["case14"]
    bd = decompose(g)
    for split in bd.tree_edges():
        rooted = root_decomposition(bd, split)
        t_prime_edges = sum(1 for x, p in enumerate(rooted.parent) if p >= 0)
        assert t_prime_edges == len(bd.tree_edges()) + 2
        assert rooted.omega[rooted.z] == ()
        assert rooted.postorder()[-1] == rooted.z


def test_rooted_separators_match_unrooted(cases):
    g = cases["case39"]
    bd = decompose(g)
    seps = separators(bd)
    rooted = root_decomposition(bd)
    for x, p in enumerate(rooted.parent):
        if p < 0 or x == rooted.z:
            continue
        edge = (min(x, p), max(x, p))
        if p == rooted.z:
            edge = rooted.split_edge
        assert set(rooted.omega[x]) == seps[edge]


def test_rooted_c3_children_of_z():
    g = cycle(3)
    bd = decomposition_from_tree(g.edges, [(0, 3), (1, 3), (2, 3)], 4)
    rooted = root_decomposition(bd, (0, 3))
    assert all(len(rooted.omega[c]) == 2 for c in rooted.children[rooted.z])


def test_rooted_width_ieee9(cases):
    rooted = root_decomposition(decompose(cases["case9"]))
    assert rooted.width() == 2


def test_invalid_split_edge(cases):
    bd = decompose(cases["case9"])
    with pytest.raises(DecompositionError):
        root_decomposition(bd, (0, 1))


def test_centroid_edge_is_tree_edge(cases):
    h, _ = planarize_components(cases["case57"])
    bd = decompose(h)
    assert bd.width == 4
    assert centroid_edge(bd) in bd.tree_edges()


def test_nonplanar_input_rejected(cases):
    with pytest.raises(NonPlanarError):
        decompose(cases["case57"])


def test_interchange_round_trip(cases):
    g = cases["case118"]
    bd = decompose(g)
    text = write_decomposition(g, bd)
    back = read_decomposition(text, g)
    assert back == bd
    assert write_decomposition(g, back) == text


def test_interchange_rejects_wrong_width(cases):
    g = cases["case9"]
    text = write_decomposition(g, decompose(g)).replace("bd 9 2", "bd 9 3")
    with pytest.raises(DecompositionError, match="width"):
        read_decomposition(text, g)


def test_interchange_rejects_garbage(cases):
    with pytest.raises(DecompositionError, match="line 1"):
        read_decomposition("hello\n", cases["case9"])


def test_blocks_glued_at_cut_vertices():
    # two K4 blocks sharing vertex 3, plus a pendant path
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(a + 3, b + 3) for a, b in edges]
    edges += [(6, 7), (7, 8)]
    g = from_index_edges(9, edges)
    bd = decompose(g)
    assert validate_decomposition(g, bd) == 3
