import random

import networkx as nx
from hypothesis import given, strategies as st

from buneman_blocks import (
    SplitSystem,
    XTree,
    all_blocks,
    block_cut_tree,
    buneman_tree_criterion,
    enumerate_vertices,
    leaf_label_bijection_test,
    newick,
    reduce_to_xtree,
    sim_classes,
    triple_degree_check,
)
from buneman_blocks.trees import BLOCK, VERTEX, _reduce, block_degree_mismatches, compatible_splits_match

from buneman_blocks.suite import random_compatible_system

from conftest import idx, split_systems
from test_graph import nx_graph


def xtree(system):
    return reduce_to_xtree(block_cut_tree(enumerate_vertices(system)))


def test_sigma8_block_cut_tree(g8):
    T = block_cut_tree(g8)
    blocks = [n for n in T.nodes if n[0] == BLOCK]
    assert len(blocks) == 5
    assert len(T.edges) == len(T.nodes) - 1
    g = nx.Graph(list(T.edges))
    assert nx.is_tree(g)


def test_sigma8_xtree_shape(g8):
    X = reduce_to_xtree(block_cut_tree(g8))
    # three unlabelled hubs: {1,2,3 | rest}, {4,5 | ...}, {6,7,8 | ...}
    assert X.nodes == 11 and X.is_proper()
    hubs = [k for k in range(X.nodes) if not X.labels[k]]
    assert sorted(X.degree(k) for k in hubs) == [4, 4, 4]
    assert newick(X) == "(1,2,3,(4,5,(6,7,8)));"
    assert X.pruned_blocks == ()


def test_sigma_prime_same_xtree(g8, sigma_prime):
    a = reduce_to_xtree(block_cut_tree(g8))
    b = xtree(sigma_prime)
    assert a.is_isomorphic(b)
    assert compatible_splits_match(sigma_prime, b)


def test_single_block_star():
    G = enumerate_vertices(SplitSystem.from_labels("1234", [["1", "2"], ["1", "3"]]))
    T = block_cut_tree(G)
    assert T.degree((BLOCK, 0)) == 4
    assert all(T.degree((VERTEX, p)) == 1 for p in G.vertices)


def test_single_split_xtree():
    X = xtree(SplitSystem.from_labels("abcd", [["a", "c"]]))
    assert X.nodes == 2 and sorted(X.labels) == [("a", "c"), ("b", "d")]
    assert newick(X) == "(a+c,b+d);"


def test_sim_classes(g8, sigma8):
    c67 = g8.incompatibility.component_of[idx(sigma8, "67")]
    assert sim_classes(g8, c67) == [("1", "2", "3", "4", "5"), ("6",), ("7",), ("8",)]
    c5 = g8.incompatibility.component_of[idx(sigma8, "5")]
    assert sim_classes(g8, c5) == [("1", "2", "3", "4", "6", "7", "8"), ("5",)]
    cube = g8.incompatibility.component_of[idx(sigma8, "45")]
    assert sim_classes(g8, cube) == [("1", "2", "3"), ("4",), ("5",), ("6", "7", "8")]


def test_leaf_label_bijection():
    trivial = SplitSystem.from_labels("123", [["1"], ["2"], ["3"]])
    assert leaf_label_bijection_test(enumerate_vertices(trivial))
    merged = SplitSystem.from_labels("1234", [["1", "2"], ["1", "2", "3"]])
    assert not leaf_label_bijection_test(enumerate_vertices(merged))


def test_leaf_label_sigma8(g8):
    X = reduce_to_xtree(block_cut_tree(g8))
    expected = all(len(X.labels[k]) == 1 for k in X.leaves) and len(X.leaves) == 8
    assert leaf_label_bijection_test(g8) == expected


def test_buneman_criterion_examples():
    comp = enumerate_vertices(SplitSystem.from_labels("1234", [["1"], ["1", "2"]]))
    assert buneman_tree_criterion(comp) and len(comp.edges) == len(comp) - 1
    inc = enumerate_vertices(SplitSystem.from_labels("1234", [["1", "2"], ["1", "3"], ["4"]]))
    assert not buneman_tree_criterion(inc)
    assert any(len(c) == 4 for c in nx.cycle_basis(nx_graph(inc)))


def test_triple_degree_sigma8(g8):
    report = triple_degree_check(block_cut_tree(g8))
    assert report.triples == 4 and report.low == () and report.ok


def test_triple_degree_labelled_path():
    # the middle vertex is labelled by 2 and lies in two bridges
    G = enumerate_vertices(SplitSystem.from_labels("123", [["1"], ["1", "2"]]))
    report = triple_degree_check(block_cut_tree(G))
    assert report.triples == 1
    assert len(report.low) == 1 and report.ok


def test_triple_degree_single_block():
    G = enumerate_vertices(SplitSystem.from_labels("1234", [["1", "2"], ["1", "3"]]))
    report = triple_degree_check(block_cut_tree(G))
    assert report.triples == 0 and report.ok


def test_canonical_form_distinguishes_labels():
    a = XTree(3, ((0, 1), (1, 2)), (("a",), ("b",), ("c",)))
    b = XTree(3, ((0, 1), (1, 2)), (("b",), ("a",), ("c",)))
    c = XTree(3, ((0, 2), (1, 2)), (("c",), ("b",), ("a",)))
    assert not a.is_isomorphic(b)
    assert b.is_isomorphic(c)


@given(split_systems(n_max=7))
def test_block_cut_tree_invariants(system):
    G = enumerate_vertices(system)
    T = block_cut_tree(G)
    assert nx.is_tree(nx.Graph(list(T.edges)))
    blocks = all_blocks(G)
    for b in blocks:
        assert T.degree((BLOCK, b.component_id)) == len(b)
    for phi in G.vertices:
        assert T.degree((VERTEX, phi)) == len(blocks.blocks_containing(phi))
    if system.is_pairwise_compatible():
        # subdivision of the Buneman tree: every block node sits on one edge
        assert all(T.degree((BLOCK, b.component_id)) == 2 for b in blocks)
        assert len(T.nodes) == len(G) + len(G.edges)


@given(split_systems(n_max=7), st.randoms(use_true_random=False))
def test_reduction_order_independent_and_idempotent(system, rnd):
    G = enumerate_vertices(system)
    T = block_cut_tree(G)
    X = reduce_to_xtree(T)
    order = list(T.nodes)
    rnd.shuffle(order)
    assert reduce_to_xtree(T, order=order).canonical_form() == X.canonical_form()
    labelled = {k for k in range(X.nodes) if X.labels[k]}
    kept, edges, deleted = _reduce(range(X.nodes), X.edges, labelled)
    assert kept == list(range(X.nodes)) and edges == list(X.edges) and deleted == []
    assert X.is_proper()
    assert sorted(x for labs in X.labels for x in labs) == sorted(system.ground.elements)


@given(split_systems(n_max=7))
def test_block_degrees_and_leaf_criterion(system):
    G = enumerate_vertices(system)
    T = block_cut_tree(G)
    X = reduce_to_xtree(T)
    assert block_degree_mismatches(T, X) == []
    leaf_label_bijection_test(G, X)
    assert X.pruned_blocks == ()


@given(split_systems(n_max=7))
def test_triple_degree_random(system):
    report = triple_degree_check(block_cut_tree(enumerate_vertices(system)))
    assert report.ok


@given(split_systems(n_max=7))
def test_buneman_criterion_random(system):
    G = enumerate_vertices(system)
    assert buneman_tree_criterion(G) == nx.is_tree(nx_graph(G))


@given(st.integers(0, 2**32))
def test_compatible_xtree_displays_system(seed):
    system = random_compatible_system(random.Random(seed), 8, 7)
    X = xtree(system)
    assert compatible_splits_match(system, X)
