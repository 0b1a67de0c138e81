from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from buneman_blocks import (
    SplitSystem,
    all_blocks,
    block_of,
    blocks_intersect,
    config_context,
    distance,
    enumerate_vertices,
    gate,
    inter_block_gate,
    is_cut_vertex,
    separation_test,
)
from buneman_blocks.exceptions import IdenticalVertices, SameComponent, UnknownComponent

from conftest import idx, names_of, split_systems
from test_graph import _bits, nx_graph

# block sizes from the brute-force oracle
BLOCK_SIZES8 = {frozenset({"13", "12"}): 4, frozenset({"123"}): 2, frozenset({"1234", "1235", "45"}): 8,
                frozenset({"67", "78"}): 4, frozenset({"5"}): 2}


def cid(system, name):
    G = enumerate_vertices(system)
    return G.incompatibility.component_of[idx(system, name)]


def test_sigma8_blocks(g8, sigma8):
    blocks = all_blocks(g8)
    assert len(blocks) == 5
    assert {frozenset(names_of(sigma8, b.component)): len(b) for b in blocks} == BLOCK_SIZES8
    oracle = sorted(sorted(c) for c in nx.biconnected_components(nx_graph(g8)))
    assert sorted(sorted(b.vertices) for b in blocks) == oracle
    b67 = block_of(g8, cid(sigma8, "67"))
    assert nx.is_isomorphic(nx_graph(g8).subgraph(b67.vertices), nx.cycle_graph(4))
    assert len(block_of(g8, cid(sigma8, "123"))) == 2
    with pytest.raises(UnknownComponent):
        block_of(g8, 1)


def test_block_frame(g8, sigma8):
    b = block_of(g8, cid(sigma8, "67"))
    i123 = idx(sigma8, "123")
    assert sigma8.ground.labels(b.forced[i123]) == ("4", "5", "6", "7", "8")
    assert set(b.forced) == set(range(9)) - set(b.component)


def test_gates_sigma8(g8, sigma8):
    c67 = cid(sigma8, "67")
    phi1 = g8.label_vertex(0)
    g = gate(g8, phi1, c67)
    assert is_cut_vertex(g8, g).is_cut
    inside = block_of(g8, c67).vertices[0]
    assert gate(g8, inside, c67) == inside


def test_inter_block_gate_is_marked_vertex(g8, sigma8):
    c67, ccube = cid(sigma8, "67"), cid(sigma8, "45")
    shared = inter_block_gate(g8, c67, ccube)
    assert names_of(sigma8, _bits(g8.min_image(shared))) == {"1235", "1234", "45", "78", "67"}
    assert shared == inter_block_gate(g8, ccube, c67) == blocks_intersect(g8, c67, ccube)
    with pytest.raises(SameComponent):
        inter_block_gate(g8, c67, c67)
    with pytest.raises(SameComponent):
        blocks_intersect(g8, c67, c67)


def test_blocks_intersect_sigma8(g8, sigma8):
    c13, c123, c67 = cid(sigma8, "13"), cid(sigma8, "123"), cid(sigma8, "67")
    v = blocks_intersect(g8, c13, c123)
    assert v is not None and v in block_of(g8, c13) and v in block_of(g8, c123)
    assert blocks_intersect(g8, c13, c67) is None


def test_compatible_pair_blocks_share_one_vertex():
    G = enumerate_vertices(SplitSystem.from_labels("123", [["1"], ["3"]]))
    blocks = all_blocks(G)
    assert [len(b) for b in blocks] == [2, 2]
    shared = blocks_intersect(G, 0, 1)
    assert shared == G.label_vertex(1)


def test_connected_incompatibility_single_block():
    G = enumerate_vertices(SplitSystem.from_labels("12345", [["1", "2"], ["2", "3"], ["3", "4"]]))
    assert G.incompatibility.is_connected()
    (b,) = all_blocks(G)
    assert set(b.vertices) == set(G.vertices)
    assert nx.is_biconnected(nx_graph(G))


def test_separation_sigma8(g8):
    phi1, phi7 = g8.label_vertex(0), g8.label_vertex(6)
    assert separation_test(g8, phi1, phi7)
    b = all_blocks(g8).blocks[0]
    assert not separation_test(g8, b.vertices[0], b.vertices[1])
    with pytest.raises(IdenticalVertices):
        separation_test(g8, phi1, phi1)


@given(split_systems(n_max=7))
def test_blocks_match_biconnected_components(system):
    G = enumerate_vertices(system)
    blocks = all_blocks(G)
    oracle = sorted(sorted(c) for c in nx.biconnected_components(nx_graph(G)))
    assert sorted(sorted(b.vertices) for b in blocks) == oracle
    assert len(blocks) == len(G.incompatibility.components)
    if system.is_pairwise_compatible():
        assert len(blocks) == len(system) and all(len(b) == 2 for b in blocks)


@given(split_systems(n_max=7))
def test_block_shape_and_isometry(system):
    G = enumerate_vertices(system)
    g = nx_graph(G)
    for b in all_blocks(G):
        sub = g.subgraph(b.vertices)
        assert len(b) >= 2
        assert len(b) == 2 or nx.is_biconnected(sub)
        dist = dict(nx.all_pairs_shortest_path_length(sub))
        for p, q in combinations(b.vertices, 2):
            assert dist[p][q] == distance(p, q)
        # the embedding only changes splits of the component
        mask = sum(1 << i for i in b.component)
        assert all((p ^ q) & ~mask == 0 for p, q in combinations(b.vertices, 2))


@given(split_systems(n_max=7))
def test_gate_uniqueness(system):
    G = enumerate_vertices(system)
    for b in all_blocks(G):
        for phi in G.vertices:
            g = gate(G, phi, b.component_id)
            good = [
                psi for psi in b.vertices
                if all(distance(phi, t) == distance(phi, psi) + distance(psi, t) for t in b.vertices)
            ]
            assert good == [g]


@given(split_systems(n_max=7))
def test_inter_block_gates_random(system):
    G = enumerate_vertices(system)
    blocks = all_blocks(G)
    for b0, b1 in combinations(blocks, 2):
        g = inter_block_gate(G, b0.component_id, b1.component_id)
        for psi in b1.vertices:
            assert gate(G, psi, b0.component_id) == g
        direct = set(b0.vertices) & set(b1.vertices)
        shared = blocks_intersect(G, b0.component_id, b1.component_id)
        assert direct == (set() if shared is None else {shared})


@given(split_systems(n_max=7))
def test_separation_random(system):
    G = enumerate_vertices(system)
    g = nx_graph(G)
    cuts = set(nx.articulation_points(g))
    with config_context(verify=True):
        for a, b in combinations(G.vertices, 2):
            expected = any(
                not nx.has_path(g.subgraph(set(G.vertices) - {c}), a, b) for c in cuts - {a, b}
            )
            assert separation_test(G, a, b) == expected
