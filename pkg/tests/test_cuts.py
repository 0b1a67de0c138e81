import networkx as nx
import pytest
from hypothesis import given

from buneman_blocks import (
    SplitSystem,
    all_blocks,
    component_correspondences,
    delta_min,
    enumerate_vertices,
    gamma_phi_sigma,
    gamma_phi_sigma_min,
    gamma_phi_v,
    gamma_phi_x,
    is_cut_vertex,
)
from buneman_blocks.cuts import CRITERIA, x_phi
from buneman_blocks.exceptions import NotAVertex

from conftest import idx, names_of, split_systems
from test_graph import _bits, nx_graph

MARKED = {"1235", "1234", "45", "78", "67"}
# minimal-split sets of the four cut vertices, from a brute-force scan
CUT_SIGMAS = [
    {"1234", "1235", "45", "5"},
    {"1234", "1235", "45", "67", "78"},
    {"123", "1234", "1235", "45"},
    {"12", "123", "13"},
]


@pytest.fixture(scope="module")
def marked(g8, sigma8):
    return next(p for p in g8.vertices if names_of(sigma8, _bits(g8.min_image(p))) == MARKED)


def test_sigma8_cut_vertices(g8, sigma8):
    cuts = [p for p in g8.vertices if is_cut_vertex(g8, p).is_cut]
    got = sorted(sorted(names_of(sigma8, _bits(g8.min_image(p)))) for p in cuts)
    assert got == sorted(sorted(s) for s in CUT_SIGMAS)
    assert set(cuts) == set(nx.articulation_points(nx_graph(g8)))


def test_marked_vertex_all_six(g8, sigma8, marked):
    a = is_cut_vertex(g8, marked)
    assert all(a.verdicts[c] for c in CRITERIA)
    assert names_of(sigma8, a.sigma_phi) == MARKED
    first, rest = a.witnesses["ii"]
    # the component holding the smallest split index comes first
    assert names_of(sigma8, first) == {"1235", "1234", "45"}
    assert names_of(sigma8, rest) == {"67", "78"}
    (s1, s2), _ = a.paired["sigma_v"]
    assert names_of(sigma8, s2) == {"67", "78"}
    assert names_of(sigma8, s1) == set(names_of(sigma8, range(9))) - {"67", "78"}


def test_marked_gamma_graphs(g8, sigma8, marked):
    gs = gamma_phi_sigma(g8, marked)
    assert len(gs.components) == 2
    assert {"67", "78"} in [names_of(sigma8, c) for c in gs.components]
    gm = gamma_phi_sigma_min(g8, marked)
    assert sorted(map(frozenset, (names_of(sigma8, c) for c in gm.components)), key=len) == [
        frozenset({"67", "78"}),
        frozenset({"1235", "1234", "45"}),
    ]
    gx = gamma_phi_x(g8, marked)
    assert len(gx.components) == 2
    gv = gamma_phi_v(g8, marked)
    assert len(gv.components) == 2
    side = next(c for c in gv.components if g8.label_vertex(6) in c)
    assert {g8.label_vertex(x) for x in (5, 6, 7)} <= set(side)
    g = nx_graph(g8)
    g.remove_node(marked)
    assert sorted(sorted(c) for c in nx.connected_components(g)) == sorted(sorted(c) for c in gv.components)


def test_single_split_and_cycle():
    one = enumerate_vertices(SplitSystem.from_labels("ab", [["a"]]))
    assert gamma_phi_sigma(one, 0).edges == ()
    assert x_phi(one, 0) == (1,) and gamma_phi_x(one, 0).edges == ()
    cycle = enumerate_vertices(SplitSystem.from_labels("1234", [["1", "2"], ["1", "3"]]))
    for phi in cycle.vertices:
        assert not is_cut_vertex(cycle, phi).is_cut
        assert len(gamma_phi_v(cycle, phi).components) == 1
    assert delta_min(cycle, 0, 3) == 0b11
    assert delta_min(cycle, 0, 1) == 0b1


def test_not_a_vertex(g8):
    bad = next(p for p in range(1 << 9) if p not in g8)
    with pytest.raises(NotAVertex):
        is_cut_vertex(g8, bad)
    with pytest.raises(NotAVertex):
        gamma_phi_sigma(g8, bad)


def test_correspondences_sigma8(g8, marked):
    rows = component_correspondences(g8, marked)
    assert len(rows) == 2
    non_cut = next(p for p in g8.vertices if not is_cut_vertex(g8, p).is_cut)
    (row,) = component_correspondences(g8, non_cut)
    assert row.sigma == tuple(range(9))
    assert set(row.vertices) == set(g8.vertices) - {non_cut}


@given(split_systems(n_max=7))
def test_six_way_agreement(system):
    G = enumerate_vertices(system)
    oracle = set(nx.articulation_points(nx_graph(G)))
    for phi in G.vertices:
        a = is_cut_vertex(G, phi)
        assert len(set(a.verdicts.values())) == 1
        assert a.is_cut == (phi in oracle)
        assert len(set(a.counts.values())) == 1


@given(split_systems(n_max=7))
def test_gamma_sigma_contains_incompatibility(system):
    G = enumerate_vertices(system)
    for phi in G.vertices:
        assert set(G.incompatibility.edges) <= set(gamma_phi_sigma(G, phi).edges)


@given(split_systems(n_max=7))
def test_min_graph_is_induced_and_injective(system):
    G = enumerate_vertices(system)
    comp_of = G.incompatibility.component_of
    for phi in G.vertices:
        gm = gamma_phi_sigma_min(G, phi)
        induced = [e for e in G.incompatibility.edges if e[0] in gm.nodes and e[1] in gm.nodes]
        assert sorted(gm.edges) == sorted(induced)
        ids = [{comp_of[i] for i in c} for c in gm.components]
        assert all(len(s) == 1 for s in ids)
        assert len({next(iter(s)) for s in ids}) == len(ids)


@given(split_systems(n_max=7))
def test_degree_bridge(system):
    G = enumerate_vertices(system)
    blocks = all_blocks(G)
    for phi in G.vertices:
        assert G.degree(phi) == len(_bits(G.min_image(phi)))
        assert len(blocks.blocks_containing(phi)) == len(gamma_phi_sigma_min(G, phi).components)


@given(split_systems(n_max=7))
def test_delta_min_properties(system):
    G = enumerate_vertices(system)
    for phi in G.vertices:
        for psi in G.vertices:
            dm = delta_min(G, psi, phi)
            d = phi ^ psi
            assert dm & ~d == 0
            assert (dm != 0) == (phi != psi)
            imgs = G.images(psi)
            for i in _bits(d):
                assert any(imgs[j] & imgs[i] == imgs[j] for j in _bits(dm))


@given(split_systems(n_max=7))
def test_correspondences_random(system):
    G = enumerate_vertices(system)
    for phi in G.vertices:
        rows = component_correspondences(G, phi)
        assert len(rows) == len(gamma_phi_sigma(G, phi).components)
