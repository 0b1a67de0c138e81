from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from buneman_blocks import GroundSet, Split, SplitSystem, a_arrow, a_arrow_component, incompatibility_graph, is_compatible
from buneman_blocks.exceptions import (
    DuplicateSplit,
    EmptyGroundSet,
    GroundSetMismatch,
    IdenticalSplits,
    ImproperSplit,
    IncompatiblePair,
    SplitInComponent,
    UnknownComponent,
    UnknownElement,
)
from buneman_blocks.splits import make_split_system

from conftest import idx, names_of, split_systems

X8 = GroundSet(str(i) for i in range(1, 9))


def S(*labels):
    return Split.from_labels(X8, [str(x) for x in labels])


def test_ground_set_sorted_and_validated():
    g = GroundSet(["b", "a", "c"])
    assert g.elements == ("a", "b", "c")
    with pytest.raises(EmptyGroundSet):
        GroundSet(["a"])
    with pytest.raises(ValueError):
        GroundSet(["a", "a"])
    with pytest.raises(UnknownElement):
        g.index("z")
    assert g.complement(g.complement(0b101)) == 0b101


def test_make_split_system_examples():
    s = make_split_system(X8, [["1", "3"]])[0]
    assert X8.labels(s.part_a) == ("1", "3")
    assert X8.labels(s.part_b) == ("2", "4", "5", "6", "7", "8")

    ab = GroundSet(["a", "b"])
    t = make_split_system(ab, [["b"]])[0]
    assert ab.labels(t.part_a) == ("a",) and ab.labels(t.part_b) == ("b",)

    with pytest.raises(DuplicateSplit):
        make_split_system(X8, [["1", "3"], ["1", "3"]])
    with pytest.raises(DuplicateSplit):
        make_split_system(X8, [["1", "3"], ["2", "4", "5", "6", "7", "8"]])
    with pytest.raises(ImproperSplit):
        make_split_system(X8, [[]])
    with pytest.raises(ImproperSplit):
        make_split_system(X8, [X8.full])
    with pytest.raises(UnknownElement):
        make_split_system(X8, [["9"]])


def test_split_system_rejects_empty_and_foreign():
    with pytest.raises(ValueError):
        SplitSystem(X8, ())
    other = GroundSet("abc")
    with pytest.raises(GroundSetMismatch):
        SplitSystem(X8, (S(1), Split.from_labels(other, "a")))


def test_compatibility_examples():
    assert is_compatible(S(1, 3), S(1, 2, 3))
    assert not is_compatible(S(6, 7), S(7, 8))
    assert not is_compatible(S(4, 5), S(1, 2, 3, 4))
    assert is_compatible(S(4, 5), S(4, 5))
    with pytest.raises(GroundSetMismatch):
        is_compatible(S(1), Split.from_labels(GroundSet("ab"), "a"))


def test_a_arrow_examples():
    assert X8.labels(a_arrow(S(1, 2, 3), S(6, 7))) == ("4", "5", "6", "7", "8")
    # four-intersection oracle: the complement of {6,7} meets both {1,2,3} and its complement
    assert X8.labels(a_arrow(S(6, 7), S(1, 2, 3))) == ("1", "2", "3", "4", "5", "8")
    assert X8.labels(a_arrow(S(4, 5), S(5))) == ("4", "5")
    with pytest.raises(IdenticalSplits):
        a_arrow(S(5), S(5))
    with pytest.raises(IncompatiblePair):
        a_arrow(S(6, 7), S(7, 8))


def test_a_arrow_component_examples():
    cube = [S(1, 2, 3, 4), S(1, 2, 3, 5), S(4, 5)]
    assert X8.labels(a_arrow_component(S(5), cube)) == ("1", "2", "3", "4", "6", "7", "8")
    assert X8.labels(a_arrow_component(S(1, 2, 3), [S(6, 7), S(7, 8)])) == ("4", "5", "6", "7", "8")
    assert X8.labels(a_arrow_component(S(4, 5), [S(5)])) == ("4", "5")
    with pytest.raises(SplitInComponent):
        a_arrow_component(S(4, 5), cube)


def test_incompatibility_graph_sigma8(sigma8):
    ig = incompatibility_graph(sigma8)
    got = [names_of(sigma8, c) for c in ig.components]
    assert got == [{"13", "12"}, {"123"}, {"1235", "45", "1234"}, {"67", "78"}, {"5"}]
    assert ig.component_ids == (0, 2, 3, 6, 8)
    with pytest.raises(UnknownComponent):
        ig.component(1)


def test_incompatibility_graph_small():
    one = make_split_system(X8, [["1"]])
    ig = incompatibility_graph(one)
    assert ig.edges == () and ig.components == ((0,),)
    two = make_split_system(X8, [["6", "7"], ["7", "8"]])
    ig = incompatibility_graph(two)
    assert ig.edges == ((0, 1),) and ig.is_connected()


def _inclusion_oracle(s, t):
    return any(b & a == b for a in s.parts for b in t.parts)


@given(split_systems(n_max=7))
def test_compatibility_symmetric_and_inclusion_oracle(system):
    for s, t in combinations(system, 2):
        assert is_compatible(s, t) == is_compatible(t, s) == _inclusion_oracle(s, t)


@given(split_systems(n_max=7))
def test_facts_41_to_44(system):
    full = system.ground.full
    for s, t in permutations(system, 2):
        if not is_compatible(s, t):
            continue
        arrow = a_arrow(s, t)
        assert arrow in s.parts
        for a in s.parts:
            for a2 in t.parts:
                cases = [a | a2 == full, a2 & a == a2 and a2 != a, a & a2 == a and a != a2, not a & a2]
                assert sum(cases) == 1
                assert (a == arrow) == (cases[0] or cases[1])


@given(split_systems(n_max=7))
def test_fact_46(system):
    for s, s1, s2 in permutations(system, 3):
        if is_compatible(s, s1) and is_compatible(s, s2) and is_compatible(s1, s2):
            assert a_arrow(s1, s) & a_arrow(s2, s)


@given(split_systems(n_max=7))
def test_fact_47(system):
    for s, s1, s2 in permutations(system, 3):
        if is_compatible(s, s1) and is_compatible(s, s2) and not is_compatible(s1, s2):
            assert a_arrow(s, s1) == a_arrow(s, s2)


@given(split_systems(n_max=7))
def test_components_are_connected_components(system):
    import networkx as nx

    ig = incompatibility_graph(system)
    g = nx.Graph()
    g.add_nodes_from(range(len(system)))
    g.add_edges_from(ig.edges)
    assert sorted(tuple(sorted(c)) for c in nx.connected_components(g)) == sorted(ig.components)
    assert all(c[0] == min(c) for c in ig.components)


def test_idx_helper(sigma8):
    assert idx(sigma8, "67") == 6
