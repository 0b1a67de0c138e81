"""Blocks of the Buneman graph, one per incompatibility component.

For a component ``C`` of the incompatibility graph every split ``S`` outside
``C`` has a forced part ``A(S -> C)``.  The block of ``C`` is obtained by
taking every vertex of the Buneman graph of ``C`` alone and extending it by
those forced parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import config
from ._graphs import bfs_components, biconnected_components
from .exceptions import (
    IdenticalVertices,
    InternalInconsistency,
    SameComponent,
    UnknownComponent,
)
from .graph import BunemanGraph, distance, enumerate_vertices
from .splits import a_arrow_component, iter_bits


def _component(G: BunemanGraph, cid: int) -> tuple[int, ...]:
    comps = G.incompatibility.components
    for comp in comps:
        if comp[0] == cid:
            return comp
    raise UnknownComponent(f"no incompatibility component with id {cid}")


@dataclass(frozen=True)
class Frame:
    """Forced sides of the splits outside a component.

    ``outside`` masks the splits not in the component and ``sides`` holds the
    side bit of ``A(S -> C)`` for each of them, so a vertex map ``phi`` lies
    in the block iff ``phi & outside == sides``.
    """

    component: tuple[int, ...]
    outside: int
    sides: int

    @property
    def inside(self) -> int:
        return sum(1 << i for i in self.component)

    def contains(self, phi: int) -> bool:
        return phi & self.outside == self.sides

    def extend(self, phi_inside: int) -> int:
        return (phi_inside & self.inside) | self.sides


def frame(G: BunemanGraph, cid: int) -> Frame:
    comp = _component(G, cid)
    system = G.system
    members = [system[j] for j in comp]
    outside = sides = 0
    for i in range(G.n_splits):
        if i in comp:
            continue
        outside |= 1 << i
        part = a_arrow_component(system[i], members)
        if part == system[i].part_b:
            sides |= 1 << i
    return Frame(comp, outside, sides)


@dataclass(frozen=True)
class Block:
    """The block ``B(C)`` of component ``C`` (id = minimal split index).

    ``vertices`` are vertex maps of the full system, ascending; ``forced``
    maps each split outside ``C`` to its forced part (a subset mask).
    """

    component_id: int
    component: tuple[int, ...]
    vertices: tuple[int, ...]
    forced: dict
    frame: Frame

    def __contains__(self, phi):
        return phi in self.vertices

    def __len__(self):
        return len(self.vertices)


def block_of(G: BunemanGraph, cid: int) -> Block:
    """Build a block from the Buneman graph of its component.

    Postconditions checked under the current profile: the embedding keeps
    difference sets, and the block equals both the set of vertices carrying
    the forced parts and the set of vertices with a minimal split in the
    component, and the set of vertices differing from a block member only
    inside the component.
    """
    fr = frame(G, cid)
    comp = fr.component
    sub = enumerate_vertices(G.system.subsystem(comp))

    def lift(local):
        phi = 0
        for new, old in enumerate(comp):
            phi |= (local >> new & 1) << old
        return fr.extend(phi)

    lifted = [lift(v) for v in sub.vertices]
    for phi in lifted:
        G.check(phi)
    vertices = tuple(sorted(lifted))

    for a, b in config.checked([(a, b) for a in range(len(lifted)) for b in range(a + 1, len(lifted))]):
        la, lb = sub.vertices[a], sub.vertices[b]
        expected = 0
        for new, old in enumerate(comp):
            expected |= ((la ^ lb) >> new & 1) << old
        if lifted[a] ^ lifted[b] != expected:
            raise InternalInconsistency("component embedding changes a difference set")

    in_frame = tuple(phi for phi in G.vertices if fr.contains(phi))
    cmask = fr.inside
    by_min = tuple(phi for phi in config.checked(G.vertices) if G.min_image(phi) & cmask)
    if in_frame != vertices or not set(by_min) <= set(vertices):
        raise InternalInconsistency(f"block of component {cid} has inconsistent descriptions")
    for phi in config.checked(G.vertices):
        if (phi in set(vertices)) != bool(G.min_image(phi) & cmask):
            raise InternalInconsistency(f"block of component {cid}: minimal-split description fails")
    anchor = vertices[0]
    for phi in config.checked(G.vertices):
        if ((phi ^ anchor) & ~cmask == 0) != (phi in set(vertices)):
            raise InternalInconsistency(f"block of component {cid}: anchored description fails")

    system = G.system
    forced = {i: system[i].part(fr.sides >> i & 1) for i in iter_bits(fr.outside)}
    return Block(cid, comp, vertices, forced, fr)


def gate(G: BunemanGraph, phi: int, cid: int) -> int:
    """The vertex of block ``cid`` through which every geodesic from ``phi`` enters.

    It agrees with ``phi`` inside the component and with the forced parts
    outside.
    """
    G.check(phi)
    fr = frame(G, cid)
    g = fr.extend(phi)
    G.check(g)
    members = [psi for psi in G.vertices if fr.contains(psi)]
    for psi in config.checked(members):
        if distance(phi, psi) != distance(phi, g) + distance(g, psi):
            raise InternalInconsistency(f"gate of {phi:b} in block {cid} is not additive for {psi:b}")
    if not fr.contains(phi) and config.get_config()["verify"]:
        if len(bfs_components(G.neighbor_lists, removed=(G.check(g),))) < 2:
            raise InternalInconsistency(f"gate {g:b} of an outside vertex is not a cut vertex")
    return g


def inter_block_gate(G: BunemanGraph, cid0: int, cid1: int) -> int:
    """The gate in block ``cid0`` shared by every vertex of block ``cid1``.

    Splits of component ``cid0`` take their part forced by ``cid1``; all
    others take their part forced by ``cid0``.
    """
    if cid0 == cid1:
        raise SameComponent("inter-block gate needs two distinct components")
    f0, f1 = frame(G, cid0), frame(G, cid1)
    g = f0.sides | (f1.sides & f0.inside)
    G.check(g)
    if not f0.contains(g):
        raise InternalInconsistency("inter-block gate outside its block")
    for psi in config.checked([p for p in G.vertices if f1.contains(p)]):
        if f0.extend(psi) != g:
            raise InternalInconsistency(f"inter-block gate is not the gate of {psi:b}")
    return g


def blocks_intersect(G: BunemanGraph, cid0: int, cid1: int) -> int | None:
    """The single vertex shared by two blocks, or ``None`` if they are disjoint.

    Decided by comparing the forced parts of the splits outside both
    components, then checked against the literal intersection.
    """
    if cid0 == cid1:
        raise SameComponent("block intersection needs two distinct components")
    f0, f1 = frame(G, cid0), frame(G, cid1)
    common = f0.outside & f1.outside
    agree = f0.sides & common == f1.sides & common
    direct = [phi for phi in G.vertices if f0.contains(phi) and f1.contains(phi)]
    shared = None
    if agree:
        shared = inter_block_gate(G, cid0, cid1)
        if shared != inter_block_gate(G, cid1, cid0):
            raise InternalInconsistency("the two inter-block gates differ")
        if len(bfs_components(G.neighbor_lists, removed=(G.check(shared),))) < 2:
            raise InternalInconsistency("shared block vertex is not a cut vertex")
    if direct != ([] if shared is None else [shared]):
        raise InternalInconsistency(f"blocks {cid0} and {cid1}: forced-part test disagrees with intersection")
    return shared


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """All blocks of a Buneman graph, indexed by component id."""

    graph: BunemanGraph
    blocks: tuple[Block, ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, cid) -> Block:
        for b in self.blocks:
            if b.component_id == cid:
                return b
        raise UnknownComponent(f"no incompatibility component with id {cid}")

    @cached_property
    def cut_vertices(self) -> tuple[int, ...]:
        """Vertices lying in more than one block, ascending."""
        count = {}
        for b in self.blocks:
            for phi in b.vertices:
                count[phi] = count.get(phi, 0) + 1
        return tuple(sorted(phi for phi, c in count.items() if c > 1))

    def blocks_containing(self, phi: int) -> tuple[int, ...]:
        return tuple(b.component_id for b in self.blocks if phi in b.vertices)

    def psi_table(self) -> list[tuple[int, tuple[int, ...], int]]:
        """``(component id, component splits, block size)`` per component."""
        return [(b.component_id, b.component, len(b)) for b in self.blocks]


def all_blocks(G: BunemanGraph) -> BlockDecomposition:
    """One block per incompatibility component, checked against a lowpoint DFS."""
    blocks = tuple(block_of(G, cid) for cid in G.incompatibility.component_ids)
    dfs_blocks, dfs_cuts = biconnected_components(G.neighbor_lists)
    ours = sorted(tuple(G.position[phi] for phi in b.vertices) for b in blocks)
    if ours != sorted(tuple(b) for b in dfs_blocks):
        raise InternalInconsistency("blocks differ from the biconnected components")
    decomposition = BlockDecomposition(G, blocks)
    if [G.vertices[k] for k in dfs_cuts] != sorted(decomposition.cut_vertices):
        raise InternalInconsistency("cut vertices differ from the articulation points")
    return decomposition


def separation_test(G: BunemanGraph, psi: int, psi2: int) -> bool:
    """True iff some cut vertex separates ``psi`` from ``psi2``.

    That is the case iff their difference set meets at least two
    incompatibility components.
    """
    G.check(psi)
    G.check(psi2)
    if psi == psi2:
        raise IdenticalVertices("separation needs two distinct vertices")
    comp_of = G.incompatibility.component_of
    result = len({comp_of[i] for i in iter_bits(psi ^ psi2)}) >= 2
    if config.get_config()["verify"]:
        if result != _separated_by_deletion(G, psi, psi2):
            raise InternalInconsistency("separation criterion disagrees with vertex deletion")
    return result


def _separated_by_deletion(G, psi, psi2):
    a, b = G.position[psi], G.position[psi2]
    _, cuts = biconnected_components(G.neighbor_lists)
    for c in cuts:
        if c in (a, b):
            continue
        for comp in bfs_components(G.neighbor_lists, removed=(c,)):
            if (a in comp) != (b in comp):
                return True
    return False
