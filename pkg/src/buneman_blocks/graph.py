"""The Buneman graph of a split system.

A *vertex map* assigns one part to every split.  It is stored as an ``int``
whose bit ``i`` is 1 iff split ``i`` is mapped to its ``part_b``; that int is
also the vertex identity, and vertices are ordered by it.  A vertex map is a
vertex of the Buneman graph iff its images pairwise intersect; two vertices
are adjacent iff their maps differ on exactly one split, the edge *type*.

Difference sets ``Delta(phi, psi)`` are ``int`` masks over split indices, so
``delta(phi, psi) == phi ^ psi`` and distances are popcounts.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import config
from ._graphs import bfs_components, bfs_distances
from .exceptions import (
    CapExceeded,
    EmptySubset,
    InternalInconsistency,
    NotAVertex,
    SystemMismatch,
)
from .splits import IncompatibilityGraph, SplitSystem, incompatibility_graph, iter_bits, popcount

STRATEGIES = ("incremental", "brute")


def image(system: SplitSystem, phi: int, i: int) -> int:
    """The part of split ``i`` selected by ``phi``."""
    return system[i].part(phi >> i & 1)


def images(system: SplitSystem, phi: int) -> list[int]:
    return [s.part(phi >> i & 1) for i, s in enumerate(system.splits)]


def is_vertex(system: SplitSystem, phi: int) -> bool:
    """Check the pairwise-intersection condition on all images of ``phi``."""
    imgs = images(system, phi)
    return all(a & b for a, b in combinations(imgs, 2))


def delta(phi: int, psi: int) -> int:
    """Mask of the splits on which ``phi`` and ``psi`` differ."""
    return phi ^ psi


def distance(phi: int, psi: int) -> int:
    return popcount(phi ^ psi)


def flip(phi: int, splits: int | Iterable[int]) -> int:
    """Flip ``phi`` on a set of splits given as a mask or an index iterable."""
    if not isinstance(splits, int):
        mask = 0
        for i in splits:
            mask |= 1 << i
        splits = mask
    return phi ^ splits


def median(a: int, b: int, c: int) -> int:
    """Per-split majority vote."""
    return (a & b) | (a & c) | (b & c)


def labeling_map(system: SplitSystem, element: int) -> int:
    """The vertex ``phi_x`` mapping every split to its part containing ``x``."""
    phi = 0
    for i, s in enumerate(system.splits):
        if not s.part_a >> element & 1:
            phi |= 1 << i
    return phi


def _enumerate_brute(system):
    m = len(system)
    if m > config.get_config()["max_splits_brute"]:
        raise CapExceeded(f"brute-force enumeration limited to {config.get_config()['max_splits_brute']} splits, got {m}")
    # forbidden side combinations per pair: parts with empty intersection
    forbidden = []
    for i, j in combinations(range(m), 2):
        for si in (0, 1):
            for sj in (0, 1):
                if not system[i].part(si) & system[j].part(sj):
                    forbidden.append(((1 << i) | (1 << j), (si << i) | (sj << j)))
    return [phi for phi in range(1 << m) if all(phi & mask != bad for mask, bad in forbidden)]


def _enumerate_incremental(system):
    m = len(system)
    if m > config.get_config()["max_splits"]:
        raise CapExceeded(f"enumeration limited to {config.get_config()['max_splits']} splits, got {m}")
    partial = [(0, ())]
    for i, s in enumerate(system.splits):
        grown = []
        for phi, imgs in partial:
            extended = False
            for side in (0, 1):
                part = s.part(side)
                if all(part & a for a in imgs):
                    grown.append((phi | side << i, imgs + (part,)))
                    extended = True
            if not extended:
                raise InternalInconsistency(f"partial vertex {phi:b} has no extension to split {i}")
        partial = grown
    return sorted(phi for phi, _ in partial)


def enumerate_vertices(system: SplitSystem, strategy: str = "incremental") -> "BunemanGraph":
    """Build the Buneman graph of ``system``.

    ``incremental`` extends partial vertex maps split by split and is
    output-sensitive; ``brute`` scans all ``2**m`` maps.
    """
    if strategy == "incremental":
        verts = _enumerate_incremental(system)
    elif strategy == "brute":
        verts = _enumerate_brute(system)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return BunemanGraph(system, tuple(verts))


@dataclass(frozen=True, eq=False)
class BunemanGraph:
    """Vertices, typed edges and the labelling ``x -> phi_x``.

    ``adjacency[k]`` lists ``(split_index, neighbour_position)`` for the
    vertex at position ``k`` of ``vertices``.
    """

    system: SplitSystem
    vertices: tuple[int, ...]
    position: dict = field(init=False, repr=False)
    adjacency: tuple = field(init=False, repr=False)
    labeling: tuple = field(init=False, repr=False)

    def __post_init__(self):
        position = {phi: k for k, phi in enumerate(self.vertices)}
        m = len(self.system)
        adjacency = []
        for phi in self.vertices:
            nbrs = []
            for i in range(m):
                k = position.get(phi ^ (1 << i))
                if k is not None:
                    nbrs.append((i, k))
            adjacency.append(tuple(nbrs))
        labeling = tuple(position[labeling_map(self.system, x)] for x in range(len(self.system.ground)))
        object.__setattr__(self, "position", position)
        object.__setattr__(self, "adjacency", tuple(adjacency))
        object.__setattr__(self, "labeling", labeling)

    # basic structure

    @property
    def n_splits(self) -> int:
        return len(self.system)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, phi):
        return phi in self.position

    @cached_property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """``(k, l, split)`` with vertex positions ``k < l``, sorted."""
        out = []
        for k, nbrs in enumerate(self.adjacency):
            for i, l in nbrs:
                if k < l:
                    out.append((k, l, i))
        return tuple(sorted(out))

    @cached_property
    def incompatibility(self) -> IncompatibilityGraph:
        return incompatibility_graph(self.system)

    @cached_property
    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        """Plain adjacency lists of positions, for generic graph routines."""
        return tuple(tuple(l for _, l in nbrs) for nbrs in self.adjacency)

    def check(self, phi: int) -> int:
        """Return the position of ``phi``; raise if it is not a vertex."""
        if phi < 0 or phi >> self.n_splits:
            raise SystemMismatch(f"map {phi:b} has bits beyond the {self.n_splits} splits")
        try:
            return self.position[phi]
        except KeyError:
            raise NotAVertex(f"map {phi:0{self.n_splits}b} violates the pairwise intersection condition") from None

    def image(self, phi: int, i: int) -> int:
        return image(self.system, phi, i)

    def images(self, phi: int) -> list[int]:
        return images(self.system, phi)

    def labels_at(self, phi: int) -> tuple[int, ...]:
        """Element indices ``x`` with ``phi_x == phi``."""
        k = self.check(phi)
        return tuple(x for x, pos in enumerate(self.labeling) if pos == k)

    def label_vertex(self, element: int) -> int:
        return self.vertices[self.labeling[element]]

    def bfs_distance(self, phi: int, psi: int) -> int:
        return bfs_distances(self.neighbor_lists, self.check(phi))[self.check(psi)]

    # local structure

    def min_image(self, phi: int) -> int:
        """Mask of splits whose image under ``phi`` is inclusion-minimal."""
        self.check(phi)
        return _min_image_mask(self.images(phi), range(self.n_splits))

    def neighbors(self, phi: int) -> list[tuple[int, int]]:
        """``(split, phi^S)`` for every split ``S`` with minimal ``phi``-image."""
        sigma = self.min_image(phi)
        out = [(i, phi ^ (1 << i)) for i in iter_bits(sigma)]
        for i, psi in config.checked(out):
            if psi not in self.position:
                raise InternalInconsistency(f"flip of a minimal split {i} is not a vertex")
        return out

    def degree(self, phi: int) -> int:
        return len(self.adjacency[self.check(phi)])

    # geodesics

    def shortest_path_count(self, phi: int, psi: int) -> int:
        """Number of geodesics from ``phi`` to ``psi``.

        Counted as the linear extensions of inclusion on the ``phi``-images
        of the splits in ``Delta(phi, psi)``.
        """
        self.check(phi)
        self.check(psi)
        diff = list(iter_bits(phi ^ psi))
        cap = config.get_config()["max_path_delta"]
        if len(diff) > cap:
            raise CapExceeded(f"|Delta| = {len(diff)} exceeds max_path_delta = {cap}")
        imgs = [self.image(phi, i) for i in diff]
        below = [0] * len(diff)
        for a, pa in enumerate(imgs):
            for b, pb in enumerate(imgs):
                if a != b and pb & pa == pb:
                    below[a] |= 1 << b
        return count_linear_extensions(below)

    def mandatory_vertex(self, start: int, end: int, via: int) -> bool:
        """True iff every geodesic from ``start`` to ``end`` passes through ``via``.

        Evaluated with both the inclusion criterion and its negated form
        (a split pair whose ``via``-images do not cover X); they must agree.
        """
        for v in (start, end, via):
            self.check(v)
        d_sv, d_ve, d_se = start ^ via, via ^ end, start ^ end
        on_interval = d_sv & d_ve == 0 and d_sv | d_ve == d_se
        ordered = on_interval and all(
            self.image(start, j) & self.image(start, i) == self.image(start, i)
            for i in iter_bits(d_sv)
            for j in iter_bits(d_ve)
        )
        full = self.system.ground.full
        d_ev = end ^ via
        escapes = not on_interval or any(
            self.image(via, i) | self.image(via, j) != full
            for i in iter_bits(d_sv)
            for j in iter_bits(d_ev)
        )
        if ordered == escapes:
            raise InternalInconsistency("geodesic criteria disagree")
        return ordered

    # global structure

    def kappa_cutset(self, split: int) -> tuple[list[int], list[int]]:
        """The two components left after deleting all edges of type ``split``.

        Returns ``(side_a, side_b)`` as sorted vertex lists: maps sending the
        split to its ``part_a`` resp. ``part_b``.
        """
        if not 0 <= split < self.n_splits:
            raise IndexError(split)
        adj = [[l for i, l in nbrs if i != split] for nbrs in self.adjacency]
        comps = bfs_components(adj)
        side_a = [phi for phi in self.vertices if not phi >> split & 1]
        side_b = [phi for phi in self.vertices if phi >> split & 1]
        got = sorted(sorted(self.vertices[k] for k in c) for c in comps)
        if got != sorted([side_a, side_b]):
            raise InternalInconsistency(f"edges of type {split} do not cut the graph into its two sides")
        s = self.system[split]
        for x in range(len(self.system.ground)):
            side = side_a if s.side_of(x) == 0 else side_b
            if self.label_vertex(x) not in side:
                raise InternalInconsistency(f"phi_{x} on the wrong side of split {split}")
        return side_a, side_b

    def restrict(self, indices: Iterable[int], sub: "BunemanGraph | None" = None) -> tuple["BunemanGraph", dict]:
        """Restriction of vertex maps to a subsystem.

        Returns the Buneman graph of the subsystem and the (surjective) map
        sending each vertex here to its restriction there.
        """
        idx = sorted(set(indices))
        if not idx:
            raise EmptySubset("cannot restrict to an empty set of splits")
        if idx[0] < 0 or idx[-1] >= self.n_splits:
            raise IndexError(idx)
        if sub is None:
            sub = enumerate_vertices(self.system.subsystem(idx))

        def res(phi):
            out = 0
            for new, old in enumerate(idx):
                out |= (phi >> old & 1) << new
            return out

        mapping = {phi: res(phi) for phi in self.vertices}
        if set(mapping.values()) != set(sub.vertices):
            raise InternalInconsistency("restriction is not onto the vertices of the subsystem")
        kept = set(idx)
        for k, l, i in config.checked(self.edges):
            a, b = mapping[self.vertices[k]], mapping[self.vertices[l]]
            if (i in kept) != (a != b) or (a != b and a ^ b != 1 << idx.index(i)):
                raise InternalInconsistency(f"edge of type {i} mapped incorrectly")
        return sub, mapping

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1 and len(bfs_components(self.neighbor_lists)) == 1


def _min_image_mask(imgs, candidates):
    """Mask of candidate indices whose image has no proper subset among candidates' images."""
    cand = list(candidates)
    out = 0
    for i in cand:
        a = imgs[i]
        if not any(imgs[j] != a and imgs[j] & a == imgs[j] for j in cand):
            out |= 1 << i
    return out


def count_linear_extensions(below: list[int]) -> int:
    """Linear extensions of a poset given by predecessor masks.

    ``below[a]`` is the mask of elements strictly below ``a``.  Dynamic
    programming over down-sets, ``O(2**n * n)``.
    """
    n = len(below)
    ways = {0: 1}
    for size in range(n):
        nxt = {}
        for done, count in ways.items():
            for a in range(n):
                if not done >> a & 1 and below[a] & done == below[a]:
                    key = done | 1 << a
                    nxt[key] = nxt.get(key, 0) + count
        ways = nxt
    return ways.get((1 << n) - 1, 1 if n == 0 else 0)
