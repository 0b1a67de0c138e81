"""Cut vertices of the Buneman graph.

For a vertex ``phi`` four auxiliary graphs are built whose connected
components correspond one-to-one with the components of the Buneman graph
minus ``phi``:

* ``gamma_phi_sigma``: splits, ``S ~ S'`` iff ``phi(S) | phi(S') != X``;
* ``gamma_phi_sigma_min``: the splits with minimal image, ``S ~ S'`` iff
  incompatible;
* ``gamma_phi_x``: elements ``x`` with ``phi_x != phi``, ``x ~ y`` iff some
  ``phi(S)`` misses both;
* ``gamma_phi_v``: the other vertices, ``psi ~ psi'`` iff they agree on
  some split where both differ from ``phi``.

:func:`is_cut_vertex` evaluates six equivalent cut tests from these and
insists that they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import config
from ._graphs import DisjointSet, bfs_components, groups
from .exceptions import InternalInconsistency
from .graph import BunemanGraph, distance
from .relations import BiRelation
from .splits import is_compatible, iter_bits

CRITERIA = ("i", "ii", "iii", "iv", "v", "vi")


@dataclass(frozen=True)
class AuxGraph:
    """A small undirected graph with its components.

    ``nodes`` are split indices, element indices or vertex maps, depending on
    the graph.  Components are sorted tuples, ordered by first member.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def component_of(self, node: int) -> tuple[int, ...]:
        for comp in self.components:
            if node in comp:
                return comp
        raise KeyError(node)


def _aux(nodes, edges):
    nodes = tuple(sorted(nodes))
    pos = {v: k for k, v in enumerate(nodes)}
    ds = DisjointSet(len(nodes))
    for a, b in edges:
        ds.union(pos[a], pos[b])
    comps = tuple(tuple(nodes[k] for k in g) for g in groups(ds.labels()))
    return AuxGraph(nodes, tuple(sorted(edges)), comps)


def x_phi(G: BunemanGraph, phi: int) -> tuple[int, ...]:
    """Elements ``x`` whose labelling vertex differs from ``phi``."""
    k = G.check(phi)
    return tuple(x for x, pos in enumerate(G.labeling) if pos != k)


def gamma_phi_sigma(G: BunemanGraph, phi: int) -> AuxGraph:
    G.check(phi)
    full = G.system.ground.full
    imgs = G.images(phi)
    edges = [(i, j) for i, j in combinations(range(G.n_splits), 2) if imgs[i] | imgs[j] != full]
    return _aux(range(G.n_splits), edges)


def gamma_phi_sigma_min(G: BunemanGraph, phi: int) -> AuxGraph:
    """Induced incompatibility graph on the splits with minimal ``phi``-image."""
    sigma = list(iter_bits(G.min_image(phi)))
    system = G.system
    edges = [(i, j) for i, j in combinations(sigma, 2) if not is_compatible(system[i], system[j])]
    full = system.ground.full
    imgs = G.images(phi)
    for i, j in config.checked(list(combinations(sigma, 2))):
        if ((i, j) in edges) != (imgs[i] | imgs[j] != full):
            raise InternalInconsistency(f"incompatibility and cover test disagree on minimal splits {i}, {j}")
    return _aux(sigma, edges)


def gamma_phi_x(G: BunemanGraph, phi: int) -> AuxGraph:
    """Graph on ``X^(phi)``; both edge descriptions are computed and compared."""
    xs = x_phi(G, phi)
    imgs = G.images(phi)
    edges = []
    for x, y in combinations(xs, 2):
        both = 1 << x | 1 << y
        by_split = any(not img & both for img in imgs)
        px, py = G.label_vertex(x), G.label_vertex(y)
        by_distance = distance(px, py) < distance(px, phi) + distance(phi, py)
        if by_split != by_distance:
            raise InternalInconsistency(f"edge tests disagree for elements {x}, {y}")
        if by_split:
            edges.append((x, y))
    return _aux(xs, edges)


def gamma_phi_v(G: BunemanGraph, phi: int, with_edges: bool = True) -> AuxGraph:
    """Graph on the vertices other than ``phi``.

    Every split ``S`` contributes a clique on the vertices that differ from
    ``phi`` at ``S``; components come from that clique cover.  The explicit
    edge list is quadratic and can be skipped with ``with_edges=False``.
    """
    G.check(phi)
    others = [psi for psi in G.vertices if psi != phi]
    pos = {psi: k for k, psi in enumerate(others)}
    ds = DisjointSet(len(others))
    for i in range(G.n_splits):
        bit = 1 << i
        members = [pos[psi] for psi in others if (psi ^ phi) & bit]
        for k in members[1:]:
            ds.union(members[0], k)
    comps = tuple(tuple(others[k] for k in g) for g in groups(ds.labels()))
    edges = ()
    if with_edges:
        edges = tuple(
            (a, b) for a, b in combinations(others, 2) if (a ^ phi) & (b ^ phi)
        )
    pairs = list(combinations(others, 2))
    for a, b in config.checked(pairs):
        shared = bool((a ^ phi) & (b ^ phi))
        if shared != (distance(a, b) < distance(a, phi) + distance(phi, b)):
            raise InternalInconsistency("edge tests disagree on V^(phi)")
    return AuxGraph(tuple(others), edges, comps)


def delta_min(G: BunemanGraph, psi: int, phi: int) -> int:
    """Splits of ``Delta(phi, psi)`` whose ``psi``-image is inclusion-minimal."""
    G.check(psi)
    G.check(phi)
    diff = list(iter_bits(phi ^ psi))
    imgs = G.images(psi)
    out = 0
    for i in diff:
        a = imgs[i]
        if not any(imgs[j] != a and imgs[j] & a == imgs[j] for j in diff):
            out |= 1 << i
    return out


def removal_components(G: BunemanGraph, phi: int) -> list[tuple[int, ...]]:
    """Components of the Buneman graph with ``phi`` deleted, as vertex maps."""
    k = G.check(phi)
    comps = bfs_components(G.neighbor_lists, removed=(k,))
    return sorted(tuple(sorted(G.vertices[j] for j in c)) for c in comps)


def _witness(components):
    first = tuple(components[0])
    rest = tuple(sorted(x for c in components[1:] for x in c))
    return first, rest


@dataclass(frozen=True)
class CutAnalysis:
    """Result of :func:`is_cut_vertex`.

    ``verdicts`` maps each criterion name in :data:`CRITERIA` to its outcome;
    ``witnesses`` holds, for a cut vertex, the bipartitions for (ii), (iv),
    (v) and (vi) as ``(first component, rest)``.  ``paired`` holds the two
    simultaneous bipartitions: splits with other vertices, and minimal splits
    with elements.
    """

    vertex: int
    sigma_phi: tuple[int, ...]
    x_phi: tuple[int, ...]
    verdicts: dict
    counts: dict
    witnesses: dict
    paired: dict

    @property
    def is_cut(self) -> bool:
        return self.verdicts["i"]


def is_cut_vertex(G: BunemanGraph, phi: int) -> CutAnalysis:
    """Decide whether ``phi`` is a cut vertex, six ways."""
    removal = removal_components(G, phi)
    g_min = gamma_phi_sigma_min(G, phi)
    g_sigma = gamma_phi_sigma(G, phi)
    g_x = gamma_phi_x(G, phi)
    g_v = gamma_phi_v(G, phi, with_edges=False)
    comp_of = G.incompatibility.component_of
    met = sorted({comp_of[i] for i in g_min.nodes})

    counts = {
        "i": len(removal),
        "ii": len(g_min.components),
        "iii": len(met),
        "iv": len(g_sigma.components),
        "v": len(g_x.components),
        "vi": len(g_v.components),
    }
    verdicts = {name: n > 1 for name, n in counts.items()}
    if len(set(counts.values())) != 1:
        raise InternalInconsistency(f"component counts disagree at vertex {phi:b}: {counts}")
    if sorted(g_v.components) != removal:
        raise InternalInconsistency(f"V^(phi) components differ from the vertex-deleted graph at {phi:b}")

    witnesses, paired = {}, {}
    if verdicts["i"]:
        witnesses = {
            "ii": _witness(g_min.components),
            "iv": _witness(g_sigma.components),
            "v": _witness(g_x.components),
            "vi": _witness(g_v.components),
        }
        paired = _paired_bipartitions(G, phi, g_sigma, g_min)
    return CutAnalysis(
        vertex=phi,
        sigma_phi=g_min.nodes,
        x_phi=g_x.nodes,
        verdicts=verdicts,
        counts=counts,
        witnesses=witnesses,
        paired=paired,
    )


def _paired_bipartitions(G, phi, g_sigma, g_min):
    """The two simultaneous bipartitions equivalent to being a cut vertex.

    ``sigma_v``: splits ``(S1, S2)`` and vertices ``(V1, V2)`` with
    ``phi(S) == psi(S)`` whenever ``S`` and ``psi`` lie on opposite sides.
    ``sigma_min_x``: minimal splits and elements with ``x in phi(S)``
    whenever ``S`` and ``x`` lie on opposite sides.
    """
    s1 = g_sigma.components[0]
    mask1 = sum(1 << i for i in s1)
    others = [psi for psi in G.vertices if psi != phi]
    v1 = tuple(psi for psi in others if (psi ^ phi) & ~mask1 == 0)
    v2 = tuple(psi for psi in others if psi not in v1)
    s2 = tuple(i for i in range(G.n_splits) if i not in s1)

    m1 = g_min.components[0]
    m2 = tuple(i for i in g_min.nodes if i not in m1)
    xs = x_phi(G, phi)
    m1_mask = sum(1 << i for i in m1)
    x1 = tuple(x for x in xs if delta_min(G, phi, G.label_vertex(x)) & ~m1_mask == 0)
    x2 = tuple(x for x in xs if x not in x1)

    imgs = G.images(phi)
    ok = all((psi ^ phi) >> i & 1 == 0 for i in s1 for psi in v2) and all(
        (psi ^ phi) >> i & 1 == 0 for i in s2 for psi in v1
    )
    ok = ok and all(imgs[i] >> x & 1 for i in m1 for x in x2) and all(imgs[i] >> x & 1 for i in m2 for x in x1)
    if not (ok and v1 and v2 and x1 and x2):
        raise InternalInconsistency(f"paired bipartitions fail at vertex {phi:b}")
    return {"sigma_v": ((s1, s2), (v1, v2)), "sigma_min_x": ((m1, m2), (x1, x2))}


def cut_relation(G: BunemanGraph, phi: int):
    """The relation ``(S, psi)`` with ``S in Delta(phi, psi)`` plus the two maps.

    Returns ``(relation, alpha, beta, others)``: ``relation`` is on splits x
    other vertices (indexed by ``others``), ``alpha`` embeds the minimal
    splits into all splits, and ``beta`` sends each element of ``X^(phi)``
    to the position of its labelling vertex in ``others``.
    """
    G.check(phi)
    others = [psi for psi in G.vertices if psi != phi]
    pos = {psi: k for k, psi in enumerate(others)}
    pairs = [(i, k) for k, psi in enumerate(others) for i in iter_bits(psi ^ phi)]
    relation = BiRelation(G.n_splits, len(others), pairs)
    alpha = list(iter_bits(G.min_image(phi)))
    beta = [pos[G.label_vertex(x)] for x in x_phi(G, phi)]
    return relation, alpha, beta, others


@dataclass(frozen=True)
class Correspondence:
    """Matched components around a vertex ``phi``.

    ``sigma_min`` is a component of ``gamma_phi_sigma_min``; ``sigma``,
    ``elements`` and ``vertices`` are its partners in the other three graphs.
    """

    sigma_min: tuple[int, ...]
    sigma: tuple[int, ...]
    elements: tuple[int, ...]
    vertices: tuple[int, ...]


def component_correspondences(G: BunemanGraph, phi: int) -> list[Correspondence]:
    """Match components across the four graphs and check every description.

    Each match is derived from one description and then re-checked against
    all of the others; any mismatch raises :class:`InternalInconsistency`.
    """
    g_min = gamma_phi_sigma_min(G, phi)
    g_sigma = gamma_phi_sigma(G, phi)
    g_x = gamma_phi_x(G, phi)
    g_v = gamma_phi_v(G, phi, with_edges=False)
    full = G.system.ground.full
    imgs = G.images(phi)
    xs = g_x.nodes
    others = g_v.nodes
    dmin_x = {x: delta_min(G, phi, G.label_vertex(x)) for x in xs}
    dmin_v = {psi: delta_min(G, phi, psi) for psi in others}
    d_x = {x: phi ^ G.label_vertex(x) for x in xs}

    def fail(what):
        raise InternalInconsistency(f"component correspondence ({what}) fails at vertex {phi:b}")

    def mask(items):
        return sum(1 << i for i in items)

    rows = []
    for comp_min in g_min.components:
        cm = mask(comp_min)
        # (i)
        sigma0 = g_sigma.component_of(comp_min[0])
        s0 = mask(sigma0)
        if cm & ~s0 or cm != s0 & mask(g_min.nodes):
            fail("i")
        covered = tuple(i for i in range(G.n_splits) if any(imgs[i] | imgs[j] != full for j in comp_min))
        if covered != sigma0:
            fail("i")
        # (ii)
        x0 = tuple(x for x in xs if dmin_x[x] & ~cm == 0)
        if x0 != tuple(x for x in xs if dmin_x[x] & cm) or x0 not in g_x.components:
            fail("ii")
        if cm != _union(dmin_x[x] for x in x0):
            fail("ii")
        # (iii)
        v0 = tuple(psi for psi in others if dmin_v[psi] & ~cm == 0)
        if v0 != tuple(psi for psi in others if dmin_v[psi] & cm) or v0 not in g_v.components:
            fail("iii")
        if not {phi ^ (1 << i) for i in comp_min} <= set(v0):
            fail("iii")
        if cm != _union(dmin_v[psi] for psi in v0) or cm != mask(i for i in g_min.nodes if phi ^ (1 << i) in v0):
            fail("iii")
        # (iv)
        if x0 != tuple(x for x in xs if d_x[x] & ~s0 == 0) or x0 != tuple(x for x in xs if d_x[x] & s0):
            fail("iv")
        if s0 != _union(d_x[x] for x in x0):
            fail("iv")
        # (v)
        if v0 != tuple(psi for psi in others if (psi ^ phi) & ~s0 == 0) or v0 != tuple(
            psi for psi in others if (psi ^ phi) & s0
        ):
            fail("v")
        if s0 != _union(psi ^ phi for psi in v0):
            fail("v")
        # (vi)
        by_distance = tuple(
            psi for psi in others
            if any(
                distance(psi, G.label_vertex(x)) < distance(psi, phi) + distance(phi, G.label_vertex(x))
                for x in x0
            )
        )
        by_delta = tuple(psi for psi in others if any(d_x[x] & (psi ^ phi) for x in x0))
        labelled = tuple(x for x in range(len(G.system.ground)) if G.label_vertex(x) in v0)
        if not (v0 == by_distance == by_delta) or labelled != x0:
            fail("vi")
        rows.append(Correspondence(comp_min, sigma0, x0, v0))

    if (
        sorted(r.sigma for r in rows) != sorted(g_sigma.components)
        or sorted(r.elements for r in rows) != sorted(g_x.components)
        or sorted(r.vertices for r in rows) != sorted(g_v.components)
    ):
        fail("bijection")
    return rows


def _union(masks):
    out = 0
    for m in masks:
        out |= m
    return out
