"""Block-cut tree of a Buneman graph and the X-tree derived from it."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import config
from ._graphs import bfs_components, groups
from .blocks import BlockDecomposition, all_blocks
from .cuts import gamma_phi_sigma_min
from .exceptions import DegenerateTree, InternalInconsistency
from .graph import BunemanGraph
from .splits import Split, SplitSystem

# nodes of T(Sigma) are ("B", component id) or ("V", vertex map)
BLOCK, VERTEX = "B", "V"


def _adjacency(nodes, edges):
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _is_tree(nodes, edges):
    index = {v: k for k, v in enumerate(nodes)}
    adj = [[] for _ in nodes]
    for a, b in edges:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    return len(edges) == len(nodes) - 1 and len(bfs_components(adj)) == 1


@dataclass(frozen=True, eq=False)
class BlockCutTree:
    """Bipartite incidence tree between blocks and vertices."""

    graph: BunemanGraph
    decomposition: BlockDecomposition
    nodes: tuple
    edges: tuple

    @cached_property
    def adjacency(self) -> dict:
        return _adjacency(self.nodes, self.edges)

    def degree(self, node) -> int:
        return len(self.adjacency[node])

    def labels(self, node) -> tuple[int, ...]:
        """Element indices attached to a node (block nodes carry none)."""
        if node[0] == BLOCK:
            return ()
        return self.graph.labels_at(node[1])

    def label_node(self, element: int):
        return (VERTEX, self.graph.label_vertex(element))


def block_cut_tree(G: BunemanGraph, blocks: BlockDecomposition | None = None) -> BlockCutTree:
    """Join each block node to the vertices of its block.

    Checked: the result is a tree, the edges coincide with the pairs
    ``(C, phi)`` where some minimal split of ``phi`` lies in ``C``, and the
    degrees equal block sizes resp. the number of blocks at a vertex.
    """
    if blocks is None:
        blocks = all_blocks(G)
    nodes = [(BLOCK, b.component_id) for b in blocks] + [(VERTEX, phi) for phi in G.vertices]
    edges = sorted(((BLOCK, b.component_id), (VERTEX, phi)) for b in blocks for phi in b.vertices)
    if not _is_tree(nodes, edges):
        raise InternalInconsistency("block-cut graph is not a tree")

    comps = G.incompatibility.components
    alternate = sorted(
        ((BLOCK, comp[0]), (VERTEX, phi))
        for phi in G.vertices
        for comp in comps
        if any(G.min_image(phi) >> i & 1 for i in comp)
    )
    if alternate != edges:
        raise InternalInconsistency("block-cut edges differ from the minimal-split description")

    tree = BlockCutTree(G, blocks, tuple(nodes), tuple(edges))
    for b in blocks:
        if tree.degree((BLOCK, b.component_id)) != len(b):
            raise InternalInconsistency(f"block {b.component_id}: degree differs from its size")
    for phi in config.checked(G.vertices):
        if tree.degree((VERTEX, phi)) != len(gamma_phi_sigma_min(G, phi).components):
            raise InternalInconsistency(f"vertex {phi:b}: degree differs from the component count")
    return tree


@dataclass(frozen=True, eq=False)
class XTree:
    """A tree whose nodes may carry element labels.

    ``labels[k]`` is a sorted tuple of element labels (possibly empty);
    ``origin[k]`` is the block-cut tree node node ``k`` came from, if any.
    ``pruned_blocks`` lists block nodes deleted as unlabeled leaves.
    """

    nodes: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[tuple[str, ...], ...]
    origin: tuple = ()
    pruned_blocks: tuple = ()
    _adj: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj = [[] for _ in range(self.nodes)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", [sorted(n) for n in adj])

    def neighbors(self, k: int) -> list[int]:
        return self._adj[k]

    def degree(self, k: int) -> int:
        return len(self._adj[k])

    def node_of(self, label: str) -> int:
        for k, labs in enumerate(self.labels):
            if label in labs:
                return k
        raise KeyError(label)

    @property
    def leaves(self) -> list[int]:
        return [k for k in range(self.nodes) if self.degree(k) <= 1]

    def is_proper(self) -> bool:
        return all(self.labels[k] or self.degree(k) >= 3 for k in range(self.nodes))

    def canonical_form(self) -> tuple:
        """Nested tuples, equal for two trees iff they are isomorphic as labelled trees."""
        if self.nodes == 0:
            return ()
        everything = sorted(x for labs in self.labels for x in labs)
        root = self.node_of(everything[0]) if everything else 0

        def enc(k, parent):
            kids = sorted(enc(c, k) for c in self._adj[k] if c != parent)
            return (tuple(sorted(self.labels[k])), tuple(kids))

        return enc(root, None)

    def is_isomorphic(self, other: "XTree") -> bool:
        return self.canonical_form() == other.canonical_form()

    def splits(self, ground) -> set:
        """The splits of ``ground`` displayed by the edges of the tree."""
        out = set()
        for a, b in self.edges:
            side = _side_labels(self, a, b)
            mask = ground.subset(side)
            if 0 < mask < ground.full:
                out.add(Split.from_subset(ground, mask))
        return out


def _side_labels(tree, start, blocked):
    seen = {start, blocked}
    stack = [start]
    out = list(tree.labels[start])
    while stack:
        k = stack.pop()
        for c in tree.neighbors(k):
            if c not in seen:
                seen.add(c)
                stack.append(c)
                out.extend(tree.labels[c])
    return out


def _reduce(nodes, edges, labelled, order=None):
    """Delete unlabeled leaves and suppress unlabeled degree-2 nodes until stable.

    Returns ``(nodes, edges, deleted)``; ``order`` optionally permutes the
    scan order (used to check order independence).
    """
    adj = _adjacency(nodes, edges)
    deleted = []
    changed = True
    while changed:
        changed = False
        scan = sorted(adj) if order is None else [v for v in order if v in adj]
        for v in scan:
            if v not in adj or v in labelled:
                continue
            if len(adj[v]) <= 1 and len(adj) > 1:
                for u in adj[v]:
                    adj[u].discard(v)
                del adj[v]
                deleted.append(v)
                changed = True
            elif len(adj[v]) == 2:
                a, b = sorted(adj[v])
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    kept = sorted(adj)
    out_edges = sorted({tuple(sorted((a, b))) for a in adj for b in adj[a]})
    return kept, out_edges, deleted


def reduce_to_xtree(T: BlockCutTree, order=None) -> XTree:
    """The X-tree of the split system.

    Unlabeled leaves are deleted (non-cut unlabeled vertices always are
    leaves) and unlabeled degree-2 nodes are suppressed, to a fixpoint.
    """
    G = T.graph
    names = G.system.ground.elements
    node_labels = {v: tuple(names[x] for x in T.labels(v)) for v in T.nodes}
    labelled = {v for v, labs in node_labels.items() if labs}
    kept, edges, deleted = _reduce(T.nodes, T.edges, labelled, order)
    if not kept:
        raise DegenerateTree("reduction left no nodes")
    index = {v: k for k, v in enumerate(kept)}
    tree = XTree(
        len(kept),
        tuple(sorted(tuple(sorted((index[a], index[b]))) for a, b in edges)),
        tuple(node_labels[v] for v in kept),
        tuple(kept),
        tuple(v for v in deleted if v[0] == BLOCK),
    )
    if not tree.is_proper():
        raise InternalInconsistency("reduced tree has an unlabeled node of degree < 3")
    return tree


def xtree_of(system: SplitSystem, strategy: str = "incremental") -> XTree:
    from .graph import enumerate_vertices

    return reduce_to_xtree(block_cut_tree(enumerate_vertices(system, strategy)))


def sim_classes(G: BunemanGraph, cid: int) -> list[tuple[str, ...]]:
    """Elements grouped by their side of every split in a component."""
    comp = G.incompatibility.component(cid)
    system = G.system
    keys = [tuple(system[i].side_of(x) for i in comp) for x in range(len(system.ground))]
    seen = {}
    labels = [seen.setdefault(k, len(seen)) for k in keys]
    names = system.ground.elements
    return [tuple(names[x] for x in g) for g in groups(labels)]


def block_degree_mismatches(T: BlockCutTree, X: XTree) -> list[tuple[int, int, int]]:
    """``(component id, degree in X, class count)`` where they differ.

    Only components with at least two splits are compared; singletons are
    suppressed bridges.
    """
    out = []
    where = {v: k for k, v in enumerate(X.origin)}
    for b in T.decomposition:
        node = (BLOCK, b.component_id)
        if len(b.component) < 2:
            if node in where:
                out.append((b.component_id, X.degree(where[node]), 2))
            continue
        n_classes = len(sim_classes(T.graph, b.component_id))
        deg = X.degree(where[node]) if node in where else 0
        if deg != n_classes:
            out.append((b.component_id, deg, n_classes))
    return out


def leaf_label_bijection_test(G: BunemanGraph, X: XTree | None = None) -> bool:
    """True iff the labelling sends X one-to-one onto the leaves.

    Decided from the split system (no labelled vertex is a cut vertex and no
    two elements share all sides) and checked against the reduced tree.
    """
    blocks = all_blocks(G)
    cuts = set(blocks.cut_vertices)
    n = len(G.system.ground)
    labelled = [G.label_vertex(x) for x in range(n)]
    result = not cuts.intersection(labelled) and len(set(labelled)) == n
    if X is None:
        X = reduce_to_xtree(block_cut_tree(G, blocks))
    direct = sorted(X.leaves) == sorted(k for k in range(X.nodes) if X.labels[k]) and all(
        len(X.labels[k]) == 1 for k in X.leaves
    )
    if X.nodes == 1:
        direct = n == 1
    if direct != result:
        raise InternalInconsistency("leaf-label criterion disagrees with the tree")
    return result


def buneman_tree_criterion(G: BunemanGraph) -> bool:
    """Pairwise compatibility, checked against acyclicity of the graph."""
    result = G.system.is_pairwise_compatible()
    if result != G.is_tree():
        raise InternalInconsistency("compatibility disagrees with the tree test")
    return result


@dataclass(frozen=True)
class TripleReport:
    """Degree check over triples (block, block, shared cut vertex).

    ``low`` lists triples whose three tree degrees are all below 3.
    ``unexplained`` keeps those whose cut vertex is unlabelled, i.e. where
    all three nodes would vanish from the X-tree; none are expected.
    """

    triples: int
    low: tuple
    unexplained: tuple

    @property
    def ok(self) -> bool:
        return not self.unexplained


def triple_degree_check(T: BlockCutTree) -> TripleReport:
    blocks = T.decomposition
    count = 0
    low = []
    unexplained = []
    for phi in blocks.cut_vertices:
        for c1, c2 in combinations(blocks.blocks_containing(phi), 2):
            count += 1
            degs = (T.degree((BLOCK, c1)), T.degree((BLOCK, c2)), T.degree((VERTEX, phi)))
            if max(degs) < 3:
                low.append((c1, c2, phi))
                if not T.labels((VERTEX, phi)):
                    unexplained.append((c1, c2, phi))
    return TripleReport(count, tuple(low), tuple(unexplained))


def compatible_splits_match(system: SplitSystem, X: XTree) -> bool:
    """For a compatible system: the tree displays exactly the system's splits."""
    return X.splits(system.ground) == set(system.splits)


def newick(X: XTree) -> str:
    """Newick text rooted at the node holding the smallest label.

    Unlabelled internal nodes have no name, labelled ones are named by their
    labels joined with ``+``; children are ordered by smallest label below.
    """
    if X.nodes == 1:
        return _name(X.labels[0]) + ";"
    everything = sorted(x for labs in X.labels for x in labs)
    root = X.node_of(everything[0])
    if X.nodes == 2:
        other = 1 - root
        return f"({_name(X.labels[root])},{_name(X.labels[other])});"
    if X.degree(root) == 1:
        root = X.neighbors(root)[0]

    def below(k, parent):
        labs = list(X.labels[k])
        for c in X.neighbors(k):
            if c != parent:
                labs.extend(below(c, k))
        return labs

    def enc(k, parent):
        kids = [c for c in X.neighbors(k) if c != parent]
        kids.sort(key=lambda c: min(below(c, k)))
        inner = "(" + ",".join(enc(c, k) for c in kids) + ")" if kids else ""
        return inner + _name(X.labels[k])

    return enc(root, None) + ";"


_SPECIAL = set("()[]',;:+ \t")


def _quote(label: str) -> str:
    if any(ch in _SPECIAL for ch in label):
        return "'" + label.replace("'", "''") + "'"
    return label


def _name(labels) -> str:
    return "+".join(_quote(x) for x in labels)

