"""Whole-system self-check and random split systems.

:func:`run_checks` runs every structural check of the package on one split
system and reports named pass/fail results instead of raising.  It backs the
``check`` subcommand and the randomized sweeps in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import config
from ._graphs import bfs_distances, biconnected_components
from .blocks import all_blocks, blocks_intersect, gate, inter_block_gate, separation_test
from .cuts import component_correspondences, is_cut_vertex
from .exceptions import BunemanError
from .graph import BunemanGraph, distance, enumerate_vertices, is_vertex, median
from .splits import GroundSet, Split, SplitSystem, is_compatible, popcount
from .trees import (
    block_cut_tree,
    block_degree_mismatches,
    buneman_tree_criterion,
    compatible_splits_match,
    leaf_label_bijection_test,
    reduce_to_xtree,
    triple_degree_check,
)

ALL_TRIPLES_UP_TO = 64
TRIPLE_SAMPLE = 2000
BRUTE_UP_TO = 12
PATH_COUNT_UP_TO = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _path_counts(G: BunemanGraph, source: int) -> list[int]:
    """Geodesic counts from ``source`` by dynamic programming over BFS layers."""
    dist = bfs_distances(G.neighbor_lists, source)
    order = sorted(range(len(G)), key=lambda k: dist[k])
    ways = [0] * len(G)
    ways[source] = 1
    for k in order:
        for l in G.neighbor_lists[k]:
            if dist[l] == dist[k] + 1:
                ways[l] += ways[k]
    return ways


def _check_enumeration(system, G):
    if len(system) > BRUTE_UP_TO:
        return "skipped (too many splits for brute force)"
    other = enumerate_vertices(system, "brute")
    assert other.vertices == G.vertices, "brute and incremental vertex sets differ"
    for phi in G.vertices:
        assert is_vertex(system, phi)
    return f"{len(G)} vertices"


def _check_metric(system, G):
    for k, phi in enumerate(G.vertices):
        dist = bfs_distances(G.neighbor_lists, k)
        for l, psi in enumerate(G.vertices):
            assert dist[l] == distance(phi, psi), "graph distance differs from XOR popcount"
    return f"{len(G) ** 2} pairs"


def _check_medians(system, G, rng):
    verts = G.vertices
    if len(verts) <= ALL_TRIPLES_UP_TO:
        triples = list(combinations(verts, 3))
    else:
        triples = [tuple(rng.sample(verts, 3)) for _ in range(TRIPLE_SAMPLE)]
    for a, b, c in triples:
        m = median(a, b, c)
        assert m in G.position, "median is not a vertex"
        for p, q in ((a, b), (a, c), (b, c)):
            assert distance(p, m) + distance(m, q) == distance(p, q), "median off a geodesic"
    return f"{len(triples)} triples"


def _check_neighbors(system, G):
    for phi in G.vertices:
        flips = sorted(psi for _, psi in G.neighbors(phi))
        adjacent = sorted(G.vertices[l] for l in G.neighbor_lists[G.position[phi]])
        assert flips == adjacent, "minimal-split flips differ from the neighbours"
        assert G.degree(phi) == popcount(G.min_image(phi))
    return ""


def _check_paths(system, G):
    checked = 0
    for k, phi in enumerate(G.vertices):
        ways = _path_counts(G, k)
        for l, psi in enumerate(G.vertices):
            if distance(phi, psi) <= PATH_COUNT_UP_TO:
                assert G.shortest_path_count(phi, psi) == ways[l], "geodesic count differs"
                checked += 1
    return f"{checked} pairs"


def _check_kappa(system, G):
    for i in range(len(system)):
        G.kappa_cutset(i)
    return ""


def _check_cuts(system, G):
    _, dfs_cuts = biconnected_components(G.neighbor_lists)
    dfs = {G.vertices[k] for k in dfs_cuts}
    n_cut = 0
    for phi in G.vertices:
        analysis = is_cut_vertex(G, phi)
        assert len(set(analysis.verdicts.values())) == 1, "cut criteria disagree"
        assert analysis.is_cut == (phi in dfs), "cut criteria disagree with the DFS oracle"
        component_correspondences(G, phi)
        n_cut += analysis.is_cut
    return f"{n_cut} cut vertices"


def _check_blocks(system, G):
    blocks = all_blocks(G)
    assert len(blocks) == len(G.incompatibility.components)
    return f"{len(blocks)} blocks"


def _check_gates(system, G):
    ids = G.incompatibility.component_ids
    for phi in G.vertices:
        for cid in ids:
            gate(G, phi, cid)
    for c0, c1 in combinations(ids, 2):
        shared = blocks_intersect(G, c0, c1)
        if shared is not None:
            assert inter_block_gate(G, c0, c1) == shared == inter_block_gate(G, c1, c0)
    return ""


def _check_separation(system, G, rng):
    pairs = list(combinations(G.vertices, 2))
    if len(pairs) > TRIPLE_SAMPLE:
        pairs = rng.sample(pairs, TRIPLE_SAMPLE)
    with config.config_context(verify=True):
        for a, b in pairs:
            separation_test(G, a, b)
    return f"{len(pairs)} pairs"


def _check_trees(system, G):
    T = block_cut_tree(G)
    X = reduce_to_xtree(T)
    report = triple_degree_check(T)
    assert report.ok, f"degree condition fails at unlabelled cut vertices: {report.unexplained}"
    assert not block_degree_mismatches(T, X), "block degree differs from class count"
    leaf_label_bijection_test(G, X)
    compatible = buneman_tree_criterion(G)
    if compatible:
        assert compatible_splits_match(system, X), "X-tree does not display the system"
    return f"{X.nodes} X-tree nodes"


def run_checks(system: SplitSystem, strategy: str = "incremental", seed: int | None = None) -> list[CheckResult]:
    """Run every check on ``system``; never raises for a failed check."""
    rng = random.Random(config.get_config()["seed"] if seed is None else seed)
    try:
        G = enumerate_vertices(system, strategy)
    except BunemanError as exc:
        return [CheckResult("construct", False, f"{type(exc).__name__}: {exc}")]
    steps = [
        ("enumeration", lambda: _check_enumeration(system, G)),
        ("metric", lambda: _check_metric(system, G)),
        ("medians", lambda: _check_medians(system, G, rng)),
        ("neighbors", lambda: _check_neighbors(system, G)),
        ("geodesics", lambda: _check_paths(system, G)),
        ("kappa", lambda: _check_kappa(system, G)),
        ("cuts", lambda: _check_cuts(system, G)),
        ("blocks", lambda: _check_blocks(system, G)),
        ("gates", lambda: _check_gates(system, G)),
        ("separation", lambda: _check_separation(system, G, rng)),
        ("trees", lambda: _check_trees(system, G)),
    ]
    results = []
    for name, step in steps:
        try:
            results.append(CheckResult(name, True, step() or ""))
        except (BunemanError, AssertionError) as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results


# random systems


def _ground(n):
    return GroundSet(str(i) for i in range(1, n + 1))


def _candidates(ground):
    # subsets holding the first element, excluding the full set
    return [mask for mask in range(1, ground.full, 2)]


def random_system(rng: random.Random, n_max: int, m_max: int, n_min: int = 3) -> SplitSystem:
    """Uniform ground size, uniform number of distinct random splits."""
    n = rng.randint(n_min, n_max)
    ground = _ground(n)
    cands = _candidates(ground)
    m = rng.randint(1, min(m_max, len(cands)))
    return SplitSystem(ground, tuple(Split.from_subset(ground, s) for s in rng.sample(cands, m)))


def random_compatible_system(rng: random.Random, n_max: int, m_max: int, n_min: int = 3) -> SplitSystem:
    """Greedy pairwise compatible system from shuffled candidate splits."""
    n = rng.randint(n_min, n_max)
    ground = _ground(n)
    cands = _candidates(ground)
    rng.shuffle(cands)
    target = rng.randint(1, m_max)
    chosen = []
    for mask in cands:
        s = Split.from_subset(ground, mask)
        if all(is_compatible(s, t) for t in chosen):
            chosen.append(s)
            if len(chosen) == target:
                break
    return SplitSystem(ground, tuple(chosen))


def random_incompatible_system(rng: random.Random, n_max: int, m_max: int, n_min: int = 4) -> SplitSystem:
    """A random system with at least one incompatible pair (needs ``n >= 4``)."""
    while True:
        system = random_system(rng, n_max, max(m_max, 2), n_min=max(n_min, 4))
        if not system.is_pairwise_compatible():
            return system
