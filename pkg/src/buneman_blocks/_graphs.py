"""Small graph utilities on integer-labelled vertices.

Graphs are adjacency lists: ``adj[v]`` is an iterable of neighbours of ``v``
for ``v in range(n)``.
"""

from collections import deque


class DisjointSet:
    """Union-find with path halving; ``find`` returns the minimal member."""

    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        # keep the smaller index as root so labels are canonical
        if b < a:
            a, b = b, a
        self.parent[b] = a
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


def groups(labels, members=None):
    """Group ``members`` (default ``range(len(labels))``) by label.

    Returned groups are sorted lists, ordered by their minimal member.
    """
    if members is None:
        members = range(len(labels))
    out = {}
    for m in members:
        out.setdefault(labels[m], []).append(m)
    return sorted((sorted(g) for g in out.values()), key=lambda g: g[0])


def components_from_edges(n, edges):
    ds = DisjointSet(n)
    for a, b in edges:
        ds.union(a, b)
    return groups(ds.labels())


def bfs_components(adj, removed=()):
    """Connected components of the graph with ``removed`` vertices deleted."""
    removed = set(removed)
    seen = set(removed)
    comps = []
    for start in range(len(adj)):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def bfs_distances(adj, source):
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def biconnected_components(adj):
    """Blocks and articulation points by the Hopcroft-Tarjan lowpoint DFS.

    Returns ``(blocks, cut_vertices)`` where ``blocks`` is a list of sorted
    vertex lists (isolated vertices form singleton blocks) and
    ``cut_vertices`` a sorted list.  Iterative, so deep graphs are fine.
    """
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    blocks = []
    cuts = set()
    counter = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not adj[root]:
            blocks.append([root])
            continue
        root_children = 0
        edge_stack = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.update((a, b))
                    if (a, b) == (parent, v):
                        break
                blocks.append(sorted(block))
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=lambda b: (b[0], len(b), b))
    return blocks, sorted(cuts)
