"""Split files and exports (DOT, JSON adjacency, Newick).

Split file grammar::

    # comment
    elements: 1 2 3 4
    1 2
    3

The header lists the ground set; each further non-blank line lists the
members of one part of a split.  Either part may be given.
"""

from __future__ import annotations

import json
from pathlib import Path

from .exceptions import BunemanError, DuplicateSplit, SplitFileSyntaxError
from .graph import BunemanGraph
from .splits import GroundSet, Split, SplitSystem, popcount
from .trees import BLOCK, BlockCutTree, XTree, newick

HEADER = "elements:"
EMPTY = "-"  # an explicitly empty part, always rejected


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_split_text(text: str) -> SplitSystem:
    ground = None
    splits = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if ground is None:
            if not line:
                continue
            if not line.startswith(HEADER):
                raise SplitFileSyntaxError(f"expected '{HEADER} ...' header, got {line!r}", line=lineno)
            try:
                ground = GroundSet(line[len(HEADER):].split())
            except BunemanError as exc:
                raise type(exc)(str(exc), line=lineno) from None
            except ValueError as exc:
                raise SplitFileSyntaxError(str(exc), line=lineno) from None
            continue
        if not line:
            continue
        if line.startswith(HEADER):
            raise SplitFileSyntaxError("repeated header", line=lineno)
        try:
            tokens = [] if line == EMPTY else line.split()
            split = Split.from_subset(ground, ground.subset(tokens))
        except BunemanError as exc:
            raise type(exc)(exc.args[0] if exc.args else "", line=lineno) from None
        if split in seen:
            raise DuplicateSplit(f"split {split} repeats line {seen[split]}", line=lineno)
        seen[split] = lineno
        splits.append(split)
    if ground is None:
        raise SplitFileSyntaxError("missing header", line=1)
    if not splits:
        raise SplitFileSyntaxError("no splits", line=len(text.splitlines()) or 1)
    return SplitSystem(ground, tuple(splits))


def load_split_file(path) -> SplitSystem:
    return parse_split_text(Path(path).read_text())


def format_split_system(system: SplitSystem) -> str:
    """Canonical text: each split written as its part without the first element."""
    g = system.ground
    lines = [HEADER + " " + " ".join(g.elements)]
    lines += [" ".join(g.labels(s.part_b)) for s in system]
    return "\n".join(lines) + "\n"


def save_split_file(system: SplitSystem, path) -> None:
    Path(path).write_text(format_split_system(system))


def split_name(system: SplitSystem, i: int) -> str:
    """``S`` followed by the smaller part (the one holding the first element on ties)."""
    s = system[i]
    g = system.ground
    small = s.part_b if popcount(s.part_b) < popcount(s.part_a) else s.part_a
    labels = g.labels(small)
    sep = "" if all(len(x) == 1 for x in g.elements) else ","
    return "S" + sep.join(labels)


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_dot(G: BunemanGraph) -> str:
    names = G.system.ground.elements
    out = ["graph buneman {"]
    for k, phi in enumerate(G.vertices):
        labs = [names[x] for x in G.labels_at(phi)]
        attrs = f' [label={_dot_id(",".join(labs))}]' if labs else ' [label=""]'
        out.append(f"  v{k}{attrs};")
    for k, l, i in G.edges:
        out.append(f"  v{k} -- v{l} [type={i}];")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_json(G: BunemanGraph) -> str:
    names = G.system.ground.elements
    system = G.system
    vertices = []
    for k, phi in enumerate(G.vertices):
        sides = [list(system.ground.labels(img)) for img in G.images(phi)]
        vertices.append({"id": k, "sides": sides, "labels": [names[x] for x in G.labels_at(phi)]})
    edges = [{"u": k, "v": l, "type": i} for k, l, i in G.edges]
    return json.dumps({"vertices": vertices, "edges": edges}, indent=1, sort_keys=True) + "\n"


def tree_dot(T: BlockCutTree) -> str:
    G = T.graph
    names = G.system.ground.elements
    pos = G.position
    out = ["graph blockcut {"]
    for node in T.nodes:
        if node[0] == BLOCK:
            comp = G.incompatibility.component(node[1])
            members = ",".join(split_name(G.system, i) for i in comp)
            out.append(f"  b{node[1]} [shape=box,style=filled,fillcolor=white,label={_dot_id(members)}];")
        else:
            labs = ",".join(names[x] for x in T.labels(node))
            out.append(f"  v{pos[node[1]]} [shape=circle,label={_dot_id(labs)}];")
    for b, v in T.edges:
        out.append(f"  b{b[1]} -- v{pos[v[1]]};")
    out.append("}")
    return "\n".join(out) + "\n"


def xtree_newick(X: XTree) -> str:
    return newick(X) + "\n"
