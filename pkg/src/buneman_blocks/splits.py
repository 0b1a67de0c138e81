"""Ground sets, splits, split systems and the incompatibility graph.

Subsets of the ground set are plain Python ``int`` bit masks over the
sorted element order (bit ``i`` <-> ``ground.elements[i]``).  Python ints
are arbitrary precision, so there is no limit on the number of elements.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from . import config
from ._graphs import DisjointSet, groups
from .exceptions import (
    DuplicateSplit,
    EmptyGroundSet,
    GroundSetMismatch,
    IdenticalSplits,
    ImproperSplit,
    IncompatiblePair,
    InternalInconsistency,
    SplitInComponent,
    UnknownComponent,
    UnknownElement,
)

Subset = int


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class GroundSet:
    """A finite set ``X`` of at least two labelled elements.

    Labels are stored as strings, sorted lexicographically.
    """

    elements: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, elements: Iterable):
        labels = [str(e) for e in elements]
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise ValueError(f"duplicate element labels: {dup}")
        if len(labels) < 2:
            raise EmptyGroundSet(f"a ground set needs at least 2 elements, got {len(labels)}")
        labels.sort()
        object.__setattr__(self, "elements", tuple(labels))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def full(self) -> Subset:
        return (1 << len(self.elements)) - 1

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def subset(self, labels: Iterable) -> Subset:
        mask = 0
        for x in labels:
            mask |= 1 << self.index(x)
        return mask

    def labels(self, mask: Subset) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in iter_bits(mask))

    def complement(self, mask: Subset) -> Subset:
        return self.full & ~mask

    def format(self, mask: Subset) -> str:
        return "{" + ",".join(self.labels(mask)) + "}"


@dataclass(frozen=True)
class Split:
    """A bipartition ``{part_a, part_b}`` of the ground set.

    Canonical orientation: ``part_a`` contains the first (smallest) element.
    """

    ground: GroundSet
    part_a: Subset
    part_b: Subset

    @classmethod
    def from_subset(cls, ground: GroundSet, subset: Subset) -> "Split":
        if subset <= 0 or subset >= ground.full or subset & ~ground.full:
            raise ImproperSplit(f"{ground.format(subset & ground.full)} is not a proper non-empty subset")
        other = ground.complement(subset)
        if subset & 1:
            return cls(ground, subset, other)
        return cls(ground, other, subset)

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Iterable) -> "Split":
        return cls.from_subset(ground, ground.subset(labels))

    @property
    def parts(self) -> tuple[Subset, Subset]:
        return (self.part_a, self.part_b)

    def part(self, side: int) -> Subset:
        return self.part_b if side else self.part_a

    def side_of(self, element: int) -> int:
        """0 if element index ``element`` lies in ``part_a``, else 1."""
        return 0 if self.part_a >> element & 1 else 1

    def other(self, part: Subset) -> Subset:
        return self.part_b if part == self.part_a else self.part_a

    def __str__(self):
        g = self.ground
        return f"{' '.join(g.labels(self.part_a))} | {' '.join(g.labels(self.part_b))}"


def _check_same_ground(s: Split, t: Split):
    if s.ground != t.ground:
        raise GroundSetMismatch("splits live on different ground sets")


def is_compatible(s: Split, t: Split) -> bool:
    """True iff one of the four cross intersections of parts is empty."""
    _check_same_ground(s, t)
    return not (s.part_a & t.part_a and s.part_a & t.part_b and s.part_b & t.part_a and s.part_b & t.part_b)


def a_arrow(s: Split, t: Split) -> Subset:
    """The part of ``s`` meeting both parts of the compatible split ``t``.

    Equivalently the part of ``s`` that properly contains a part of ``t``.
    """
    _check_same_ground(s, t)
    if s == t:
        raise IdenticalSplits("A(S -> S') needs two distinct splits")
    if not is_compatible(s, t):
        raise IncompatiblePair(f"splits {s} and {t} are incompatible")
    if s.part_a & t.part_a and s.part_a & t.part_b:
        return s.part_a
    return s.part_b


def a_arrow_component(s: Split, component: Sequence[Split]) -> Subset:
    """``A(S -> S')`` for any ``S'`` of an incompatibility component.

    The value does not depend on the choice of ``S'``; that is checked on
    the members selected by the current verification profile.
    """
    if not component:
        raise ValueError("empty component")
    if s in component:
        raise SplitInComponent(f"split {s} belongs to the component")
    value = a_arrow(s, component[0])
    for t in config.checked(component[1:]):
        if a_arrow(s, t) != value:
            raise InternalInconsistency(f"A(S -> .) not constant on the component for {s}")
    return value


@dataclass(frozen=True)
class SplitSystem:
    """A non-empty, duplicate-free, indexed sequence of splits of ``ground``."""

    ground: GroundSet
    splits: tuple[Split, ...]

    def __post_init__(self):
        if not self.splits:
            raise ValueError("a split system needs at least one split")
        seen = {}
        for i, s in enumerate(self.splits):
            if s.ground != self.ground:
                raise GroundSetMismatch(f"split {i} lives on a different ground set")
            if s in seen:
                raise DuplicateSplit(f"split {i} ({s}) duplicates split {seen[s]}")
            seen[s] = i
        object.__setattr__(self, "_position", seen)

    @classmethod
    def from_labels(cls, elements: Iterable, parts: Iterable[Iterable]) -> "SplitSystem":
        """Build a system from element labels and one part per split."""
        ground = GroundSet(elements)
        return make_split_system(ground, [ground.subset(p) for p in parts])

    def __len__(self):
        return len(self.splits)

    def __iter__(self):
        return iter(self.splits)

    def __getitem__(self, i) -> Split:
        return self.splits[i]

    def index(self, split: Split) -> int:
        return self._position[split]

    def subsystem(self, indices: Iterable[int]) -> "SplitSystem":
        return SplitSystem(self.ground, tuple(self.splits[i] for i in sorted(set(indices))))

    def is_pairwise_compatible(self) -> bool:
        return all(is_compatible(s, t) for s, t in combinations(self.splits, 2))


def make_split_system(ground: GroundSet, raw_splits: Iterable) -> SplitSystem:
    """Pair each raw subset with its complement and index the result.

    ``raw_splits`` holds subsets given either as bit masks or as iterables of
    element labels.  Duplicates (after canonicalization) raise
    :class:`DuplicateSplit`.
    """
    splits = []
    seen = {}
    for i, raw in enumerate(raw_splits):
        mask = raw if isinstance(raw, int) else ground.subset(raw)
        split = Split.from_subset(ground, mask)
        if split in seen:
            raise DuplicateSplit(f"split {i} ({split}) duplicates split {seen[split]}")
        seen[split] = i
        splits.append(split)
    return SplitSystem(ground, tuple(splits))


@dataclass(frozen=True)
class IncompatibilityGraph:
    """Graph on split indices whose edges are the incompatible pairs.

    Components are sorted index tuples ordered by their minimal index, which
    also serves as the component id.
    """

    n_splits: int
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    def component(self, cid: int) -> tuple[int, ...]:
        for comp in self.components:
            if comp[0] == cid:
                return comp
        raise UnknownComponent(f"no component with id {cid}")

    @property
    def component_ids(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.components)

    def is_connected(self) -> bool:
        return len(self.components) == 1


def incompatibility_graph(system: SplitSystem) -> IncompatibilityGraph:
    m = len(system)
    edges = []
    ds = DisjointSet(m)
    for i, j in combinations(range(m), 2):
        if not is_compatible(system[i], system[j]):
            edges.append((i, j))
            ds.union(i, j)
    labels = ds.labels()
    comps = tuple(tuple(g) for g in groups(labels))
    return IncompatibilityGraph(m, tuple(edges), comps, tuple(labels))
