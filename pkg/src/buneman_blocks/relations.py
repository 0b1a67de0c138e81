"""Connected components of a binary relation and of its two projections.

For ``R`` a subset of ``U x V`` (with ``U = range(u_size)`` and
``V = range(v_size)``) three graphs are considered:

* ``Gamma(R)``: the bipartite graph on the disjoint union of ``U`` and ``V``,
* ``Gamma(R|U)``: ``u1 ~ u2`` iff they share a partner in ``V``,
* ``Gamma(R|V)``: ``v1 ~ v2`` iff they share a partner in ``U``.

If ``Gamma(R)`` has no isolated vertices all three have the same components,
up to the obvious bijections, which :func:`component_bijection` builds and
checks.  :func:`lifted_bijection` does the same for a relation pulled back
along maps ``alpha: U' -> U`` and ``beta: V' -> V``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from . import config
from ._graphs import DisjointSet, groups
from .exceptions import InternalInconsistency, IsolatedVertex, M1Violation, M2Violation


@dataclass(frozen=True)
class BiRelation:
    u_size: int
    v_size: int
    pairs: frozenset

    def __init__(self, u_size: int, v_size: int, pairs: Iterable[tuple[int, int]]):
        pairs = frozenset((int(u), int(v)) for u, v in pairs)
        for u, v in pairs:
            if not (0 <= u < u_size and 0 <= v < v_size):
                raise ValueError(f"pair {(u, v)} out of range")
        object.__setattr__(self, "u_size", u_size)
        object.__setattr__(self, "v_size", v_size)
        object.__setattr__(self, "pairs", pairs)

    def right_of(self) -> list[set[int]]:
        out = [set() for _ in range(self.u_size)]
        for u, v in self.pairs:
            out[u].add(v)
        return out

    def left_of(self) -> list[set[int]]:
        out = [set() for _ in range(self.v_size)]
        for u, v in self.pairs:
            out[v].add(u)
        return out

    def transpose(self) -> "BiRelation":
        return BiRelation(self.v_size, self.u_size, ((v, u) for u, v in self.pairs))


def _shared_partner_edges(size, partners_by_other):
    edges = set()
    for group in partners_by_other:
        for a, b in combinations(sorted(group), 2):
            edges.add((a, b))
    return sorted(edges)


def project_u(relation: BiRelation) -> list[tuple[int, int]]:
    """Edge list of ``Gamma(R|U)``."""
    return _shared_partner_edges(relation.u_size, relation.left_of())


def project_v(relation: BiRelation) -> list[tuple[int, int]]:
    """Edge list of ``Gamma(R|V)``."""
    return _shared_partner_edges(relation.v_size, relation.right_of())


def _components(size, edges):
    ds = DisjointSet(size)
    for a, b in edges:
        ds.union(a, b)
    return [tuple(g) for g in groups(ds.labels())]


def _label_map(components, size):
    labels = [-1] * size
    for cid, comp in enumerate(components):
        for x in comp:
            labels[x] = cid
    return tuple(labels)


@dataclass(frozen=True)
class ComponentMap:
    """Components of ``Gamma(R)``, ``Gamma(R|U)``, ``Gamma(R|V)`` and their bijections.

    Component ids index ``components_r``, ordered by the minimal ``U``
    member.  ``u_to_r[i]`` is the ``Gamma(R)`` component of the ``i``-th
    component of ``Gamma(R|U)`` (likewise ``v_to_r``), and ``u_to_v`` is the
    induced matching of projected components.
    """

    components_r: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    components_u: tuple[tuple[int, ...], ...]
    components_v: tuple[tuple[int, ...], ...]
    u_to_r: tuple[int, ...]
    v_to_r: tuple[int, ...]
    u_to_v: tuple[int, ...]
    labels_u: tuple[int, ...]
    labels_v: tuple[int, ...]
    labels_r: dict

    @property
    def count(self) -> int:
        return len(self.components_r)


def _check_no_isolated(relation):
    right, left = relation.right_of(), relation.left_of()
    for u, vs in enumerate(right):
        if not vs:
            raise IsolatedVertex("U", u)
    for v, us in enumerate(left):
        if not us:
            raise IsolatedVertex("V", v)


def component_bijection(relation: BiRelation) -> ComponentMap:
    """Compute the three component sets and the bijections between them."""
    _check_no_isolated(relation)
    nu, nv = relation.u_size, relation.v_size

    ds = DisjointSet(nu + nv)
    for u, v in relation.pairs:
        ds.union(u, nu + v)
    raw = groups(ds.labels())
    comps_r = tuple(
        (tuple(x for x in g if x < nu), tuple(x - nu for x in g if x >= nu)) for g in raw
    )
    comps_u = tuple(_components(nu, project_u(relation)))
    comps_v = tuple(_components(nv, project_v(relation)))
    r_of_u = _label_map([c[0] for c in comps_r], nu)
    r_of_v = _label_map([c[1] for c in comps_r], nv)

    u_to_r = tuple(r_of_u[c[0]] for c in comps_u)
    v_to_r = tuple(r_of_v[c[0]] for c in comps_v)
    if sorted(u_to_r) != list(range(len(comps_r))) or sorted(v_to_r) != list(range(len(comps_r))):
        raise InternalInconsistency("projected components do not biject onto components of Gamma(R)")
    r_to_v = {r: i for i, r in enumerate(v_to_r)}
    u_to_v = tuple(r_to_v[r] for r in u_to_r)

    result = ComponentMap(
        components_r=comps_r,
        components_u=comps_u,
        components_v=comps_v,
        u_to_r=u_to_r,
        v_to_r=v_to_r,
        u_to_v=u_to_v,
        labels_u=r_of_u,
        labels_v=r_of_v,
        labels_r={p: r_of_u[p[0]] for p in relation.pairs},
    )
    _verify_matching(relation, result)
    return result


def _verify_matching(relation, cmap):
    """Check the four equivalent descriptions of the matched pairs."""
    right, left = relation.right_of(), relation.left_of()
    pairs = relation.pairs
    for i in config.checked(range(len(cmap.components_u))):
        a = set(cmap.components_u[i])
        for j, b in enumerate(cmap.components_v):
            b = set(b)
            matched = cmap.u_to_v[i] == j
            meets = any((x, y) in pairs for x in a for y in b)
            b_is_image = b == set().union(*(right[x] for x in a))
            a_is_preimage = a == set().union(*(left[y] for y in b))
            if not (matched == meets == b_is_image == a_is_preimage):
                raise InternalInconsistency(f"component matching fails for U-component {i}, V-component {j}")


@dataclass(frozen=True)
class LiftedComponentMap:
    """Component data for ``R``, ``R_alpha``, ``R_beta`` and ``R' = R_{alpha,beta}``.

    ``alpha_map[i]`` is the ``Gamma(R|U)`` component containing the image of
    the ``i``-th ``Gamma(R'|U')`` component; ``beta_map`` likewise on the
    ``V`` side.
    """

    base: ComponentMap
    lifted: ComponentMap
    via_alpha: ComponentMap
    via_beta: ComponentMap
    alpha_map: tuple[int, ...]
    beta_map: tuple[int, ...]

    @property
    def counts(self) -> dict[str, int]:
        return {
            "R'": self.lifted.count,
            "R_alpha": self.via_alpha.count,
            "R_beta": self.via_beta.count,
            "R'|U'": len(self.lifted.components_u),
            "R'|V'": len(self.lifted.components_v),
            "R": self.base.count,
        }


def check_m1_m2(relation: BiRelation, alpha: Sequence[int], beta: Sequence[int]):
    """Raise :class:`M1Violation` / :class:`M2Violation` with a witness."""
    right, left = relation.right_of(), relation.left_of()
    beta_images = set(beta)
    alpha_images = set(alpha)
    # (M1): pairs u1, u2 sharing a partner must share one in beta[V'].
    for v in range(relation.v_size):
        for u1 in left[v]:
            for u2 in left[v]:
                if u1 <= u2 and not (right[u1] & right[u2] & beta_images):
                    raise M1Violation((u1, u2, v))
    for u in range(relation.u_size):
        for v1 in right[u]:
            for v2 in right[u]:
                if v1 <= v2 and not (left[v1] & left[v2] & alpha_images):
                    raise M2Violation((u, v1, v2))


def lifted_bijection(
    relation: BiRelation, alpha: Sequence[int], beta: Sequence[int]
) -> LiftedComponentMap:
    """Component bijections for the relation pulled back along ``alpha`` and ``beta``.

    ``alpha`` maps ``U' = range(len(alpha))`` into ``U`` and ``beta`` maps
    ``V' = range(len(beta))`` into ``V``.  Properties (M1) and (M2) are
    verified first.
    """
    alpha, beta = list(alpha), list(beta)
    check_m1_m2(relation, alpha, beta)
    pairs = relation.pairs
    nu2, nv2 = len(alpha), len(beta)

    r_prime = BiRelation(
        nu2, nv2, ((a, b) for a in range(nu2) for b in range(nv2) if (alpha[a], beta[b]) in pairs)
    )
    r_alpha = BiRelation(
        nu2, relation.v_size, ((a, v) for a in range(nu2) for v in range(relation.v_size) if (alpha[a], v) in pairs)
    )
    r_beta = BiRelation(
        relation.u_size, nv2, ((u, b) for u in range(relation.u_size) for b in range(nv2) if (u, beta[b]) in pairs)
    )

    base = component_bijection(relation)
    lifted = component_bijection(r_prime)
    via_alpha = component_bijection(r_alpha)
    via_beta = component_bijection(r_beta)

    counts = {base.count, lifted.count, via_alpha.count, via_beta.count}
    if len(counts) != 1:
        raise InternalInconsistency(f"component counts differ: {sorted(counts)}")

    _check_graph_identities(relation, r_prime, r_alpha, r_beta, alpha, beta)

    base_u = _label_map(base.components_u, relation.u_size)
    base_v = _label_map(base.components_v, relation.v_size)
    alpha_map = tuple(base_u[alpha[c[0]]] for c in lifted.components_u)
    beta_map = tuple(base_v[beta[c[0]]] for c in lifted.components_v)
    if sorted(alpha_map) != list(range(base.count)) or sorted(beta_map) != list(range(base.count)):
        raise InternalInconsistency("lifted components do not biject onto base components")

    result = LiftedComponentMap(base, lifted, via_alpha, via_beta, alpha_map, beta_map)
    _verify_lifted(relation, result, alpha, beta)
    return result


def _check_graph_identities(relation, r_prime, r_alpha, r_beta, alpha, beta):
    if project_v(r_alpha) != project_v(relation):
        raise InternalInconsistency("Gamma(R_alpha|V) differs from Gamma(R|V)")
    if project_u(r_beta) != project_u(relation):
        raise InternalInconsistency("Gamma(R_beta|U) differs from Gamma(R|U)")
    gu = set(project_u(relation))
    induced_u = {
        (a, b) for a, b in combinations(range(len(alpha)), 2)
        if alpha[a] == alpha[b] or tuple(sorted((alpha[a], alpha[b]))) in gu
    }
    if set(project_u(r_alpha)) != set(project_u(r_prime)) or set(project_u(r_prime)) != induced_u:
        raise InternalInconsistency("Gamma(R_alpha|U') differs from Gamma(R'|U') or the induced graph")
    gv = set(project_v(relation))
    induced_v = {
        (a, b) for a, b in combinations(range(len(beta)), 2)
        if beta[a] == beta[b] or tuple(sorted((beta[a], beta[b]))) in gv
    }
    if set(project_v(r_beta)) != set(project_v(r_prime)) or set(project_v(r_prime)) != induced_v:
        raise InternalInconsistency("Gamma(R_beta|V') differs from Gamma(R'|V') or the induced graph")


def _verify_lifted(relation, lm, alpha, beta):
    pairs = relation.pairs
    base, lifted = lm.base, lm.lifted
    right = relation.right_of()
    for i in config.checked(range(len(lifted.components_u))):
        a_prime = lifted.components_u[i]
        images = {alpha[a] for a in a_prime}
        # (ii): the alpha-image meets exactly one U-component and lies inside it
        for k, comp in enumerate(base.components_u):
            meets = bool(images & set(comp))
            inside = images <= set(comp)
            target = set()
            for a in a_prime:
                for v in right[alpha[a]]:
                    target.update(u for u in range(relation.u_size) if (u, v) in pairs)
            if not ((lm.alpha_map[i] == k) == meets == inside == (set(comp) == target)):
                raise InternalInconsistency(f"alpha correspondence fails for U'-component {i}")
        # (iii): beta after the U'/V' matching hits the V-component touched by alpha(A')
        j = lm.beta_map[lifted.u_to_v[i]]
        for k, comp in enumerate(base.components_v):
            meets = any((alpha[a], v) in pairs for a in a_prime for v in comp)
            image = {v for a in a_prime for v in right[alpha[a]]}
            if not ((j == k) == meets == (set(comp) == image)):
                raise InternalInconsistency(f"beta correspondence fails for U'-component {i}")
