"""Posets of nontrivial p-subgroups with the conjugation action."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce

from .permgroup import (check_prime, conjugate_subgroup, generate, normalizer,
                        subgroup_intersection, sylow_conjugates, sylow_subgroup)


@dataclass(frozen=True, eq=False)
class PSubgroupPoset:
    """Nontrivial p-subgroups ordered by inclusion, acted on by conjugation.

    ``action[i][g]`` is the index of ``nodes[i] ** g``; ``less_than`` holds
    the strict inclusions ``(i, j)``.  ``empty`` flags a prime not dividing
    the group order.
    """

    group: object
    prime: int
    nodes: tuple
    less_than: frozenset
    action: tuple
    kind: str = "brown"

    @property
    def empty(self):
        return not self.nodes

    def __len__(self):
        return len(self.nodes)

    def index_of(self, H):
        return self._lookup[H.members]

    @cached_property
    def _lookup(self):
        return {Q.members: i for i, Q in enumerate(self.nodes)}

    def order_counts(self):
        counts = {}
        for Q in self.nodes:
            counts[Q.order] = counts.get(Q.order, 0) + 1
        return dict(sorted(counts.items()))


def _build(G, p, nodes, kind):
    nodes = tuple(sorted(nodes, key=lambda S: S.key))
    lookup = {Q.members: i for i, Q in enumerate(nodes)}
    less = frozenset((i, j) for i, A in enumerate(nodes) for j, B in enumerate(nodes)
                     if A.order < B.order and A.issubset(B))
    action = tuple(
        tuple(lookup[conjugate_subgroup(Q, g).members] for g in range(G.order))
        for Q in nodes)
    return PSubgroupPoset(G, p, nodes, less, action, kind)


def enumerate_p_subgroups(G, p):
    """All subgroups of order ``p^k`` with ``k >= 1``.

    Level ``k + 1`` is reached from level ``k``: a subgroup of order
    ``p^(k+1)`` contains a normal subgroup ``Q`` of index ``p``, so it is
    ``<Q, x>`` for some ``x`` in ``N_G(Q)`` with ``x^p`` in ``Q``.
    """
    check_prime(p)
    level = {}
    for x in range(G.order):
        if G.element_orders[x] == p:
            C = generate(G, [x])
            level.setdefault(C.members, C)
    found = dict(level)
    while level:
        nxt = {}
        for Q in level.values():
            N = normalizer(G, Q)
            covered = set(Q.members)
            for x in N.members:
                if x in covered or G.power(x, p) not in Q:
                    continue
                R = generate(G, Q.generators + (x,))
                covered.update(R.members)
                nxt.setdefault(R.members, R)
        found.update(nxt)
        level = nxt
    return _build(G, p, found.values(), "brown")


def _restrict(poset, keep, kind):
    return _build(poset.group, poset.prime, [poset.nodes[i] for i in keep], kind)


def is_elementary_abelian(Q, p):
    G = Q.parent
    return Q.is_abelian() and all(G.element_orders[x] == p for x in Q.members
                                  if x != G.identity)


def quillen_filter(poset):
    keep = [i for i, Q in enumerate(poset.nodes) if is_elementary_abelian(Q, poset.prime)]
    return _restrict(poset, keep, "quillen")


def largest_normal_p_subgroup(H, p):
    """``O_p(H)``: the intersection of all Sylow p-subgroups of ``H``."""
    S = sylow_subgroup(H, p)
    return reduce(subgroup_intersection, sylow_conjugates(H, S))


def is_radical(Q, p):
    return largest_normal_p_subgroup(normalizer(Q.parent, Q), p) == Q


def bouc_filter(poset):
    keep = [i for i, Q in enumerate(poset.nodes) if is_radical(Q, poset.prime)]
    return _restrict(poset, keep, "bouc")


def node_orbits(poset):
    """Conjugacy classes of nodes, each sorted, ordered by smallest member."""
    G = poset.group
    gens = G.generators or range(G.order)
    seen = set()
    orbits = []
    for i in range(len(poset.nodes)):
        if i in seen:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = poset.action[a][g]
                    if b not in orbit:
                        orbit.add(b)
                        nxt.append(b)
            frontier = nxt
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits
