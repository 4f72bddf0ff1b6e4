"""Finite simplicial complexes with a simplicial right group action.

Simplices are strictly increasing vertex tuples.  ``action[g][v]`` is the
image of vertex ``v`` under the group element with index ``g``; a complex
without a group carries the trivial action of the trivial group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from sympy import factorint

from .abelian import FpAbelianGroup, sparse_invariant_factors
from .errors import InvariantViolation
from .permgroup import Subgroup, conjugate_subgroup, normalizer, subgroup_intersection
from .psubgroups import PSubgroupPoset


@dataclass(frozen=True, eq=False)
class SimplicialGComplex:
    n_vertices: int
    simplices: tuple
    action: tuple
    labels: tuple = ()
    group: object = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", [
            {s: i for i, s in enumerate(level)} for level in self.simplices])

    @property
    def dim(self):
        return len(self.simplices) - 1

    @property
    def group_order(self):
        return len(self.action)

    def count(self, n):
        return len(self.simplices[n]) if 0 <= n < len(self.simplices) else 0

    def f_vector(self):
        return [len(level) for level in self.simplices]

    def index(self, simplex):
        return self._index[len(simplex) - 1][simplex]

    def act(self, simplex, g):
        img = self.action[g]
        return tuple(sorted(img[v] for v in simplex))

    @cached_property
    def generator_indices(self):
        if self.group is not None and self.group.generators:
            return self.group.generators
        return tuple(range(len(self.action)))

    def has_trivial_action(self):
        ident = tuple(range(self.n_vertices))
        return all(tuple(row) == ident for row in self.action)

    def check(self):
        """Raise :class:`InvariantViolation` unless downward closed and G-stable."""
        for n in range(1, len(self.simplices)):
            for s in self.simplices[n]:
                for face in combinations(s, n):
                    if face not in self._index[n - 1]:
                        raise InvariantViolation("missing face", (s, face))
        for g in range(len(self.action)):
            for level in self.simplices:
                for s in level:
                    if self.act(s, g) not in self._index[len(s) - 1]:
                        raise InvariantViolation("action leaves the complex", (s, g))
        return True


def _trivial_action(n):
    return (tuple(range(n)),)


def from_simplices(n_vertices, simplices, action=None, labels=(), group=None):
    """Assemble a complex from maximal or arbitrary simplices, closing downward."""
    levels = {}
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            for face in combinations(s, k):
                levels.setdefault(k - 1, set()).add(face)
    for v in range(n_vertices):
        levels.setdefault(0, set()).add((v,))
    top = max(levels) if levels else -1
    simp = tuple(tuple(sorted(levels.get(n, ()))) for n in range(top + 1))
    if action is None:
        action = _trivial_action(n_vertices)
    return SimplicialGComplex(n_vertices, simp, tuple(tuple(r) for r in action),
                              tuple(labels), group)


def order_complex(poset: PSubgroupPoset):
    """Chains ``Q_0 < ... < Q_n`` of the poset, with the induced action."""
    n = len(poset.nodes)
    above = [[] for _ in range(n)]
    for i, j in poset.less_than:
        above[i].append(j)
    for a in above:
        a.sort()
    levels = []

    def extend(chain):
        k = len(chain) - 1
        while len(levels) <= k:
            levels.append([])
        levels[k].append(tuple(chain))
        for j in above[chain[-1]]:
            extend(chain + [j])

    for i in range(n):
        extend([i])
    # chains are increasing in subgroup order, hence in node index
    simp = tuple(tuple(sorted(level)) for level in levels)
    G = poset.group
    action = tuple(tuple(poset.action[i][g] for i in range(n)) for g in range(G.order))
    return SimplicialGComplex(n, simp, action, tuple(poset.nodes), G)


def full_subcomplex(X, vertices):
    """Full subcomplex on ``vertices``, renumbered in increasing order.

    Returns ``(Y, embedding)``.  The action is dropped; use
    :func:`sub_complex_Y` for the normalizer action on ``Y``.
    """
    vertices = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vertices)}
    keep = set(vertices)
    levels = []
    for level in X.simplices:
        sub = [tuple(pos[v] for v in s) for s in level if keep.issuperset(s)]
        if not sub:
            break
        levels.append(tuple(sub))
    labels = tuple(X.labels[v] for v in vertices) if X.labels else ()
    Y = SimplicialGComplex(len(vertices), tuple(levels), _trivial_action(len(vertices)), labels)
    return Y, tuple(vertices)


def sub_complex_Y(X, P):
    """The subcomplex on the vertices ``Q <= P`` with its ``N_G(P)`` action.

    ``X`` must be an order complex whose labels are subgroups.  Returns a
    :class:`SylowCover` that also answers translate queries ``Y . g``.
    """
    return SylowCover(X, P)


class SylowCover:
    """The closed cover of a Brown complex by the translates ``Y . g``."""

    def __init__(self, X, P):
        G = X.group
        if G is None or P.parent is not G:
            raise ValueError("P must be a subgroup of the complex's group")
        if P.order == 1 or len(factorint(P.order)) != 1:
            raise ValueError("P is not a nontrivial p-subgroup")
        self.complex = X
        self.group = G
        self.sylow = P
        self.y_vertices = frozenset(v for v, Q in enumerate(X.labels) if Q.issubset(P))
        N = normalizer(G, P)
        self.normalizer = N
        Y, emb = full_subcomplex(X, self.y_vertices)
        H, h_emb = N.as_group()
        pos = {v: i for i, v in enumerate(emb)}
        action = tuple(tuple(pos[X.action[g][v]] for v in emb) for g in h_emb)
        self.Y = SimplicialGComplex(Y.n_vertices, Y.simplices, action, Y.labels, H)
        self.embedding = emb

    def translate(self, g):
        """Vertex set (in the ambient complex) of ``Y . g``."""
        row = self.complex.action[g]
        return frozenset(row[v] for v in self.y_vertices)

    def sylow_conjugate(self, g):
        return conjugate_subgroup(self.sylow, g)

    def translate_intersection_nonempty(self, g_list):
        """Whether ``P^g1 cap ... cap P^gn`` is nontrivial.

        Computed both from subgroup intersections and from vertex sets of the
        translates; a disagreement raises :class:`InvariantViolation`.
        """
        g_list = list(g_list)
        if not g_list:
            raise ValueError("empty element list")
        inter = self.sylow_conjugate(g_list[0])
        for g in g_list[1:]:
            inter = subgroup_intersection(inter, self.sylow_conjugate(g))
        by_groups = inter.order > 1
        verts = self.translate(g_list[0])
        for g in g_list[1:]:
            verts = verts & self.translate(g)
        by_vertices = bool(verts)
        if by_groups != by_vertices:
            raise InvariantViolation("translate intersection mismatch", tuple(g_list))
        return by_groups


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology, degree by degree."""

    groups: dict
    reduced_euler: int

    def betti(self, n):
        g = self.groups.get(n)
        return g.free_rank if g else 0

    def torsion(self, n):
        g = self.groups.get(n)
        return g.invariant_factors if g else ()

    def is_acyclic(self):
        return all(g.is_trivial() for g in self.groups.values())

    def signature(self):
        """Comparable summary: nonzero degrees only."""
        return tuple((n, g.free_rank, g.invariant_factors)
                     for n, g in sorted(self.groups.items()) if not g.is_trivial())

    def to_json(self):
        return {"degrees": [{"degree": n, "betti": g.free_rank,
                             "torsion": list(g.invariant_factors)}
                            for n, g in sorted(self.groups.items())],
                "reducedEuler": self.reduced_euler}


def boundary_rows(X, n):
    """Rows of the n-th boundary map as ``{face_index: sign}`` (n >= 1).

    For ``n == 0`` this is the augmentation onto a single column.
    """
    if n == 0:
        return [{0: 1} for _ in X.simplices[0]], 1
    faces = X._index[n - 1]
    rows = []
    for s in X.simplices[n]:
        rows.append({faces[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
    return rows, len(X.simplices[n - 1])


def _homology_from_chain_complex(counts, boundaries):
    # boundaries[n] = (rows, ncols) for n = 0..top, including augmentation
    ranks, facs = [], []
    for rows, ncols in boundaries:
        r, f = sparse_invariant_factors(rows, ncols)
        ranks.append(r)
        facs.append(f)
    top = len(counts) - 1
    groups = {}
    if top < 0:
        groups[-1] = FpAbelianGroup(1)
        return groups, -1
    for n in range(top + 1):
        r_next = ranks[n + 1] if n + 1 <= top else 0
        tors = facs[n + 1] if n + 1 <= top else []
        groups[n] = FpAbelianGroup(counts[n] - ranks[n] - r_next, tuple(tors))
    euler = sum((-1) ** n * c for n, c in enumerate(counts)) - 1
    return groups, euler


def homology(X):
    """Reduced integral homology via Smith forms of the boundary maps."""
    counts = X.f_vector()
    bds = [boundary_rows(X, n) for n in range(len(counts))]
    groups, euler = _homology_from_chain_complex(counts, bds)
    prof = HomologyProfile(groups, euler)
    alt = sum((-1) ** n * g.free_rank for n, g in groups.items())
    if alt != euler:
        raise InvariantViolation("Euler characteristic mismatch", (alt, euler))
    return prof


def reduced_euler(X):
    return sum((-1) ** n * c for n, c in enumerate(X.f_vector())) - 1


def connected_components(X):
    """``[(vertices, stabilizer), ...]`` ordered by smallest vertex.

    Stabilizers are setwise stabilizers, as subgroups of ``X.group``.
    """
    parent = list(range(X.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if X.dim >= 1:
        for a, b in X.simplices[1]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps = {}
    for v in range(X.n_vertices):
        comps.setdefault(find(v), []).append(v)
    out = []
    for root in sorted(comps):
        verts = comps[root]
        members = set(verts)
        stab = [g for g in range(len(X.action)) if X.action[g][verts[0]] in members]
        if X.group is not None:
            stab = Subgroup(X.group, tuple(stab))
        out.append((tuple(verts), stab))
    return out


def barycentric_subdivision(X):
    """Vertices are the simplices of ``X``; simplices are chains of faces.

    Vertex ``k`` of the result is the k-th simplex of ``X`` listing
    dimension by dimension.
    """
    flat = [s for level in X.simplices for s in level]
    pos = {s: i for i, s in enumerate(flat)}
    memo = {}

    def chains(s):
        # chains of faces whose largest element is s, as increasing index tuples
        got = memo.get(s)
        if got is None:
            got = [(pos[s],)]
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    got += [c + (pos[s],) for c in chains(face)]
            memo[s] = got
        return got

    levels = {}
    for s in flat:
        for c in chains(s):
            levels.setdefault(len(c) - 1, []).append(c)
    simp = tuple(tuple(sorted(levels[n])) for n in range(len(levels)))
    action = tuple(tuple(pos[X.act(s, g)] for s in flat) for g in range(len(X.action)))
    return SimplicialGComplex(len(flat), simp, action, tuple(flat), X.group)


def vertex_orbits(X):
    """Orbit id per vertex; orbits numbered by their smallest vertex."""
    orbit = [-1] * X.n_vertices
    count = 0
    for v in range(X.n_vertices):
        if orbit[v] >= 0:
            continue
        orbit[v] = count
        frontier = [v]
        while frontier:
            nxt = []
            for a in frontier:
                for g in X.generator_indices:
                    b = X.action[g][a]
                    if orbit[b] < 0:
                        orbit[b] = count
                        nxt.append(b)
            frontier = nxt
        count += 1
    return orbit, count


def simplex_orbits(X, n):
    """Orbit id for each n-simplex (in ``X.simplices[n]`` order)."""
    level = X.simplices[n]
    idx = X._index[n]
    orbit = [-1] * len(level)
    count = 0
    for i, s in enumerate(level):
        if orbit[i] >= 0:
            continue
        orbit[i] = count
        frontier = [s]
        while frontier:
            nxt = []
            for a in frontier:
                for g in X.generator_indices:
                    b = X.act(a, g)
                    j = idx[b]
                    if orbit[j] < 0:
                        orbit[j] = count
                        nxt.append(b)
            frontier = nxt
        count += 1
    return orbit, count


def stabilizers_fix_pointwise(X):
    """True iff every element mapping a simplex to itself fixes its vertices."""
    for g, img in enumerate(X.action):
        for level in X.simplices[1:]:
            for s in level:
                if X.act(s, g) == s and any(img[v] != v for v in s):
                    return False
    return True


def is_regular(X):
    """Whether ``X / G`` is modelled by the vertex-orbit quotient.

    Checks that no simplex has two vertices in one orbit and that
    simplices with the same set of vertex orbits form a single orbit.
    """
    vorb, _ = vertex_orbits(X)
    for n, level in enumerate(X.simplices):
        images = set()
        for s in level:
            img = tuple(sorted(vorb[v] for v in s))
            if len(set(img)) != len(img):
                return False
            images.add(img)
        _, n_orbits = simplex_orbits(X, n)
        if len(images) != n_orbits:
            return False
    return True


def _quotient_by_vertex_orbits(X):
    vorb, count = vertex_orbits(X)
    reps = {}
    for v in range(X.n_vertices):
        reps.setdefault(vorb[v], v)
    levels = []
    for level in X.simplices:
        levels.append(tuple(sorted({tuple(sorted(vorb[v] for v in s)) for s in level})))
    labels = tuple(X.labels[reps[o]] for o in range(count)) if X.labels else ()
    return SimplicialGComplex(count, tuple(levels), _trivial_action(count), labels)


def orbit_space(X):
    """Simplicial model of ``X / G`` and the route used to get it.

    The route is ``"direct"`` when ``X`` is already regular, otherwise
    ``"sd1"`` or ``"sd2"`` for the first regular barycentric subdivision
    (the second one always is).
    """
    if is_regular(X):
        return _quotient_by_vertex_orbits(X), "direct"
    X1 = barycentric_subdivision(X)
    if is_regular(X1):
        return _quotient_by_vertex_orbits(X1), "sd1"
    X2 = barycentric_subdivision(X1)
    if not is_regular(X2):
        raise InvariantViolation("second subdivision is not regular")
    return _quotient_by_vertex_orbits(X2), "sd2"


def quotient_complex(X):
    return orbit_space(X)[0]


def coinvariant_homology(X):
    """Homology of ``X / G`` from the orbit chain complex ``C(X)_G``.

    Valid only when simplex stabilizers fix their simplices pointwise, which
    is checked first.  Independent of :func:`orbit_space`.
    """
    if not stabilizers_fix_pointwise(X):
        raise ValueError("a stabilizer permutes the vertices of a simplex")
    orbit_ids = [simplex_orbits(X, n) for n in range(len(X.simplices))]
    counts = [c for _, c in orbit_ids]
    bds = [([{0: 1} for _ in range(counts[0])], 1)] if counts else []
    for n in range(1, len(counts)):
        ids, c = orbit_ids[n]
        face_ids = orbit_ids[n - 1][0]
        face_idx = X._index[n - 1]
        rows = [None] * c
        for i, s in enumerate(X.simplices[n]):
            if rows[ids[i]] is not None:
                continue
            row = {}
            for k in range(len(s)):
                f = face_ids[face_idx[s[:k] + s[k + 1:]]]
                row[f] = row.get(f, 0) + (-1) ** k
            rows[ids[i]] = {f: v for f, v in row.items() if v}
        bds.append((rows, counts[n - 1]))
    groups, euler = _homology_from_chain_complex(counts, bds)
    return HomologyProfile(groups, euler)
