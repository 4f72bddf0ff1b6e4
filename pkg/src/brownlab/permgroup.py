"""Finite permutation groups, enumerated extensionally.

Groups act on the right: for permutations ``a`` and ``b`` the product
``a * b`` first applies ``a`` and then ``b``, so that conjugation reads
``Q ** g = g^-1 Q g``.  Elements of a :class:`FiniteGroup` are sorted
lexicographically by their image sequences, which puts the identity at
index 0 and makes every "first found" choice reproducible.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property

from sympy import factorint, isprime

from .errors import OrderCapExceeded, ParseError

DEFAULT_MAX_ORDER = 20000
_EAGER_TABLE_LIMIT = 4096


def max_order_cap():
    """Order cap, overridable through ``BROWNLAB_MAX_ORDER``."""
    raw = os.environ.get("BROWNLAB_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"BROWNLAB_MAX_ORDER is not an integer: {raw!r}")


def p_part(n, p):
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def check_prime(p):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not a prime")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @property
    def degree(self):
        return len(self.images)

    def __mul__(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[x] for x in self.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self):
        """Non-trivial cycles, each starting at its smallest point (0-based)."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


_CYCLE_TEXT = re.compile(r"\s*\(([^()]*)\)\s*")


def parse_permutation(text, degree):
    """Read disjoint-cycle notation with 1-based points.

    >>> parse_permutation("(1 2 3)", 4).images
    (1, 2, 0, 3)
    """
    if degree < 1:
        raise ParseError("degree must be positive")
    images = list(range(degree))
    used = set()
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty permutation text")
    while pos < len(text):
        m = _CYCLE_TEXT.match(text, pos)
        if not m:
            raise ParseError(f"malformed cycle text at offset {pos}: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            points = [int(tok) for tok in body]
        except ValueError:
            raise ParseError(f"non-integer point in {m.group(0)!r}")
        for pt in points:
            if not 1 <= pt <= degree:
                raise ParseError(f"point {pt} out of range 1..{degree}")
            if pt in used:
                raise ParseError(f"point {pt} repeated")
            used.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


class FiniteGroup:
    """A finite permutation group with its full, canonically sorted element list."""

    def __init__(self, elements, generators=(), name=None):
        elements = sorted(elements)
        if not elements:
            raise ValueError("a group has at least one element")
        self.degree = elements[0].degree
        self.elements = tuple(elements)
        self.order = len(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != self.order:
            raise ValueError("duplicate elements")
        if not self.elements[0].is_identity():
            raise ValueError("identity missing")
        self.generators = tuple(sorted({self._index[g] for g in generators}))
        self.name = name
        self._rows = {}
        if self.order <= _EAGER_TABLE_LIMIT:
            for i in range(self.order):
                self._row(i)

    identity = 0

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"<FiniteGroup {label}, order {self.order}>"

    def __len__(self):
        return self.order

    def index(self, perm):
        try:
            return self._index[perm]
        except KeyError:
            raise ValueError(f"{perm} is not an element of {self!r}")

    def _row(self, i):
        row = self._rows.get(i)
        if row is None:
            a = self.elements[i]
            row = [self._index[a * b] for b in self.elements]
            if self.order <= _EAGER_TABLE_LIMIT:
                self._rows[i] = row
        return row

    def mul(self, i, j):
        row = self._rows.get(i)
        if row is not None:
            return row[j]
        return self._index[self.elements[i] * self.elements[j]]

    @property
    def mul_table(self):
        return [self._row(i) for i in range(self.order)]

    @cached_property
    def _inverses(self):
        return tuple(self._index[e.inverse()] for e in self.elements)

    def inv(self, i):
        return self._inverses[i]

    def conj(self, h, g):
        """``g^-1 h g``."""
        return self.mul(self.mul(self.inv(g), h), g)

    def power(self, i, k):
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, i)
        return acc

    @cached_property
    def element_orders(self):
        orders = []
        for i in range(self.order):
            k, x = 1, i
            while x != self.identity:
                x = self.mul(x, i)
                k += 1
            orders.append(k)
        return tuple(orders)

    def whole(self):
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self):
        return Subgroup(self, (self.identity,))

    def is_abelian(self):
        return self.whole().is_abelian()

    def label(self, i):
        return str(self.elements[i])


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup stored by its sorted member indices in ``parent``."""

    parent: FiniteGroup
    members: tuple
    _set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "_set", frozenset(members))

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={self.members})"

    def __contains__(self, i):
        return i in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def order(self):
        return len(self.members)

    @property
    def key(self):
        """Canonical sort key: order first, then member indices."""
        return (self.order, self.members)

    def is_trivial(self):
        return self.order == 1

    def issubset(self, other):
        return self._set <= other._set

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily in element order."""
        gens = []
        span = {self.parent.identity}
        for i in self.members:
            if i not in span:
                gens.append(i)
                span = set(generate(self.parent, gens).members)
        return tuple(gens)

    def is_abelian(self):
        G = self.parent
        gens = self.generators
        return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)

    def is_closed(self):
        G = self.parent
        if G.identity not in self:
            return False
        return all(G.mul(a, b) in self for a in self.members for b in self.members)

    def as_group(self):
        """Return ``(H, embedding)`` with ``H`` a standalone :class:`FiniteGroup`.

        ``embedding[j]`` is the parent index of element ``j`` of ``H``.
        The pair is cached so repeated calls share one ``H``.
        """
        cached = self.__dict__.get("_standalone")
        if cached is not None:
            return cached
        G = self.parent
        H = FiniteGroup([G.elements[i] for i in self.members],
                        [G.elements[i] for i in self.generators])
        embedding = tuple(G.index(e) for e in H.elements)
        object.__setattr__(self, "_standalone", (H, embedding))
        return H, embedding

    def gens_text(self):
        return [self.parent.label(i) for i in self.generators]


def generate(G, gens):
    """Subgroup of ``G`` generated by element indices ``gens``."""
    gens = [g for g in gens if g != G.identity]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(seen))


def group_from_generators(gens, max_order=None, degree=None, name=None):
    """Close ``gens`` under multiplication.

    ``degree`` is only needed when ``gens`` is empty.
    """
    gens = list(gens)
    if max_order is None:
        max_order = max_order_cap()
    if gens:
        degrees = {g.degree for g in gens}
        if len(degrees) > 1:
            raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
        degree = degrees.pop()
    elif degree is None:
        raise ValueError("degree required for an empty generating set")
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise OrderCapExceeded(
                            f"group order exceeds cap {max_order}")
        frontier = nxt
    return FiniteGroup(seen, gens, name=name)


def _cycle(points, degree):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(tuple(images))


def _quaternion_gens():
    # right-regular representation of Q8 = {+-1, +-i, +-j, +-k}
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    units = [(s, u) for s in (1, -1) for u in "1ijk"]
    pos = {x: n for n, x in enumerate(units)}

    def right_mult(y):
        images = []
        for s, u in units:
            t, w = table[(u, y)]
            images.append(pos[(s * t, w)])
        return Permutation(tuple(images))

    return [right_mult("i"), right_mult("j")]


def named_group(family, *params, max_order=None):
    """Standard permutation realisations of a few families.

    ``dihedral`` takes the group order (``dihedral, 8`` acts on 4 points);
    ``directProduct`` takes two groups and acts on the disjoint union of
    their point sets.
    """
    fam = family.lower().replace("_", "")
    if fam in ("cyclic", "symmetric", "alternating", "dihedral"):
        if len(params) != 1 or not isinstance(params[0], int) or params[0] < 1:
            raise ValueError(f"{family} needs one positive integer parameter")
        n = params[0]
    if fam == "cyclic":
        gens = [_cycle(list(range(n)), n)] if n > 1 else []
        return group_from_generators(gens, max_order, degree=n, name=f"C{n}")
    if fam == "symmetric":
        gens = []
        if n > 1:
            gens = [_cycle([0, 1], n), _cycle(list(range(n)), n)]
        return group_from_generators(gens, max_order, degree=n, name=f"S{n}")
    if fam == "alternating":
        gens = [_cycle([0, 1, k], n) for k in range(2, n)]
        return group_from_generators(gens, max_order, degree=n, name=f"A{n}")
    if fam == "dihedral":
        if n % 2:
            raise ValueError("dihedral takes the (even) group order")
        k = n // 2
        if k == 1:
            gens, deg = [_cycle([0, 1], 2)], 2
        elif k == 2:
            gens, deg = [_cycle([0, 1], 4), _cycle([2, 3], 4)], 4
        else:
            rot = _cycle(list(range(k)), k)
            refl = Permutation(tuple((-i) % k for i in range(k)))
            gens, deg = [rot, refl], k
        return group_from_generators(gens, max_order, degree=deg, name=f"D{n}")
    if fam in ("quaternion8", "q8"):
        if params:
            raise ValueError("quaternion8 takes no parameters")
        return group_from_generators(_quaternion_gens(), max_order, name="Q8")
    if fam in ("directproduct", "product"):
        if len(params) != 2 or not all(isinstance(x, FiniteGroup) for x in params):
            raise ValueError("directProduct takes two FiniteGroups")
        A, B = params
        da, db = A.degree, B.degree
        gens = []
        for i in A.generators:
            gens.append(Permutation(A.elements[i].images + tuple(range(da, da + db))))
        for i in B.generators:
            gens.append(Permutation(tuple(range(da)) + tuple(x + da for x in B.elements[i].images)))
        name = f"{A.name}x{B.name}" if A.name and B.name else None
        return group_from_generators(gens, max_order, degree=da + db, name=name)
    raise ValueError(f"unsupported group family {family!r}")


def _ambient(X):
    return X.whole() if isinstance(X, FiniteGroup) else X


def conjugate_subgroup(H, g):
    G = H.parent
    if not 0 <= g < G.order:
        raise ValueError(f"element index {g} out of range")
    return Subgroup(G, tuple(G.conj(h, g) for h in H.members))


def subgroup_intersection(H, K):
    if H.parent is not K.parent:
        raise ValueError("subgroups of different groups")
    return Subgroup(H.parent, tuple(H._set & K._set))


def normalizer(X, H):
    """``N_X(H)`` where ``X`` is a group or an ambient subgroup containing H."""
    A = _ambient(X)
    G = A.parent
    if H.parent is not G:
        raise ValueError("H is not a subgroup of this group")
    gens = H.generators
    return Subgroup(G, tuple(g for g in A.members
                             if all(G.conj(h, g) in H for h in gens)))


def sylow_subgroup(X, p):
    """A Sylow ``p``-subgroup of ``X`` (a group or a subgroup).

    Grows a p-subgroup one prime step at a time inside successive
    normalizers, always taking the first suitable element in canonical
    order, so the answer is deterministic.
    """
    check_prime(p)
    A = _ambient(X)
    G = A.parent
    target = p_part(A.order, p)
    Q = G.trivial()
    while Q.order < target:
        N = normalizer(A, Q)
        step = None
        for x in N.members:
            if x in Q:
                continue
            k, y = 1, x
            while y not in Q:
                y = G.mul(y, x)
                k += 1
            if p_part(k, p) == k:
                step = G.power(x, k // p)
                break
        if step is None:
            raise AssertionError("no p-element in N(Q)/Q; Sylow growth stalled")
        Q = generate(G, Q.generators + (step,))
    assert Q.order == target
    return Q


def is_p_subgroup(H, p):
    return p_part(H.order, p) == H.order


def is_strongly_p_embedded(X, H, p):
    """True iff p | |H| and p does not divide |H cap H^g| for every g outside H."""
    check_prime(p)
    A = _ambient(X)
    if not H.issubset(A):
        raise ValueError("H is not contained in the ambient group")
    if H.order % p:
        return False
    for g in A.members:
        if g in H:
            continue
        if subgroup_intersection(H, conjugate_subgroup(H, g)).order % p == 0:
            return False
    return True


def sylow_conjugates(X, P):
    """Distinct conjugates of ``P`` under the ambient group, in canonical order."""
    A = _ambient(X)
    found = {}
    for g in A.members:
        Q = conjugate_subgroup(P, g)
        found.setdefault(Q.members, Q)
    return sorted(found.values(), key=lambda S: S.key)


def prime_factors(n):
    return sorted(factorint(n))
