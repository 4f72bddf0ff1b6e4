"""Weak P-homomorphisms of a finite group.

A function ``u: G -> K*`` is a weak P-homomorphism when

* ``u(g) = 1`` for ``g`` in ``P``,
* ``u(g) = 1`` whenever ``P cap P^g = 1``,
* ``u(g2 g1) = u(g2) u(g1)`` whenever ``P cap P^g1 cap P^(g2 g1) != 1``.

Values are stored additively as exponents in ``Z/m``: the integer ``a``
stands for ``zeta^a`` with ``zeta`` a fixed primitive m-th root of unity.
The conditions are linear in these exponents, so the group of all weak
homomorphisms is ``Hom(W, K*)`` for the abelian group ``W`` presented by
one generator per element and one relation per instance of a condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import lcm

from .abelian import (FpAbelianGroup, cokernel, cokernel_basis, p_prime_torsion,
                      solve_homogeneous_mod)
from .errors import InvariantViolation
from .permgroup import (Subgroup, conjugate_subgroup, normalizer, p_part,
                        prime_factors)

EXHAUSTIVE_MAX_ORDER = 8
EXHAUSTIVE_MAX_FUNCTIONS = 10 ** 7


class SylowOverlaps:
    """Intersection tests among conjugates of a fixed Sylow subgroup."""

    def __init__(self, G, P):
        self.group = G
        self.sylow = P
        self._conj = [frozenset(conjugate_subgroup(P, g).members) - {G.identity}
                      for g in range(G.order)]

    def meets(self, *gs):
        """Whether ``P^g1 cap ... cap P^gn`` is nontrivial."""
        acc = self._conj[gs[0]]
        for g in gs[1:]:
            acc = acc & self._conj[g]
            if not acc:
                return False
        return bool(acc)

    @cached_property
    def meets_sylow(self):
        """``meets_sylow[g]`` is ``P cap P^g != 1``."""
        return tuple(self.meets(0, g) for g in range(self.group.order))

    def wh3_applies(self, g2, g1):
        return self.meets(0, g1, self.group.mul(g2, g1))


def sylow_prime(G, P):
    """The prime ``p`` for which ``P`` is a Sylow subgroup (None if trivial)."""
    if P.parent is not G:
        raise ValueError("P is not a subgroup of G")
    primes = prime_factors(P.order)
    if len(primes) > 1:
        raise ValueError("P is not a p-subgroup")
    if not primes:
        return None
    p = primes[0]
    if p_part(G.order, p) != P.order:
        raise ValueError(f"P is a {p}-subgroup but not a Sylow {p}-subgroup")
    return p


@dataclass(frozen=True, eq=False)
class WeakHomPresentation:
    group: object
    sylow: Subgroup
    relations: list
    row_kinds: tuple
    wh3_pairs: tuple = field(repr=False)

    @property
    def ncols(self):
        return self.group.order

    def counts(self):
        out = {"WH1": 0, "WH2": 0, "WH3": 0}
        for k in self.row_kinds:
            out[k] += 1
        return out


def build_presentation(G, P):
    """Relation matrix: WH1 rows, then WH2 rows, then WH3 rows (g1 outer, g2 inner)."""
    sylow_prime(G, P)
    ov = SylowOverlaps(G, P)
    n = G.order
    rows, kinds, pairs = [], [], []
    for g in P.members:
        row = [0] * n
        row[g] = 1
        rows.append(row)
        kinds.append("WH1")
    for g in range(n):
        if not ov.meets_sylow[g]:
            row = [0] * n
            row[g] = 1
            rows.append(row)
            kinds.append("WH2")
    for g1 in range(n):
        if not ov.meets_sylow[g1]:
            continue
        for g2 in range(n):
            if ov.wh3_applies(g2, g1):
                row = [0] * n
                row[G.mul(g2, g1)] += 1
                row[g2] -= 1
                row[g1] -= 1
                rows.append(row)
                kinds.append("WH3")
                pairs.append((g2, g1))
    return WeakHomPresentation(G, P, rows, tuple(kinds), tuple(pairs))


@dataclass(frozen=True, eq=False)
class WeakHom:
    """A weak homomorphism with values in ``Z/modulus`` (exponent form)."""

    group: object
    sylow: Subgroup
    modulus: int
    values: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        vals = tuple(int(v) % self.modulus for v in self.values)
        if len(vals) != self.group.order:
            raise ValueError("one value per group element required")
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        if not isinstance(other, WeakHom) or other.group is not self.group:
            return NotImplemented
        if other.sylow != self.sylow:
            return False
        L = lcm(self.modulus, other.modulus)
        return _lift(self, L) == _lift(other, L)

    def __hash__(self):
        return hash((id(self.group), self.sylow.members, self.reduced().values))

    def __mul__(self, other):
        return multiply_weakhoms(self, other)

    def __call__(self, g):
        return self.values[g]

    def is_trivial(self):
        return not any(self.values)

    def order(self):
        """Order in the group of weak homomorphisms."""
        k = 1
        while any((k * v) % self.modulus for v in self.values):
            k += 1
        return k

    def reduced(self):
        """Same function written with the smallest modulus that holds it."""
        k = self.order()
        return WeakHom(self.group, self.sylow, k,
                       tuple(v * k // self.modulus for v in self.values))

    def table(self):
        return {self.group.label(g): v for g, v in enumerate(self.values)}


def _lift(u, L):
    f = L // u.modulus
    return tuple(v * f for v in u.values)


def trivial_weakhom(G, P, m=1):
    return WeakHom(G, P, m, (0,) * G.order)


def multiply_weakhoms(u, v):
    """Pointwise product (sum of exponents), moduli lifted to their lcm."""
    if u.group is not v.group or u.sylow != v.sylow:
        raise ValueError("weak homomorphisms for different (G, P)")
    L = lcm(u.modulus, v.modulus)
    return WeakHom(u.group, u.sylow, L, tuple(a + b for a, b in zip(_lift(u, L), _lift(v, L))))


def invert_weakhom(u):
    return WeakHom(u.group, u.sylow, u.modulus, tuple(-a for a in u.values))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    condition: str = None
    witness: tuple = None

    def __bool__(self):
        return self.ok


def validate_weakhom(u, overlaps=None):
    """Check the three conditions directly; report the first failure."""
    G, P, m = u.group, u.sylow, u.modulus
    ov = overlaps or SylowOverlaps(G, P)
    vals = u.values
    for g in P.members:
        if vals[g] % m:
            return Verdict(False, "WH1", (g,))
    for g in range(G.order):
        if not ov.meets_sylow[g] and vals[g] % m:
            return Verdict(False, "WH2", (g,))
    for g1 in range(G.order):
        if not ov.meets_sylow[g1]:
            continue
        for g2 in range(G.order):
            if ov.wh3_applies(g2, g1) and (vals[G.mul(g2, g1)] - vals[g2] - vals[g1]) % m:
                return Verdict(False, "WH3", (g2, g1))
    return Verdict(True)


@dataclass(frozen=True, eq=False)
class WeakHomGroup:
    """``W`` with its torsion and prime-to-p torsion, plus decoded generators.

    ``generators[i]`` is a weak homomorphism of order ``torsion.invariant_factors[i]``
    written with modulus ``torsion.exponent``; together they generate the
    torsion of the group of weak homomorphisms.
    """

    group: object
    sylow: Subgroup
    prime: int
    presentation: WeakHomPresentation
    W: FpAbelianGroup
    torsion: FpAbelianGroup
    T: FpAbelianGroup
    generators: tuple

    @property
    def modulus(self):
        return self.torsion.exponent

    @property
    def has_p_torsion(self):
        return self.prime is not None and any(d % self.prime == 0
                                              for d in self.W.invariant_factors)


def weakhom_group(G, P):
    """Compute ``W``, its torsion and the prime-to-p part ``T``."""
    p = sylow_prime(G, P)
    pres = build_presentation(G, P)
    W, tors_gens, _free = cokernel_basis(pres.relations, G.order)
    check = cokernel(pres.relations, G.order)
    if check != W:
        raise InvariantViolation("cokernel paths disagree", (str(check), str(W)))
    torsion = W.torsion()
    T = p_prime_torsion(W, p) if p is not None else torsion
    e = torsion.exponent
    ov = SylowOverlaps(G, P)
    gens = []
    for d, vec in zip(W.invariant_factors, tors_gens):
        u = WeakHom(G, P, e, tuple((x % d) * (e // d) for x in vec))
        verdict = validate_weakhom(u, ov)
        if not verdict:
            raise InvariantViolation(f"decoded generator violates {verdict.condition}",
                                     verdict.witness)
        if u.order() != d:
            raise InvariantViolation("decoded generator has the wrong order", (d, u.order()))
        gens.append(u)
    return WeakHomGroup(G, P, p, pres, W, torsion, T, tuple(gens))


def torsion_elements(A):
    """Every element of the torsion subgroup spanned by ``A.generators``."""
    G, P, e = A.group, A.sylow, A.modulus
    out = []
    for coeffs in product(*(range(d) for d in A.torsion.invariant_factors)):
        vals = [0] * G.order
        for c, u in zip(coeffs, A.generators):
            for g in range(G.order):
                vals[g] += c * u.values[g]
        out.append(WeakHom(G, P, e, tuple(vals)))
    return out


def brute_force_weakhoms(G, P, m, mode="auto"):
    """Count (and in exhaustive mode list) all weak homomorphisms ``G -> Z/m``.

    Exhaustive mode walks through assignments element by element and tests
    the defining conditions as soon as their elements are assigned; it never
    looks at the relation matrix.  Elimination mode counts solutions of the
    presentation mod ``m`` without the integer Smith form.  Returns
    ``(count, solutions_or_None, mode_used)``.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    sylow_prime(G, P)
    small = G.order <= EXHAUSTIVE_MAX_ORDER and m ** G.order <= EXHAUSTIVE_MAX_FUNCTIONS
    if mode == "auto":
        mode = "exhaustive" if small else "elimination"
    if mode == "elimination":
        pres = build_presentation(G, P)
        return solve_homogeneous_mod(pres.relations, m, G.order), None, mode
    if not small:
        raise ValueError(f"exhaustive search bound exceeded for |G|={G.order}, m={m}")

    ov = SylowOverlaps(G, P)
    n = G.order
    forced_zero = [g in P or not ov.meets_sylow[g] for g in range(n)]
    # WH3 instances grouped by the largest element index they mention
    checks = [[] for _ in range(n)]
    for g1 in range(n):
        for g2 in range(n):
            if ov.wh3_applies(g2, g1):
                g = G.mul(g2, g1)
                checks[max(g, g2, g1)].append((g, g2, g1))
    vals = [0] * n
    found = []

    def assign(k):
        if k == n:
            found.append(WeakHom(G, P, m, tuple(vals)))
            return
        choices = (0,) if forced_zero[k] else range(m)
        for a in choices:
            vals[k] = a
            if all((vals[g] - vals[g2] - vals[g1]) % m == 0 for g, g2, g1 in checks[k]):
                assign(k + 1)
        vals[k] = 0

    assign(0)
    return len(found), found, mode


@dataclass(frozen=True, eq=False)
class Character:
    """A homomorphism ``G -> Z/modulus`` in exponent form."""

    group: object
    modulus: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values",
                           tuple(int(v) % self.modulus for v in self.values))

    def is_homomorphism(self):
        G, m, v = self.group, self.modulus, self.values
        return all((v[G.mul(a, b)] - v[a] - v[b]) % m == 0
                   for a in range(G.order) for b in range(G.order))

    def is_trivial_on(self, H):
        return all(self.values[h] == 0 for h in H.members)

    def is_trivial(self):
        return not any(self.values)


def characters_trivial_on(G, P):
    """Homomorphisms ``G -> Q/Z`` killing ``P``: the dual of ``G^ab / <P>``.

    Returns ``(A, generators)`` where ``A`` presents ``G / (G' <P>)`` from
    the relations ``x_ab = x_a + x_b`` and ``x_h = 0`` for ``h`` in ``P``,
    and each generator is a :class:`Character` of the matching order.
    """
    n = G.order
    rows = []
    for h in P.members:
        row = [0] * n
        row[h] = 1
        rows.append(row)
    # x_ab = x_a + x_b for b in a generating set already forces a homomorphism
    for a in range(n):
        for b in G.generators or range(n):
            row = [0] * n
            row[G.mul(a, b)] += 1
            row[a] -= 1
            row[b] -= 1
            rows.append(row)
    A, tors, _ = cokernel_basis(rows, n)
    chars = [Character(G, d, tuple(x % d for x in vec))
             for d, vec in zip(A.invariant_factors, tors)]
    return A, chars


def tilde_from_character(G, P, chi):
    """Force the second condition on a character trivial on ``P``."""
    if not chi.is_homomorphism():
        raise ValueError("chi is not a homomorphism")
    if not chi.is_trivial_on(P):
        raise ValueError("chi is not trivial on P")
    ov = SylowOverlaps(G, P)
    vals = tuple(chi.values[g] if ov.meets_sylow[g] else 0 for g in range(G.order))
    u = WeakHom(G, P, chi.modulus, vals)
    verdict = validate_weakhom(u, ov)
    if not verdict:
        raise InvariantViolation(f"tilde violates {verdict.condition}", verdict.witness)
    return u


def restrict_weakhom(u, Gp):
    """Restrict ``u`` to a subgroup ``Gp`` with ``P <= Gp``.

    The result lives on the standalone group ``Gp.as_group()`` and is
    checked against the conditions for ``(Gp, P)``.
    """
    G, P = u.group, u.sylow
    if Gp.parent is not G or not P.issubset(Gp):
        raise ValueError("Gp must be a subgroup of G containing P")
    H, emb = Gp.as_group()
    pos = {g: j for j, g in enumerate(emb)}
    PH = Subgroup(H, tuple(pos[g] for g in P.members))
    r = WeakHom(H, PH, u.modulus, tuple(u.values[g] for g in emb))
    verdict = validate_weakhom(r)
    if not verdict:
        raise InvariantViolation(f"restriction violates {verdict.condition}", verdict.witness)
    return r


def is_normal(G, P):
    return normalizer(G, P).order == G.order
