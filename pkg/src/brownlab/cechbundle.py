"""Equivariant line bundles on the Brown complex with constant transitions.

The Brown complex is covered by the closed translates ``Y . s`` of the
subcomplex ``Y`` of subgroups of the Sylow ``P``, one patch per group
element ``s``.  Two patches ``Y . s`` and ``Y . t`` meet exactly when
``P^s cap P^t != 1``.  A bundle in this model is a family of transition
constants ``c(s, t)`` in ``Z/m`` (exponent form) on meeting pairs, subject to

* antisymmetry ``c(s, t) = -c(t, s)``,
* the cocycle rule ``c(s, t) + c(t, r) = c(s, r)`` on meeting triples,
* coherence ``c(s g, t g) = c(s, t)`` for every ``g``,
* normalization ``c(h, e) = 0`` for ``h`` in ``P``.

Gluing along ``c(s, t) = u(s t^-1)`` turns a weak homomorphism ``u`` into
such a bundle, and ``g -> c(g, e)`` recovers it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm

from .errors import InvariantViolation
from .weakhom import (SylowOverlaps, Verdict, WeakHom, sylow_prime,
                      tilde_from_character, validate_weakhom)


@dataclass(frozen=True, eq=False)
class CechBundle:
    group: object
    sylow: object
    modulus: int
    transitions: dict

    def __post_init__(self):
        m = self.modulus
        object.__setattr__(self, "transitions",
                           {k: int(v) % m for k, v in sorted(self.transitions.items())})

    def __eq__(self, other):
        if not isinstance(other, CechBundle) or other.group is not self.group:
            return NotImplemented
        if other.sylow != self.sylow or set(other.transitions) != set(self.transitions):
            return False
        L = lcm(self.modulus, other.modulus)
        return _lifted(self, L) == _lifted(other, L)

    __hash__ = None

    def __getitem__(self, pair):
        return self.transitions[pair]

    def is_zero(self):
        return not any(self.transitions.values())

    def with_entry(self, pair, value):
        t = dict(self.transitions)
        t[pair] = value
        return CechBundle(self.group, self.sylow, self.modulus, t)


def _lifted(c, L):
    f = L // c.modulus
    return {k: v * f for k, v in c.transitions.items()}


def bundle_domain(G, P, overlaps=None):
    """Ordered pairs ``(s, t)`` whose patches meet, in lexicographic order."""
    ov = overlaps or SylowOverlaps(G, P)
    return [(s, t) for s in range(G.order) for t in range(G.order) if ov.meets(s, t)]


def zero_bundle(G, P, m=1):
    return CechBundle(G, P, m, {k: 0 for k in bundle_domain(G, P)})


def validate_bundle(c, overlaps=None):
    """Exhaustive check of the bundle conditions.

    Conditions are tried in the order domain, antisymmetry, cocycle,
    coherence, normalization; within each, the lexicographically smallest
    witness is reported.
    """
    G, P, m = c.group, c.sylow, c.modulus
    ov = overlaps or SylowOverlaps(G, P)
    tr = c.transitions
    domain = bundle_domain(G, P, ov)
    if set(domain) != set(tr):
        extra = sorted(set(tr) ^ set(domain))
        return Verdict(False, "domain", extra[0])
    for s, t in domain:
        if (tr[(s, t)] + tr[(t, s)]) % m:
            return Verdict(False, "antisymmetry", (s, t))
    n = G.order
    for s in range(n):
        for t in range(n):
            if (s, t) not in tr:
                continue
            for r in range(n):
                if ov.meets(s, t, r) and (tr[(s, t)] + tr[(t, r)] - tr[(s, r)]) % m:
                    return Verdict(False, "cocycle", (s, t, r))
    for s, t in domain:
        for g in range(n):
            if (tr[(G.mul(s, g), G.mul(t, g))] - tr[(s, t)]) % m:
                return Verdict(False, "coherence", (s, t, g))
    for h in P.members:
        if tr[(h, G.identity)] % m:
            return Verdict(False, "normalization", (h, G.identity))
    return Verdict(True)


def _require_valid(c, overlaps=None):
    verdict = validate_bundle(c, overlaps)
    if not verdict:
        raise InvariantViolation(f"bundle violates {verdict.condition}", verdict.witness)


def bundle_from_weakhom(u):
    """Glue trivial patches along the constants ``u(s t^-1)``."""
    G, P = u.group, u.sylow
    ov = SylowOverlaps(G, P)
    verdict = validate_weakhom(u, ov)
    if not verdict:
        raise ValueError(f"not a weak homomorphism: {verdict.condition} at {verdict.witness}")
    trans = {(s, t): u.values[G.mul(s, G.inv(t))] for s, t in bundle_domain(G, P, ov)}
    c = CechBundle(G, P, u.modulus, trans)
    _require_valid(c, ov)
    return c


def weakhom_from_bundle(c):
    """Read off ``u(g) = c(g, e)``, with ``u(g) = 0`` where ``P cap P^g = 1``."""
    G, P = c.group, c.sylow
    ov = SylowOverlaps(G, P)
    _require_valid(c, ov)
    e = G.identity
    vals = tuple(c.transitions[(g, e)] if ov.meets_sylow[g] else 0 for g in range(G.order))
    u = WeakHom(G, P, c.modulus, vals)
    verdict = validate_weakhom(u, ov)
    if not verdict:
        raise InvariantViolation(f"extracted map violates {verdict.condition}", verdict.witness)
    return u


def tensor_bundles(c1, c2):
    if c1.group is not c2.group or c1.sylow != c2.sylow:
        raise ValueError("bundles over different (G, P)")
    if set(c1.transitions) != set(c2.transitions):
        raise ValueError("transition domains differ")
    L = lcm(c1.modulus, c2.modulus)
    a, b = _lifted(c1, L), _lifted(c2, L)
    return CechBundle(c1.group, c1.sylow, L, {k: a[k] + b[k] for k in a})


def dual_bundle(c):
    return CechBundle(c.group, c.sylow, c.modulus, {k: -v for k, v in c.transitions.items()})


def constant_bundle_from_character(G, P, chi):
    """Transitions ``chi(s) - chi(t)`` of the constant bundle of a character.

    Agrees with the bundle glued from the forced weak homomorphism of
    ``chi``; the agreement is checked before returning.
    """
    if not chi.is_homomorphism():
        raise ValueError("chi is not a homomorphism")
    if not chi.is_trivial_on(P):
        raise ValueError("chi is not trivial on P")
    v = chi.values
    c = CechBundle(G, P, chi.modulus,
                   {(s, t): v[s] - v[t] for s, t in bundle_domain(G, P)})
    glued = bundle_from_weakhom(tilde_from_character(G, P, chi))
    if glued != c:
        diff = next(k for k in c.transitions if c[k] != glued[k])
        raise InvariantViolation("constant bundle differs from the glued one", diff)
    return c


def res_to_P(c):
    """The character ``h -> c(h, e)`` of ``P``, as ``{h: exponent}``."""
    e = c.group.identity
    return {h: c.transitions[(h, e)] for h in c.sylow.members}


def translation_orbits(G, pairs):
    """Orbits of ``(s, t) -> (s g, t g)`` on ``pairs`` (each orbit sorted)."""
    pairs = set(pairs)
    seen = set()
    orbits = []
    for pair in sorted(pairs):
        if pair in seen:
            continue
        s, t = pair
        orbit = sorted({(G.mul(s, g), G.mul(t, g)) for g in range(G.order)})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def enumerate_coherent_cocycles(G, P, m):
    """All valid bundles with values mod ``m``.

    Coherent cochains are constant on translation orbits of meeting pairs,
    so the search runs over one value per orbit and keeps those passing
    :func:`validate_bundle`.
    """
    sylow_prime(G, P)
    ov = SylowOverlaps(G, P)
    orbits = translation_orbits(G, bundle_domain(G, P, ov))
    valid = []
    for choice in product(range(m), repeat=len(orbits)):
        trans = {pair: a for orbit, a in zip(orbits, choice) for pair in orbit}
        c = CechBundle(G, P, m, trans)
        if validate_bundle(c, ov):
            valid.append(c)
    return valid
