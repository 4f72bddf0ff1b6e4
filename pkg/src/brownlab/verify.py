"""Property suites run over the built-in catalog.

Each check produces a :class:`Check`; ``run_suite`` collects them in
catalog order so that output is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import cechbundle as cb
from . import gcomplex
from .analysis import Analysis
from .catalog import catalog_pairs
from .errors import InvariantViolation
from .permgroup import named_group, normalizer, sylow_conjugates, sylow_subgroup
from .weakhom import (Character, brute_force_weakhoms, characters_trivial_on,
                      restrict_weakhom, tilde_from_character, torsion_elements,
                      weakhom_group)

SUITES = ("weakhom-oracle", "cocycle", "topology")
ORACLE_MODULI = range(2, 13)
RANDOM_TUPLES = 2000


@dataclass
class Check:
    suite: str
    name: str
    subject: str
    passed: bool
    witness: object = None

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        out = f"{tag}  {self.suite:<15} {self.name:<28} {self.subject}"
        if self.witness is not None and not self.passed:
            out += f"  witness={self.witness}"
        return out


_cache = {}


def analysis_for(spec, p):
    key = (spec, p)
    if key not in _cache:
        _cache[key] = Analysis(spec, p)
    return _cache[key]


def _subject(a):
    return f"{a.spec} p={a.p}"


def oracle_counts(a, moduli=ORACLE_MODULI):
    """``[(m, from W, from the oracle, oracle mode)]`` for each modulus."""
    G, P, W = a.group, a.sylow, a.weakhoms.W
    out = []
    for m in moduli:
        count, _, mode = brute_force_weakhoms(G, P, m)
        out.append((m, W.count_homs_to_cyclic(m), count, mode))
    return out


def all_characters(G, P):
    A, gens = characters_trivial_on(G, P)
    e = A.exponent
    chars = []
    for coeffs in product(*(range(d) for d in A.invariant_factors)):
        vals = [0] * G.order
        for c, chi in zip(coeffs, gens):
            f = e // chi.modulus
            for g in range(G.order):
                vals[g] += c * chi.values[g] * f
        chars.append(Character(G, e, tuple(vals)))
    return A, chars


def weakhom_checks(a):
    s = _subject(a)
    A = a.weakhoms
    rows = oracle_counts(a)
    bad = [r for r in rows if r[1] != r[2]]
    yield Check("weakhom-oracle", "oracle-counts", s, not bad, bad[:1] or None)

    if a.sylow_is_normal:
        X, _ = characters_trivial_on(a.group, a.sylow)
        ok = X.free_rank == 0 and X.invariant_factors == A.torsion.invariant_factors
        yield Check("weakhom-oracle", "normal-sylow-law", s, ok,
                    (str(A.torsion), str(X)))

    ok = A.T.torsion_order % a.p != 0 and A.W.free_rank == 0
    yield Check("weakhom-oracle", "T-prime-to-p", s, ok, str(A.T))

    if len(a.components) == 1:
        _, chars = all_characters(a.group, a.sylow)
        bad = [chi.values for chi in chars
               if not chi.is_trivial() and tilde_from_character(a.group, a.sylow, chi).is_trivial()]
        yield Check("weakhom-oracle", "tilde-detects-characters", s, not bad,
                    bad[:1] or None)

    N = normalizer(a.group, a.sylow)
    elems = torsion_elements(A)[:12]
    bad = None
    for u, v in product(elems, repeat=2):
        lhs = restrict_weakhom(u * v, N)
        rhs = restrict_weakhom(u, N) * restrict_weakhom(v, N)
        if lhs != rhs:
            bad = (u.values, v.values)
            break
    yield Check("weakhom-oracle", "restriction-homomorphism", s, bad is None, bad)


def cocycle_checks(a):
    s = _subject(a)
    G, P, A = a.group, a.sylow, a.weakhoms
    elems = torsion_elements(A)
    bundles = {}
    failure = None
    for u in elems:
        try:
            bundles[u.values] = cb.bundle_from_weakhom(u)
        except InvariantViolation as exc:
            failure = exc.witness
            break
    yield Check("cocycle", "forward-images-valid", s, failure is None, failure)

    bad = [u.values for u in elems
           if cb.weakhom_from_bundle(bundles[u.values]) != u]
    yield Check("cocycle", "round-trip", s, not bad, bad[:1] or None)

    bad = None
    for u, v in product(elems[:12], repeat=2):
        if cb.bundle_from_weakhom(u * v) != cb.tensor_bundles(bundles[u.values], bundles[v.values]):
            bad = (u.values, v.values)
            break
    yield Check("cocycle", "tensor-homomorphism", s, bad is None, bad)

    bad = [u.values for u in elems if any(cb.res_to_P(bundles[u.values]).values())]
    yield Check("cocycle", "restriction-to-P-trivial", s, not bad, bad[:1] or None)

    try:
        for chi in characters_trivial_on(G, P)[1]:
            cb.constant_bundle_from_character(G, P, chi)
        yield Check("cocycle", "constant-bundles", s, True)
    except InvariantViolation as exc:
        yield Check("cocycle", "constant-bundles", s, False, exc.witness)

    cover = a.cover
    domain = set(cb.bundle_domain(G, P))
    by_cover = {(x, y) for x in range(G.order) for y in range(G.order)
                if cover.translate(x) & cover.translate(y)}
    yield Check("cocycle", "domain-law", s, domain == by_cover,
                sorted(domain ^ by_cover)[:1] or None)

    missed = None
    targets = [bundles[u.values] for u in A.generators] or [cb.zero_bundle(G, P, 2)]
    for c in targets:
        if c.modulus < 2:
            c = cb.CechBundle(G, P, 2, c.transitions)
        for pair in sorted(c.transitions):
            verdict = cb.validate_bundle(c.with_entry(pair, c[pair] + 1))
            if verdict or verdict.witness is None:
                missed = pair
                break
        if missed:
            break
    yield Check("cocycle", "mutations-rejected", s, missed is None, missed)


def exhaustive_cocycle_check():
    G = named_group("symmetric", 3)
    P = sylow_subgroup(G, 3)
    found = cb.enumerate_coherent_cocycles(G, P, 2)
    A = weakhom_group(G, P)
    return Check("cocycle", "exhaustive-S3-C3-m2", "sym:3 p=3",
                 len(found) == A.torsion.torsion_order == 2,
                 (len(found), A.torsion.torsion_order))


def remark_tuples(a, count=RANDOM_TUPLES, seed=None):
    """Random ``(g1, ..., gn)``, ``n <= 3``; returns the mismatch count."""
    rng = random.Random(seed if seed is not None else f"{a.spec}|{a.p}")
    mismatches = 0
    for _ in range(count):
        gs = [rng.randrange(a.group.order) for _ in range(rng.randint(1, 3))]
        try:
            a.cover.translate_intersection_nonempty(gs)
        except InvariantViolation:
            mismatches += 1
    return mismatches


def topology_checks(a):
    s = _subject(a)
    X = a.complex
    euler = a.reduced_euler
    yield Check("topology", "brown-congruence", s, euler % a.sylow_order == 0,
                (euler, a.sylow_order))

    h = a.homology.signature()
    hq = a.variant_homology("quillen").signature()
    hb = a.variant_homology("bouc").signature()
    yield Check("topology", "variant-agreement", s, h == hq == hb, (h, hq, hb))

    Q, route = a.orbit_space
    ok = a.quotient_homology.is_acyclic()
    yield Check("topology", f"quotient-acyclic[{route}]", s, ok,
                a.quotient_homology.signature())
    coinv = gcomplex.coinvariant_homology(X)
    yield Check("topology", "quotient-coinvariants", s,
                coinv.signature() == a.quotient_homology.signature(), coinv.signature())

    miss = remark_tuples(a)
    yield Check("topology", "translate-intersections", s, miss == 0, miss or None)

    sd = gcomplex.barycentric_subdivision(X)
    yield Check("topology", "subdivision-invariance", s,
                gcomplex.homology(sd).signature() == h, gcomplex.homology(sd).signature())

    comps = a.components
    if len(comps) > 1:
        ok = all(a.strongly_embedded)
        wit = [stab.order for _, stab in comps]
    else:
        ok = len(comps) == 1 and comps[0][1].order == a.group.order
        wit = len(comps)
    yield Check("topology", "component-dichotomy", s, ok, wit)

    sizes = [len(o) for o in a.orbits]
    yield Check("topology", "orbit-sizes-divide", s,
                all(a.group.order % k == 0 for k in sizes), sizes)

    sylows = {S.members for S in sylow_conjugates(a.group, a.sylow)}
    bouc_nodes = {Q.members for Q in a.bouc.nodes}
    yield Check("topology", "bouc-contains-sylows", s, sylows <= bouc_nodes)

    yield Check("topology", "stabilizers-pointwise", s, gcomplex.stabilizers_fix_pointwise(X))


def run_suite(suite, pairs=None, echo=None):
    """Run one suite (or ``"all"``) and return the list of checks."""
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
    pairs = pairs if pairs is not None else catalog_pairs()
    results = []

    def emit(check):
        results.append(check)
        if echo:
            echo(check.line())

    for n in names:
        fn = {"weakhom-oracle": weakhom_checks, "cocycle": cocycle_checks,
              "topology": topology_checks}[n]
        for spec, p in pairs:
            a = analysis_for(spec, p)
            if not a.p_divides:
                continue
            for check in fn(a):
                emit(check)
        if n == "cocycle":
            emit(exhaustive_cocycle_check())
    return results


__all__ = ["Check", "run_suite", "analysis_for", "oracle_counts", "remark_tuples"]
