"""JSON documents emitted by the command line: reports and exports.

Every document carries ``"schemaVersion"``; invariant factors are always
lists in divisibility-chain order.  Apart from the optional ``"timing"``
block the output depends only on the input.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from math import gcd

from . import cechbundle as cb
from . import gcomplex
from .verify import oracle_counts
from .weakhom import brute_force_weakhoms

SCHEMA_VERSION = 1
NOT_DIVIDING = "p does not divide |G|"


def dumps(doc):
    return json.dumps(doc, indent=2) + "\n"


class Timer:
    def __init__(self):
        self.phases = {}

    @contextmanager
    def phase(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = round(time.perf_counter() - t0, 6)


def _abelian(A):
    return A.to_json()


def _subgroup_json(Q):
    return {"order": Q.order, "generators": Q.gens_text()}


def build_report(a, *, complex_detail=False, quotient_detail=False,
                 variants=False, timing=True):
    timer = Timer()
    G = a.group
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "input": {"group": a.spec, "p": a.p},
        "groupOrder": G.order,
        "p": a.p,
        "sylowOrder": a.sylow_order,
        "pDividesOrder": a.p_divides,
        "flags": [] if a.p_divides else [NOT_DIVIDING],
    }
    with timer.phase("poset"):
        doc["sylow"] = _subgroup_json(a.sylow)
        doc["posetSizes"] = {"brown": len(a.poset), "quillen": len(a.quillen),
                             "bouc": len(a.bouc)}
        doc["posetOrbits"] = len(a.orbits)
        doc["sylowNormal"] = a.sylow_is_normal
    with timer.phase("homology"):
        X = a.complex
        doc["complex"] = {"fVector": X.f_vector(), "dimension": X.dim}
        doc["homology"] = a.homology.to_json()
        euler = a.reduced_euler
        doc["reducedEuler"] = {"value": euler, "modulus": a.sylow_order,
                               "divisible": euler % a.sylow_order == 0}
    with timer.phase("quotient"):
        Q, route = a.orbit_space
        doc["quotient"] = {"route": route, "fVector": Q.f_vector(),
                           "homology": a.quotient_homology.to_json(),
                           "acyclic": a.quotient_homology.is_acyclic(),
                           "note": "contractibility approximated by acyclicity"}
    with timer.phase("components"):
        comps = a.components
        doc["components"] = {
            "count": len(comps),
            "stabilizerOrders": [stab.order for _, stab in comps],
            "stronglyPEmbedded": a.strongly_embedded,
        }
    with timer.phase("weakhom"):
        A = a.weakhoms
        doc["weakhom"] = {"W": _abelian(A.W), "torsionOfA": _abelian(A.torsion),
                          "T": _abelian(A.T), "pTorsionInW": A.has_p_torsion,
                          "relations": A.presentation.counts()}
    with timer.phase("oracle"):
        rows = oracle_counts(a)
        doc["oracle"] = {
            "moduli": [r[0] for r in rows],
            "countsFromW": [r[1] for r in rows],
            "countsFromOracle": [r[2] for r in rows],
            "modes": sorted({r[3] for r in rows}),
            "agree": all(r[1] == r[2] for r in rows),
        }
    if complex_detail:
        doc["complexDetail"] = complex_section(a)
    if quotient_detail:
        with timer.phase("coinvariants"):
            coinv = gcomplex.coinvariant_homology(X)
        doc["quotientDetail"] = {
            "regular": gcomplex.is_regular(X),
            "stabilizersFixPointwise": gcomplex.stabilizers_fix_pointwise(X),
            "coinvariantHomology": coinv.to_json(),
            "agreesWithQuotient": coinv.signature() == a.quotient_homology.signature(),
        }
    if variants:
        with timer.phase("variants"):
            hq, hb = a.variant_homology("quillen"), a.variant_homology("bouc")
        doc["variants"] = {
            "quillen": hq.to_json(), "bouc": hb.to_json(),
            "agree": a.homology.signature() == hq.signature() == hb.signature(),
        }
    if timing:
        doc["timing"] = timer.phases
    return doc


def complex_section(a):
    X = a.complex
    orbit_of = {}
    for k, orb in enumerate(a.orbits):
        for v in orb:
            orbit_of[v] = k
    return {
        "vertices": [dict(index=i, orbit=orbit_of[i], **_subgroup_json(Q))
                     for i, Q in enumerate(a.poset.nodes)],
        "simplices": [[list(s) for s in level] for level in X.simplices],
    }


def complex_export(a):
    G = a.group
    doc = {"schemaVersion": SCHEMA_VERSION, "kind": "complex",
           "group": a.spec, "p": a.p,
           "elements": [G.label(g) for g in range(G.order)]}
    doc.update(complex_section(a))
    doc["action"] = [list(row) for row in a.complex.action]
    return doc


def bundle_export(a):
    """Bundles glued from the decoded torsion generators (zero bundle if none)."""
    G, P, A = a.group, a.sylow, a.weakhoms
    bundles = []
    for i, u in enumerate(A.generators):
        c = cb.bundle_from_weakhom(u.reduced())
        bundles.append({"generator": i, "order": u.order(), "modulus": c.modulus,
                        "transitions": [[s, t, v] for (s, t), v in c.transitions.items()]})
    if not bundles:
        c = cb.zero_bundle(G, P, 1)
        bundles.append({"generator": None, "order": 1, "modulus": 1,
                        "transitions": [[s, t, v] for (s, t), v in c.transitions.items()]})
    return {"schemaVersion": SCHEMA_VERSION, "kind": "bundle",
            "group": a.spec, "p": a.p,
            "elements": [G.label(g) for g in range(G.order)],
            "bundles": bundles}


def _values_mod(u, d, m):
    """Image of a generator of order ``d`` in ``Hom(-, Z/m)``-style exponents."""
    g = gcd(d, m)
    e = u.modulus
    return [v * (d // g) * m // e % m for v in u.values], g


def weakhom_report(a, modulus=None, listing=False, oracle=False, timing=True):
    timer = Timer()
    G = a.group
    doc = {"schemaVersion": SCHEMA_VERSION,
           "input": {"group": a.spec, "p": a.p},
           "groupOrder": G.order, "p": a.p, "sylowOrder": a.sylow_order,
           "flags": [] if a.p_divides else [NOT_DIVIDING]}
    with timer.phase("weakhom"):
        A = a.weakhoms
    doc.update({"W": _abelian(A.W), "torsionOfA": _abelian(A.torsion),
                "T": _abelian(A.T), "pTorsionInW": A.has_p_torsion,
                "relations": A.presentation.counts()})
    if modulus is not None:
        doc["modulus"] = modulus
        doc["homCount"] = A.W.count_homs_to_cyclic(modulus)
    if listing:
        gens = []
        for u, d in zip(A.generators, A.torsion.invariant_factors):
            if modulus is None:
                vals, order, m = list(u.values), d, u.modulus
            else:
                vals, order = _values_mod(u, d, modulus)
                m = modulus
            gens.append({"order": order, "modulus": m,
                         "values": {G.label(g): vals[g] for g in range(G.order)}})
        doc["generators"] = gens
    if oracle:
        with timer.phase("oracle"):
            moduli = [modulus] if modulus is not None else list(range(2, 13))
            rows = []
            for m in moduli:
                count, _, mode = brute_force_weakhoms(G, a.sylow, m)
                rows.append({"modulus": m, "fromW": A.W.count_homs_to_cyclic(m),
                             "fromOracle": count, "mode": mode})
        doc["oracle"] = {"counts": rows,
                         "agree": all(r["fromW"] == r["fromOracle"] for r in rows)}
    if timing:
        doc["timing"] = timer.phases
    return doc


__all__ = ["build_report", "complex_export", "bundle_export", "weakhom_report",
           "dumps", "SCHEMA_VERSION"]
