"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (also when run
as ``python3 tests/test_acceptance.py``).
"""

import random
import time

import pytest

from brownlab import cechbundle as cb
from brownlab import gcomplex
from brownlab.abelian import (cokernel, determinant, diagonal, matmul, smith_normal_form,
                              solve_homogeneous_mod)
from brownlab.analysis import Analysis
from brownlab.catalog import catalog_pairs, parse_group_spec
from brownlab.permgroup import normalizer, sylow_subgroup
from brownlab.verify import remark_tuples
from brownlab.weakhom import (brute_force_weakhoms, characters_trivial_on, restrict_weakhom,
                              torsion_elements, weakhom_group)

PAIRS = catalog_pairs()
_analyses = {}


def analysis(spec, p):
    if (spec, p) not in _analyses:
        _analyses[(spec, p)] = Analysis(spec, p)
    return _analyses[(spec, p)]


def criterion_1():
    expected = [("sym:3", 3, (2,)), ("sym:3", 2, ()), ("sym:4", 2, ()),
                ("alt:4", 3, ()), ("alt:5", 2, (3,))]
    t0 = time.perf_counter()
    bad = []
    for spec, p, tors in expected:
        G = parse_group_spec(spec)
        P = sylow_subgroup(G, p)
        A = weakhom_group(G, P)
        if A.torsion.invariant_factors != tors:
            bad.append((spec, p, str(A.torsion)))
        for m in range(2, 13):
            if brute_force_weakhoms(G, P, m)[0] != A.W.count_homs_to_cyclic(m):
                bad.append((spec, p, m))
    for spec in ("q8", "cyclic:4", "dihedral:8"):
        G = parse_group_spec(spec)
        A = weakhom_group(G, G.whole())
        if not A.W.is_trivial():
            bad.append((spec, "A(P,P)", str(A.W)))
        for m in range(2, 13):
            if brute_force_weakhoms(G, G.whole(), m)[0] != 1:
                bad.append((spec, "A(P,P)", m))
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 10, f"mismatches={bad[:3]} time={elapsed:.2f}s (<10s)"


def criterion_2():
    checked, bad = [], []
    for spec, p in PAIRS:
        a = analysis(spec, p)
        if not a.sylow_is_normal:
            continue
        X, _ = characters_trivial_on(a.group, a.sylow)
        checked.append(f"{spec}/{p}")
        if X.free_rank or X.invariant_factors != a.weakhoms.torsion.invariant_factors:
            bad.append((spec, p, str(X), str(a.weakhoms.torsion)))
    d8c3 = analysis("product:dihedral:8xcyclic:3", 3).weakhoms.torsion.invariant_factors
    ok = not bad and d8c3 == (2, 2) and "product:dihedral:8xcyclic:3/3" in checked
    return ok, f"{len(checked)} normal-Sylow entries, D8xC3 p=3 -> {list(d8c3)}, bad={bad}"


def criterion_3():
    bad = [(s, p, analysis(s, p).reduced_euler) for s, p in PAIRS
           if analysis(s, p).reduced_euler % analysis(s, p).sylow_order]
    a5 = analysis("alt:5", 2)
    ok = not bad and a5.reduced_euler == 4 and a5.sylow_order == 4
    return ok, f"A5 p=2: chi={a5.reduced_euler}, |G|_2={a5.sylow_order}; bad={bad}"


def criterion_4():
    bad, slowest = [], (0.0, None)
    for spec, p in PAIRS:
        t0 = time.perf_counter()
        X = Analysis(spec, p).complex
        Q, route = gcomplex.orbit_space(X)
        h = gcomplex.homology(Q)
        dt = time.perf_counter() - t0
        slowest = max(slowest, (dt, spec))
        if not h.is_acyclic() or dt >= 60:
            bad.append((spec, p, route, h.signature(), round(dt, 2)))
    return not bad, f"slowest {slowest[1]} {slowest[0]:.2f}s (<60s); bad={bad}"


def criterion_5():
    total = sum(remark_tuples(analysis(s, p), 2000) for s, p in PAIRS)
    return total == 0, f"{2000 * len(PAIRS)} tuples, mismatches={total}"


def criterion_6():
    bad = []
    for s, p in PAIRS:
        a = analysis(s, p)
        h = a.homology.signature()
        if not (h == a.variant_homology("quillen").signature()
                == a.variant_homology("bouc").signature()):
            bad.append((s, p))
    return not bad, f"{len(PAIRS)} entries, disagreements={bad}"


def criterion_7():
    fails = []
    for s, p in PAIRS:
        a = analysis(s, p)
        elems = torsion_elements(a.weakhoms)
        bundles = {}
        for u in elems:
            c = cb.bundle_from_weakhom(u)
            bundles[u.values] = c
            if not cb.validate_bundle(c):
                fails.append(("a", s, p))
            if cb.weakhom_from_bundle(c) != u:
                fails.append(("b", s, p))
        for u in elems:
            for v in elems:
                if cb.bundle_from_weakhom(u * v) != cb.tensor_bundles(bundles[u.values],
                                                                      bundles[v.values]):
                    fails.append(("c", s, p))
        for u in a.weakhoms.generators:
            c = bundles[u.values]
            for pair in c.transitions:
                verdict = cb.validate_bundle(c.with_entry(pair, c[pair] + 1))
                if verdict or verdict.witness is None:
                    fails.append(("e", s, p, pair))
    G = parse_group_spec("sym:3")
    P = sylow_subgroup(G, 3)
    n = len(cb.enumerate_coherent_cocycles(G, P, 2))
    tors = weakhom_group(G, P).torsion.torsion_order
    if not n == tors == 2:
        fails.append(("d", n, tors))
    return not fails, f"exhaustive S3/C3/m=2 -> {n} cocycles; failures={fails[:3]}"


def criterion_8():
    disconnected, bad = [], []
    for s, p in PAIRS:
        a = analysis(s, p)
        comps = a.components
        if len(comps) > 1:
            disconnected.append(f"{s}/{p}")
            if not all(a.strongly_embedded):
                bad.append((s, p))
        elif len(comps) != 1 or comps[0][1].order != a.group.order:
            bad.append((s, p))
    ok = not bad and {"sym:3/2", "alt:5/2"} <= set(disconnected)
    return ok, f"disconnected: {', '.join(disconnected)}; bad={bad}"


def criterion_9():
    a = analysis("alt:5", 2)
    G, P = a.group, a.sylow
    N = normalizer(G, P)
    (u,) = a.weakhoms.generators
    r = restrict_weakhom(u, N)
    H, _ = N.as_group()
    B = weakhom_group(H, r.sylow)
    iso = (a.weakhoms.torsion.invariant_factors == (3,) == B.torsion.invariant_factors
           and r.order() == 3 and H.order == 12)
    rng = random.Random(9)
    bad = 0
    for s, p in PAIRS:
        b = analysis(s, p)
        elems = torsion_elements(b.weakhoms)
        Nb = normalizer(b.group, b.sylow)
        for _ in range(20):
            x, y = rng.choice(elems), rng.choice(elems)
            if restrict_weakhom(x * y, Nb) != restrict_weakhom(x, Nb) * restrict_weakhom(y, Nb):
                bad += 1
    return iso and not bad, f"A(A5,P)=Z/3 -> A(A4,P)=Z/3, image order {r.order()}; " \
                            f"multiplicativity failures={bad}"


def criterion_10():
    rng = random.Random(10)
    failures = 0
    for _ in range(500):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        D, U, V = smith_normal_form(M)
        d = diagonal(D)
        nz = [x for x in d if x]
        chain = all(b % a == 0 for a, b in zip(nz, nz[1:])) and d == nz + [0] * (len(d) - len(nz))
        ok = (matmul(matmul(U, M), V) == D and chain
              and abs(determinant(U)) == 1 and abs(determinant(V)) == 1)
        A = cokernel(M, c)
        ok = ok and all(solve_homogeneous_mod(M, m, c) == A.count_homs_to_cyclic(m)
                        for m in range(2, 13))
        failures += not ok
    return failures == 0, f"500 matrices, failures={failures}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]
TITLES = ["weak-hom groups + oracle", "normal-Sylow law", "Brown congruence",
          "orbit-space acyclicity", "translate intersections", "variant agreement",
          "cocycle suite", "strongly p-embedded dichotomy", "restriction naturality",
          "linear-algebra kernel"]


def line(k, ok, detail):
    return f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {TITLES[k - 1]} -- {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(line(k, ok, detail))
    raise SystemExit(0 if all(results) else 1)
