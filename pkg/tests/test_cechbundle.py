import random

import pytest
from hypothesis import given, settings, strategies as st

from brownlab import cechbundle as cb
from brownlab.analysis import Analysis
from brownlab.catalog import catalog_pairs
from brownlab.errors import InvariantViolation
from brownlab.permgroup import generate, named_group, parse_permutation, sylow_subgroup
from brownlab.weakhom import (Character, characters_trivial_on, torsion_elements,
                              trivial_weakhom, weakhom_group)


def sign_values(G):
    return tuple(sum(len(c) - 1 for c in g.cycles()) % 2 for g in G.elements)


@pytest.fixture(scope="module")
def S3_3():
    G = named_group("symmetric", 3)
    P = sylow_subgroup(G, 3)
    return G, P, weakhom_group(G, P)


def coset_cocycle(G, P):
    """c(s, t) = 1 iff s and t lie in different cosets of P, built without any u."""
    cos = {g: frozenset(G.mul(h, g) for h in P.members) for g in range(G.order)}
    return cb.CechBundle(G, P, 2, {(s, t): int(cos[s] != cos[t])
                                   for s in range(G.order) for t in range(G.order)})


class TestForward:
    def test_trivial(self, S3_3):
        G, P, _ = S3_3
        assert cb.bundle_from_weakhom(trivial_weakhom(G, P, 2)).is_zero()

    def test_s3_coset_pattern(self, S3_3):
        G, P, A = S3_3
        c = cb.bundle_from_weakhom(A.generators[0])
        assert len(c.transitions) == 36
        assert c == coset_cocycle(G, P)

    def test_a5_domain_and_values(self):
        a = Analysis("alt:5", 2)
        (u,) = a.weakhoms.generators
        c = cb.bundle_from_weakhom(u)
        G = a.group
        assert len(c.transitions) == 720
        for (s, t), v in c.transitions.items():
            assert v == u.values[G.mul(s, G.inv(t))]


class TestBackward:
    def test_zero(self, S3_3):
        G, P, _ = S3_3
        assert cb.weakhom_from_bundle(cb.zero_bundle(G, P, 2)).is_trivial()

    def test_hand_built(self, S3_3):
        G, P, A = S3_3
        c = coset_cocycle(G, P)
        assert cb.validate_bundle(c)
        assert cb.weakhom_from_bundle(c) == A.generators[0]

    def test_invalid_input_raises(self, S3_3):
        G, P, A = S3_3
        c = coset_cocycle(G, P)
        with pytest.raises(InvariantViolation):
            cb.weakhom_from_bundle(c.with_entry((1, 0), c[(1, 0)] + 1))


class TestTensor:
    def test_inverse(self, S3_3):
        _, _, A = S3_3
        c = cb.bundle_from_weakhom(A.generators[0])
        assert cb.tensor_bundles(c, cb.dual_bundle(c)).is_zero()

    def test_zero_identity(self, S3_3):
        G, P, A = S3_3
        c = cb.bundle_from_weakhom(A.generators[0])
        assert cb.tensor_bundles(c, cb.zero_bundle(G, P, 2)) == c

    def test_mixed_moduli(self):
        a = Analysis("product:dihedral:8xcyclic:3", 3)
        u, v = a.weakhoms.generators
        cu, cv = cb.bundle_from_weakhom(u.reduced()), cb.bundle_from_weakhom(v)
        assert cb.tensor_bundles(cu, cv) == cb.bundle_from_weakhom(u * v)


class TestConstant:
    def test_trivial(self, S3_3):
        G, P, _ = S3_3
        assert cb.constant_bundle_from_character(G, P, Character(G, 2, (0,) * 6)).is_zero()

    def test_sign(self, S3_3):
        G, P, A = S3_3
        c = cb.constant_bundle_from_character(G, P, Character(G, 2, sign_values(G)))
        assert c == cb.bundle_from_weakhom(A.generators[0])

    def test_perfect_group(self):
        a = Analysis("alt:5", 5)
        _, chars = characters_trivial_on(a.group, a.sylow)
        assert chars == []


class TestValidate:
    def test_zero(self, S3_3):
        G, P, _ = S3_3
        assert cb.validate_bundle(cb.zero_bundle(G, P, 3))

    def test_mutation_reports_pair(self, S3_3):
        G, P, A = S3_3
        c = cb.bundle_from_weakhom(A.generators[0])
        for pair in c.transitions:
            v = cb.validate_bundle(c.with_entry(pair, c[pair] + 1))
            # the witness is the pair itself, its reverse, or a triple through it
            assert not v and set(pair) <= set(v.witness)

    def test_domain_violation(self):
        G = named_group("symmetric", 3)
        P = sylow_subgroup(G, 2)
        c = cb.zero_bundle(G, P, 2)
        outside = next((s, t) for s in range(6) for t in range(6)
                       if (s, t) not in c.transitions)
        v = cb.validate_bundle(c.with_entry(outside, 0))
        assert not v and v.condition == "domain" and v.witness == outside


class TestRestrictionToP:
    def test_forward_images(self, S3_3):
        _, _, A = S3_3
        assert not any(cb.res_to_P(cb.bundle_from_weakhom(A.generators[0])).values())

    def test_zero(self, S3_3):
        G, P, _ = S3_3
        assert not any(cb.res_to_P(cb.zero_bundle(G, P)).values())

    def test_unnormalized_fixture(self):
        # sign is a character of S3 that is nontrivial on <(1 2)>
        G = named_group("symmetric", 3)
        P = generate(G, [G.index(parse_permutation("(1 2)", 3))])
        sgn = sign_values(G)
        c = cb.CechBundle(G, P, 2, {(s, t): sgn[G.mul(s, G.inv(t))]
                                    for s, t in cb.bundle_domain(G, P)})
        assert any(cb.res_to_P(c).values())
        v = cb.validate_bundle(c)
        assert not v and v.condition == "normalization"


def test_exhaustive_s3_c3(S3_3):
    G, P, A = S3_3
    found = cb.enumerate_coherent_cocycles(G, P, 2)
    assert len(found) == 2 == A.torsion.torsion_order
    assert {tuple(c.transitions.values()) for c in found} == {
        tuple(cb.bundle_from_weakhom(u).transitions.values())
        for u in torsion_elements(A)}


@pytest.mark.parametrize("m", [2, 3, 4])
def test_exhaustive_counts_match_w(m):
    # one value per translation orbit, so keep the groups tiny
    for family, params, p in (("symmetric", (3,), 2), ("dihedral", (6,), 3),
                              ("cyclic", (6,), 2)):
        G = named_group(family, *params)
        P = sylow_subgroup(G, p)
        found = cb.enumerate_coherent_cocycles(G, P, m)
        assert len(found) == weakhom_group(G, P).W.count_homs_to_cyclic(m)


@pytest.mark.parametrize("spec,p", catalog_pairs())
def test_catalog_round_trip_and_domain(spec, p):
    a = Analysis(spec, p)
    G, P = a.group, a.sylow
    for u in torsion_elements(a.weakhoms):
        c = cb.bundle_from_weakhom(u)
        assert cb.weakhom_from_bundle(c) == u
    domain = set(cb.bundle_domain(G, P))
    cover = a.cover
    assert domain == {(s, t) for s in range(G.order) for t in range(G.order)
                      if cover.translate(s) & cover.translate(t)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_mutations_rejected(seed):
    a = Analysis("alt:4", 2)
    rng = random.Random(seed)
    (u,) = a.weakhoms.generators
    c = cb.bundle_from_weakhom(u)
    pair = rng.choice(sorted(c.transitions))
    delta = rng.randrange(1, c.modulus)
    v = cb.validate_bundle(c.with_entry(pair, c[pair] + delta))
    assert not v and v.witness is not None
