import itertools

import pytest
from hypothesis import given, settings, strategies as st

from brownlab.errors import OrderCapExceeded, ParseError
from brownlab.permgroup import (Permutation, Subgroup, conjugate_subgroup, generate,
                                group_from_generators, is_strongly_p_embedded,
                                named_group, normalizer, p_part, parse_permutation,
                                sylow_conjugates, sylow_subgroup, subgroup_intersection)


def perm(text, degree):
    return parse_permutation(text, degree)


def sub(G, *texts):
    return generate(G, [G.index(perm(t, G.degree)) for t in texts])


@pytest.fixture(scope="module")
def S3():
    return named_group("symmetric", 3)


@pytest.fixture(scope="module")
def S4():
    return named_group("symmetric", 4)


@pytest.fixture(scope="module")
def A5():
    return named_group("alternating", 5)


class TestParse:
    def test_cycle(self):
        assert perm("(1 2 3)", 4).images == (1, 2, 0, 3)

    def test_identity(self):
        p = perm("()", 3)
        assert p.images == (0, 1, 2) and p.is_identity()

    def test_product_of_cycles(self):
        assert perm("(1 2)(3 4)", 4).images == (1, 0, 3, 2)

    def test_round_trip_text(self):
        assert str(perm("(1 3)(2 4 5)", 5)) == "(1 3)(2 4 5)"
        assert str(perm("()", 2)) == "()"

    @pytest.mark.parametrize("text", ["(1 2", "(1 5)", "(1 1)", "(1 2)(2 3)", "(a b)", "(0 1)"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            perm(text, 4)


class TestGroups:
    def test_s3_from_generators(self):
        G = group_from_generators([perm("(1 2)", 3), perm("(1 2 3)", 3)])
        assert G.order == 6

    def test_empty_generators(self):
        G = group_from_generators([], degree=5)
        assert G.order == 1 and G.degree == 5

    def test_a5_from_generators(self):
        G = group_from_generators([perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)])
        assert G.order == 60

    @pytest.mark.parametrize("family,params,order", [
        ("symmetric", (4,), 24), ("alternating", (5,), 60), ("cyclic", (7,), 7),
        ("dihedral", (8,), 8), ("dihedral", (12,), 12), ("quaternion8", (), 8),
    ])
    def test_named_orders(self, family, params, order):
        assert named_group(family, *params).order == order

    def test_dihedral_8_on_4_points(self):
        assert named_group("dihedral", 8).degree == 4

    def test_direct_product(self):
        G = named_group("directProduct", named_group("dihedral", 8), named_group("cyclic", 3))
        assert G.order == 24

    def test_q8_structure(self):
        Q = named_group("quaternion8")
        orders = sorted(Q.element_orders)
        assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
        assert not Q.is_abelian()

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            named_group("symmetric", 6, max_order=100)

    def test_cap_env(self, monkeypatch):
        monkeypatch.setenv("BROWNLAB_MAX_ORDER", "50")
        with pytest.raises(OrderCapExceeded):
            named_group("alternating", 5)

    def test_identity_first(self, S4):
        assert S4.elements[0].is_identity() and S4.identity == 0

    def test_right_action(self, S3):
        # a * b applies a first
        a, b = perm("(1 2)", 3), perm("(1 2 3)", 3)
        assert (a * b).images == tuple(b.images[a.images[i]] for i in range(3))


class TestSubgroups:
    def test_sylow_s4(self, S4):
        assert sylow_subgroup(S4, 2).order == 8

    def test_sylow_s3(self, S3):
        P = sylow_subgroup(S3, 3)
        assert P == sub(S3, "(1 2 3)")

    def test_sylow_a5_is_klein(self, A5):
        P = sylow_subgroup(A5, 2)
        assert P.order == 4 and P.is_abelian()
        assert all(A5.element_orders[g] in (1, 2) for g in P)

    def test_normalizer_examples(self, S3):
        assert normalizer(S3, sub(S3, "(1 2 3)")).order == 6
        C2 = sub(S3, "(1 2)")
        assert normalizer(S3, C2) == C2
        assert normalizer(S3, S3.whole()) == S3.whole()

    def test_conjugate(self, S3):
        g = S3.index(perm("(1 2 3)", 3))
        assert conjugate_subgroup(sub(S3, "(1 2)"), g) == sub(S3, "(2 3)")
        H = sub(S3, "(1 3)")
        assert conjugate_subgroup(H, S3.identity) == H
        C3 = sub(S3, "(1 2 3)")
        assert all(conjugate_subgroup(C3, x) == C3 for x in range(6))

    def test_intersections(self, S3, S4):
        assert subgroup_intersection(sub(S3, "(1 2)"), sub(S3, "(1 3)")).order == 1
        sylows = sylow_conjugates(S4, sylow_subgroup(S4, 2))
        assert len(sylows) == 3
        klein = sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
        for P, Q in itertools.combinations(sylows, 2):
            assert subgroup_intersection(P, Q) == klein
        assert subgroup_intersection(klein, klein) == klein

    def test_strongly_embedded(self, A5, S3):
        N = normalizer(A5, sylow_subgroup(A5, 2))
        assert N.order == 12 and is_strongly_p_embedded(A5, N, 2)
        assert not is_strongly_p_embedded(S3, sylow_subgroup(S3, 3), 3)
        assert is_strongly_p_embedded(S3, S3.whole(), 3)

    def test_as_group_is_cached(self, S4):
        P = sylow_subgroup(S4, 2)
        H, emb = P.as_group()
        assert H.order == 8 and P.as_group()[0] is H
        assert all(S4.elements[e] == h for e, h in zip(emb, H.elements))


def brute_sylow_count(G, p):
    """Sylow subgroups found by closing every subset-generated subgroup (tiny groups)."""
    target = p_part(G.order, p)
    found = set()
    for a in range(G.order):
        for b in range(G.order):
            H = generate(G, [a, b])
            if H.order == target:
                found.add(H.members)
    return len(found)


@pytest.mark.parametrize("spec,p", [(("symmetric", 4), 2), (("symmetric", 4), 3),
                                    (("alternating", 4), 2), (("dihedral", 12), 2),
                                    (("dihedral", 12), 3)])
def test_sylow_conjugates_against_brute_force(spec, p):
    G = named_group(*spec)
    # every Sylow of these groups is 2-generated
    assert len(sylow_conjugates(G, sylow_subgroup(G, p))) == brute_sylow_count(G, p)


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)), st.permutations(range(5)))
def test_permutation_group_laws(a, b, c):
    a, b, c = Permutation(tuple(a)), Permutation(tuple(b)), Permutation(tuple(c))
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Permutation.identity(5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 23), min_size=1, max_size=3))
def test_generated_subgroups_closed_and_divide(gens):
    G = named_group("symmetric", 4)
    H = generate(G, gens)
    assert H.is_closed() and G.order % H.order == 0
    assert isinstance(H, Subgroup)
