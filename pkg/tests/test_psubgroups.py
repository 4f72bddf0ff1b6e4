import pytest

from brownlab.catalog import catalog_pairs, parse_group_spec
from brownlab.permgroup import (conjugate_subgroup, generate, named_group, normalizer,
                                sylow_conjugates, sylow_subgroup)
from brownlab.psubgroups import (bouc_filter, enumerate_p_subgroups, is_elementary_abelian,
                                 largest_normal_p_subgroup, node_orbits, quillen_filter)


@pytest.fixture(scope="module")
def S4_2():
    return enumerate_p_subgroups(named_group("symmetric", 4), 2)


def all_p_subgroups_brute(G, p):
    """Every subgroup generated by at most two elements whose order is a power of p."""
    found = set()
    for a in range(G.order):
        for b in range(a, G.order):
            H = generate(G, [a, b])
            n = H.order
            while n % p == 0:
                n //= p
            if n == 1 and H.order > 1:
                found.add(H.members)
    return found


def test_s3_posets():
    S3 = named_group("symmetric", 3)
    P2 = enumerate_p_subgroups(S3, 2)
    assert len(P2) == 3 and not P2.less_than
    assert len(enumerate_p_subgroups(S3, 3)) == 1


def test_s4_counts(S4_2):
    assert len(S4_2) == 19
    assert S4_2.order_counts() == {2: 9, 4: 7, 8: 3}


@pytest.mark.parametrize("family,params,p", [
    ("symmetric", (4,), 2), ("alternating", (5,), 2), ("dihedral", (8,), 2),
    ("quaternion8", (), 2), ("dihedral", (12,), 2), ("alternating", (4,), 2),
])
def test_enumeration_matches_brute_force(family, params, p):
    # p-subgroups of these groups are all 2-generated
    G = named_group(family, *params)
    poset = enumerate_p_subgroups(G, p)
    assert {Q.members for Q in poset.nodes} == all_p_subgroups_brute(G, p)


def test_quillen_filter(S4_2):
    A = quillen_filter(S4_2)
    assert len(A) == 13 and A.order_counts() == {2: 9, 4: 4}
    assert len(quillen_filter(enumerate_p_subgroups(named_group("symmetric", 3), 3))) == 1
    C4 = quillen_filter(enumerate_p_subgroups(named_group("cyclic", 4), 2))
    assert len(C4) == 1 and C4.nodes[0].order == 2


def test_bouc_filter(S4_2):
    B = bouc_filter(S4_2)
    assert B.order_counts() == {4: 1, 8: 3}
    S3 = named_group("symmetric", 3)
    assert len(bouc_filter(enumerate_p_subgroups(S3, 3))) == 1
    assert len(bouc_filter(enumerate_p_subgroups(S3, 2))) == 3


def test_orbits(S4_2):
    S3 = named_group("symmetric", 3)
    assert [len(o) for o in node_orbits(enumerate_p_subgroups(S3, 2))] == [3]
    assert sorted(len(o) for o in node_orbits(S4_2)) == [1, 3, 3, 3, 3, 6]
    C3 = enumerate_p_subgroups(S3, 3)
    assert [len(o) for o in node_orbits(C3)] == [1]


def test_largest_normal_p_subgroup():
    S4 = named_group("symmetric", 4)
    O2 = largest_normal_p_subgroup(S4.whole(), 2)
    assert O2.order == 4
    assert largest_normal_p_subgroup(named_group("alternating", 5).whole(), 2).order == 1


@pytest.mark.parametrize("spec,p", catalog_pairs())
def test_poset_invariants(spec, p):
    G = parse_group_spec(spec)
    poset = enumerate_p_subgroups(G, p)
    nodes = poset.nodes
    # action is conjugation and preserves order and inclusion
    for i, Q in enumerate(nodes):
        for g in G.generators:
            assert nodes[poset.action[i][g]] == conjugate_subgroup(Q, g)
    for i, j in poset.less_than:
        assert nodes[i].issubset(nodes[j]) and nodes[i].order < nodes[j].order
        for g in G.generators:
            assert (poset.action[i][g], poset.action[j][g]) in poset.less_than
    # filters
    for Q in quillen_filter(poset).nodes:
        assert is_elementary_abelian(Q, p)
    sylows = {S.members for S in sylow_conjugates(G, sylow_subgroup(G, p))}
    bouc = bouc_filter(poset)
    assert sylows <= {Q.members for Q in bouc.nodes}
    for Q in bouc.nodes:
        assert largest_normal_p_subgroup(normalizer(G, Q), p) == Q
    # filtered posets are G-stable
    for F in (quillen_filter(poset), bouc):
        keys = {Q.members for Q in F.nodes}
        for Q in F.nodes:
            for g in G.generators:
                assert conjugate_subgroup(Q, g).members in keys


def test_prime_not_dividing():
    poset = enumerate_p_subgroups(named_group("symmetric", 3), 5)
    assert poset.empty and len(poset) == 0
