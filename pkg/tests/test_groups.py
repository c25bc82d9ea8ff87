import numpy as np
import pytest

from zcverify.constructions import (
    abelian_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
)
from zcverify.groups import (
    CapExceededError,
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    centralizer,
    closure,
    conjugacy_classes,
    derived_subgroup,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    pi_parts,
    quotient,
    socle,
    structure_report,
    subgroup_closure,
    sylow_subgroup,
    trivial_subgroup,
)


def brute_classes(G):
    # independent oracle: orbit partition under exhaustive conjugation
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        orbit = {G.conj(g, t) for t in range(G.order)}
        seen |= orbit
        classes.append(frozenset(orbit))
    return set(classes)


def test_closure_single_three_cycle():
    G = closure([(1, 2, 0)])
    assert G.order == 3
    assert len(conjugacy_classes(G)) == 3  # cyclic, all singletons


def test_closure_s3(s3):
    assert s3.order == 6
    assert sorted(len(c) for c in conjugacy_classes(s3)) == [1, 2, 3]
    assert {frozenset(c.members) for c in conjugacy_classes(s3)} == brute_classes(s3)


def test_closure_empty():
    G = closure([])
    assert G.order == 1


def test_closure_rejects_non_bijection():
    with pytest.raises(GroupError):
        closure([(0, 0, 1)])


def test_closure_cap():
    with pytest.raises(CapExceededError):
        closure([tuple(range(1, 9)) + (0,)], cap=5)


def test_closure_in_ambient(s3):
    orders = s3.element_orders()
    three = next(g for g in range(6) if orders[g] == 3)
    H = closure([three], ambient=s3)
    assert H.order == 3


def test_identity_class_first(s3):
    classes = conjugacy_classes(s3)
    assert classes[0].representative == s3.identity
    assert len(classes[0]) == 1


def test_quaternion_classes():
    Q8 = quaternion_group()
    assert len(conjugacy_classes(Q8)) == 5
    assert {frozenset(c.members) for c in conjugacy_classes(Q8)} == brute_classes(Q8)


def test_class_size_times_centralizer(corpus24):
    for e in corpus24:
        G = e.group
        for c in conjugacy_classes(G):
            assert len(c) * c.centralizer_order == G.order


def test_centralizer_examples():
    Q8 = quaternion_group()
    assert centralizer(Q8, [Q8.identity]).order == 8
    i_elt = next(g for g in range(8) if Q8.order_of(g) == 4)
    assert centralizer(Q8, [i_elt]).order == 4
    # brute force cross-check
    want = [g for g in range(8) if Q8.mul(g, i_elt) == Q8.mul(i_elt, g)]
    assert list(centralizer(Q8, [i_elt]).elements) == want


def test_normalizer_full_group(s3):
    full = Subgroup(s3, range(6))
    assert normalizer(s3, full).order == 6
    orders = s3.element_orders()
    t = next(g for g in range(6) if orders[g] == 2)
    H = subgroup_closure(s3, [t])
    # normalizer of a 2-subgroup of S3 is itself
    assert normalizer(s3, H).elements == H.elements


def test_structure_report_quaternion():
    rep = structure_report(quaternion_group())
    assert rep.is_hamiltonian
    assert rep.center.order == 2
    assert rep.derived_subgroup.order == 2
    assert rep.exponent == 4
    assert not rep.is_abelian and rep.is_nilpotent


def test_structure_report_c12():
    rep = structure_report(cyclic_group(12))
    assert rep.exponent == 12
    assert rep.is_nilpotent and rep.is_abelian
    assert rep.socle.order == 6
    assert not rep.is_hamiltonian


def test_structure_report_trivial():
    rep = structure_report(cyclic_group(1))
    assert rep.center.order == 1
    assert rep.derived_subgroup.order == 1
    assert rep.socle.order == 1
    assert not rep.is_hamiltonian


def test_sylow(s3):
    assert sylow_subgroup(s3, 2).order == 2
    assert sylow_subgroup(s3, 3).order == 3
    G = direct_product(quaternion_group(), cyclic_group(3))
    assert sylow_subgroup(G, 2).order == 8
    assert sylow_subgroup(G, 3).order == 3


def test_quotient_examples():
    Q8 = quaternion_group()
    Z = structure_report(Q8).center
    qm = quotient(Q8, Z)
    assert qm.target.order == 4
    assert qm.target.exponent() == 2
    # trivial quotients
    assert quotient(Q8, trivial_subgroup(Q8)).target.order == 8
    assert quotient(Q8, Subgroup(Q8, range(8))).target.order == 1


def test_quotient_requires_normal(s3):
    orders = s3.element_orders()
    t = next(g for g in range(6) if orders[g] == 2)
    H = subgroup_closure(s3, [t])
    with pytest.raises(GroupError):
        quotient(s3, H)


def test_quotient_projects_classes(corpus24):
    # projection of a class equals the class of the projection, as sets
    for e in corpus24[:20]:
        G = e.group
        for N in normal_subgroups(G):
            if N.order in (1, G.order):
                continue
            qm = quotient(G, N)
            Q = qm.target
            for cls in conjugacy_classes(G)[:4]:
                image = {qm(x) for x in cls.members}
                qcls = Q.classes()[Q.class_index()[qm(cls.representative)]]
                assert image <= set(qcls.members)
            break


def test_pi_parts_examples():
    C6 = cyclic_group(6)
    gpi, gpi2 = pi_parts(C6, 1, {2})
    assert C6.order_of(gpi) == 2 and C6.order_of(gpi2) == 3
    assert C6.mul(gpi, gpi2) == 1
    assert pi_parts(C6, C6.identity, {5}) == (C6.identity, C6.identity)
    C4 = cyclic_group(4)
    assert pi_parts(C4, 1, {2}) == (1, C4.identity)


def test_pi_parts_property(corpus24):
    for e in corpus24[:12]:
        G = e.group
        for g in range(G.order):
            a, b = pi_parts(G, g, {2})
            assert G.mul(a, b) == g
            assert G.mul(a, b) == G.mul(b, a)
            assert G.order_of(a) & (G.order_of(a) - 1) == 0  # 2-power


def test_subgroup_lattice_counts():
    C4 = cyclic_group(4)
    assert len(all_subgroups(C4)) == 3
    V = abelian_group([2, 2])
    assert len(all_subgroups(V)) == 5
    Q8 = quaternion_group()
    assert len(all_subgroups(Q8)) == 6  # 1, Z, three C4s, Q8


def test_normal_subgroups_s3(s3):
    orders = sorted(N.order for N in normal_subgroups(s3))
    assert orders == [1, 3, 6]
    assert [N.order for N in minimal_normal_subgroups(s3)] == [3]
    assert socle(s3).order == 3


def test_hamiltonian_every_subgroup_normal():
    Q8 = quaternion_group()
    for H in all_subgroups(Q8):
        assert H.is_normal()
    D4 = dihedral_group(4)
    assert not structure_report(D4).is_hamiltonian


def test_derived_subgroup_abelian_quotient(corpus24):
    for e in corpus24[:15]:
        G = e.group
        Gp = derived_subgroup(G)
        assert quotient(G, Gp).target.is_abelian()
        # minimality: G/N abelian => G' <= N
        for N in normal_subgroups(G):
            if quotient(G, N).target.is_abelian():
                assert Gp <= N


def test_invalid_tables():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [0, 1]])  # not a latin square
    with pytest.raises(GroupError):
        FiniteGroup(np.zeros((2, 3), dtype=int))
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]  # latin square, not associative
    with pytest.raises(GroupError):
        FiniteGroup(bad)


def test_centralizer_lemma_on_corpus(corpus24):
    # cyclic normal base with nilpotent quotient: centralizer is nilpotent
    # and contains the derived subgroup (checked for every applicable entry)
    from zcverify.groups import is_nilpotent

    for e in corpus24:
        A = e.witness
        G = e.group
        if not (A.is_cyclic() and A.is_normal()):
            continue
        if not is_nilpotent(quotient(G, A).target):
            continue
        C = centralizer(G, A.elements)
        Cg = closure(C.elements, ambient=G)
        assert is_nilpotent(Cg)
        assert derived_subgroup(G) <= C
