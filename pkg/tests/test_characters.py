from fractions import Fraction

import pytest

from zcverify.characters import (
    abelian_subgroup_lattice,
    corefree_cyclic_kernels,
    count_exponent_elements,
    cyclic_quotient_subgroups,
    default_character_set,
    induce,
    linear_character,
    linear_characters_of_group,
    transporter_sets,
    xset_size,
)
from zcverify.constructions import (
    abelian_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
)
from zcverify.groups import (
    GroupError,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    conjugacy_classes,
    subgroup_closure,
)


def full(G):
    return Subgroup(G, range(G.order))


def test_lattice_counts():
    assert len(abelian_subgroup_lattice(full(cyclic_group(7)))) == 2
    assert len(abelian_subgroup_lattice(full(abelian_group([2, 2])))) == 5
    assert len(abelian_subgroup_lattice(full(cyclic_group(4)))) == 3


def test_lattice_requires_abelian(s3):
    with pytest.raises(GroupError):
        abelian_subgroup_lattice(full(s3))


def test_corefree_kernels_examples():
    C4 = cyclic_group(4)
    ks = corefree_cyclic_kernels(C4, full(C4))
    assert [K.order for K in ks] == [1]
    assert len(ks) == 1 == 4 // C4.exponent()

    Q8 = quaternion_group()
    Z = center(Q8)
    assert [K.order for K in corefree_cyclic_kernels(Q8, Z)] == [1]


def test_corefree_kernels_index_is_exponent(corpus24):
    from zcverify.groups import abelian_normal_subgroups

    for e in corpus24:
        G = e.group
        for N in abelian_normal_subgroups(G):
            exp_n = 1
            for x in N.elements:
                o = G.order_of(x)
                exp_n = exp_n * o // __import__("math").gcd(exp_n, o)
            ks = corefree_cyclic_kernels(G, N)
            assert len(ks) <= N.order // exp_n
            for K in ks:
                assert N.order // K.order == exp_n


def test_count_exponent_elements():
    N = full(abelian_group([2, 4]))
    assert count_exponent_elements(N, 2, 2) == (4, 4)
    Np = full(cyclic_group(5))
    assert count_exponent_elements(Np, 5, 1) == (4, 4)
    N99 = full(abelian_group([9, 9]))
    assert count_exponent_elements(N99, 3, 2) == (72, 72)
    with pytest.raises(GroupError):
        count_exponent_elements(full(cyclic_group(6)), 2, 1)


def test_count_exponent_elements_on_corpus(corpus24):
    # closed form equals brute force for every abelian p-subgroup encountered
    from zcverify.groups import abelian_normal_subgroups, sylow_subgroup
    from zcverify.numutil import p_part, prime_divisors

    for e in corpus24:
        G = e.group
        for N in abelian_normal_subgroups(G):
            if N.order == 1:
                continue
            for p in prime_divisors(N.order):
                pelems = [x for x in N.elements if G.order_of(x) == p_part(G.order_of(x), p)]
                P = Subgroup(G, pelems)
                exp_p = max(G.order_of(x) for x in P.elements)
                k = 0
                while p**k < exp_p:
                    k += 1
                closed, brute = count_exponent_elements(P, p, k)
                assert closed == brute


def test_linear_character_examples():
    C4 = cyclic_group(4)
    N = full(C4)
    trivial = linear_character(N, N)
    assert all(trivial.values[x].as_integer() == 1 for x in N.elements)

    C2 = cyclic_group(2)
    sign = linear_character(full(C2), subgroup_closure(C2, [0]))
    assert sign.values[1].as_integer() == -1

    K1 = subgroup_closure(C4, [0])
    faithful = linear_character(N, K1)
    assert faithful.conductor == 4
    from zcverify.cyclotomic import zeta

    assert faithful.values[1] == zeta(4)


def test_linear_character_rejects_noncyclic_quotient():
    V = abelian_group([2, 2])
    with pytest.raises(GroupError):
        linear_character(full(V), subgroup_closure(V, [0]))


def test_induce_s3(s3):
    orders = s3.element_orders()
    three = next(g for g in range(6) if orders[g] == 3)
    N = subgroup_closure(s3, [three])
    psi = linear_character(N, subgroup_closure(s3, [s3.identity]))
    chi = induce(psi, s3)
    assert chi.degree == 2
    ids = s3.class_index()
    assert chi.value_on_class(ids[three]).as_integer() == -1
    assert chi.value_on_class(ids[s3.identity]).as_integer() == 2
    # class-constancy of the defining sum
    for cls in conjugacy_classes(s3):
        expect = chi.value_on_class(ids[cls.representative])
        for member in cls.members:
            total = sum(
                (psi.values[s3.conj(member, s3.inv(x))]
                 for x in range(6)
                 if N.mask[s3.conj(member, s3.inv(x))]),
                __import__("zcverify.cyclotomic", fromlist=["CyclotomicNumber"]).CyclotomicNumber.rational(0),
            )
            assert total * Fraction(1, N.order) == expect


def test_induce_trivial_character():
    C6 = cyclic_group(6)
    N = Subgroup(C6, range(6))
    # trivial character of the full group induces to itself (degree 1)
    psi = linear_character(N, N)
    chi = induce(psi, C6)
    assert chi.degree == 1
    assert all(v.as_integer() == 1 for v in chi.class_values)


def test_values_match_exponent_multisets(corpus24):
    from zcverify.cyclotomic import CyclotomicNumber

    for e in corpus24[:8]:
        for chi in default_character_set(e.group):
            for v, exps in zip(chi.class_values, chi.class_exponents):
                rebuilt = CyclotomicNumber.from_exponents(
                    chi.conductor, [(k, 1) for k in exps]
                )
                assert rebuilt == v


def test_linear_characters_count(s3):
    # number of degree-1 characters is the abelianization order
    assert len(linear_characters_of_group(s3)) == 2
    Q8 = quaternion_group()
    assert len(linear_characters_of_group(Q8)) == 4
    C6 = cyclic_group(6)
    assert len(linear_characters_of_group(C6)) == 6


def test_transporter_sets_examples(s3):
    orders = s3.element_orders()
    three = next(g for g in range(6) if orders[g] == 3)
    K1 = subgroup_closure(s3, [s3.identity])
    # K trivial, h in g^G: |X| = |C_G(g)|
    h = s3.conj(three, 1)
    ts = transporter_sets(s3, K1, three, h)
    assert len(ts.x_set) == centralizer(s3, [three]).order
    # K trivial, h outside the class: X empty
    t = next(g for g in range(6) if orders[g] == 2)
    ts = transporter_sets(s3, K1, three, t)
    assert ts.x_set == ()


def test_transporter_multiple_law(corpus24):
    # |X| is a multiple of |C_G(g)| and |X| <= |C_G(g)| |Y| with x in X
    for e in corpus24[:6]:
        G = e.group
        for K in all_subgroups(G)[:5]:
            for g in range(0, G.order, max(1, G.order // 4)):
                for h in range(0, G.order, max(1, G.order // 4)):
                    ts = transporter_sets(G, K, g, h)
                    cg = centralizer(G, [g]).order
                    assert len(ts.x_set) % cg == 0
                    for x in ts.x_set[:3]:
                        tx = transporter_sets(G, K, g, x)
                        assert len(ts.x_set) <= cg * len(tx.y_set)


def test_xset_size_matches_sets(s3):
    K = subgroup_closure(s3, [next(g for g in range(6) if s3.element_orders()[g] == 3)])
    for g in range(6):
        for h in range(6):
            assert xset_size(s3, K, g, h) == len(transporter_sets(s3, K, g, h).x_set)


def test_default_character_set_shapes(corpus24):
    for e in corpus24[:10]:
        G = e.group
        chars = default_character_set(G)
        assert chars, e.entry_id
        nclasses = len(conjugacy_classes(G))
        for chi in chars:
            assert len(chi.class_values) == nclasses
            ident = G.class_index()[G.identity]
            assert chi.class_values[ident].as_integer() == chi.degree
