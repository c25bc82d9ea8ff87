import pytest

from zcverify.constructions import (
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    semidirect,
    SemidirectSpec,
    _q8_spec,
)
from zcverify.groups import (
    Subgroup,
    centralizer,
    image_order_in_quotient,
    normal_subgroups,
    subgroup_closure,
    trivial_subgroup,
)
from zcverify.lemmas import (
    _default_abelian_core,
    build_bound_context,
    check_centralizer_nilpotency,
    check_class_fusion,
    check_coset_bounds,
    check_hall_properties,
    check_odd_commutators,
    hamiltonian_setting,
    is_cyclic_by_abelian,
    run_lemma_suite,
    scan_counterexample_shape,
    shape_exclusion_conditions,
    verify_count_identity,
)


def c3_in(s3):
    orders = s3.element_orders()
    three = next(g for g in range(6) if orders[g] == 3)
    return subgroup_closure(s3, [three])


def test_centralizer_nilpotency_s3(s3):
    v = check_centralizer_nilpotency(s3, c3_in(s3))
    assert v.hypotheses_hold and v.conclusion_holds


def test_centralizer_nilpotency_q8xc3():
    G = direct_product(quaternion_group(), cyclic_group(3))
    A = next(N for N in normal_subgroups(G) if N.is_cyclic() and N.order == 3)
    v = check_centralizer_nilpotency(G, A)
    assert v.hypotheses_hold and v.conclusion_holds


def test_centralizer_nilpotency_gating(s3):
    # control: trivial witness makes G/A = S3 non-nilpotent
    v = check_centralizer_nilpotency(s3, trivial_subgroup(s3))
    assert not v.hypotheses_hold and v.conclusion_holds is None


def test_hall_properties(s3):
    v = check_hall_properties(s3, c3_in(s3))
    assert v.hypotheses_hold and v.conclusion_holds
    G, A = semidirect(SemidirectSpec(n=3, complement=cyclic_group(4), action=(1, 2, 1, 2)))
    v = check_hall_properties(G, A)
    assert v.hypotheses_hold and v.conclusion_holds


def test_hall_gating_non_hall():
    # base not a Hall subgroup: gate out
    G, A = semidirect(SemidirectSpec(n=4, complement=cyclic_group(2), action=(1, 3)))
    v = check_hall_properties(G, A)
    assert not v.hypotheses_hold


def test_class_fusion_pattern_i():
    G, A = semidirect(SemidirectSpec(n=3, complement=cyclic_group(4), action=(1, 2, 1, 2)))
    outside = [g for g in range(G.order) if not centralizer(G, A.elements).mask[g]]
    v = check_class_fusion(G, outside[0], A=A)
    assert v.hypotheses_hold and v.conclusion_holds


def test_class_fusion_trivial_n(s3):
    v = check_class_fusion(s3, 1, N=trivial_subgroup(s3))
    assert v.hypotheses_hold and v.conclusion_holds


def test_class_fusion_pattern_ii():
    # search for a qualifying pair in a Hamiltonian extension
    G, A = semidirect(_q8_spec(4, 3, 3))
    found = None
    for g in range(G.order):
        for h in range(G.order):
            c = G.comm(g, h)
            if c == G.identity:
                continue
            N = subgroup_closure(G, [c])
            if not N.is_normal() or G.comm(c, g) != G.identity:
                continue
            if all(G.comm(G.comm(g, t), h) == G.identity for t in range(G.order)):
                found = (g, h)
                break
        if found:
            break
    assert found is not None
    v = check_class_fusion(G, found[0], partner=found[1])
    assert v.hypotheses_hold and v.conclusion_holds


def test_odd_commutators():
    G, A = semidirect(_q8_spec(3, 2, 2))  # C3 x| Q8, order 24
    v = check_odd_commutators(G, A)
    assert v.hypotheses_hold and v.conclusion_holds
    v = check_odd_commutators(G, trivial_subgroup(G))
    assert not v.hypotheses_hold


def test_count_identity_s3(s3):
    A = c3_in(s3)
    D = _default_abelian_core(s3, A)
    orders = s3.element_orders()
    t = next(g for g in range(6) if orders[g] == 2)
    f = image_order_in_quotient(s3, t, D)
    v = verify_count_identity(s3, D, t, s3.identity, f)
    assert v.hypotheses_hold and v.conclusion_holds
    assert v.witnesses["lhs"] == v.witnesses["rhs"] == 2


def test_count_identity_nonzero_x():
    # even dihedral: x = the central involution of the rotation part
    G = dihedral_group(6)
    A = next(N for N in normal_subgroups(G) if N.is_cyclic() and N.order == 6)
    D = _default_abelian_core(G, A)
    refl = next(
        g for g in range(G.order) if not D.mask[g] and G.order_of(g) == 2
    )
    f = image_order_in_quotient(G, refl, D)
    x = next(x for x in D.elements if G.order_of(x) == 2)
    v = verify_count_identity(G, D, refl, x, f)
    assert v.hypotheses_hold and v.conclusion_holds
    assert v.witnesses["lhs"] != 0


def test_count_identity_gates():
    s3 = dihedral_group(3)
    A = next(N for N in normal_subgroups(s3) if N.is_cyclic() and N.order == 3)
    D = _default_abelian_core(s3, A)
    inside = D.elements[1]
    v = verify_count_identity(s3, D, inside, s3.identity, 1)
    assert not v.hypotheses_hold and v.conclusion_holds is None
    # wrong f gates too
    refl = next(g for g in range(6) if not D.mask[g])
    v = verify_count_identity(s3, D, refl, s3.identity, 4)
    assert not v.hypotheses_hold


def test_count_identity_exhaustive_q8xc3():
    G = direct_product(quaternion_group(), cyclic_group(3))
    A = next(N for N in normal_subgroups(G) if N.is_cyclic() and N.order == 3)
    D = _default_abelian_core(G, A)
    checked = 0
    for u in range(G.order):
        if D.mask[u]:
            continue
        f = image_order_in_quotient(G, u, D)
        m = G.order_of(u)
        for x in D.elements:
            if G.power(x, m) != G.identity:
                continue
            v = verify_count_identity(G, D, u, x, f)
            assert v.hypotheses_hold and v.conclusion_holds, v.witnesses
            checked += 1
    assert checked >= 50


def test_is_cyclic_by_abelian():
    assert is_cyclic_by_abelian(dihedral_group(5))
    assert is_cyclic_by_abelian(quaternion_group())
    G, _ = semidirect(_q8_spec(8, 3, 5))
    assert not is_cyclic_by_abelian(G)


def test_hamiltonian_setting_and_bounds():
    G, A = semidirect(_q8_spec(8, 3, 5))
    st = hamiltonian_setting(G, A)
    assert st["valid"] and st["nu_candidates"]
    fs = sorted(
        {image_order_in_quotient(G, g, st["D"]) for g in range(G.order) if not st["D"].mask[g]}
    )
    for f in fs:
        for x in st["D"].elements[:4]:
            ctx = build_bound_context(G, A, x, f)
            v = check_coset_bounds(ctx)
            assert v.ok(), v.witnesses
            assert v.hypotheses_hold


def test_bound_context_factorization():
    G, A = semidirect(_q8_spec(4, 3, 3))
    ctx = build_bound_context(G, A, A.elements[1], 2)
    assert ctx.f == ctx.f_local * ctx.f_coprime
    from math import gcd

    assert gcd(ctx.f_coprime, ctx.D.order) == 1
    assert ctx.B.order == gcd(ctx.f, ctx.n)


def test_shape_scan_none_cases():
    # odd base order: 8 does not divide |A|
    G = direct_product(quaternion_group(), cyclic_group(3))
    A = next(N for N in normal_subgroups(G) if N.is_cyclic() and N.order == 3)
    assert scan_counterexample_shape(G, A) is None
    # order-64 entries: exclusion condition 2 always holds for split cases
    G, A = semidirect(_q8_spec(8, 3, 5))
    assert scan_counterexample_shape(G, A) is None
    excl = shape_exclusion_conditions(G, A)
    assert excl.index_not_multiple_of_16
    assert not excl.base_not_multiple_of_8
    assert excl.action_image_order == 4


def test_shape_exclusion_examples():
    # |A| = 12: condition (1) holds since 8 does not divide 12
    G, A = semidirect(SemidirectSpec(n=12, complement=cyclic_group(2), action=(1, 11)))
    excl = shape_exclusion_conditions(G, A)
    assert excl.base_not_multiple_of_8
    # [G:A] = 2 is not a multiple of 16
    assert excl.index_not_multiple_of_16
    assert excl.action_image_order in (1, 2, 4)


def test_run_lemma_suite_clean(corpus24):
    records = run_lemma_suite(corpus24[:25], eq41_samples=3)
    bad = [r for r in records if r["hypotheses_hold"] and r["conclusion_holds"] is False]
    assert not bad
    assert any(not r["hypotheses_hold"] for r in records)  # controls gate
