import json

import pytest

from zcverify.constructions import (
    CorpusEntry,
    SemidirectSpec,
    abelian_group,
    build_corpus,
    corpus_from_manifest,
    corpus_manifest,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    hamiltonian,
    quaternion_group,
    semidirect,
    witness_subgroup,
    _fingerprint,
)
from zcverify.groups import (
    GroupError,
    centralizer,
    conjugacy_classes,
    closure,
    derived_subgroup,
    is_hamiltonian,
    is_nilpotent,
    quotient,
    structure_report,
)


def test_semidirect_order6_matches_closure(s3):
    spec = SemidirectSpec(n=3, complement=cyclic_group(2), action=(1, 2))
    G, A = semidirect(spec)
    assert G.order == 6 and A.order == 3
    assert _fingerprint(G) == _fingerprint(s3)


def test_semidirect_trivial_complement():
    G, A = semidirect(SemidirectSpec(n=5, complement=cyclic_group(1), action=(1,)))
    assert G.order == 5 and A.order == 5
    assert G.is_abelian()


def test_semidirect_q8_action_order64():
    from zcverify.constructions import _q8_spec

    G, A = semidirect(_q8_spec(8, 3, 5))
    assert G.order == 64 and A.order == 8
    Q = quotient(G, A).target
    assert is_hamiltonian(Q)
    # the action image is the full unit group mod 8
    exps = set()
    a = A.generator()
    for g in range(G.order):
        x, k = G.conj(a, g), 0
        y = G.identity
        while y != x:
            y = G.mul(y, a)
            k += 1
        exps.add(k % 8)
    assert exps == {1, 3, 5, 7}


def test_semidirect_rejects_non_homomorphism():
    with pytest.raises(GroupError):
        semidirect(SemidirectSpec(n=5, complement=cyclic_group(2), action=(1, 2)))
    with pytest.raises(GroupError):
        semidirect(SemidirectSpec(n=6, complement=cyclic_group(2), action=(1, 2)))


def test_semidirect_deterministic():
    spec = SemidirectSpec(n=6, complement=cyclic_group(2), action=(1, 5))
    G1, _ = semidirect(spec)
    G2, _ = semidirect(spec)
    assert (G1.table == G2.table).all()


def test_hamiltonian_builder():
    Q8 = hamiltonian([], 0)
    assert Q8.order == 8 and structure_report(Q8).is_hamiltonian
    G24 = hamiltonian([3], 0)
    assert G24.order == 24 and structure_report(G24).is_hamiltonian
    G16 = hamiltonian([], 1)
    assert G16.order == 16 and structure_report(G16).is_hamiltonian
    with pytest.raises(GroupError):
        hamiltonian([4], 0)


def test_dicyclic_is_quaternion():
    assert _fingerprint(dicyclic_group(2)) == _fingerprint(quaternion_group())
    G12 = dicyclic_group(3)
    assert G12.order == 12
    assert not G12.is_abelian()


def test_corpus_small():
    entries = build_corpus(8)
    ids = [e.entry_id for e in entries]
    assert "trivial" in ids
    # C3 x| C2 tagged cyclic-by-p
    s3_like = [e for e in entries if e.order == 6 and e.family == "cyclic-by-p"]
    assert s3_like
    # Q8 present, tagged cyclic-by-hamiltonian
    q8 = [e for e in entries if e.order == 8 and e.family == "cyclic-by-hamiltonian"]
    assert len(q8) == 1


def test_corpus_trivial_only_at_order_one():
    entries = build_corpus(1)
    assert len(entries) == 1 and entries[0].entry_id == "trivial"


def test_corpus_tags_verified(corpus24):
    for e in corpus24:
        A = e.witness
        G = e.group
        assert A.is_cyclic() and A.is_normal()
        Q = quotient(G, A).target
        if e.family == "cyclic-by-p":
            assert Q.order == 1 or is_nilpotent(Q)
        elif e.family == "cyclic-by-abelian":
            assert Q.is_abelian()
        elif e.family == "cyclic-by-hamiltonian":
            assert is_hamiltonian(Q)


def test_corpus_commutators_centralize_base(corpus24):
    # nilpotent-quotient entries: every commutator centralizes the base
    for e in corpus24:
        if e.family not in ("cyclic-by-p", "cyclic-by-abelian"):
            continue
        G = e.group
        A = e.witness
        Gp = derived_subgroup(G)
        for c in Gp.elements:
            for a in A.elements:
                assert G.comm(c, a) == G.identity


def test_corpus_has_acceptance_groups(corpus64):
    ids = {e.entry_id for e in corpus64}
    assert {"c3_by_c2_t2", "c1_by_q8_s0_t0", "c3_by_c4_t2", "c5_by_c4_t2", "c3_by_q8_s1_t1"} <= ids
    assert any(i.startswith("c8_by_q8_s3") for i in ids)
    assert len(corpus64) >= 25


def test_witness_is_maximal(corpus24):
    from zcverify.groups import normal_subgroups

    for e in corpus24[:12]:
        if e.family == "control":
            continue
        G, A = e.group, e.witness
        better = witness_subgroup(G, e.family)
        assert better.order == A.order


def test_manifest_round_trip(corpus24):
    doc = corpus_manifest(corpus24, 24)
    text = json.dumps(doc)
    rebuilt = corpus_from_manifest(json.loads(text))
    assert len(rebuilt) == len(corpus24)
    for a, b in zip(corpus24, rebuilt):
        assert a.entry_id == b.entry_id
        assert (a.group.table == b.group.table).all()
        assert a.witness.elements == b.witness.elements


def test_direct_product_orders():
    G = direct_product(cyclic_group(4), cyclic_group(6))
    assert G.order == 24 and G.exponent() == 12
    assert G.is_abelian()
