"""Parity between the compiled kernels and the pure-Python fallback, plus
brute-force oracles for the enumerator."""

import itertools
import random

import pytest

from zcverify import _kernels_py
from zcverify.constructions import cyclic_group, dihedral_group, quaternion_group

try:
    from zcverify import _speedups

    IMPLS = [("pure", _kernels_py), ("compiled", _speedups)]
except ImportError:
    _speedups = None
    IMPLS = [("pure", _kernels_py)]

needs_both = pytest.mark.skipif(_speedups is None, reason="compiled kernels unavailable")


@pytest.fixture(scope="module")
def groups():
    return [cyclic_group(12), quaternion_group(), dihedral_group(6)]


@pytest.mark.parametrize("name,impl", IMPLS)
def test_subgroup_closure(name, impl, groups):
    for G in groups:
        got = impl.subgroup_closure(G.table, [1], G.identity)
        want = sorted({G.power(1, k) for k in range(G.order)} | {G.inv(1)})
        # closure of a single element is its cyclic subgroup
        cyc = set()
        x = G.identity
        while True:
            cyc.add(x)
            x = G.mul(x, 1)
            if x == G.identity:
                break
        assert got == sorted(cyc)


@pytest.mark.parametrize("name,impl", IMPLS)
def test_class_ids_oracle(name, impl, groups):
    for G in groups:
        ids = impl.class_ids(G.table, G.inverse, G.identity)
        # brute-force conjugation oracle
        for g in range(G.order):
            orbit = {G.conj(g, t) for t in range(G.order)}
            assert {ids[h] for h in orbit} == {ids[g]}
        assert ids[G.identity] == 0


@pytest.mark.parametrize("name,impl", IMPLS)
def test_associativity_check(name, impl):
    G = dihedral_group(4)
    assert impl.associativity_violations(G.table) == 0
    bad = [list(row) for row in G.table]
    bad[1][2] = (bad[1][2] + 1) % G.order
    assert impl.associativity_violations(bad, limit=1) == 1


@pytest.mark.parametrize("name,impl", IMPLS)
def test_xset_yset_oracle(name, impl):
    G = dihedral_group(6)
    K = [0, 3]  # a subgroup of the rotation part (order 2)
    kelems = sorted(
        set(
            itertools.chain.from_iterable(
                [[a, G.mul(a, b)] for a in K for b in K]
            )
        )
    )
    kmask = bytearray(G.order)
    for k in kelems:
        kmask[k] = 1
    for g in (1, 4, 7):
        for h in (0, 2, 5):
            got = impl.xset_size(G.table, G.inverse, g, h, bytes(kmask))
            want = sum(
                1
                for t in range(G.order)
                if kmask[G.mul(G.inv(h), G.conj(g, t))]
            )
            assert got == want
            ys = impl.yset(G.table, G.inverse, g, h, bytes(kmask))
            gh = G.conj(g, h)
            want_y = sorted(
                {
                    G.comm(gh, G.mul(G.inv(h), x))
                    for x in range(G.order)
                }
                & {k for k in kelems}
            )
            assert ys == want_y


def _random_instance(rng, nvars):
    nrows = rng.randint(1, 3)
    rows = [[rng.randint(-3, 3) for _ in range(nvars)] for _ in range(nrows)]
    lo = [rng.randint(-4, 1) for _ in range(nrows)]
    hi = [l + rng.randint(0, 5) for l in lo]
    nmods = rng.randint(0, 2)
    mods = [[rng.randint(-2, 2) for _ in range(nvars)] for _ in range(nmods)]
    moffs = [rng.randint(0, 6) for _ in range(nmods)]
    modulus = rng.choice([2, 3, 4])
    return rows, lo, hi, mods, moffs, modulus


def _brute(nvars, bound, rows, lo, hi, mods, moffs, modulus):
    out = []
    for xs in itertools.product(range(-bound, bound + 1), repeat=nvars):
        ok = all(
            lo[r] <= sum(c * x for c, x in zip(rows[r], xs)) <= hi[r]
            for r in range(len(rows))
        )
        if ok:
            for q in range(len(mods)):
                v = moffs[q] + sum(c * x for c, x in zip(mods[q], xs))
                if v < 0 or v % modulus:
                    ok = False
                    break
        if ok:
            out.append(tuple(xs))
    return out


@pytest.mark.parametrize("name,impl", IMPLS)
def test_pa_enumerate_against_bruteforce(name, impl):
    rng = random.Random(7)
    for trial in range(40):
        nvars = rng.randint(1, 4)
        bound = rng.randint(1, 3)
        rows, lo, hi, mods, moffs, modulus = _random_instance(rng, nvars)
        sols, stats = impl.pa_enumerate(
            nvars, bound, lo, hi, rows, mods, moffs, modulus, 10**7
        )
        assert not stats["budget_exceeded"]
        assert sorted(sols) == _brute(nvars, bound, rows, lo, hi, mods, moffs, modulus)


@needs_both
def test_backend_parity_random():
    rng = random.Random(11)
    for trial in range(30):
        nvars = rng.randint(1, 5)
        bound = rng.randint(1, 3)
        rows, lo, hi, mods, moffs, modulus = _random_instance(rng, nvars)
        a = _kernels_py.pa_enumerate(nvars, bound, lo, hi, rows, mods, moffs, modulus, 10**7)
        b = _speedups.pa_enumerate(nvars, bound, lo, hi, rows, mods, moffs, modulus, 10**7)
        assert a[0] == b[0]
        assert a[1]["nodes"] == b[1]["nodes"]
        assert a[1]["leaves"] == b[1]["leaves"]
        assert a[1]["row_prunes"] == b[1]["row_prunes"]
        assert a[1]["mod_rejects"] == b[1]["mod_rejects"]


@needs_both
def test_backend_parity_group_scans():
    for G in (quaternion_group(), dihedral_group(6), cyclic_group(15)):
        assert _kernels_py.class_ids(G.table, G.inverse, G.identity) == _speedups.class_ids(
            G.table, G.inverse, G.identity
        )
        assert _kernels_py.subgroup_closure(G.table, [1, 2], G.identity) == (
            _speedups.subgroup_closure(G.table, [1, 2], G.identity)
        )
        assert _kernels_py.coset_ids(G.table, [G.identity]) == _speedups.coset_ids(
            G.table, [G.identity]
        )


@needs_both
def test_backend_parity_transporter():
    from zcverify.groups import subgroup_closure

    G = dihedral_group(4)
    cent = G.centralizer_sizes()
    for gen in range(1, 5):
        K = subgroup_closure(G, [gen])
        a = _kernels_py.transporter_violations(G.table, G.inverse, K.elements, cent)
        b = _speedups.transporter_violations(G.table, G.inverse, K.elements, cent)
        assert a == b == 0


def test_budget_flag():
    # unconstrained box forces a full scan; a tiny budget must be reported
    sols, stats = _kernels_py.pa_enumerate(6, 3, [], [], [], [], [], 2, 10)
    assert stats["budget_exceeded"]
