"""Linear and induced characters of abelian normal subgroups, the corefree
cyclic-quotient kernel sets they are indexed by, and the coset-transporter
sets whose cardinalities drive the counting identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .cyclotomic import CyclotomicNumber
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_normal_subgroups,
    derived_subgroup,
    image_order_in_quotient,
    is_nilpotent,
    minimal_normal_subgroups,
    quotient,
    subgroup_closure,
)
from .numutil import factorize, p_part

__all__ = [
    "LinearCharacter",
    "InducedCharacter",
    "TransporterSets",
    "abelian_subgroup_lattice",
    "cyclic_quotient_subgroups",
    "corefree_cyclic_kernels",
    "count_exponent_elements",
    "linear_character",
    "induce",
    "transporter_sets",
    "linear_characters_of_group",
    "default_character_set",
]


# ---------------------------------------------------------------------------
# subgroup lattices of abelian groups


def abelian_subgroup_lattice(N: Subgroup) -> list[Subgroup]:
    """All subgroups of an abelian subgroup N, by join-closure of cyclic ones."""
    if not N.is_abelian():
        raise GroupError("subgroup is not abelian")
    G = N.group
    cyclics = {}
    for g in N.elements:
        H = subgroup_closure(G, [g])
        cyclics[H.elements] = H
    found = dict(cyclics)
    frontier = list(cyclics.values())
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclics.values():
                if C <= H:
                    continue
                J = subgroup_closure(G, H.elements + C.elements)
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


def cyclic_quotient_subgroups(N: Subgroup) -> list[Subgroup]:
    """Subgroups K <= N (abelian) with N/K cyclic."""
    out = []
    for K in abelian_subgroup_lattice(N):
        index = N.order // K.order
        if _quotient_is_cyclic(N, K, index):
            out.append(K)
    return out


def _quotient_is_cyclic(N: Subgroup, K: Subgroup, index: int) -> bool:
    G = N.group
    for g in N.elements:
        if image_order_in_quotient(G, g, K) == index:
            return True
    return False


def corefree_cyclic_kernels(G: FiniteGroup, N: Subgroup) -> list[Subgroup]:
    """Subgroups K <= N with N/K cyclic containing no non-trivial normal
    subgroup of G, straight from the definition.

    When N contains a cyclic normal A with G/A nilpotent, the computed set is
    cross-checked against the characterization {K : K cap A = K cap Z(G) = 1,
    N/K cyclic}; a mismatch raises (it would falsify the characterization).
    """
    if not N.is_abelian() or not N.is_normal():
        raise GroupError("kernel sets are defined for abelian normal subgroups")
    minimals = minimal_normal_subgroups(G)
    definitional = []
    for K in cyclic_quotient_subgroups(N):
        if any(M <= K for M in minimals):
            continue
        definitional.append(K)

    cross = _characterized_kernels(G, N)
    if cross is not None and [K.elements for K in cross] != [K.elements for K in definitional]:
        raise GroupError(
            "kernel-set characterization mismatch: "
            f"definitional {[K.elements for K in definitional]} vs "
            f"characterized {[K.elements for K in cross]}"
        )
    return definitional


def _characterized_kernels(G: FiniteGroup, N: Subgroup) -> list[Subgroup] | None:
    """The K cap A = K cap Z(G) = 1 characterization, applicable when some
    cyclic normal A <= N has nilpotent G/A; returns None when no A qualifies."""
    from .groups import center, normal_subgroups

    A = None
    for cand in normal_subgroups(G):
        if cand.is_cyclic() and cand <= N and is_nilpotent(quotient(G, cand).target):
            if A is None or cand.order > A.order:
                A = cand
    if A is None:
        return None
    Z = center(G)
    out = []
    for K in cyclic_quotient_subgroups(N):
        meets_a = sum(1 for x in K.elements if A.mask[x])
        meets_z = sum(1 for x in K.elements if Z.mask[x])
        if meets_a == 1 and meets_z == 1:
            out.append(K)
    return out


def count_exponent_elements(N: Subgroup, p: int, e: int) -> tuple[int, int]:
    """(closed-form, brute-force) count of elements of order p^e in an abelian
    p-group N of exponent p^e.

    The closed form is |N| - p^(l(e-1)) |Q| for N = P x Q with P the product
    of the l invariant factors of maximal order p^e; the decomposition is read
    off the order statistics, no complements are materialized.
    """
    if not N.is_abelian():
        raise GroupError("N must be abelian")
    orders = [N.group.order_of(x) for x in N.elements]
    if any(o != p_part(o, p) for o in orders):
        raise GroupError("N must be a p-group")
    if max(orders) != p**e:
        raise GroupError(f"N has exponent {max(orders)}, not p^{e}")
    # lambda_k = number of invariant factors of order >= p^k, from the counts
    # m_k = log_p |{x : x^(p^k) = 1}|.
    m = []
    k = 0
    while True:
        cnt = sum(1 for o in orders if p**k % o == 0)
        mk = 0
        while p**mk < cnt:
            mk += 1
        if p**mk != cnt:
            raise GroupError("order statistics not a p-power; N is not abelian p-group")
        m.append(mk)
        if cnt == N.order:
            break
        k += 1
    parts_ge = [m[i] - m[i - 1] for i in range(1, len(m))]
    l = parts_ge[e - 1] if len(parts_ge) >= e else 0
    q_order = N.order // p ** (e * l)
    closed = N.order - p ** (l * (e - 1)) * q_order
    brute = sum(1 for o in orders if o == p**e)
    return closed, brute


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class LinearCharacter:
    """Multiplicative character of an abelian subgroup N with kernel K."""

    domain: Subgroup
    kernel: Subgroup
    conductor: int  # [N : K]
    values: dict  # element index -> CyclotomicNumber
    exponents: dict  # element index -> k with value = zeta_conductor^k

    def __call__(self, g: int) -> CyclotomicNumber:
        return self.values[g]


@dataclass(frozen=True)
class InducedCharacter:
    """Class function of G induced from a linear character of a normal subgroup.

    Values are exact cyclotomic numbers; class_exponents carries each value as
    a multiset of root-of-unity exponents at `conductor` (the fast path for
    the trace tables in the filter engine).
    """

    base: LinearCharacter
    group: FiniteGroup
    degree: int
    conductor: int
    class_values: tuple  # CyclotomicNumber per conjugacy class id
    class_exponents: tuple  # tuple of exponent tuples per conjugacy class id
    name: str

    def value_on_class(self, class_id: int) -> CyclotomicNumber:
        return self.class_values[class_id]


def linear_character(N: Subgroup, K: Subgroup) -> LinearCharacter:
    """The pinned linear character of abelian N with kernel exactly K.

    The generator of N/K is pinned to the least element index whose image
    generates the quotient, so repeat runs produce identical characters.
    """
    if not N.is_abelian():
        raise GroupError("domain must be abelian")
    if not K <= N:
        raise GroupError("kernel must lie inside the domain")
    G = N.group
    c = N.order // K.order
    gen = None
    for g in N.elements:
        if image_order_in_quotient(G, g, K) == c:
            gen = g
            break
    if gen is None:
        raise GroupError("quotient N/K is not cyclic")
    # discrete log of each coset in powers of gen
    coset_log = {}
    x = G.identity
    for j in range(c):
        for k in K.elements:
            coset_log[G.mul(x, k)] = j
        x = G.mul(x, gen)
    values = {n: CyclotomicNumber.zeta(c, coset_log[n]) for n in N.elements}
    ch = LinearCharacter(domain=N, kernel=K, conductor=c, values=values, exponents=coset_log)
    kernel_elems = tuple(sorted(n for n in N.elements if coset_log[n] == 0))
    if kernel_elems != K.elements:
        raise GroupError("constructed character has the wrong kernel")
    return ch


def induce(psi: LinearCharacter, G: FiniteGroup) -> InducedCharacter:
    """Induced class function: value at g is (1/|N|) sum over x with x g x^-1
    in N of psi(x g x^-1); the degree is [G:N]."""
    N = psi.domain
    if N.group is not G:
        raise GroupError("character domain lives in a different group")
    if not N.is_normal():
        raise GroupError("induction here requires a normal domain")
    degree = G.order // N.order
    c = psi.conductor
    classes = G.classes()
    import numpy as np

    t = G.table
    rng = np.arange(G.order, dtype=np.int32)
    exp_arr = np.full(G.order, -1, dtype=np.int64)
    for n in N.elements:
        exp_arr[n] = psi.exponents[n]
    vals = []
    exps = []
    for cls in classes:
        g = cls.representative
        conj = exp_arr[t[t[rng, g], G.inverse[rng]]]  # exponent of x g x^-1, -1 outside N
        hits = conj[conj >= 0]
        counts = np.bincount(hits, minlength=c) if hits.size else np.zeros(c, dtype=np.int64)
        multiset = []
        for k in range(c):
            q, r = divmod(int(counts[k]), N.order)
            if r:
                raise GroupError("induction sum is not coset-constant")
            multiset.extend([k] * q)
        exps.append(tuple(multiset))
        vals.append(CyclotomicNumber.from_exponents(c, [(k, 1) for k in multiset]))
    ident_value = vals[G.class_index()[G.identity]].as_integer()
    if ident_value != degree:
        raise GroupError("induced character degree check failed")
    name = f"ind[N{N.order}:K{psi.kernel.order}@{psi.kernel.elements[:3]}]"
    return InducedCharacter(
        base=psi,
        group=G,
        degree=degree,
        conductor=c,
        class_values=tuple(vals),
        class_exponents=tuple(exps),
        name=name,
    )


def linear_characters_of_group(G: FiniteGroup) -> list[InducedCharacter]:
    """All degree-1 characters of G (lifted from G/G'), as class functions."""
    from math import gcd

    cached = G._cache.get("linear_characters")
    if cached is not None:
        return cached
    Gp = derived_subgroup(G)
    qm = quotient(G, Gp)
    Q = qm.target
    Qfull = Subgroup(Q, range(Q.order))
    out = []
    seen = set()
    exp = Q.exponent() if Q.order > 1 else 1
    class_images = [qm(cls.representative) for cls in G.classes()]
    for K in cyclic_quotient_subgroups(Qfull):
        psi0 = linear_character(Qfull, K)
        c = psi0.conductor
        # the characters with kernel exactly K are the primitive powers of psi0
        for j in range(1, c + 1):
            if gcd(j, c) != 1:
                continue
            class_exps = [(psi0.exponents[img] * j) % c for img in class_images]
            key = tuple((e * (exp // c)) % exp for e in class_exps)
            if key in seen:
                continue
            seen.add(key)
            vals = [CyclotomicNumber.zeta(c, e) for e in class_exps]
            kernel = Subgroup(
                G,
                [g for g in range(G.order) if class_exps[G.class_index()[g]] == 0],
            )
            base = LinearCharacter(domain=Subgroup(G, range(G.order)), kernel=kernel,
                                   conductor=c, values={}, exponents={})
            out.append(
                InducedCharacter(
                    base=base, group=G, degree=1, conductor=c,
                    class_values=tuple(vals),
                    class_exponents=tuple((e,) for e in class_exps),
                    name=f"lin[{len(out)}]",
                )
            )
    G._cache["linear_characters"] = out
    return out


def _character_key(ch: InducedCharacter, exp: int) -> tuple:
    """Dedup key: exponent multisets normalized to the group exponent."""
    step = exp // ch.conductor
    return (
        ch.degree,
        tuple(tuple(sorted((e * step) % exp for e in exps)) for exps in ch.class_exponents),
    )


def default_character_set(G: FiniteGroup) -> list[InducedCharacter]:
    """Linear characters of G plus every character induced from a linear
    character of an abelian normal subgroup, deduplicated."""
    cached = G._cache.get("default_characters")
    if cached is not None:
        return cached
    seen = set()
    keyed = []
    exp = G.exponent()
    for ch in linear_characters_of_group(G):
        key = _character_key(ch, exp)
        if key not in seen:
            seen.add(key)
            keyed.append(ch)
    for N in abelian_normal_subgroups(G):
        for K in cyclic_quotient_subgroups(N):
            psi = linear_character(N, K)
            ind = induce(psi, G)
            key = _character_key(ind, exp)
            if key not in seen:
                seen.add(key)
                keyed.append(ind)
    G._cache["default_characters"] = keyed
    return keyed


# ---------------------------------------------------------------------------
# transporter sets


@dataclass(frozen=True)
class TransporterSets:
    """X = { t : g^t in hK } and Y = { k in K : k = (g^h, h^-1 x), x in G }."""

    subgroup: Subgroup
    g: int
    h: int
    x_set: tuple[int, ...]
    y_set: tuple[int, ...]


def transporter_sets(G: FiniteGroup, K: Subgroup, g: int, h: int) -> TransporterSets:
    """Full-enumeration transporter sets, with the defining conditions rechecked."""
    kmask = K.mask
    xs = []
    hinv = G.inv(h)
    for t in range(G.order):
        if kmask[G.mul(hinv, G.conj(g, t))]:
            xs.append(t)
    ys = kernels.yset(G.table, G.inverse, g, h, kmask)
    gh = G.conj(g, h)
    for k in ys:
        assert kmask[k]
        found = any(G.comm(gh, G.mul(hinv, x)) == k for x in range(G.order))
        assert found, "transporter Y membership recheck failed"
    for t in xs:
        assert kmask[G.mul(hinv, G.conj(g, t))]
    return TransporterSets(subgroup=K, g=g, h=h, x_set=tuple(xs), y_set=tuple(ys))


def xset_size(G: FiniteGroup, K: Subgroup, g: int, h: int) -> int:
    """|X| without materializing the set (kernel-backed)."""
    return kernels.xset_size(G.table, G.inverse, g, h, K.mask)
