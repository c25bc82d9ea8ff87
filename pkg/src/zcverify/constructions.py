"""Constructors for the verification corpus: cyclic-by-p, cyclic-by-Hamiltonian,
direct products, and the deterministic corpus sweep with its manifest format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .groups import (
    CapExceededError,
    FiniteGroup,
    GroupError,
    ORDER_CAP,
    Subgroup,
    is_hamiltonian,
    is_nilpotent,
    normal_subgroups,
    quotient,
    structure_report,
)
from .numutil import factorize, is_prime_power

__all__ = [
    "SemidirectSpec",
    "CorpusEntry",
    "cyclic_group",
    "abelian_group",
    "dicyclic_group",
    "quaternion_group",
    "dihedral_group",
    "direct_product",
    "semidirect",
    "hamiltonian",
    "build_corpus",
    "corpus_manifest",
    "corpus_from_manifest",
    "entry_from_record",
]

FAMILIES = ("cyclic-by-p", "cyclic-by-abelian", "cyclic-by-hamiltonian", "control")


@dataclass(frozen=True)
class SemidirectSpec:
    """Cyclic base of order n extended by a complement acting by unit exponents.

    `action[h]` is the exponent e with a^h = a^e for the fixed generator a of
    the base; it must define a homomorphism complement -> (Z/nZ)*.
    """

    n: int
    complement: FiniteGroup
    action: tuple[int, ...]


@dataclass(frozen=True)
class CorpusEntry:
    entry_id: str
    group: FiniteGroup
    family: str
    witness: Subgroup  # the designated cyclic normal subgroup A
    construction: dict

    @property
    def order(self) -> int:
        return self.group.order


# ---------------------------------------------------------------------------
# basic builders (all index arithmetic; bit-reproducible tables)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("order must be positive")
    if n > ORDER_CAP:
        raise CapExceededError(f"order {n} exceeds cap")
    idx = np.arange(n, dtype=np.int32)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + [f"a{'' if i == 1 else '^' + str(i)}" for i in range(1, n)]
    return FiniteGroup(table, labels=labels, validate=False)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    if n * m > ORDER_CAP:
        raise CapExceededError("product exceeds cap")
    table = np.zeros((n * m, n * m), dtype=np.int32)
    gt, ht = G.table, H.table
    for a in range(n):
        for b in range(m):
            table[a * m + b] = (gt[a][:, None] * m + ht[b][None, :]).reshape(-1)
    labels = None
    if G.labels and H.labels:
        labels = [f"({G.label(a)},{H.label(b)})" for a in range(n) for b in range(m)]
    return FiniteGroup(table, labels=labels, validate=False)


def abelian_group(invariants) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders."""
    G = cyclic_group(1)
    for n in invariants:
        G = direct_product(G, cyclic_group(int(n)))
    return G


def dicyclic_group(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: <a, y | a^(2n)=1, y^2=a^n, a^y=a^-1>."""
    if n < 1:
        raise GroupError("n must be positive")
    order = 4 * n
    if order > ORDER_CAP:
        raise CapExceededError("order exceeds cap")
    m = 2 * n

    def encode(i, j):
        return i + m * j

    table = np.zeros((order, order), dtype=np.int32)
    for i1 in range(m):
        for j1 in range(2):
            for i2 in range(m):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % m, j2
                    else:
                        # (a^i1 y)(a^i2 y^j2) = a^(i1 - i2) y^(1+j2), y^2 = a^n
                        i, j = (i1 - i2) % m, 1 + j2
                        if j == 2:
                            i, j = (i + n) % m, 0
                    table[encode(i1, j1), encode(i2, j2)] = encode(i, j)
    labels = [None] * order
    for i in range(m):
        for j in range(2):
            labels[encode(i, j)] = (("" if i == 0 else f"a^{i}") + ("y" if j else "")) or "e"
    return FiniteGroup(table, labels=labels, validate=False)


def quaternion_group() -> FiniteGroup:
    """Q8 as the dicyclic group of order 8, relabelled with the usual names."""
    G = dicyclic_group(2)
    names = {0: "1", 1: "i", 2: "-1", 3: "-i", 4: "j", 5: "-k", 6: "-j", 7: "k"}
    return FiniteGroup(G.table, labels=[names[x] for x in range(8)], validate=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    spec = SemidirectSpec(n=n, complement=cyclic_group(2), action=(1 % n, (n - 1) % n if n > 1 else 0))
    G, _ = semidirect(spec)
    return G


def semidirect(spec: SemidirectSpec) -> tuple[FiniteGroup, Subgroup]:
    """Build the split extension of C_n by the complement; returns (G, A).

    Element (i, h) represents a^i * h; the action exponent map is verified to
    be a homomorphism into (Z/nZ)*.  A is returned as the cyclic normal
    subgroup {(i, 1)}.
    """
    n, H = spec.n, spec.complement
    if n < 1:
        raise GroupError("base order must be positive")
    act = [e % n for e in spec.action]
    if len(act) != H.order:
        raise GroupError("action must assign an exponent to every complement element")
    for h, e in enumerate(act):
        if gcd(e, n) != 1:
            raise GroupError(f"action exponent {e} is not a unit mod {n}")
    for h1 in range(H.order):
        for h2 in range(H.order):
            if act[H.mul(h1, h2)] != (act[h1] * act[h2]) % n:
                raise GroupError("action is not a homomorphism")
    order = n * H.order
    if order > ORDER_CAP:
        raise CapExceededError(f"order {order} exceeds cap")
    m = H.order
    act_inv = [act[H.inv(h)] for h in range(m)]
    table = np.zeros((order, order), dtype=np.int32)
    for i1 in range(n):
        for h1 in range(m):
            row = table[i1 * m + h1]
            for i2 in range(n):
                base = (i1 + i2 * act_inv[h1]) % n
                hrow = H.table[h1]
                for h2 in range(m):
                    row[i2 * m + h2] = base * m + hrow[h2]
    labels = None
    if H.labels:
        labels = []
        for i in range(n):
            for h in range(m):
                apart = "" if i == 0 else (f"a^{i}" if i > 1 else "a")
                hpart = H.label(h) if H.label(h) not in ("e", "1", "()") else ""
                labels.append((apart + ("*" if apart and hpart else "") + hpart) or "e")
    G = FiniteGroup(table, labels=labels, validate=False)
    A = Subgroup(G, [i * m for i in range(n)])
    return G, A


def hamiltonian(odd_abelian_orders, elementary_two_rank: int) -> FiniteGroup:
    """Q8 x (C2)^rank x (odd abelian): the classical Hamiltonian shape."""
    for n in odd_abelian_orders:
        if int(n) % 2 == 0:
            raise GroupError(f"odd part must have odd order, got {n}")
    G = quaternion_group()
    for _ in range(elementary_two_rank):
        G = direct_product(G, cyclic_group(2))
    for n in odd_abelian_orders:
        G = direct_product(G, cyclic_group(int(n)))
    return G


# ---------------------------------------------------------------------------
# corpus


def _fingerprint(G: FiniteGroup) -> tuple:
    """Cheap isomorphism-invariant signature used to deduplicate sweep output."""
    orders = sorted(G.element_orders().tolist())
    csizes = sorted(len(c) for c in G.classes())
    rep = structure_report(G)
    return (
        G.order,
        rep.exponent,
        rep.center.order,
        rep.derived_subgroup.order,
        tuple(orders),
        tuple(csizes),
    )


def _family_holds(G: FiniteGroup, A: Subgroup, family: str) -> bool:
    if family == "control":
        return True
    if not (A.is_cyclic() and A.is_normal()):
        return False
    Q = quotient(G, A).target
    if family == "cyclic-by-p":
        return Q.order == 1 or is_prime_power(Q.order) and is_nilpotent(Q)
    if family == "cyclic-by-abelian":
        return Q.is_abelian()
    if family == "cyclic-by-hamiltonian":
        return is_hamiltonian(Q)
    raise ValueError(f"unknown family {family}")


def witness_subgroup(G: FiniteGroup, family: str) -> Subgroup | None:
    """Maximal-order cyclic normal A with G/A in the family (least elements tie-break)."""
    best = None
    for N in normal_subgroups(G):
        if not N.is_cyclic():
            continue
        if _family_holds(G, N, family):
            if best is None or (N.order, [-x for x in N.elements]) > (
                best.order,
                [-x for x in best.elements],
            ):
                best = N
    return best


def _action_orbit_rep(t: int, q: int, n: int) -> int:
    """Canonical representative of {t^u : u unit mod q} (generator rechoice)."""
    reps = {pow(t, u, n) for u in range(1, q + 1) if gcd(u, q) == 1}
    return min(reps)


def _cyclic_actions(n: int, q: int) -> list[int]:
    """Listed action exponents for C_n <| C_q sweeps: trivial, inversion, faithful."""
    out = {1 % n}
    if n > 2 and q % 2 == 0:
        out.add(n - 1)  # inversion through the unique order-2 quotient of C_q
    for t in range(1, n):
        if gcd(t, n) != 1:
            continue
        # multiplicative order of t mod n
        o, x = 1, t % n
        while x != 1 % n:
            x = x * t % n
            o += 1
        if o == q:
            out.add(_action_orbit_rep(t, q, n))
    return sorted(out)


def _q8_action_reps(n: int) -> list[tuple[int, int]]:
    """Homomorphisms Q8 -> (Z/nZ)* up to Aut(Q8): pairs (s, t) of involutions."""
    invol = [u for u in range(1, n + 1) if u <= n and gcd(u, n) == 1 and u * u % n == 1 % n]
    invol = sorted(set(x % n for x in invol))
    seen = set()
    reps = []
    for s in invol:
        for t in invol:
            key = tuple(sorted((s, t, s * t % n)))
            if key not in seen:
                seen.add(key)
                reps.append((s, t))
    return reps


def _q8_spec(n: int, s: int, t: int) -> SemidirectSpec:
    Q8 = quaternion_group()
    # dicyclic encoding: index = i + 4j for a^i y^j with a = "i", y = "j".
    # action is determined on the generators a -> s, y -> t; every element
    # a^i y^j acts by s^i t^j.
    act = []
    for x in range(8):
        i, j = x % 4, x // 4
        act.append(pow(s, i, n) * pow(t, j, n) % n)
    return SemidirectSpec(n=n, complement=Q8, action=tuple(act))


def _tagged_entry(entry_id: str, G: FiniteGroup, family: str, construction: dict) -> CorpusEntry:
    A = witness_subgroup(G, family)
    if A is None:
        raise GroupError(f"entry {entry_id}: no witness subgroup for family {family}")
    if not _family_holds(G, A, family):
        raise GroupError(f"entry {entry_id}: family tag fails verification")
    return CorpusEntry(entry_id=entry_id, group=G, family=family, witness=A, construction=construction)


def _control_entry(entry_id: str, G: FiniteGroup, construction: dict) -> CorpusEntry:
    from .groups import trivial_subgroup

    return CorpusEntry(
        entry_id=entry_id,
        group=G,
        family="control",
        witness=trivial_subgroup(G),
        construction=construction,
    )


def build_corpus(max_order: int) -> list[CorpusEntry]:
    """Deterministic corpus: cyclic-by-prime-power and cyclic-by-Q8 sweeps plus
    abelian/dihedral controls.  Entries are deduplicated by an invariant
    fingerprint; every family tag is re-verified on the built group.
    """
    if max_order > ORDER_CAP:
        raise CapExceededError("max_order exceeds cap")
    entries: list[CorpusEntry] = []
    seen: set[tuple] = set()

    def push(entry: CorpusEntry, force: bool = False):
        # Controls are kept even when a sweep entry shares the fingerprint:
        # they pair the group with a trivial witness to exercise gating.
        fp = _fingerprint(entry.group)
        if fp in seen and not force:
            return
        seen.add(fp)
        entries.append(entry)

    push(_control_entry("trivial", cyclic_group(1), {"kind": "cyclic", "n": 1}))

    # C_n extended by C_q, q a prime power; listed actions only.
    prime_powers = [q for q in range(2, max_order + 1) if is_prime_power(q)]
    for n in range(1, max_order + 1):
        for q in prime_powers:
            if n * q > max_order:
                continue
            for t in _cyclic_actions(n, q):
                Cq = cyclic_group(q)
                act = tuple(pow(t, h, n) for h in range(q))
                try:
                    G, _ = semidirect(SemidirectSpec(n=n, complement=Cq, action=act))
                except GroupError:
                    continue
                push(
                    _tagged_entry(
                        f"c{n}_by_c{q}_t{t}",
                        G,
                        "cyclic-by-p",
                        {"kind": "cyclic_semidirect", "n": n, "q": q, "t": t},
                    )
                )

    # C_n extended by Q8: all homomorphisms up to Aut(Q8).
    for n in range(1, max_order // 8 + 1):
        for s, t in _q8_action_reps(n):
            G, _ = semidirect(_q8_spec(n, s, t))
            push(
                _tagged_entry(
                    f"c{n}_by_q8_s{s}_t{t}",
                    G,
                    "cyclic-by-hamiltonian",
                    {"kind": "q8_semidirect", "n": n, "s": s, "t": t},
                )
            )

    # Abelian controls (tagged by their abelian quotient witness).
    for invariants in ([2, 4], [2, 2], [3, 3], [2, 2, 2]):
        order = 1
        for x in invariants:
            order *= x
        if order > max_order:
            continue
        G = abelian_group(invariants)
        push(
            _tagged_entry(
                "ab_" + "x".join(map(str, invariants)),
                G,
                "cyclic-by-abelian",
                {"kind": "abelian", "invariants": list(invariants)},
            )
        )

    # Gating controls: groups paired with a trivial witness so that
    # hypothesis-gated checks exercise their hypotheses_hold = False branch.
    for n in (3, 5, 15):
        if 2 * n <= max_order:
            G = dihedral_group(n)
            push(_control_entry(f"dihedral{n}_control", G, {"kind": "dihedral", "n": n}), force=True)

    entries.sort(key=lambda e: (e.order, e.entry_id))
    return entries


# ---------------------------------------------------------------------------
# manifest (machine-readable corpus description; rebuilds are reproducible)


def corpus_manifest(entries: list[CorpusEntry], max_order: int) -> dict:
    return {
        "schema_version": 1,
        "max_order": max_order,
        "entries": [
            {
                "id": e.entry_id,
                "family": e.family,
                "order": e.order,
                "witness_order": e.witness.order,
                "construction": e.construction,
            }
            for e in entries
        ],
    }


def entry_from_record(rec: dict) -> CorpusEntry:
    c = rec["construction"]
    kind = c["kind"]
    if kind == "cyclic":
        G = cyclic_group(c["n"])
    elif kind == "abelian":
        G = abelian_group(c["invariants"])
    elif kind == "dihedral":
        G = dihedral_group(c["n"])
    elif kind == "cyclic_semidirect":
        q, n, t = c["q"], c["n"], c["t"]
        act = tuple(pow(t, h, n) for h in range(q))
        G, _ = semidirect(SemidirectSpec(n=n, complement=cyclic_group(q), action=act))
    elif kind == "q8_semidirect":
        G, _ = semidirect(_q8_spec(c["n"], c["s"], c["t"]))
    else:
        raise GroupError(f"unknown construction kind {kind!r}")
    family = rec["family"]
    if family == "control":
        entry = _control_entry(rec["id"], G, c)
    else:
        entry = _tagged_entry(rec["id"], G, family, c)
    if entry.order != rec["order"]:
        raise GroupError(f"entry {rec['id']}: rebuilt order {entry.order} != {rec['order']}")
    return entry


def corpus_from_manifest(doc: dict) -> list[CorpusEntry]:
    if doc.get("schema_version") != 1:
        raise GroupError("unsupported manifest schema")
    return [entry_from_record(rec) for rec in doc["entries"]]
