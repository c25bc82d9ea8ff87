"""Dense Cayley-table finite groups and the structural queries built on them.

Groups are stored as full multiplication tables (order capped at 4096), which
makes every class/centralizer/subgroup query a cheap table scan.  All objects
are immutable after construction; derived data is cached on the group and is
safe to share across threads (queries are read-only, construction is
single-threaded).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .numutil import factorize, p_part, pi_part, prime_divisors

ORDER_CAP = 4096

__all__ = [
    "ORDER_CAP",
    "GroupError",
    "CapExceededError",
    "FiniteGroup",
    "Subgroup",
    "ConjugacyClass",
    "QuotientMap",
    "StructureReport",
    "closure",
    "conjugacy_classes",
    "centralizer",
    "normalizer",
    "structure_report",
    "quotient",
    "pi_parts",
    "subgroup_closure",
    "all_subgroups",
    "normal_subgroups",
    "minimal_normal_subgroups",
    "abelian_normal_subgroups",
    "socle",
    "sylow_subgroup",
    "derived_subgroup",
    "center",
]


class GroupError(ValueError):
    """Structural precondition failure (non-group table, non-normal subgroup, ...)."""


class CapExceededError(GroupError):
    """A construction would exceed the configured order cap."""


class FiniteGroup:
    """A finite group given by its full multiplication table on indices 0..n-1."""

    __slots__ = ("table", "inverse", "identity", "labels", "_cache")

    def __init__(self, table, labels=None, validate: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise GroupError("multiplication table must be square")
        n = t.shape[0]
        if n == 0:
            raise GroupError("empty table")
        if n > ORDER_CAP:
            raise CapExceededError(f"order {n} exceeds cap {ORDER_CAP}")
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        self.table = t
        self.table.setflags(write=False)
        self.identity = self._find_identity(t)
        self.inverse = self._find_inverses(t, self.identity)
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise GroupError("label list has wrong length")
        self._cache: dict = {}
        if validate:
            self._validate()

    @staticmethod
    def _find_identity(t) -> int:
        n = t.shape[0]
        rng = np.arange(n)
        for e in range(n):
            if np.array_equal(t[e], rng) and np.array_equal(t[:, e], rng):
                return e
        raise GroupError("table has no two-sided identity")

    @staticmethod
    def _find_inverses(t, e) -> np.ndarray:
        n = t.shape[0]
        inv = np.full(n, -1, dtype=np.int32)
        pos = np.argwhere(t == e)
        for g, h in pos:
            inv[g] = h
        if (inv < 0).any():
            raise GroupError("some element has no inverse")
        inv.setflags(write=False)
        return inv

    def _validate(self):
        t = self.table
        n = self.order
        # Latin square rows/columns.
        rng = np.arange(n)
        for g in range(n):
            if not np.array_equal(np.sort(t[g]), rng) or not np.array_equal(np.sort(t[:, g]), rng):
                raise GroupError(f"table row/column {g} is not a permutation")
        # two-sided inverses
        for g in range(n):
            if t[self.inverse[g], g] != self.identity or t[g, self.inverse[g]] != self.identity:
                raise GroupError(f"inverse of {g} fails")
        # Associativity: exhaustive up to order 512, seeded sample beyond.
        if n <= 512:
            if kernels.associativity_violations(t, limit=1):
                raise GroupError("table is not associative")
        else:
            rs = np.random.RandomState(0)
            for a, b, c in rs.randint(0, n, size=(20000, 3)):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    raise GroupError("table is not associative")

    # -- basic operations ---------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, t: int) -> int:
        """g^t = t^-1 g t."""
        tb = self.table
        return int(tb[tb[self.inverse[t], g], t])

    def comm(self, g: int, h: int) -> int:
        """(g, h) = g^-1 h^-1 g h."""
        tb = self.table
        return int(tb[tb[self.inverse[g], self.inverse[h]], tb[g, h]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g = self.inv(g)
            k = -k
        out = self.identity
        base = g
        tb = self.table
        while k:
            if k & 1:
                out = int(tb[out, base])
            base = int(tb[base, base])
            k >>= 1
        return out

    def order_of(self, g: int) -> int:
        return int(self.element_orders()[g])

    def element_orders(self) -> np.ndarray:
        orders = self._cache.get("orders")
        if orders is None:
            n = self.order
            tb = self.table
            orders = np.zeros(n, dtype=np.int32)
            for g in range(n):
                k, x = 1, g
                while x != self.identity:
                    x = int(tb[x, g])
                    k += 1
                orders[g] = k
            orders.setflags(write=False)
            self._cache["orders"] = orders
        return orders

    def exponent(self) -> int:
        exp = 1
        for o in map(int, set(self.element_orders().tolist())):
            exp = exp * o // gcd(exp, o)
        return exp

    def is_abelian(self) -> bool:
        flag = self._cache.get("abelian")
        if flag is None:
            flag = bool(np.array_equal(self.table, self.table.T))
            self._cache["abelian"] = flag
        return flag

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    # -- conjugacy classes ----------------------------------------------------

    def class_index(self) -> np.ndarray:
        """Class id per element; the identity's class has id 0 (canonical order)."""
        ids = self._cache.get("class_ids")
        if ids is None:
            ids = np.asarray(
                kernels.class_ids(self.table, self.inverse, self.identity), dtype=np.int32
            )
            ids.setflags(write=False)
            self._cache["class_ids"] = ids
        return ids

    def classes(self) -> list["ConjugacyClass"]:
        cls = self._cache.get("classes")
        if cls is None:
            ids = self.class_index()
            nclasses = int(ids.max()) + 1
            members = [[] for _ in range(nclasses)]
            for g in range(self.order):
                members[ids[g]].append(g)
            cls = []
            for mem in members:
                rep = mem[0]
                cls.append(
                    ConjugacyClass(
                        representative=rep,
                        members=tuple(mem),
                        centralizer_order=self.order // len(mem),
                    )
                )
            self._cache["classes"] = cls
        return cls

    def centralizer_sizes(self) -> np.ndarray:
        sizes = self._cache.get("cent_sizes")
        if sizes is None:
            ids = self.class_index()
            classes = self.classes()
            sizes = np.array([classes[ids[g]].centralizer_order for g in self.elements()], dtype=np.int64)
            sizes.setflags(write=False)
            self._cache["cent_sizes"] = sizes
        return sizes

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]
    centralizer_order: int

    def __len__(self):
        return len(self.members)


class Subgroup:
    """A subgroup of a table group, as a sorted element tuple plus a mask."""

    __slots__ = ("group", "elements", "mask")

    def __init__(self, group: FiniteGroup, elements, verify: bool = False):
        self.group = group
        self.elements = tuple(sorted(int(x) for x in set(elements)))
        mask = bytearray(group.order)
        for x in self.elements:
            mask[x] = 1
        self.mask = bytes(mask)
        if verify:
            self._verify()

    def _verify(self):
        G = self.group
        if not self.elements or not self.mask[G.identity]:
            raise GroupError("subgroup must contain the identity")
        for a in self.elements:
            if not self.mask[G.inv(a)]:
                raise GroupError("subgroup not closed under inverse")
            for b in self.elements:
                if not self.mask[G.mul(a, b)]:
                    raise GroupError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.group is self.group
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return all(other.mask[x] for x in self.elements)

    def is_normal(self) -> bool:
        G = self.group
        t = G.table
        helems = np.asarray(self.elements, dtype=np.int32)
        mask = np.frombuffer(self.mask, dtype=np.uint8)
        for g in range(G.order):
            conj = t[t[G.inverse[g], helems], g]
            if not mask[conj].all():
                return False
        return True

    def is_abelian(self) -> bool:
        G = self.group
        els = self.elements
        return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(els) for b in els[i + 1 :])

    def is_cyclic(self) -> bool:
        orders = self.group.element_orders()
        return any(int(orders[x]) == self.order for x in self.elements)

    def generator(self) -> int:
        """Least element generating the subgroup; raises if not cyclic."""
        orders = self.group.element_orders()
        for x in self.elements:
            if int(orders[x]) == self.order:
                return x
        raise GroupError("subgroup is not cyclic")

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={self.elements[:8]}{'...' if self.order > 8 else ''})"


@dataclass(frozen=True)
class QuotientMap:
    """Surjective homomorphism G -> G/N with kernel exactly N."""

    source: FiniteGroup
    normal: Subgroup
    target: FiniteGroup
    projection: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.projection[g]


@dataclass(frozen=True)
class StructureReport:
    center: Subgroup
    derived_subgroup: Subgroup
    socle: Subgroup
    exponent: int
    is_abelian: bool
    is_nilpotent: bool
    is_hamiltonian: bool
    sylow: dict


# ---------------------------------------------------------------------------
# closure of permutations / elements


def _parse_perm(perm, degree: int | None) -> tuple[int, ...]:
    p = tuple(int(x) for x in perm)
    d = len(p)
    if degree is not None and d != degree:
        raise GroupError("generators act on sets of different sizes")
    if sorted(p) != list(range(d)):
        raise GroupError(f"not a bijection: {perm}")
    return p


def closure(generators, ambient: FiniteGroup | None = None, cap: int = ORDER_CAP) -> FiniteGroup:
    """Group generated by permutations (one-line tuples) or ambient element indices.

    Permutations are bijections of {0..d-1} in one-line notation; the returned
    group's element indices follow the sorted order of the permutation tuples,
    so re-running a construction is bit-reproducible.
    """
    if ambient is not None:
        elems = kernels.subgroup_closure(ambient.table, list(generators), ambient.identity)
        if len(elems) > cap:
            raise CapExceededError(f"closure of order {len(elems)} exceeds cap {cap}")
        index = {g: i for i, g in enumerate(elems)}
        n = len(elems)
        table = np.zeros((n, n), dtype=np.int32)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = index[ambient.mul(a, b)]
        labels = [ambient.label(g) for g in elems] if ambient.labels else None
        return FiniteGroup(table, labels=labels, validate=False)

    gens = list(generators)
    if not gens:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int32), labels=["()"], validate=False)
    degree = len(tuple(gens[0]))
    perms = [_parse_perm(g, degree) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = tuple(p[i] for i in x)
                if y not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(f"closure exceeds cap {cap}")
                    seen.add(y)
                    nxt.append(y)
                z = tuple(x[i] for i in p)
                if z not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(f"closure exceeds cap {cap}")
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = index[tuple(a[k] for k in b)]
    labels = [_cycle_label(p) for p in elems]
    return FiniteGroup(table, labels=labels, validate=False)


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        parts.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) if parts else "()"


# ---------------------------------------------------------------------------
# subgroup machinery


def subgroup_closure(G: FiniteGroup, elements) -> Subgroup:
    """Subgroup of G generated by the given element indices."""
    elems = kernels.subgroup_closure(G.table, list(elements), G.identity)
    return Subgroup(G, elems)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, [G.identity])


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order))


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """All conjugacy classes; the identity's class is listed first."""
    return G.classes()


def centralizer(G: FiniteGroup, X) -> Subgroup:
    """{ g : gx = xg for all x in X }; X is a set of element indices."""
    xs = list(X)
    if not xs:
        raise GroupError("centralizer of an empty set is not defined here")
    t = G.table
    mask = np.ones(G.order, dtype=bool)
    for x in xs:
        mask &= t[:, x] == t[x, :]
    return Subgroup(G, np.nonzero(mask)[0])


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """{ g : H^g = H }."""
    t = G.table
    inv = G.inverse
    helems = np.asarray(H.elements, dtype=np.int32)
    out = []
    target = set(H.elements)
    for g in range(G.order):
        conj = t[t[inv[g], helems], g]
        if set(conj.tolist()) == target:
            out.append(g)
    return Subgroup(G, out)


def center(G: FiniteGroup) -> Subgroup:
    sub = G._cache.get("center")
    if sub is None:
        t = G.table
        mask = (t == t.T).all(axis=1)
        sub = Subgroup(G, np.nonzero(mask)[0])
        G._cache["center"] = sub
    return sub


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    sub = G._cache.get("derived")
    if sub is None:
        comms = {G.comm(g, h) for g in range(G.order) for h in range(G.order)}
        sub = subgroup_closure(G, comms)
        G._cache["derived"] = sub
    return sub


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, by join-closure starting from all cyclic subgroups."""
    subs = G._cache.get("all_subgroups")
    if subs is None:
        cyclics = {}
        for g in range(G.order):
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
        subs = sorted(found.values(), key=lambda s: (s.order, s.elements))
        G._cache["all_subgroups"] = subs
    return subs


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup, as joins of normal closures of conjugacy classes."""
    subs = G._cache.get("normal_subgroups")
    if subs is None:
        class_closures = {}
        for cls in G.classes():
            H = subgroup_closure(G, cls.members)
            class_closures[H.elements] = H
        found = dict(class_closures)
        found[(G.identity,)] = trivial_subgroup(G)
        frontier = list(class_closures.values())
        while frontier:
            nxt = []
            for H in frontier:
                for C in class_closures.values():
                    if C <= H:
                        continue
                    J = subgroup_closure(G, H.elements + C.elements)
                    if J.elements not in found:
                        found[J.elements] = J
                        nxt.append(J)
            frontier = nxt
        subs = sorted(found.values(), key=lambda s: (s.order, s.elements))
        G._cache["normal_subgroups"] = subs
    return subs


def minimal_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    nontrivial = [N for N in normal_subgroups(G) if 1 < N.order]
    out = []
    for N in nontrivial:
        if not any(M.order < N.order and M <= N for M in nontrivial):
            out.append(N)
    return out


def abelian_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [N for N in normal_subgroups(G) if N.is_abelian()]


def socle(G: FiniteGroup) -> Subgroup:
    """Join of the minimal normal subgroups (trivial for the trivial group)."""
    mins = minimal_normal_subgroups(G)
    if not mins:
        return trivial_subgroup(G)
    gens = [x for M in mins for x in M.elements]
    return subgroup_closure(G, gens)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by closure over p-elements of the normalizer.

    Deterministic: at each step the least usable p-element is adjoined.  A
    p-subgroup below full order always extends inside its normalizer, so the
    loop cannot stall; a backtracking branch is kept as a safety net.
    """
    key = ("sylow", p)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    target = p_part(G.order, p)
    orders = G.element_orders()
    p_elements = [g for g in range(G.order) if int(orders[g]) > 1 and p_part(int(orders[g]), p) == int(orders[g])]

    def grow(H: Subgroup) -> Subgroup | None:
        if H.order == target:
            return H
        candidates = [g for g in normalizer(G, H).elements if g in set(p_elements) and not H.mask[g]]
        for g in candidates:
            J = subgroup_closure(G, H.elements + (g,))
            if J.order == p_part(J.order, p):
                got = grow(J)
                if got is not None:
                    return got
        return None

    result = grow(trivial_subgroup(G))
    if result is None:
        raise GroupError(f"failed to build a Sylow {p}-subgroup (order {G.order})")
    G._cache[key] = result
    return result


def is_nilpotent(G: FiniteGroup) -> bool:
    return all(sylow_subgroup(G, p).is_normal() for p in prime_divisors(G.order) if G.order > 1)


def is_hamiltonian(G: FiniteGroup) -> bool:
    """Non-abelian with every subgroup normal (equivalently every cyclic one)."""
    if G.is_abelian():
        return False
    return all(subgroup_closure(G, [g]).is_normal() for g in range(G.order))


def structure_report(G: FiniteGroup) -> StructureReport:
    rep = G._cache.get("structure_report")
    if rep is None:
        rep = StructureReport(
            center=center(G),
            derived_subgroup=derived_subgroup(G),
            socle=socle(G),
            exponent=G.exponent(),
            is_abelian=G.is_abelian(),
            is_nilpotent=is_nilpotent(G),
            is_hamiltonian=is_hamiltonian(G),
            sylow={p: sylow_subgroup(G, p) for p in prime_divisors(G.order)},
        )
        G._cache["structure_report"] = rep
    return rep


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientMap:
    """Quotient by a normal subgroup; cosets are labelled by their least element."""
    if N.group is not G:
        raise GroupError("subgroup belongs to a different group")
    cached = G._cache.get(("quotient", N.elements))
    if cached is not None:
        return cached
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    t = G.table
    nelems = np.asarray(N.elements, dtype=np.int32)
    coset_of = np.full(G.order, -1, dtype=np.int32)
    reps = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        members = t[x, nelems]
        coset_of[members] = len(reps)
        reps.append(int(members.min()))
    # Relabel cosets sorted by representative for canonical element order.
    order = np.argsort(np.array(reps, dtype=np.int32), kind="stable")
    relabel = np.empty(len(reps), dtype=np.int32)
    relabel[order] = np.arange(len(reps), dtype=np.int32)
    coset_of = relabel[coset_of]
    reps = [reps[i] for i in order]
    m = len(reps)
    qtable = np.zeros((m, m), dtype=np.int32)
    for i, a in enumerate(reps):
        qtable[i] = coset_of[t[a, np.asarray(reps, dtype=np.int32)]]
    labels = [G.label(r) + "N" for r in reps] if G.labels else None
    target = FiniteGroup(qtable, labels=labels, validate=False)
    qm = QuotientMap(source=G, normal=N, target=target, projection=tuple(int(c) for c in coset_of))
    G._cache[("quotient", N.elements)] = qm
    return qm


def pi_parts(G: FiniteGroup, g: int, primes) -> tuple[int, int]:
    """(g_pi, g_pi'): commuting factors of g with coprime pi/pi' orders."""
    k = G.order_of(g)
    k_pi = pi_part(k, primes)
    k_rest = k // k_pi
    if k_pi == 1:
        return G.identity, g
    if k_rest == 1:
        return g, G.identity
    # exponent a = 1 mod k_pi, 0 mod k_rest
    a = k_rest * pow(k_rest, -1, k_pi) % k
    g_pi = G.power(g, a)
    g_rest = G.power(g, (1 - a) % k)
    return g_pi, g_rest


def coset_transversal(G: FiniteGroup, N: Subgroup) -> list[int]:
    """Least-element representatives for the left cosets of N, ascending."""
    ids, nc = kernels.coset_ids(G.table, N.elements)
    reps = [-1] * nc
    for x in range(G.order):
        if reps[ids[x]] < 0:
            reps[ids[x]] = x
    return sorted(reps)


def image_order_in_quotient(G: FiniteGroup, g: int, N: Subgroup) -> int:
    """Order of gN in G/N without building the quotient."""
    k = 1
    x = g
    while not N.mask[x]:
        x = G.mul(x, g)
        k += 1
    return k
