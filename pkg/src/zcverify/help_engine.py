"""Partial-augmentation vectors and the HeLP-style constraint battery.

A candidate torsion unit of order m is modelled by a power chain: every
proper power is pinned to an actual group element (the minimal-counterexample
convention), and only the order-m level carries an unknown integer vector
indexed by conjugacy classes.  The filter enumerates bounded vectors that
survive the structural constraints and yield non-negative integral eigenvalue
multiplicities for every character in the chosen set; all arithmetic is
exact (integer trace tables derived from the cyclotomic module).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from . import kernels
from .characters import (
    InducedCharacter,
    corefree_cyclic_kernels,
    default_character_set,
    linear_characters_of_group,
)
from .cyclotomic import reduction_rows
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_normal_subgroups,
    normal_subgroups,
    quotient,
)
from .numutil import divisors, euler_phi, prime_divisors, unit_lift

__all__ = [
    "PartialAugVector",
    "PowerChain",
    "MultiplicityVector",
    "ConstraintOptions",
    "ConstraintCheck",
    "ConstraintReport",
    "FilterResult",
    "OrderAudit",
    "AuditReport",
    "EnumerationBudgetError",
    "trivial_pa",
    "element_chain",
    "enumerate_chains",
    "basic_constraints",
    "multiplicities",
    "run_filter",
    "help_filter",
    "rational_conjugacy_check",
    "zc_audit",
]

DEFAULT_BUDGET = 20_000_000


class EnumerationBudgetError(RuntimeError):
    """The candidate box exceeded the node budget; results would be incomplete."""


@dataclass(frozen=True)
class PartialAugVector:
    """Integer vector of partial augmentations, indexed by conjugacy class id."""

    group: FiniteGroup
    order: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.group.classes()):
            raise GroupError("entry count must match the class count")

    @property
    def augmentation(self) -> int:
        return sum(self.entries)

    def nonzero_classes(self) -> list[int]:
        return [c for c, e in enumerate(self.entries) if e]

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.entries)


def trivial_pa(G: FiniteGroup, g: int) -> PartialAugVector:
    """The augmentation vector of the group element g itself."""
    entries = [0] * len(G.classes())
    entries[int(G.class_index()[g])] = 1
    return PartialAugVector(group=G, order=G.order_of(g), entries=tuple(entries))


@dataclass(frozen=True)
class PowerChain:
    """Order-m candidate with every proper power pinned to a group element.

    pinned[d] is the element representing the d-th power, for every divisor
    d of m with d > 1 (pinned[m] is the identity).  The order-m level is the
    unknown; pa is None while filtering and a concrete vector otherwise.
    """

    group: FiniteGroup
    m: int
    pinned: dict
    pa: PartialAugVector | None = None

    def __post_init__(self):
        G = self.group
        need = [d for d in divisors(self.m) if d > 1]
        if sorted(self.pinned) != need:
            raise GroupError(f"chain must pin exactly the proper divisors of {self.m}")
        ids = G.class_index()
        for d in need:
            if G.order_of(self.pinned[d]) != self.m // d:
                raise GroupError(f"pinned element at level {d} must have order {self.m // d}")
        for d1 in need:
            for e in divisors(self.m // d1):
                d2 = d1 * e
                if e > 1 and d2 in self.pinned:
                    if ids[G.power(self.pinned[d1], e)] != ids[self.pinned[d2]]:
                        raise GroupError("chain power compatibility fails")
        if self.pa is not None and self.pa.order != self.m:
            raise GroupError("vector order disagrees with chain order")

    def with_pa(self, pa: PartialAugVector) -> "PowerChain":
        return PowerChain(group=self.group, m=self.m, pinned=self.pinned, pa=pa)

    def signature(self) -> tuple:
        ids = self.group.class_index()
        return (self.m, tuple((d, int(ids[g])) for d, g in sorted(self.pinned.items())))


def element_chain(G: FiniteGroup, g: int) -> PowerChain:
    """The chain of an actual group element: all levels pinned, vector trivial."""
    m = G.order_of(g)
    pinned = {d: G.power(g, d) for d in divisors(m) if d > 1}
    return PowerChain(group=G, m=m, pinned=pinned, pa=trivial_pa(G, g))


def enumerate_chains(G: FiniteGroup, m: int) -> list[PowerChain]:
    """All chains of order m up to conjugacy of the pinned elements.

    A chain is determined by the classes chosen for the prime-level powers;
    pairwise power-compatibility is enforced, deeper levels follow.
    """
    if m == 1:
        return [PowerChain(group=G, m=1, pinned={}, pa=None)]
    ids = G.class_index()
    classes = G.classes()
    primes = prime_divisors(m)
    options = {}
    for p in primes:
        opts = [c.representative for c in classes if G.order_of(c.representative) == m // p]
        if not opts:
            return []
        options[p] = opts

    chains = []
    seen = set()

    def build(idx: int, picks: dict):
        if idx == len(primes):
            pinned = {}
            for d in divisors(m):
                if d <= 1:
                    continue
                p = next(q for q in primes if d % q == 0)
                pinned[d] = G.power(picks[p], d // p)
            chain = PowerChain(group=G, m=m, pinned=pinned, pa=None)
            sig = chain.signature()
            if sig not in seen:
                seen.add(sig)
                chains.append(chain)
            return
        p = primes[idx]
        for g in options[p]:
            ok = True
            for q in primes[:idx]:
                if ids[G.power(g, q)] != ids[G.power(picks[q], p)]:
                    ok = False
                    break
            if ok:
                picks[p] = g
                build(idx + 1, picks)
                del picks[p]

    build(0, {})
    return chains


# ---------------------------------------------------------------------------
# quotient constraint data


@dataclass(frozen=True)
class _QuotientBlocks:
    normal: Subgroup
    block_of_class: tuple[int, ...]  # G-class id -> quotient-class id
    n_blocks: int
    allowed_blocks: frozenset
    identity_forced: bool  # the image of the unknown is forced to be 1


def _quotient_blocks(G: FiniteGroup, chain: PowerChain, N: Subgroup) -> _QuotientBlocks:
    qm = quotient(G, N)
    Q = qm.target
    qids = Q.class_index()
    key = ("qblocks", N.elements)
    block_of_class = G._cache.get(key)
    if block_of_class is None:
        block_of_class = tuple(int(qids[qm(c.representative)]) for c in G.classes())
        G._cache[key] = block_of_class
    m = chain.m
    proper = [d for d in divisors(m) if d > 1]
    in_n = {d for d in proper if N.mask[chain.pinned[d]]}
    allowed = set()
    all_in = len(in_n) == len(proper)
    ident_block = int(qids[Q.identity])
    if all_in:
        allowed.add(ident_block)
    if in_n:
        # the image's order is the gcd of the levels that die in N (or 1)
        dstar = min(in_n)
        pinned_images = {d: qm(chain.pinned[d]) for d in proper}
        for cls in Q.classes():
            r = cls.representative
            if Q.order_of(r) != dstar:
                continue
            if all(qids[Q.power(r, d)] == qids[pinned_images[d]] for d in proper):
                allowed.add(int(qids[r]))
    identity_forced = allowed == {ident_block}
    return _QuotientBlocks(
        normal=N,
        block_of_class=block_of_class,
        n_blocks=len(Q.classes()),
        allowed_blocks=frozenset(allowed),
        identity_forced=identity_forced,
    )


def _proper_nontrivial_normals(G: FiniteGroup) -> list[Subgroup]:
    return [N for N in normal_subgroups(G) if 1 < N.order < G.order]


def _variable_order(nvars: int, coef_rows) -> list[int]:
    """Greedy order: repeatedly take the least variable of the row with the
    fewest unassigned variables, so tight rows close as early as possible.

    Row supports are deduplicated (all DFT columns of one character share a
    support) and remaining-counts maintained incrementally.
    """
    if nvars <= 1:
        return list(range(nvars))
    supports = sorted({tuple(i for i in range(nvars) if row[i]) for row in coef_rows} - {()})
    var_sups = [[] for _ in range(nvars)]
    for si, sup in enumerate(supports):
        for v in sup:
            var_sups[v].append(si)
    remaining = [len(s) for s in supports]
    order: list[int] = []
    assigned = [False] * nvars
    while len(order) < nvars:
        best_key = None
        best_var = None
        for si, sup in enumerate(supports):
            if not remaining[si]:
                continue
            first = next(v for v in sup if not assigned[v])
            key = (remaining[si], first)
            if best_key is None or key < best_key:
                best_key, best_var = key, first
                if key[0] == 1 and key[1] == 0:
                    break
        if best_var is None:
            order.extend(v for v in range(nvars) if not assigned[v])
            break
        order.append(best_var)
        assigned[best_var] = True
        for si in var_sups[best_var]:
            remaining[si] -= 1
    return order


# ---------------------------------------------------------------------------
# exact multiplicity tables (integers throughout)


def _eligible_classes(G: FiniteGroup, m: int) -> list[int]:
    classes = G.classes()
    ident = int(G.class_index()[G.identity])
    out = []
    for c, cls in enumerate(classes):
        if m % G.order_of(cls.representative):
            continue
        if c == ident and m > 1:
            continue
        out.append(c)
    return out


_TRACE_CACHE: dict = {}


def _trace_entry(m: int, L: int, E: int, l: int) -> int:
    """Sum over j in (Z/m)* of the rational part of zeta_L^(E*lift(j)) *
    zeta_m^(-lj): the Galois trace-sum of one root of unity against the
    inverse-DFT kernel.  Exact integer; memoized per (m, L)."""
    state = _TRACE_CACHE.get((m, L))
    if state is None:
        red0 = [row[0] for row in reduction_rows(L)]
        step = L // m
        lifts = [(j, unit_lift(j, m, L)) for j in range(1, m + 1) if gcd(j, m) == 1]
        state = (red0, step, lifts, {})
        _TRACE_CACHE[(m, L)] = state
    red0, step, lifts, tab = state
    key = (E, l)
    v = tab.get(key)
    if v is None:
        v = 0
        for j, jl in lifts:
            v += red0[(E * jl + ((-l * j) % m) * step) % L]
        tab[key] = v
    return v


def _kappa_table(G: FiniteGroup, chi: InducedCharacter, m: int, eligible: list[int]):
    """kappa[c][l] = trace over Gal(Q(zeta_m)/Q) lifts of chi(C) zeta_m^(-l).

    Exact rational integers; chi(C) lies in Q(zeta_m) for eligible classes, so
    the lift choice is immaterial.  Values enter through their root-of-unity
    exponent multisets and a shared integer trace table.
    """
    cache_key = ("kappa", id(chi), m, tuple(eligible))
    cached = G._cache.get(cache_key)
    if cached is not None:
        return cached
    L = lcm(m, chi.conductor)
    up = L // chi.conductor
    kappa = []
    for c in eligible:
        exps = chi.class_exponents[c]
        col = []
        for l in range(m):
            col.append(sum(_trace_entry(m, L, (e * up) % L, l) for e in exps))
        kappa.append(col)
    G._cache[cache_key] = kappa
    return kappa


def _pinned_offsets(G: FiniteGroup, chi: InducedCharacter, chain: PowerChain) -> list[int]:
    """F[l] = sum over j with gcd(j, m) > 1 of chi(pinned power) zeta_m^(-lj),
    each term read off the pinned elements directly; exact integers."""
    m = chain.m
    cache_key = ("pinned_offsets", id(chi), chain.signature())
    cached = G._cache.get(cache_key)
    if cached is not None:
        return cached
    ids = G.class_index()
    L = lcm(m, chi.conductor)
    red0 = [row[0] for row in reduction_rows(L)]
    step = L // m
    up = L // chi.conductor
    terms = []  # (j, exponent multiset at conductor L)
    for j in range(m):
        d = gcd(j, m)
        if d == 1 and m > 1:
            continue
        g = chain.pinned[d] if d > 1 else None
        elem = G.power(g, j // d) if g is not None else G.identity
        exps = chi.class_exponents[int(ids[elem])]
        terms.append((j, [(e * up) % L for e in exps]))
    out = []
    for l in range(m):
        total = 0
        for j, exps in terms:
            s = ((-l * j) % m) * step
            for e in exps:
                total += red0[(e + s) % L]
        out.append(total)
    G._cache[cache_key] = out
    return out


@dataclass(frozen=True)
class MultiplicityVector:
    """Exact eigenvalue multiplicities mu_l of the candidate's image under a
    character's representation, l indexing the m-th roots of unity."""

    character: str
    order: int
    values: tuple[Fraction, ...]

    def integral_nonnegative(self) -> bool:
        return all(v.denominator == 1 and v >= 0 for v in self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def multiplicities(chain: PowerChain, chi: InducedCharacter) -> MultiplicityVector:
    """Discrete-Fourier recovery of eigenvalue multiplicities from power traces."""
    if chain.pa is None:
        raise GroupError("multiplicities need a concrete vector on the chain")
    G = chain.group
    m = chain.m
    if m == 1:
        return MultiplicityVector(character=chi.name, order=1, values=(Fraction(chi.degree),))
    support = chain.pa.nonzero_classes()
    rows = {c: _kappa_table(G, chi, m, [c])[0] for c in support}
    F = _pinned_offsets(G, chi, chain)
    vals = []
    for l in range(m):
        total = F[l]
        for c in support:
            total += chain.pa.entries[c] * rows[c][l]
        vals.append(Fraction(total, m))
    return MultiplicityVector(character=chi.name, order=m, values=tuple(vals))


# ---------------------------------------------------------------------------
# basic constraints


@dataclass(frozen=True)
class ConstraintOptions:
    assume_zc_quotients: bool = True
    cliff_weiss: str = "auto"  # "auto" | "off"
    extra_cliff_weiss: tuple = ()  # explicit (N, K) Subgroup pairs


@dataclass(frozen=True)
class ConstraintCheck:
    constraint: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ConstraintReport:
    checks: tuple[ConstraintCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[ConstraintCheck]:
        return [c for c in self.checks if not c.passed]


def _cliff_weiss_pairs(G: FiniteGroup):
    """Default (N, K) pairs: corefree cyclic-quotient kernels of abelian normals."""
    pairs = G._cache.get("cw_pairs")
    if pairs is None:
        pairs = []
        for N in abelian_normal_subgroups(G):
            if N.order == 1:
                continue
            for K in corefree_cyclic_kernels(G, N):
                pairs.append((N, K))
        G._cache["cw_pairs"] = pairs
    return pairs


def _cliff_weiss_rows(G: FiniteGroup, N: Subgroup, K: Subgroup):
    """Rows sum_k |C_G(xk)| eps_(xk) over coset representatives x of K in N."""
    ids = G.class_index()
    cent = G.centralizer_sizes()
    rows = {}
    done = set()
    for x in N.elements:
        key = min(G.mul(x, k) for k in K.elements)
        if key in done:
            continue
        done.add(key)
        coef = [0] * len(G.classes())
        for k in K.elements:
            xk = G.mul(x, k)
            coef[int(ids[xk])] += int(cent[xk])
        rows[key] = tuple(coef)
    return sorted(set(rows.values()))


def basic_constraints(chain: PowerChain, options: ConstraintOptions | None = None) -> ConstraintReport:
    """The structural constraint battery on a concrete chain.

    (a) augmentation one; (b) vanishing identity entry for m > 1;
    (c) support only on classes whose order divides m; (d) block sums over
    every proper non-trivial normal subgroup match the augmentation vector of
    a compatible pinned class in the quotient (when ZC is assumed on
    quotients); (e) non-negativity of the centralizer-weighted coset sums for
    the eligible kernel pairs.
    """
    if chain.pa is None:
        raise GroupError("basic_constraints needs a concrete vector")
    options = options or ConstraintOptions()
    G = chain.group
    m = chain.m
    pa = chain.pa
    checks = []

    checks.append(
        ConstraintCheck("augmentation-one", pa.augmentation == 1, f"sum={pa.augmentation}")
    )
    ident_class = int(G.class_index()[G.identity])
    ident_ok = pa.entries[ident_class] == 0 or m == 1
    checks.append(
        ConstraintCheck("identity-entry-zero", ident_ok, f"entry={pa.entries[ident_class]}")
    )
    bad_orders = [
        c
        for c in pa.nonzero_classes()
        if m % G.order_of(G.classes()[c].representative)
    ]
    checks.append(
        ConstraintCheck("support-order-divides", not bad_orders, f"violating classes {bad_orders}")
    )

    if options.assume_zc_quotients:
        for N in _proper_nontrivial_normals(G):
            qb = _quotient_blocks(G, chain, N)
            sums = [0] * qb.n_blocks
            for c, e in enumerate(pa.entries):
                sums[qb.block_of_class[c]] += e
            ok = (
                all(s in (0, 1) for s in sums)
                and sum(sums) == 1
                and all(s == 0 for b, s in enumerate(sums) if b not in qb.allowed_blocks)
            )
            checks.append(
                ConstraintCheck(
                    f"quotient-pinned[N={N.elements[:4]}|{N.order}]",
                    ok,
                    f"block sums {sums}, allowed {sorted(qb.allowed_blocks)}",
                )
            )

    if options.cliff_weiss != "off":
        pairs = list(_cliff_weiss_pairs(G)) + list(options.extra_cliff_weiss)
        for N, K in pairs:
            for coef in _cliff_weiss_rows(G, N, K):
                total = sum(c * e for c, e in zip(coef, pa.entries))
                if total < 0:
                    checks.append(
                        ConstraintCheck(
                            f"cliff-weiss[N={N.order},K={K.order}]",
                            False,
                            f"weighted sum {total} < 0",
                        )
                    )
                    break
            else:
                checks.append(ConstraintCheck(f"cliff-weiss[N={N.order},K={K.order}]", True))
    return ConstraintReport(checks=tuple(checks))


# ---------------------------------------------------------------------------
# the filter


@dataclass(frozen=True)
class FilterResult:
    survivors: tuple[PartialAugVector, ...]
    rejections: dict
    nodes: int
    leaves: int
    budget_exceeded: bool


def _character_objects(G: FiniteGroup, characters) -> list[InducedCharacter]:
    if characters is None or characters == "all":
        return default_character_set(G)
    if characters == "linear":
        return linear_characters_of_group(G)
    if characters == "induced":
        lin = {id(c) for c in linear_characters_of_group(G)}
        return [c for c in default_character_set(G) if c.degree > 1]
    return list(characters)


def run_filter(
    G: FiniteGroup,
    m: int,
    chain: PowerChain,
    characters="all",
    bound: int = 5,
    budget: int = DEFAULT_BUDGET,
    options: ConstraintOptions | None = None,
) -> FilterResult:
    """Enumerate candidate vectors for the chain and keep HeLP survivors.

    Output is canonically sorted and independent of the enumeration order.
    """
    if bound < 1:
        raise GroupError("bound must be at least 1")
    if chain.m != m:
        raise GroupError("chain order disagrees with m")
    options = options or ConstraintOptions()
    nclasses = len(G.classes())

    if m == 1:
        entries = [0] * nclasses
        entries[int(G.class_index()[G.identity])] = 1
        pa = PartialAugVector(group=G, order=1, entries=tuple(entries))
        return FilterResult(
            survivors=(pa,), rejections={}, nodes=0, leaves=1, budget_exceeded=False
        )

    eligible = _eligible_classes(G, m)
    nvars = len(eligible)
    labels = []
    row_lo, row_hi, row_coefs = [], [], []

    # augmentation
    row_lo.append(1)
    row_hi.append(1)
    row_coefs.append([1] * nvars)
    labels.append("augmentation-one")

    forced_trivial_normals = []
    if options.assume_zc_quotients:
        for N in _proper_nontrivial_normals(G):
            qb = _quotient_blocks(G, chain, N)
            if qb.identity_forced:
                forced_trivial_normals.append(N)
            for b in range(qb.n_blocks):
                coef = [0] * nvars
                touched = False
                for idx, c in enumerate(eligible):
                    if qb.block_of_class[c] == b:
                        coef[idx] = 1
                        touched = True
                allowed = b in qb.allowed_blocks
                if not touched and not allowed:
                    continue
                row_lo.append(0)
                row_hi.append(1 if allowed else 0)
                row_coefs.append(coef)
                labels.append(f"quotient[N#{N.order}@{N.elements[0]}..]:block{b}")

    if options.cliff_weiss != "off":
        pairs = [
            (N, K)
            for (N, K) in _cliff_weiss_pairs(G)
            if any(M.elements == N.elements for M in forced_trivial_normals)
        ]
        pairs += list(options.extra_cliff_weiss)
        for N, K in pairs:
            for coef_full in _cliff_weiss_rows(G, N, K):
                coef = [coef_full[c] for c in eligible]
                if not any(coef):
                    continue
                row_lo.append(0)
                row_hi.append(kernels.BIG)
                row_coefs.append(coef)
                labels.append(f"cliff-weiss[N={N.order},K={K.order}]")

    # Multiplicity conditions: m * mu_l = F_l + kappa . eps must land in
    # [0, m*degree] and be divisible by m.  The range part enters the DFS as
    # linear rows (with the offset folded into the bounds) so it prunes the
    # search; the congruence part is checked at leaves.  Each range row is
    # reduced by the best multiple of the augmentation equality (sum eps = 1),
    # which turns the dense trace rows into near-diagonal pinning rows.
    mod_coefs, mod_offsets, mod_labels = [], [], []
    seen_rows = set()
    seen_mods = set()
    for chi in _character_objects(G, characters):
        kappa = [_kappa_table(G, chi, m, [c])[0] for c in eligible]
        F = _pinned_offsets(G, chi, chain)
        for l in range(m):
            coef = [kappa[idx][l] for idx in range(nvars)]
            lo = -F[l]
            hi = m * chi.degree - F[l]
            lam = sorted(coef)[nvars // 2] if nvars else 0
            if lam and sum(abs(c - lam) for c in coef) < sum(abs(c) for c in coef):
                coef = [c - lam for c in coef]
                lo -= lam
                hi -= lam
            key = (tuple(coef), lo, hi)
            if key not in seen_rows:
                seen_rows.add(key)
                row_lo.append(lo)
                row_hi.append(hi)
                row_coefs.append(coef)
                labels.append(f"multiplicity-range[{chi.name}:l={l}]")
            mkey = (tuple(kappa[idx][l] for idx in range(nvars)), F[l])
            if mkey not in seen_mods:
                seen_mods.add(mkey)
                mod_coefs.append(list(mkey[0]))
                mod_offsets.append(F[l])
                mod_labels.append(f"multiplicity-integrality[{chi.name}:l={l}]")

    # Order variables so that small-support rows complete early: congruence
    # rows then pin their last variable to an arithmetic progression.
    order = _variable_order(nvars, row_coefs + mod_coefs)
    row_coefs = [[row[i] for i in order] for row in row_coefs]
    mod_coefs = [[row[i] for i in order] for row in mod_coefs]

    solutions, stats = kernels.pa_enumerate(
        nvars, bound, row_lo, row_hi, row_coefs, mod_coefs, mod_offsets, m, budget
    )

    survivors = []
    for sol in solutions:
        entries = [0] * nclasses
        for pos, val in enumerate(sol):
            entries[eligible[order[pos]]] = int(val)
        survivors.append(PartialAugVector(group=G, order=m, entries=tuple(entries)))
    survivors.sort(key=lambda pa: pa.entries)

    rejections = {}
    for lab, cnt in zip(labels, stats["row_prunes"]):
        if cnt:
            rejections[lab] = rejections.get(lab, 0) + cnt
    for lab, cnt in zip(mod_labels, stats["mod_rejects"]):
        if cnt:
            rejections[lab] = rejections.get(lab, 0) + cnt

    return FilterResult(
        survivors=tuple(survivors),
        rejections=rejections,
        nodes=stats["nodes"],
        leaves=stats["leaves"],
        budget_exceeded=stats["budget_exceeded"],
    )


def help_filter(
    G: FiniteGroup,
    m: int,
    chain: PowerChain,
    characters="all",
    bound: int = 5,
    budget: int = DEFAULT_BUDGET,
) -> list[PartialAugVector]:
    """Survivor list for one chain; raises if the enumeration budget is hit."""
    result = run_filter(G, m, chain, characters=characters, bound=bound, budget=budget)
    if result.budget_exceeded:
        raise EnumerationBudgetError(
            f"enumeration budget {budget} exceeded at order {m} (nodes={result.nodes})"
        )
    return list(result.survivors)


def rational_conjugacy_check(chain: PowerChain) -> bool:
    """True iff every level of the chain has non-negative partial augmentations.

    Pinned levels are genuine group elements, hence trivially non-negative;
    the order-m level is read from the chain's vector.
    """
    if chain.pa is None:
        raise GroupError("chain carries no vector")
    return chain.pa.is_nonnegative()


# ---------------------------------------------------------------------------
# audits


@dataclass(frozen=True)
class OrderAudit:
    m: int
    chains: int
    survivors: int
    negative_survivors: int
    status: str  # certified | undecided | budget
    rejections: dict
    elapsed_s: float


@dataclass(frozen=True)
class AuditReport:
    group_order: int
    bound: int
    characters: str
    orders: tuple[OrderAudit, ...]

    @property
    def all_certified(self) -> bool:
        return all(o.status == "certified" for o in self.orders)

    def to_record(self) -> dict:
        return {
            "schema_version": 1,
            "group_order": self.group_order,
            "bound": self.bound,
            "characters": self.characters,
            "orders": [
                {
                    "m": o.m,
                    "chains": o.chains,
                    "survivors": o.survivors,
                    "negative_survivors": o.negative_survivors,
                    "status": o.status,
                    "rejections": dict(sorted(o.rejections.items())),
                    "elapsed_s": o.elapsed_s,
                }
                for o in self.orders
            ],
        }


def zc_audit(
    G: FiniteGroup,
    orders,
    bound: int = 5,
    characters: str = "all",
    budget: int = DEFAULT_BUDGET,
) -> AuditReport:
    """Run the filter over every chain of each requested order and aggregate.

    An order is `certified` when every survivor is non-negative (vacuously
    when no chain or no survivor exists), `undecided` when some survivor has
    a negative entry, `budget` when enumeration was cut off.  The bound is
    recorded so absence-of-survivors claims stay scoped to the box searched.
    """
    audits = []
    for m in sorted(set(int(x) for x in orders)):
        t0 = time.perf_counter()
        total = 0
        negative = 0
        rejections: dict = {}
        exceeded = False
        chains = enumerate_chains(G, m)
        for chain in chains:
            res = run_filter(G, m, chain, characters=characters, bound=bound, budget=budget)
            if res.budget_exceeded:
                exceeded = True
                break
            total += len(res.survivors)
            negative += sum(1 for pa in res.survivors if not pa.is_nonnegative())
            for k, v in res.rejections.items():
                rejections[k] = rejections.get(k, 0) + v
        status = "budget" if exceeded else ("undecided" if negative else "certified")
        audits.append(
            OrderAudit(
                m=m,
                chains=len(chains),
                survivors=total,
                negative_survivors=negative,
                status=status,
                rejections=rejections,
                elapsed_s=round(time.perf_counter() - t0, 6),
            )
        )
    return AuditReport(
        group_order=G.order, bound=bound, characters=str(characters), orders=tuple(audits)
    )
