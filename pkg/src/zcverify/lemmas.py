"""Executable verification of the structural lemmas, the exact counting
identity for induced-character eigenvalue multiplicities, and the scanner for
the minimal-counterexample shape.

Every check returns a LemmaVerdict: conclusions are only asserted when the
hypotheses hold (controls exercise the gated branch), and a verdict with
hypotheses_hold and a failed conclusion is a build-stopping event because it
would contradict a proved statement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .characters import (
    corefree_cyclic_kernels,
    induce,
    linear_character,
    transporter_sets,
    xset_size,
)
from .kernels import coset_ids as _coset_ids
from .cyclotomic import CyclotomicNumber
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    centralizer,
    derived_subgroup,
    image_order_in_quotient,
    is_hamiltonian,
    is_nilpotent,
    normal_subgroups,
    normalizer,
    quotient,
    socle,
    subgroup_closure,
    sylow_subgroup,
    trivial_subgroup,
)
from .help_engine import element_chain, multiplicities
from .numutil import euler_phi, factorize, p_part, prime_divisors

__all__ = [
    "LemmaVerdict",
    "BoundContext",
    "CounterexampleShape",
    "ShapeExclusion",
    "check_centralizer_nilpotency",
    "check_hall_properties",
    "check_class_fusion",
    "check_odd_commutators",
    "verify_count_identity",
    "build_bound_context",
    "check_coset_bounds",
    "scan_counterexample_shape",
    "shape_exclusion_conditions",
    "is_cyclic_by_abelian",
    "hamiltonian_setting",
    "run_lemma_suite",
]


@dataclass(frozen=True)
class LemmaVerdict:
    lemma: str
    hypotheses_hold: bool
    conclusion_holds: bool | None  # None when gated out
    witnesses: dict

    def ok(self) -> bool:
        """False only for the build-stopping case: hypotheses true, conclusion false."""
        return not (self.hypotheses_hold and self.conclusion_holds is False)

    def to_record(self) -> dict:
        return {
            "lemma": self.lemma,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "witnesses": _jsonable(self.witnesses),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Subgroup):
        return {"order": obj.order, "elements": list(obj.elements[:12])}
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


# ---------------------------------------------------------------------------
# setting helpers


def is_cyclic_by_abelian(G: FiniteGroup) -> bool:
    """Some cyclic normal subgroup contains the derived subgroup."""
    Gp = derived_subgroup(G)
    return any(N.is_cyclic() and Gp <= N for N in normal_subgroups(G))


def _centre_of(G: FiniteGroup, H: Subgroup) -> Subgroup:
    inner = centralizer(G, H.elements)
    return Subgroup(G, [g for g in inner.elements if H.mask[g]])


def hamiltonian_setting(G: FiniteGroup, A: Subgroup) -> dict:
    """Shared data for the cyclic-base/Hamiltonian-quotient checks.

    Returns A's generator, C = C_G(A), D = Z(C), the derived subgroup, and
    the order-2 elements of G' outside A (the nu candidates); `valid` is the
    base hypothesis (A cyclic normal with Hamiltonian quotient).
    """
    out = {"valid": False, "nu_candidates": ()}
    if not (A.is_cyclic() and A.is_normal()):
        return out
    Q = quotient(G, A).target
    if not is_hamiltonian(Q):
        return out
    a = A.generator()
    C = centralizer(G, [a])
    D = _centre_of(G, C)
    Gp = derived_subgroup(G)
    nus = tuple(
        g for g in Gp.elements if not A.mask[g] and G.order_of(g) == 2
    )
    out.update(
        valid=True,
        a=a,
        n=A.order,
        C=C,
        D=D,
        derived=Gp,
        nu_candidates=nus,
        cyclic_by_abelian=is_cyclic_by_abelian(G),
    )
    return out


# ---------------------------------------------------------------------------
# structural lemmas


def check_centralizer_nilpotency(G: FiniteGroup, A: Subgroup) -> LemmaVerdict:
    """For cyclic normal A with nilpotent quotient: C_G(A) is a normal
    nilpotent subgroup containing the derived subgroup, and commutators
    centralize A."""
    hyp = A.is_cyclic() and A.is_normal()
    if hyp:
        hyp = is_nilpotent(quotient(G, A).target)
    if not hyp:
        return LemmaVerdict("centralizer-nilpotency", False, None, {"A_order": A.order})
    C = centralizer(G, A.elements)
    Gp = derived_subgroup(G)
    Cgroup = _subgroup_as_group(G, C)
    commutes = all(G.comm(c, x) == G.identity for c in Gp.elements for x in A.elements)
    ok = C.is_normal() and is_nilpotent(Cgroup) and Gp <= C and commutes
    return LemmaVerdict(
        "centralizer-nilpotency",
        True,
        ok,
        {"C_order": C.order, "derived_order": Gp.order, "commutators_central": commutes},
    )


def _subgroup_as_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    from .groups import closure

    return closure(H.elements, ambient=G)


def check_hall_properties(G: FiniteGroup, A: Subgroup) -> LemmaVerdict:
    """For a cyclic normal Hall subgroup A with nilpotent quotient:
    C_G(A) = C_G(Soc(A)); and whenever p does not divide |Z(G)|, the Sylow
    p-subgroups are abelian."""
    base = A.is_cyclic() and A.is_normal() and gcd(A.order, G.order // A.order) == 1
    hyp = base and is_nilpotent(quotient(G, A).target)
    if not hyp:
        return LemmaVerdict("hall-centralizer-sylow", False, None, {"A_order": A.order})
    if A.order == 1:
        soc_a = A
    else:
        Agroup_socle = socle(_subgroup_as_group(G, A))
        # map socle elements back into G (closure preserves sorted order)
        amap = list(A.elements)
        soc_a = Subgroup(G, [amap[i] for i in Agroup_socle.elements])
    part1 = centralizer(G, A.elements).elements == centralizer(G, soc_a.elements).elements
    from .groups import center

    Z = center(G)
    part2 = True
    sylow_abelian = {}
    for p in prime_divisors(G.order):
        if Z.order % p == 0:
            continue
        P = sylow_subgroup(G, p)
        ab = P.is_abelian()
        sylow_abelian[p] = ab
        part2 = part2 and ab
    return LemmaVerdict(
        "hall-centralizer-sylow",
        True,
        part1 and part2,
        {"socle_centralizer_match": part1, "sylow_abelian": sylow_abelian},
    )


def _class_set(G: FiniteGroup, x: int) -> set[int]:
    return set(G.classes()[int(G.class_index()[x])].members)


def check_class_fusion(
    G: FiniteGroup,
    x: int,
    N: Subgroup | None = None,
    A: Subgroup | None = None,
    partner: int | None = None,
) -> LemmaVerdict:
    """Fusion x^G N = x^G under one of three hypothesis patterns.

    With A given (pattern i): x outside C_G(A) and N the closure of the
    commutators (a, x^g); with `partner` given (pattern ii): N = <(x, partner)>
    non-trivial normal with (x,partner) centralizing x and every commutator
    (x, h) centralizing the partner; with a raw N: only normality is required
    (fusion is trivially true for the trivial subgroup).
    """
    witnesses: dict = {"x": x}
    if A is not None:
        hyp = (
            A.is_cyclic()
            and A.is_normal()
            and is_nilpotent(quotient(G, A).target)
            and not centralizer(G, A.elements).mask[x]
        )
        if not hyp:
            return LemmaVerdict("class-fusion(i)", False, None, witnesses)
        gens = {G.comm(a, G.conj(x, g)) for a in A.elements for g in range(G.order)}
        N = subgroup_closure(G, gens)
        witnesses["N_order"] = N.order
        hyp = N.order > 1 and N.is_normal() and N <= derived_subgroup(G)
        label = "class-fusion(i)"
    elif partner is not None:
        c = G.comm(x, partner)
        N = subgroup_closure(G, [c])
        witnesses.update(partner=partner, commutator=c, N_order=N.order)
        hyp = (
            N.order > 1
            and N.is_normal()
            and G.comm(c, x) == G.identity
            and all(G.comm(G.comm(x, h), partner) == G.identity for h in range(G.order))
        )
        label = "class-fusion(ii)"
    elif N is not None:
        hyp = N.is_normal()
        witnesses["N_order"] = N.order
        label = "class-fusion(raw)"
    else:
        raise GroupError("supply A, partner, or N")
    if not hyp:
        return LemmaVerdict(label, False, None, witnesses)
    cls = _class_set(G, x)
    product = {G.mul(c, n) for c in cls for n in N.elements}
    return LemmaVerdict(label, True, product == cls, witnesses)


def check_odd_commutators(G: FiniteGroup, A: Subgroup) -> LemmaVerdict:
    """In the Hamiltonian-quotient setting, every odd-order g has all its
    commutators in the odd part of A and centralizes the 2-part of D."""
    setting = hamiltonian_setting(G, A)
    if not setting["valid"]:
        return LemmaVerdict("odd-commutators", False, None, {"A_order": A.order})
    D = setting["D"]
    n = setting["n"]
    a = setting["a"]
    odd_a = subgroup_closure(G, [G.power(a, p_part(n, 2))])
    d2 = [d for d in D.elements if G.order_of(d) == p_part(G.order_of(d), 2)]
    ok = True
    witness = None
    for g in range(G.order):
        og = G.order_of(g)
        if og % 2 == 0:
            continue
        for h in range(G.order):
            if not odd_a.mask[G.comm(g, h)]:
                ok, witness = False, {"g": g, "h": h}
                break
        if not ok:
            break
        for d in d2:
            if G.comm(g, d) != G.identity:
                ok, witness = False, {"g": g, "d": d}
                break
        if not ok:
            break
    return LemmaVerdict("odd-commutators", True, ok, {"counterexample": witness})


# ---------------------------------------------------------------------------
# the exact counting identity


def _conjugates_of_subgroup(G: FiniteGroup, K: Subgroup) -> list[Subgroup]:
    seen = {}
    for t in range(G.order):
        elems = tuple(sorted(G.conj(k, t) for k in K.elements))
        seen.setdefault(elems, Subgroup(G, elems))
    return list(seen.values())


def _kernel_orbit_reps(G: FiniteGroup, kernel_list: list[Subgroup]) -> list[Subgroup]:
    remaining = {K.elements: K for K in kernel_list}
    reps = []
    while remaining:
        elems = min(remaining)
        K = remaining.pop(elems)
        reps.append(K)
        for conj in _conjugates_of_subgroup(G, K):
            remaining.pop(conj.elements, None)
    return reps


def _eigenvalue_index(value: CyclotomicNumber, m: int) -> int:
    for l in range(m):
        if CyclotomicNumber.zeta(m, l) == value:
            return l
    raise GroupError("character value is not an m-th root of unity")


def verify_count_identity(
    G: FiniteGroup, D: Subgroup, u_element: int, x: int, f: int
) -> LemmaVerdict:
    """Exact equality between the kernel-weighted eigenvalue multiplicities of
    an element's induced images and the centralizer/transporter counting side,
    together with the two supporting identities (per-kernel multiplicity =
    index-weighted coset intersection; double-count of coset intersections).

    Hypotheses: D abelian normal; u outside D with f the exact order of its
    image modulo D (so u^f is the first power landing in D); x in D with
    x^|u| = 1.  The u-in-D case is reported as gated (no valid f exists).
    """
    witnesses: dict = {"u": u_element, "x": x, "f": f}
    if not (D.is_abelian() and D.is_normal()):
        return LemmaVerdict("count-identity", False, None, witnesses)
    m = G.order_of(u_element)
    witnesses["m"] = m
    u_in_d = bool(D.mask[u_element])
    f_valid = not u_in_d and f == image_order_in_quotient(G, u_element, D)
    x_ok = bool(D.mask[x]) and G.power(x, m) == G.identity
    if not (f_valid and x_ok):
        witnesses["gate"] = "u inside D (no valid f)" if u_in_d else "f or x invalid"
        return LemmaVerdict("count-identity", False, None, witnesses)

    gamma = G.power(u_element, f)
    kernel_list = corefree_cyclic_kernels(G, D)
    witnesses["kernels"] = [K.order for K in kernel_list]
    chain = element_chain(G, u_element)
    chars = {K.elements: induce(linear_character(D, K), G) for K in kernel_list}

    lhs = Fraction(0)
    for K in kernel_list:
        chi = chars[K.elements]
        mv = multiplicities(chain, chi)
        l = _eigenvalue_index(linear_character(D, K).values[x], m)
        lhs += euler_phi(D.order // K.order) * mv.values[l]

    ids = G.class_index()
    cent = G.centralizer_sizes()
    eps = 1 if ids[x] == ids[u_element] else 0
    term1 = Fraction(euler_phi(m), m) * int(cent[x]) * eps

    c_gamma = int(cent[gamma])
    index_gamma = Fraction(c_gamma, D.order)
    xf = G.power(x, f)
    gamma_class = G.classes()[int(ids[gamma])].members
    term2 = Fraction(0)
    for K in _kernel_orbit_reps(G, kernel_list):
        ngk = normalizer(G, K).order
        total_x = sum(xset_size(G, K, xf, z) for z in gamma_class)
        term2 += Fraction(euler_phi(D.order // K.order), ngk) * total_x
    term2 *= index_gamma / f
    rhs = term1 + term2
    identity_main = lhs == rhs
    witnesses["lhs"] = lhs
    witnesses["rhs"] = rhs

    # supporting identity: per-kernel multiplicity of the f-power equals the
    # gamma-centralizer index times a coset intersection count
    chain_f = element_chain(G, gamma)  # gamma is exactly u^f here
    mf = G.order_of(gamma)
    support_a = True
    for K in kernel_list:
        chi = chars[K.elements]
        psi = linear_character(D, K)
        if mf > 1:
            mv = multiplicities(chain_f, chi)
            l = _eigenvalue_index(psi.values[xf], mf)
            left = mv.values[l]
        else:
            left = Fraction(chi.degree) if psi.values[xf].as_integer() == 1 else Fraction(0)
        inter = sum(1 for k in K.elements if ids[G.mul(xf, k)] == ids[gamma])
        right = Fraction(c_gamma, D.order) * inter
        if left != right:
            support_a = False
            witnesses["support_a_fail"] = {"K": K.order, "left": left, "right": right}
            break

    # supporting identity: double count of sum_t |(x^f)^t K ∩ gamma^G|
    support_b = True
    for K in kernel_list:
        left = 0
        gset = set(gamma_class)
        for t in range(G.order):
            xft = G.conj(xf, t)
            left += sum(1 for k in K.elements if G.mul(xft, k) in gset)
        right = sum(xset_size(G, K, xf, z) for z in gamma_class)
        if left != right:
            support_b = False
            witnesses["support_b_fail"] = {"K": K.order, "left": left, "right": right}
            break

    ok = identity_main and support_a and support_b
    witnesses.update(main=identity_main, support_a=support_a, support_b=support_b)
    return LemmaVerdict("count-identity", True, ok, witnesses)


# ---------------------------------------------------------------------------
# coset-transporter bound battery


@dataclass(frozen=True)
class BoundContext:
    """Everything the bound battery consumes, for one (x, f) probe.

    f splits as f_local * f_coprime with f_coprime coprime to |D| and every
    prime of f_local dividing |D|; B is the unique subgroup of A of order
    gcd(f, n).  gamma is an optional pinned image element (logged only).
    """

    group: FiniteGroup
    A: Subgroup
    a: int
    n: int
    C: Subgroup
    D: Subgroup
    nu_candidates: tuple[int, ...]
    f: int
    f_local: int
    f_coprime: int
    B: Subgroup
    x: int
    gamma: int | None = None

    def __post_init__(self):
        if self.f != self.f_local * self.f_coprime:
            raise GroupError("f factorization broken")
        if gcd(self.f_coprime, self.D.order) != 1:
            raise GroupError("coprime part shares a prime with |D|")
        for p in prime_divisors(self.f_local) if self.f_local > 1 else ():
            if self.D.order % p:
                raise GroupError("local part has a prime outside |D|")
        if self.B.order != gcd(self.f, self.n):
            raise GroupError("B must have order gcd(f, n)")
        for nu in self.nu_candidates:
            if self.group.order_of(nu) != 2:
                raise GroupError("nu candidates must have order 2")


def build_bound_context(
    G: FiniteGroup, A: Subgroup, x: int, f: int, gamma: int | None = None
) -> BoundContext:
    setting = hamiltonian_setting(G, A)
    if not setting["valid"]:
        raise GroupError("context requires a cyclic normal base with Hamiltonian quotient")
    n = setting["n"]
    a = setting["a"]
    D = setting["D"]
    f_local = 1
    for p, k in factorize(f):
        if D.order % p == 0:
            f_local *= p**k
    f_coprime = f // f_local
    B = subgroup_closure(G, [G.power(a, n // gcd(f, n))])
    return BoundContext(
        group=G,
        A=A,
        a=a,
        n=n,
        C=setting["C"],
        D=D,
        nu_candidates=setting["nu_candidates"],
        f=f,
        f_local=f_local,
        f_coprime=f_coprime,
        B=B,
        x=x,
        gamma=gamma,
    )


def check_coset_bounds(ctx: BoundContext) -> LemmaVerdict:
    """The pure group-theoretic bound battery for one (x, f) probe:

    - every corefree kernel K <= D meets the derived subgroup exactly in
      <nu> or <a^(n/2) nu> (and then nu is non-central with a 2-element class);
    - |Y| <= 2 and |X_{K, x^f, z}| is 0, |C|, or 2|C| for every coset, with
      the conditional 1|C| bound when f is even or no commutator of x^f hits
      the nu class;
    - [C_G(x^f) : C_G(x)] <= gcd(2, f) gcd(f, n).

    Unit-contingent inequalities are computed into the log, never asserted.
    """
    G = ctx.group
    setting_ok = (
        ctx.A.is_cyclic()
        and ctx.A.is_normal()
        and is_hamiltonian(quotient(G, ctx.A).target)
        and bool(ctx.nu_candidates)
        and not is_cyclic_by_abelian(G)
        and bool(ctx.D.mask[ctx.x])
    )
    log: dict = {"x": ctx.x, "f": ctx.f}
    if not setting_ok:
        return LemmaVerdict("coset-bounds", False, None, log)
    n = ctx.n
    if n % 2:
        # the non-cyclic-by-abelian hypothesis forces an even base order
        return LemmaVerdict("coset-bounds", True, False, {"n_odd": n})

    ids = G.class_index()
    cent = G.centralizer_sizes()
    Gp = derived_subgroup(G)
    nu = ctx.nu_candidates[0]
    half = G.power(ctx.a, n // 2)
    half_nu = G.mul(half, nu)
    a_nu_group = subgroup_closure(G, [ctx.a, nu])

    kernel_list = corefree_cyclic_kernels(G, ctx.D)
    log["kernel_count"] = len(kernel_list)
    ok = True

    if kernel_list:
        nu_class = set(G.classes()[int(ids[nu])].members)
        if nu_class != {nu, half_nu}:
            ok = False
            log["nu_class"] = sorted(nu_class)
    for K in kernel_list:
        meet_derived = tuple(sorted(k for k in K.elements if Gp.mask[k]))
        meet_anu = tuple(sorted(k for k in K.elements if a_nu_group.mask[k]))
        expected = (
            tuple(sorted((G.identity, nu))),
            tuple(sorted((G.identity, half_nu))),
        )
        if meet_derived != meet_anu or meet_anu not in expected:
            ok = False
            log["kernel_meet_fail"] = {"K": K.elements, "derived": meet_derived, "anu": meet_anu}
            break

    xf = G.power(ctx.x, ctx.f)
    cxf = int(cent[xf])
    cx = int(cent[ctx.x])
    x_commutators = {G.comm(xf, g) for g in range(G.order)}
    nu_class_all = set(G.classes()[int(ids[nu])].members)
    special = ctx.f % 2 == 0 or not (x_commutators & nu_class_all)
    log["special_bound_applies"] = special
    xsizes = []
    for K in kernel_list:
        cids, nc = _coset_ids(G.table, K.elements)
        reps = {}
        for z in range(G.order):
            reps.setdefault(cids[z], z)
        for z in reps.values():
            size = xset_size(G, K, xf, z)
            xsizes.append(size)
            if size % cxf or size // cxf not in (0, 1, 2):
                ok = False
                log["xsize_fail"] = {"K": K.order, "z": z, "size": size, "cxf": cxf}
            if special and size > cxf:
                ok = False
                log["special_fail"] = {"K": K.order, "z": z, "size": size}
        for h in range(G.order):
            ts = transporter_sets(G, K, xf, h)
            if len(ts.y_set) > 2:
                ok = False
                log["y_fail"] = {"K": K.order, "h": h, "y": ts.y_set}
            break  # one h per kernel suffices alongside the exhaustive suite

    index_bound = gcd(2, ctx.f) * gcd(ctx.f, n)
    if cxf % cx or (cxf // cx) > index_bound:
        ok = False
        log["index_fail"] = {"cxf": cxf, "cx": cx, "bound": index_bound}

    # logged, never asserted: the strict-index variant and the aggregated bound
    log["index_ratio"] = cxf // cx
    log["strict_index_would_hold"] = gcd(ctx.f, n) == 1 or (cxf // cx) < index_bound
    log["max_xsize"] = max(xsizes) if xsizes else 0
    log["exp_D"] = _subgroup_exponent(G, ctx.D)
    return LemmaVerdict("coset-bounds", True, ok, log)


def _subgroup_exponent(G: FiniteGroup, H: Subgroup) -> int:
    e = 1
    for h in H.elements:
        o = G.order_of(h)
        e = e * o // gcd(e, o)
    return e


# ---------------------------------------------------------------------------
# counterexample shape


@dataclass(frozen=True)
class CounterexampleShape:
    x: int
    y: int
    w: int
    v: int
    n: int


def scan_counterexample_shape(G: FiniteGroup, A: Subgroup) -> CounterexampleShape | None:
    """Exhaustive scan for the minimal-counterexample relation set.

    The shape requires 8 | |A| (the relations are unsatisfiable otherwise,
    and the scan returns None immediately); a witness is a tuple (x, y, w)
    with x centralizing A, x^2 outside A, v = (y, w) generating the Sylow
    2-part of A, and the full relation list holding.  The first witness in
    lexicographic (x, y, w) order is returned.
    """
    if not (A.is_cyclic() and A.is_normal()):
        raise GroupError("scan requires a cyclic normal base")
    n = A.order
    if n % 8:
        return None
    ident = G.identity
    a = A.generator()
    n2 = p_part(n, 2)
    a2 = G.power(a, n // n2)  # generator of the 2-part
    C = centralizer(G, A.elements)
    orders = G.element_orders()

    xs = [x for x in C.elements if int(orders[x]) == 4 and not A.mask[G.power(x, 2)]]
    inv_a2 = G.inv(a2)
    ws = [
        w
        for w in range(G.order)
        if G.mul(w, w) == ident and G.conj(a2, w) == inv_a2
    ]
    target_y_exp = G.power(a2, (n // 2 - 1) % n2)
    ys = [y for y in range(G.order) if G.conj(a2, y) == target_y_exp]
    half_group = subgroup_closure(G, [G.power(a2, (n // 2) % n2)])

    for x in xs:
        x2 = G.power(x, 2)
        for y in ys:
            if G.mul(x2, G.power(y, 2)) != ident:
                continue
            xy = G.conj(x, y)
            xinv = G.inv(x)
            if not any(xy == G.mul(xinv, z) for z in half_group.elements):
                continue
            for w in ws:
                v = G.comm(y, w)
                if not A.mask[v] or int(orders[v]) != n2:
                    continue
                if G.conj(v, w) != G.inv(v):
                    continue
                if G.conj(v, y) != G.power(v, (n // 2 - 1) % n2):
                    continue
                if G.conj(x, w) != G.mul(G.power(v, (n // 4) % n2), x):
                    continue
                return CounterexampleShape(x=x, y=y, w=w, v=v, n=n)
    return None


@dataclass(frozen=True)
class ShapeExclusion:
    base_not_multiple_of_8: bool
    index_not_multiple_of_16: bool
    action_image_not_4: bool
    action_image_order: int

    def any_condition(self) -> bool:
        return (
            self.base_not_multiple_of_8
            or self.index_not_multiple_of_16
            or self.action_image_not_4
        )


def shape_exclusion_conditions(G: FiniteGroup, A: Subgroup) -> ShapeExclusion:
    """The three sufficient conditions under which the shape cannot occur."""
    n = A.order
    index = G.order // max(n, 1)
    n2 = p_part(n, 2)
    if n2 == 1:
        image = 1
    else:
        a2 = G.power(A.generator(), n // n2)
        exps = set()
        x = a2
        exp_of = {}
        for k in range(n2):
            exp_of[x] = (k + 1) % n2
            x = G.mul(x, a2)
        for g in range(G.order):
            exps.add(exp_of[G.conj(a2, g)])
        image = len(exps)
    return ShapeExclusion(
        base_not_multiple_of_8=n % 8 != 0,
        index_not_multiple_of_16=index % 16 != 0,
        action_image_not_4=image != 4,
        action_image_order=image,
    )


# ---------------------------------------------------------------------------
# suite driver


def _suite_for_entry(entry, eq41_samples: int = 6) -> list[dict]:
    G = entry.group
    A = entry.witness
    records = []

    def push(name_suffix: str, verdict: LemmaVerdict):
        rec = verdict.to_record()
        rec["entry"] = entry.entry_id
        rec["check_id"] = f"{verdict.lemma}{name_suffix}"
        records.append(rec)

    push("", check_centralizer_nilpotency(G, A))
    push("", check_hall_properties(G, A))
    push("", check_odd_commutators(G, A))

    # fusion pattern (i): class representatives outside the centralizer
    Ca = centralizer(G, A.elements)
    outside = [c.representative for c in G.classes() if not Ca.mask[c.representative]]
    for x in outside[:4]:
        push(f"@x{x}", check_class_fusion(G, x, A=A))

    # fusion pattern (ii): search a few qualifying pairs
    found = 0
    for g in range(G.order):
        if found >= 2:
            break
        for h in range(G.order):
            c = G.comm(g, h)
            if c == G.identity:
                continue
            N = subgroup_closure(G, [c])
            if not N.is_normal():
                continue
            if G.comm(c, g) != G.identity:
                continue
            if not all(G.comm(G.comm(g, t), h) == G.identity for t in range(G.order)):
                continue
            push(f"@g{g}h{h}", check_class_fusion(G, g, partner=h))
            found += 1
            break

    # counting identity on a deterministic sample of (u, x, f) triples
    setting = hamiltonian_setting(G, A)
    D = setting["D"] if setting["valid"] else _default_abelian_core(G, A)
    if D is not None:
        count = 0
        for u in range(G.order):
            if count >= eq41_samples:
                break
            if D.mask[u]:
                continue
            f = image_order_in_quotient(G, u, D)
            if not D.mask[G.power(u, f)]:
                continue
            m = G.order_of(u)
            for x in D.elements:
                if G.power(x, m) != G.identity:
                    continue
                push(f"@u{u}x{x}", verify_count_identity(G, D, u, x, f))
                count += 1
                break

    if setting["valid"]:
        # bound battery on deterministic probes: use non-trivial x where possible
        D = setting["D"]
        xs = [x for x in D.elements if x != G.identity][:2] or [G.identity]
        fs = sorted({image_order_in_quotient(G, g, D) for g in range(G.order) if not D.mask[g]})
        probes = 0
        for f in fs:
            for x in xs:
                if probes >= 3:
                    break
                ctx = build_bound_context(G, A, x, f, gamma=None)
                push(f"@x{x}f{f}", check_coset_bounds(ctx))
                probes += 1

        shape = scan_counterexample_shape(G, A)
        excl = shape_exclusion_conditions(G, A)
        consistent = shape is None or not excl.any_condition()
        records.append(
            {
                "entry": entry.entry_id,
                "check_id": "shape-scan",
                "lemma": "shape-scan",
                "hypotheses_hold": True,
                "conclusion_holds": consistent,
                "witnesses": {
                    "shape": None if shape is None else _jsonable(vars(shape)),
                    "conditions": _jsonable(vars(excl)),
                },
            }
        )
    return records


def _default_abelian_core(G: FiniteGroup, A: Subgroup) -> Subgroup | None:
    """Z(C_G(A)) when A is cyclic normal (the canonical abelian normal core)."""
    if not (A.is_cyclic() and A.is_normal()):
        return None
    C = centralizer(G, A.elements)
    return _centre_of(G, C)


def run_lemma_suite(entries, eq41_samples: int = 6) -> list[dict]:
    """The full per-entry verdict ledger, deterministically ordered."""
    records = []
    for entry in sorted(entries, key=lambda e: (e.order, e.entry_id)):
        t0 = time.perf_counter()
        recs = _suite_for_entry(entry, eq41_samples=eq41_samples)
        elapsed = round(time.perf_counter() - t0, 6)
        for r in recs:
            r["elapsed_s"] = elapsed
        records.extend(recs)
    return records
