"""Pure-Python kernels: reference implementations of the hot loops.

The compiled module `zcverify._speedups` mirrors these functions exactly
(same signatures, same results, same traversal order); `zcverify.kernels`
picks one at import time.  Anything here must stay dependency-free and
bit-deterministic.
"""

from __future__ import annotations

BIG = 1 << 62


def _rows(table) -> list[list[int]]:
    # Accept numpy arrays or nested lists; plain lists index much faster here.
    return [list(map(int, row)) for row in table]


def _ints(seq) -> list[int]:
    return [int(x) for x in seq]


def subgroup_closure(table, gens, identity: int) -> list[int]:
    """Sorted element list of the subgroup generated by `gens` inside a table group."""
    t = _rows(table)
    n = len(t)
    inv = [0] * n
    for g in range(n):
        for h in range(n):
            if t[g][h] == identity:
                inv[g] = h
                break
    genset = sorted({int(g) for g in gens} | {inv[int(g)] for g in gens} | {identity})
    member = bytearray(n)
    member[identity] = 1
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for g in genset:
                y = row[g]
                if not member[y]:
                    member[y] = 1
                    nxt.append(y)
        frontier = nxt
    return [i for i in range(n) if member[i]]


def class_ids(table, inverse, identity: int) -> list[int]:
    """Conjugacy class id per element; the identity's class gets id 0.

    Ids are assigned in first-seen order scanning the identity first and then
    elements ascending, which makes the labelling canonical.
    """
    t = _rows(table)
    inv = _ints(inverse)
    n = len(t)
    ids = [-1] * n
    next_id = 0
    for g in [identity] + [x for x in range(n) if x != identity]:
        if ids[g] != -1:
            continue
        for s in range(n):
            ids[t[t[inv[s]][g]][s]] = next_id
        next_id += 1
    return ids


def associativity_violations(table, limit: int = 0) -> int:
    """Count of (a,b,c) with (ab)c != a(bc); stops early at `limit` if nonzero."""
    t = _rows(table)
    n = len(t)
    bad = 0
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tb = t[b]
            tab = t[ab]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    bad += 1
                    if limit and bad >= limit:
                        return bad
    return bad


def coset_ids(table, kelems) -> tuple[list[int], int]:
    """Left-coset id (of the subgroup with elements `kelems`) per group element.

    Ids are assigned in first-seen order scanning elements ascending, so the
    labelling is canonical.  Coset of x is { x*k : k in K }.
    """
    t = _rows(table)
    ks = _ints(kelems)
    n = len(t)
    ids = [-1] * n
    nc = 0
    for x in range(n):
        if ids[x] != -1:
            continue
        row = t[x]
        for k in ks:
            ids[row[k]] = nc
        nc += 1
    return ids, nc


def xset_size(table, inverse, g: int, h: int, kmask) -> int:
    """|{ t : g^t in hK }| where kmask is a membership bytearray for K."""
    t = _rows(table)
    inv = _ints(inverse)
    n = len(t)
    g = int(g)
    hin = t[inv[int(h)]]
    cnt = 0
    for s in range(n):
        conj = t[t[inv[s]][g]][s]
        if kmask[hin[conj]]:
            cnt += 1
    return cnt


def yset(table, inverse, g: int, h: int, kmask) -> list[int]:
    """Sorted list of { k in K : k = (g^h, h^-1 x) for some x in G }."""
    t = _rows(table)
    inv = _ints(inverse)
    n = len(t)
    gh = t[t[inv[int(h)]][int(g)]][int(h)]
    ginv = inv[gh]
    out = set()
    for s in range(n):  # s = h^-1 x ranges over all of G
        c = t[t[ginv][inv[s]]][t[gh][s]]
        if kmask[c]:
            out.add(c)
    return sorted(out)


def transporter_violations(table, inverse, kelems, cent_sizes) -> int:
    """Exhaustive check of the transporter-set cardinality laws for one subgroup K.

    For every g and every coset hK: |X| must be a multiple of |C_G(g)|, and for
    every t with g^t in hK: |X| <= |C_G(g)| * |Y_{K,g,t}|.  Returns the number
    of violations (0 when the laws hold).
    """
    t = _rows(table)
    inv = _ints(inverse)
    cent = _ints(cent_sizes)
    ks = _ints(kelems)
    n = len(t)
    kmask = bytearray(n)
    for k in ks:
        kmask[k] = 1
    cos, nc = coset_ids(table, kelems)
    viol = 0
    for g in range(n):
        cg = cent[g]
        conj = [0] * n
        for s in range(n):
            conj[s] = t[t[inv[s]][g]][s]
        xcnt = [0] * nc
        for s in range(n):
            xcnt[cos[conj[s]]] += 1
        for c in range(nc):
            if xcnt[c] % cg:
                viol += 1
        for s in range(n):
            gz = conj[s]  # g^s; s lies in X_{K,g,h} for any h with hK = (g^s)K
            ginv = inv[gz]
            ys = set()
            tg = t[gz]
            for w in range(n):
                c = t[t[ginv][inv[w]]][tg[w]]
                if kmask[c]:
                    ys.add(c)
            if xcnt[cos[gz]] > cg * len(ys):
                viol += 1
    return viol


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def pa_enumerate(
    nvars: int,
    bound: int,
    row_lo,
    row_hi,
    row_coefs,
    mod_coefs,
    mod_offsets,
    modulus: int,
    budget: int,
):
    """Depth-first enumeration of integer vectors in [-bound, bound]^nvars.

    Linear rows: for each row r, row_lo[r] <= sum_j row_coefs[r][j] * x_j <=
    row_hi[r] (use BIG for an unbounded side); the feasible value interval of
    each variable is narrowed exactly from the suffix slack before branching.
    Modular rows require (offset + coef . x) >= 0 and divisible by `modulus`;
    when such a row reaches its last unassigned variable the surviving values
    form an arithmetic progression, which replaces the plain interval scan.

    Returns (solutions, stats): solutions in lexicographic order over the
    given variable order; stats has nodes, leaves, budget_exceeded,
    row_prunes (per linear row), mod_rejects (per modular row).
    """
    lo = _ints(row_lo)
    hi = _ints(row_hi)
    rows = [_ints(r) for r in row_coefs]
    mods = [_ints(r) for r in mod_coefs]
    moff = _ints(mod_offsets)
    nrows = len(rows)
    nmods = len(mods)

    # Suffix slack per row: tightest add-on achievable from variables >= depth.
    minrest = [[0] * (nvars + 1) for _ in range(nrows)]
    maxrest = [[0] * (nvars + 1) for _ in range(nrows)]
    for r in range(nrows):
        for i in range(nvars - 1, -1, -1):
            c = rows[r][i]
            loadd = min(-bound * c, bound * c)
            hiadd = max(-bound * c, bound * c)
            minrest[r][i] = minrest[r][i + 1] + loadd
            maxrest[r][i] = maxrest[r][i + 1] + hiadd
    var_rows = [[r for r in range(nrows) if rows[r][i]] for i in range(nvars)]
    # Modular rows become decisive at the depth of their last nonzero column.
    mod_last = [[] for _ in range(nvars)]
    const_mods = []
    for q in range(nmods):
        support = [i for i in range(nvars) if mods[q][i]]
        if support:
            mod_last[support[-1]].append(q)
        else:
            const_mods.append(q)

    sums = [0] * nrows
    row_prunes = [0] * nrows
    mod_rejects = [0] * nmods
    solutions: list[tuple[int, ...]] = []
    stack = [0] * nvars
    stats = {"nodes": 0, "leaves": 0, "budget_exceeded": False}
    stats["row_prunes"] = row_prunes
    stats["mod_rejects"] = mod_rejects

    for r in range(nrows):
        if minrest[r][0] > hi[r] or maxrest[r][0] < lo[r]:
            row_prunes[r] += 1
            return solutions, stats
    for q in const_mods:
        if moff[q] < 0 or moff[q] % modulus:
            mod_rejects[q] += 1
            return solutions, stats

    def leaf_check() -> bool:
        for q in range(nmods):
            v = moff[q]
            mrow = mods[q]
            for i in range(nvars):
                xi = stack[i]
                if xi:
                    v += mrow[i] * xi
            if v < 0 or v % modulus:
                mod_rejects[q] += 1
                return False
        return True

    def _mod_residual(q: int, depth: int) -> int:
        v = moff[q]
        mrow = mods[q]
        for i in range(depth):
            xi = stack[i]
            if xi and mrow[i]:
                v += mrow[i] * xi
        return v

    def descend(depth: int) -> bool:
        if depth == nvars:
            stats["leaves"] += 1
            if leaf_check():
                solutions.append(tuple(stack))
            return True
        vlo, vhi = -bound, bound
        for r in var_rows[depth]:
            c = rows[r][depth]
            base_lo = lo[r] - sums[r] - maxrest[r][depth + 1]
            base_hi = hi[r] - sums[r] - minrest[r][depth + 1]
            if c > 0:
                nlo = -((-base_lo) // c)  # ceil(base_lo / c)
                nhi = base_hi // c  # floor(base_hi / c)
            else:
                nlo = -((-base_hi) // c)  # ceil(base_hi / c); c < 0 flips
                nhi = base_lo // c  # floor(base_lo / c)
            if nlo > vlo:
                vlo = nlo
            if nhi < vhi:
                vhi = nhi
            if vlo > vhi:
                row_prunes[r] += 1
                return True
        # congruence rows deciding at this depth; the first gives a progression
        closing = mod_last[depth]
        step = 1
        extra = []
        if closing:
            q = closing[0]
            c = mods[q][depth]
            res = _mod_residual(q, depth)
            g = _gcd(abs(c), modulus)
            if (-res) % g:
                mod_rejects[q] += 1
                return True
            mm = modulus // g
            cc = (c // g) % mm
            rr = ((-res) // g) % mm
            if mm > 1:
                base = (rr * pow(cc, -1, mm)) % mm
                delta = (base - vlo) % mm
                vlo = vlo + delta
                step = mm
                if vlo > vhi:
                    mod_rejects[q] += 1
                    return True
            extra = closing[1:]
        for v in range(vlo, vhi + 1, step):
            stats["nodes"] += 1
            if stats["nodes"] > budget:
                stats["budget_exceeded"] = True
                return False
            skip = False
            for q in extra:
                if (_mod_residual(q, depth) + mods[q][depth] * v) % modulus:
                    mod_rejects[q] += 1
                    skip = True
                    break
            if skip:
                continue
            stack[depth] = v
            touched = var_rows[depth]
            for r in touched:
                sums[r] += rows[r][depth] * v
            ok = descend(depth + 1)
            for r in touched:
                sums[r] -= rows[r][depth] * v
            stack[depth] = 0
            if not ok:
                return False
        return True

    if nvars == 0:
        stats["leaves"] = 1
        if leaf_check():
            solutions.append(())
    else:
        descend(0)
    return solutions, stats
