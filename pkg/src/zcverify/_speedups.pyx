# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: drop-in replacements for zcverify._kernels_py.

Same signatures, same results, same traversal order as the pure module; the
dispatcher in zcverify.kernels picks whichever is importable.
"""

import numpy as np

from libc.stdlib cimport malloc, free

BIG = 1 << 62


cdef inline long long _imin(long long a, long long b):
    return a if a < b else b


cdef inline long long _imax(long long a, long long b):
    return a if a > b else b


cdef inline long long _floordiv(long long a, long long b):
    # Python-style floor division for int64 (C division truncates toward 0).
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long _ceildiv(long long a, long long b):
    return -_floordiv(-a, b)


cdef inline long long _pymod(long long a, long long b):
    cdef long long r = a % b
    if r < 0:
        r += b
    return r


cdef inline long long _gcd_ll(long long a, long long b):
    cdef long long t
    if a < 0:
        a = -a
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long _modinv(long long a, long long m):
    # inverse of a modulo m, gcd(a, m) = 1, m >= 1
    cdef long long g0 = m, g1 = _pymod(a, m)
    cdef long long x0 = 0, x1 = 1, q, t
    while g1:
        q = g0 / g1
        t = g0 - q * g1
        g0 = g1
        g1 = t
        t = x0 - q * x1
        x0 = x1
        x1 = t
    return _pymod(x0, m)


def _table_view(table):
    # always copy: inputs may be read-only arrays, and memoryviews need write access
    return np.array(table, dtype=np.int64, order="C")


def _vec(seq):
    return np.array(seq, dtype=np.int64)


def subgroup_closure(table, gens, identity):
    cdef long long[:, ::1] t = _table_view(table)
    cdef int n = t.shape[0]
    cdef int ident = identity
    cdef int g, h, x, y, i
    cdef long long[::1] inv = np.zeros(n, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            if t[g, h] == ident:
                inv[g] = h
                break
    genset = sorted({int(g0) for g0 in gens} | {int(inv[int(g0)]) for g0 in gens} | {ident})
    cdef long long[::1] gs = _vec(genset)
    cdef int ngen = gs.shape[0]
    cdef unsigned char* member = <unsigned char*> malloc(n)
    cdef long long* frontier = <long long*> malloc(n * sizeof(long long))
    cdef long long* nxt = <long long*> malloc(n * sizeof(long long))
    cdef int fl = 0, nl = 0, j
    try:
        for i in range(n):
            member[i] = 0
        member[ident] = 1
        frontier[0] = ident
        fl = 1
        while fl:
            nl = 0
            for i in range(fl):
                x = <int> frontier[i]
                for j in range(ngen):
                    y = <int> t[x, gs[j]]
                    if not member[y]:
                        member[y] = 1
                        nxt[nl] = y
                        nl += 1
            frontier, nxt = nxt, frontier
            fl = nl
        return [i for i in range(n) if member[i]]
    finally:
        free(member)
        free(frontier)
        free(nxt)


def class_ids(table, inverse, identity):
    cdef long long[:, ::1] t = _table_view(table)
    cdef long long[::1] inv = _vec(inverse)
    cdef int n = t.shape[0]
    cdef int ident = identity
    ids_np = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] idv = ids_np
    cdef int next_id = 0
    cdef int g, s
    order = [ident] + [x for x in range(n) if x != ident]
    for g0 in order:
        g = g0
        if idv[g] != -1:
            continue
        for s in range(n):
            idv[t[t[inv[s], g], s]] = next_id
        next_id += 1
    return [int(x) for x in ids_np]


def associativity_violations(table, limit=0):
    cdef long long[:, ::1] t = _table_view(table)
    cdef int n = t.shape[0]
    cdef long long bad = 0
    cdef long long lim = limit
    cdef int a, b, c
    cdef long long ab
    for a in range(n):
        for b in range(n):
            ab = t[a, b]
            for c in range(n):
                if t[ab, c] != t[a, t[b, c]]:
                    bad += 1
                    if lim and bad >= lim:
                        return int(bad)
    return int(bad)


def coset_ids(table, kelems):
    cdef long long[:, ::1] t = _table_view(table)
    cdef long long[::1] ks = _vec(kelems)
    cdef int n = t.shape[0]
    cdef int nk = ks.shape[0]
    cdef long long[::1] ids = np.full(n, -1, dtype=np.int64)
    cdef int nc = 0
    cdef int x, k
    for x in range(n):
        if ids[x] != -1:
            continue
        for k in range(nk):
            ids[t[x, ks[k]]] = nc
        nc += 1
    return [int(v) for v in ids], nc


def xset_size(table, inverse, g, h, kmask):
    cdef long long[:, ::1] t = _table_view(table)
    cdef long long[::1] inv = _vec(inverse)
    cdef const unsigned char[::1] km = bytes(kmask)
    cdef int n = t.shape[0]
    cdef int gg = g
    cdef long long hinv = inv[int(h)]
    cdef int s
    cdef long long conj
    cdef long long cnt = 0
    for s in range(n):
        conj = t[t[inv[s], gg], s]
        if km[t[hinv, conj]]:
            cnt += 1
    return int(cnt)


def yset(table, inverse, g, h, kmask):
    cdef long long[:, ::1] t = _table_view(table)
    cdef long long[::1] inv = _vec(inverse)
    cdef const unsigned char[::1] km = bytes(kmask)
    cdef int n = t.shape[0]
    cdef long long gh = t[t[inv[int(h)], int(g)], int(h)]
    cdef long long ginv = inv[gh]
    cdef int s
    cdef long long c
    out = set()
    for s in range(n):
        c = t[t[ginv, inv[s]], t[gh, s]]
        if km[c]:
            out.add(int(c))
    return sorted(out)


def transporter_violations(table, inverse, kelems, cent_sizes):
    cdef long long[:, ::1] t = _table_view(table)
    cdef long long[::1] inv = _vec(inverse)
    cdef long long[::1] cent = _vec(cent_sizes)
    cdef long long[::1] ks = _vec(kelems)
    cdef int n = t.shape[0]
    cdef int nk = ks.shape[0]
    cdef int g, s, w, c, x, k
    cdef long long gz, ginv, cm
    cdef long long viol = 0
    cdef long long cg
    cos_list, nc = coset_ids(table, kelems)
    cdef long long[::1] cos = _vec(cos_list)
    cdef int ncos = nc
    cdef unsigned char* kmask = <unsigned char*> malloc(n)
    cdef unsigned char* ymask = <unsigned char*> malloc(n)
    cdef long long* conj = <long long*> malloc(n * sizeof(long long))
    cdef long long* xcnt = <long long*> malloc(ncos * sizeof(long long))
    cdef long long ysz
    try:
        for x in range(n):
            kmask[x] = 0
        for k in range(nk):
            kmask[ks[k]] = 1
        for g in range(n):
            cg = cent[g]
            for s in range(n):
                conj[s] = t[t[inv[s], g], s]
            for c in range(ncos):
                xcnt[c] = 0
            for s in range(n):
                xcnt[cos[conj[s]]] += 1
            for c in range(ncos):
                if xcnt[c] % cg:
                    viol += 1
            for s in range(n):
                gz = conj[s]
                ginv = inv[gz]
                for x in range(n):
                    ymask[x] = 0
                ysz = 0
                for w in range(n):
                    cm = t[t[ginv, inv[w]], t[gz, w]]
                    if kmask[cm] and not ymask[cm]:
                        ymask[cm] = 1
                        ysz += 1
                if xcnt[cos[gz]] > cg * ysz:
                    viol += 1
        return int(viol)
    finally:
        free(kmask)
        free(ymask)
        free(conj)
        free(xcnt)


def pa_enumerate(nvars, bound, row_lo, row_hi, row_coefs, mod_coefs, mod_offsets, modulus, budget):
    cdef int nv = nvars
    cdef long long B = bound
    cdef long long[::1] lo = _vec(row_lo)
    cdef long long[::1] hi = _vec(row_hi)
    cdef int nrows = lo.shape[0]
    rows_np = np.zeros((nrows, nv), dtype=np.int64) if nrows else np.zeros((0, max(nv, 1)), dtype=np.int64)
    for r, row in enumerate(row_coefs):
        rows_np[r, :nv] = np.asarray(row, dtype=np.int64)
    cdef long long[:, ::1] rows = rows_np
    cdef int nmods = len(mod_coefs)
    mods_np = np.zeros((nmods, nv), dtype=np.int64) if nmods else np.zeros((0, max(nv, 1)), dtype=np.int64)
    for r, row in enumerate(mod_coefs):
        mods_np[r, :nv] = np.asarray(row, dtype=np.int64)
    cdef long long[:, ::1] mods = mods_np
    cdef long long[::1] moff = _vec(mod_offsets) if nmods else _vec([0])
    cdef long long m = modulus
    cdef long long maxnodes = budget

    minrest_np = np.zeros((nrows, nv + 1), dtype=np.int64)
    maxrest_np = np.zeros((nrows, nv + 1), dtype=np.int64)
    cdef long long[:, ::1] minrest = minrest_np
    cdef long long[:, ::1] maxrest = maxrest_np
    cdef int r0, i0
    cdef long long cc, loadd, hiadd
    for r0 in range(nrows):
        for i0 in range(nv - 1, -1, -1):
            cc = rows[r0, i0]
            loadd = _imin(-B * cc, B * cc)
            hiadd = _imax(-B * cc, B * cc)
            minrest[r0, i0] = minrest[r0, i0 + 1] + loadd
            maxrest[r0, i0] = maxrest[r0, i0 + 1] + hiadd

    # var -> touched rows, flattened
    var_rows_list = [[r for r in range(nrows) if rows_np[r, i]] for i in range(nv)]
    vr_flat = []
    vr_ptr = [0]
    for i in range(nv):
        vr_flat.extend(var_rows_list[i])
        vr_ptr.append(len(vr_flat))
    cdef long long[::1] vflat = _vec(vr_flat) if vr_flat else _vec([0])
    cdef long long[::1] vptr = _vec(vr_ptr)

    # modular rows become decisive at their last nonzero column
    mlast_lists = [[] for _ in range(nv)]
    const_mods = []
    for q0 in range(nmods):
        support = [i for i in range(nv) if mods_np[q0, i]]
        if support:
            mlast_lists[support[len(support) - 1]].append(q0)
        else:
            const_mods.append(q0)
    ml_flat = []
    ml_ptr = [0]
    for i in range(nv):
        ml_flat.extend(mlast_lists[i])
        ml_ptr.append(len(ml_flat))
    cdef long long[::1] mlflat = _vec(ml_flat) if ml_flat else _vec([0])
    cdef long long[::1] mlptr = _vec(ml_ptr) if nv else _vec([0, 0])

    cdef long long* sums = <long long*> malloc((nrows + 1) * sizeof(long long))
    cdef long long* stack = <long long*> malloc((nv + 1) * sizeof(long long))
    cdef long long* vlo_st = <long long*> malloc((nv + 1) * sizeof(long long))
    cdef long long* vhi_st = <long long*> malloc((nv + 1) * sizeof(long long))
    cdef long long* vstep_st = <long long*> malloc((nv + 1) * sizeof(long long))
    cdef unsigned char* added_st = <unsigned char*> malloc(nv + 1)
    cdef long long* row_prunes = <long long*> malloc((nrows + 1) * sizeof(long long))
    cdef long long* mod_rejects = <long long*> malloc((nmods + 1) * sizeof(long long))
    cdef long long nodes = 0, leaves = 0
    cdef bint exceeded = False
    cdef int depth, qq, ii, rr, jj
    cdef long long v, val, c, base_lo, base_hi, nlo, nhi, vlo, vhi
    cdef long long g, mm, cinv, rres, base, delta, vstep
    cdef bint ok, root_ok, empty
    solutions = []

    try:
        for rr in range(nrows):
            sums[rr] = 0
            row_prunes[rr] = 0
        for qq in range(nmods):
            mod_rejects[qq] = 0
        for ii in range(nv):
            stack[ii] = 0
            added_st[ii] = 0

        root_ok = True
        for rr in range(nrows):
            if minrest[rr, 0] > hi[rr] or maxrest[rr, 0] < lo[rr]:
                row_prunes[rr] += 1
                root_ok = False
                break
        if root_ok:
            for q0 in const_mods:
                qq = q0
                if moff[qq] < 0 or _pymod(moff[qq], m):
                    mod_rejects[qq] += 1
                    root_ok = False
                    break

        if root_ok and nv == 0:
            leaves += 1
            ok = True
            for qq in range(nmods):
                val = moff[qq]
                if val < 0 or _pymod(val, m):
                    mod_rejects[qq] += 1
                    ok = False
                    break
            if ok:
                solutions.append(())
        elif root_ok:
            depth = 0
            # enter depth 0: compute its value range and progression
            vlo = -B
            vhi = B
            vstep = 1
            empty = False
            for ii in range(<int> vptr[0], <int> vptr[1]):
                rr = <int> vflat[ii]
                c = rows[rr, 0]
                base_lo = lo[rr] - sums[rr] - maxrest[rr, 1]
                base_hi = hi[rr] - sums[rr] - minrest[rr, 1]
                if c > 0:
                    nlo = _ceildiv(base_lo, c)
                    nhi = _floordiv(base_hi, c)
                else:
                    nlo = _ceildiv(base_hi, c)
                    nhi = _floordiv(base_lo, c)
                if nlo > vlo:
                    vlo = nlo
                if nhi < vhi:
                    vhi = nhi
                if vlo > vhi:
                    row_prunes[rr] += 1
                    empty = True
                    break
            if not empty and mlptr[1] > mlptr[0]:
                qq = <int> mlflat[mlptr[0]]
                c = mods[qq, 0]
                rres = moff[qq]
                g = _gcd_ll(c, m)
                if _pymod(-rres, g):
                    mod_rejects[qq] += 1
                    empty = True
                else:
                    mm = m / g
                    if mm > 1:
                        cinv = _pymod(_floordiv(c, g), mm)
                        base = _pymod(_floordiv(-rres, g), mm)
                        base = _pymod(base * _modinv(cinv, mm), mm)
                        delta = _pymod(base - vlo, mm)
                        vlo = vlo + delta
                        vstep = mm
                        if vlo > vhi:
                            mod_rejects[qq] += 1
                            empty = True
            vlo_st[0] = vlo
            vhi_st[0] = vhi if not empty else vlo - vstep
            vstep_st[0] = vstep
            stack[0] = vlo - vstep
            added_st[0] = 0

            while depth >= 0:
                v = stack[depth]
                if added_st[depth]:
                    for ii in range(<int> vptr[depth], <int> vptr[depth + 1]):
                        sums[vflat[ii]] -= rows[vflat[ii], depth] * v
                    added_st[depth] = 0
                v += vstep_st[depth]
                if v > vhi_st[depth]:
                    depth -= 1
                    continue
                stack[depth] = v
                nodes += 1
                if nodes > maxnodes:
                    exceeded = True
                    break
                # congruences of any further rows closing at this depth
                ok = True
                for jj in range(<int> mlptr[depth] + 1, <int> mlptr[depth + 1]):
                    qq = <int> mlflat[jj]
                    rres = moff[qq]
                    for ii in range(depth):
                        if stack[ii]:
                            rres += mods[qq, ii] * stack[ii]
                    if _pymod(rres + mods[qq, depth] * v, m):
                        mod_rejects[qq] += 1
                        ok = False
                        break
                if not ok:
                    continue
                for ii in range(<int> vptr[depth], <int> vptr[depth + 1]):
                    rr = <int> vflat[ii]
                    sums[rr] += rows[rr, depth] * v
                added_st[depth] = 1
                if depth == nv - 1:
                    leaves += 1
                    ok = True
                    for qq in range(nmods):
                        val = moff[qq]
                        for ii in range(nv):
                            if stack[ii]:
                                val += mods[qq, ii] * stack[ii]
                        if val < 0 or _pymod(val, m):
                            mod_rejects[qq] += 1
                            ok = False
                            break
                    if ok:
                        solutions.append(tuple(stack[ii] for ii in range(nv)))
                    continue
                # enter the next depth
                depth += 1
                vlo = -B
                vhi = B
                vstep = 1
                empty = False
                for ii in range(<int> vptr[depth], <int> vptr[depth + 1]):
                    rr = <int> vflat[ii]
                    c = rows[rr, depth]
                    base_lo = lo[rr] - sums[rr] - maxrest[rr, depth + 1]
                    base_hi = hi[rr] - sums[rr] - minrest[rr, depth + 1]
                    if c > 0:
                        nlo = _ceildiv(base_lo, c)
                        nhi = _floordiv(base_hi, c)
                    else:
                        nlo = _ceildiv(base_hi, c)
                        nhi = _floordiv(base_lo, c)
                    if nlo > vlo:
                        vlo = nlo
                    if nhi < vhi:
                        vhi = nhi
                    if vlo > vhi:
                        row_prunes[rr] += 1
                        empty = True
                        break
                if not empty and mlptr[depth + 1] > mlptr[depth]:
                    qq = <int> mlflat[mlptr[depth]]
                    c = mods[qq, depth]
                    rres = moff[qq]
                    for ii in range(depth):
                        if stack[ii]:
                            rres += mods[qq, ii] * stack[ii]
                    g = _gcd_ll(c, m)
                    if _pymod(-rres, g):
                        mod_rejects[qq] += 1
                        empty = True
                    else:
                        mm = m / g
                        if mm > 1:
                            cinv = _pymod(_floordiv(c, g), mm)
                            base = _pymod(_floordiv(-rres, g), mm)
                            base = _pymod(base * _modinv(cinv, mm), mm)
                            delta = _pymod(base - vlo, mm)
                            vlo = vlo + delta
                            vstep = mm
                            if vlo > vhi:
                                mod_rejects[qq] += 1
                                empty = True
                vlo_st[depth] = vlo
                vhi_st[depth] = vhi if not empty else vlo - vstep
                vstep_st[depth] = vstep
                stack[depth] = vlo - vstep
                added_st[depth] = 0
        stats = {
            "nodes": int(nodes),
            "leaves": int(leaves),
            "budget_exceeded": bool(exceeded),
            "row_prunes": [int(row_prunes[rr]) for rr in range(nrows)],
            "mod_rejects": [int(mod_rejects[qq]) for qq in range(nmods)],
        }
        return solutions, stats
    finally:
        free(sums)
        free(stack)
        free(vlo_st)
        free(vhi_st)
        free(vstep_st)
        free(added_st)
        free(row_prunes)
        free(mod_rejects)
