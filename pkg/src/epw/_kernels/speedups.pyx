# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in pykernels.py.

det_packed keeps arbitrary-precision coefficients (Python ints) but runs
the subset-expansion loops compiled; the mod-p scans run on C integers.
"""

from itertools import combinations

from .tables import subsets, vector_wedge3_struct

BACKEND = "cython"

EXP_SHIFT = 8


def det_packed(mat):
    cdef int n = len(mat)
    cdef int r, j
    cdef long long mask, bit, above, nm
    dp = {0: {0: 1}}
    for r in range(n):
        row = mat[r]
        ndp = {}
        for mask_obj, poly in dp.items():
            mask = <long long> mask_obj
            for j in range(n):
                bit = 1LL << j
                if mask & bit:
                    continue
                entry = row[j]
                if not entry:
                    continue
                above = mask >> (j + 1)
                above = above - ((above >> 1) & 0x5555555555555555LL)
                above = (above & 0x3333333333333333LL) + ((above >> 2) & 0x3333333333333333LL)
                above = (above + (above >> 4)) & 0x0F0F0F0F0F0F0F0FLL
                above = (above * 0x0101010101010101LL) >> 56
                nm = mask | bit
                acc = ndp.get(nm)
                if acc is None:
                    acc = ndp[nm] = {}
                if above & 1:
                    for k1, c1 in poly.items():
                        cc = -c1
                        for k2, c2 in entry.items():
                            k = k1 + k2
                            v = acc.get(k)
                            if v is None:
                                acc[k] = cc * c2
                            else:
                                v = v + cc * c2
                                if v:
                                    acc[k] = v
                                else:
                                    del acc[k]
                else:
                    for k1, c1 in poly.items():
                        for k2, c2 in entry.items():
                            k = k1 + k2
                            v = acc.get(k)
                            if v is None:
                                acc[k] = c1 * c2
                            else:
                                v = v + c1 * c2
                                if v:
                                    acc[k] = v
                                else:
                                    del acc[k]
        dp = ndp
        if not dp:
            return {}
    return dp.get((1 << n) - 1, {})


cdef int _rank_modp_c(long long* a, int nrows, int ncols, long long p):
    cdef int r = 0, i, j, k, piv
    cdef long long inv, c, x
    for j in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if a[i * ncols + j] % p:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                x = a[r * ncols + k]
                a[r * ncols + k] = a[piv * ncols + k]
                a[piv * ncols + k] = x
        inv = _inv_modp(a[r * ncols + j], p)
        for k in range(ncols):
            a[r * ncols + k] = a[r * ncols + k] * inv % p
        for i in range(nrows):
            if i != r and a[i * ncols + j]:
                c = a[i * ncols + j]
                for k in range(ncols):
                    a[i * ncols + k] = (a[i * ncols + k] - c * a[r * ncols + k]) % p
                    if a[i * ncols + k] < 0:
                        a[i * ncols + k] += p
        r += 1
        if r == nrows:
            break
    return r


cdef long long _inv_modp(long long a, long long p):
    cdef long long res = 1, b = p - 2, base = a % p
    while b:
        if b & 1:
            res = res * base % p
        base = base * base % p
        b >>= 1
    return res


def census_modp(arows, p_in):
    cdef long long p = p_in
    cdef long long A[10][20]
    cdef int i, s, m, q, lead, nfree, k
    cdef long long code, vm, cf, total
    cdef long long v[6]
    cdef long long rows[15 * 10]
    struct_py = vector_wedge3_struct()
    cdef int ns = len(struct_py)
    cdef long long[:, ::1] st = None
    import array
    flat = []
    for (qq, ss, mm, sg) in struct_py:
        flat.extend((qq, ss, mm, sg))
    cdef long long[::1] stv = array.array("q", flat)
    for i in range(10):
        for s in range(20):
            A[i][s] = arows[i][s] % p
    counts = [0] * 11
    cdef int rk
    for lead in range(6):
        nfree = 6 - lead - 1
        total = 1
        for k in range(nfree):
            total *= p
        for code in range(total):
            for k in range(6):
                v[k] = 0
            v[lead] = 1
            c = code
            for k in range(nfree):
                v[lead + 1 + k] = c % p
                c //= p
            for k in range(150):
                rows[k] = 0
            for k in range(ns):
                q = <int> stv[4 * k]
                s = <int> stv[4 * k + 1]
                m = <int> stv[4 * k + 2]
                vm = v[m]
                if vm == 0:
                    continue
                cf = vm if stv[4 * k + 3] > 0 else p - vm
                for i in range(10):
                    if A[i][s]:
                        rows[q * 10 + i] = (rows[q * 10 + i] + cf * A[i][s]) % p
            rk = _rank_modp_c(rows, 15, 10, p)
            counts[10 - rk] += 1
    return counts


def theta_scan_modp(annrows, p_in):
    cdef long long p = p_in
    cdef int nann = len(annrows)
    cdef long long ann[20][20]
    cdef int i, j, s, a, b, c0, idx, nfree
    cdef long long code, cc, d, acc
    cdef long long w[3][6]
    cdef long long pl[20]
    cdef bint ok
    triples_py = subsets(6, 3)
    cdef int tr[20][3]
    for idx in range(20):
        tr[idx][0] = triples_py[idx][0]
        tr[idx][1] = triples_py[idx][1]
        tr[idx][2] = triples_py[idx][2]
    for i in range(nann):
        for j in range(20):
            ann[i][j] = annrows[i][j] % p
    hits = []
    cdef int pat[3]
    cdef int free_i[9]
    cdef int free_j[9]
    for pattern in combinations(range(6), 3):
        pat[0], pat[1], pat[2] = pattern
        nfree = 0
        for i in range(3):
            for j in range(pat[i] + 1, 6):
                if j != pat[0] and j != pat[1] and j != pat[2]:
                    free_i[nfree] = i
                    free_j[nfree] = j
                    nfree += 1
        total = 1
        for i in range(nfree):
            total *= p
        for code in range(total):
            for i in range(3):
                for j in range(6):
                    w[i][j] = 0
                w[i][pat[i]] = 1
            cc = code
            for i in range(nfree):
                w[free_i[i]][free_j[i]] = cc % p
                cc //= p
            for idx in range(20):
                a = tr[idx][0]
                b = tr[idx][1]
                c0 = tr[idx][2]
                d = (
                    w[0][a] * (w[1][b] * w[2][c0] - w[1][c0] * w[2][b])
                    - w[0][b] * (w[1][a] * w[2][c0] - w[1][c0] * w[2][a])
                    + w[0][c0] * (w[1][a] * w[2][b] - w[1][b] * w[2][a])
                ) % p
                if d < 0:
                    d += p
                pl[idx] = d
            ok = True
            for i in range(nann):
                acc = 0
                for s in range(20):
                    acc += ann[i][s] * pl[s]
                if acc % p:
                    ok = False
                    break
            if ok:
                hits.append(
                    tuple(
                        [w[0][j] for j in range(6)]
                        + [w[1][j] for j in range(6)]
                        + [w[2][j] for j in range(6)]
                    )
                )
    return hits
