"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled twins in speedups.pyx: exact symbolic
determinants on packed-exponent polynomials, and exhaustive mod-p scans
of P^5(F_p) and Gr(3, F_p^6).
"""

from itertools import combinations

from .tables import subsets, vector_wedge3_struct

EXP_SHIFT = 8  # bits per variable in a packed exponent key

BACKEND = "python"


def det_packed(mat):
    """Determinant of a square grid of packed polynomials.

    A packed polynomial is a dict {key: int coeff} with key the packed
    exponent vector (EXP_SHIFT bits per variable).  Division-free subset
    expansion: dp over used-column masks, one row at a time.
    """
    n = len(mat)
    dp = {0: {0: 1}}
    for r in range(n):
        row = mat[r]
        ndp = {}
        for mask, poly in dp.items():
            rest = mask
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = row[j]
                if not entry:
                    continue
                above = mask >> (j + 1)
                sgn = -1 if bin(above).count("1") & 1 else 1
                acc = ndp.get(mask | bit)
                if acc is None:
                    acc = ndp[mask | bit] = {}
                for k1, c1 in poly.items():
                    cc = c1 if sgn > 0 else -c1
                    for k2, c2 in entry.items():
                        k = k1 + k2
                        v = acc.get(k)
                        if v is None:
                            acc[k] = cc * c2
                        else:
                            v += cc * c2
                            if v:
                                acc[k] = v
                            else:
                                del acc[k]
        dp = ndp
        if not dp:
            return {}
    return dp.get((1 << n) - 1, {})


def _rank_modp(rows, p, ncols):
    r = 0
    nrows = len(rows)
    for j in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][j] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][j], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][j]:
                c = rows[i][j]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def _proj_points(dim, p):
    """Representatives of P^{dim-1}(F_p): first nonzero coordinate = 1."""
    for lead in range(dim):
        nfree = dim - lead - 1
        for code in range(p**nfree):
            v = [0] * dim
            v[lead] = 1
            c = code
            for k in range(nfree):
                v[lead + 1 + k] = c % p
                c //= p
            yield v


def census_modp(arows, p):
    """Corank census of a Lagrangian over P^5(F_p).

    arows: 10 rows of 20 ints (basis of A mod p).  For each projective
    point v the corank is 10 - rank of the composite map
    a |-> v ^ a restricted to A.  Returns a list of counts by corank.
    """
    struct = vector_wedge3_struct()
    counts = [0] * 11
    for v in _proj_points(6, p):
        rows = [[0] * 10 for _ in range(15)]
        for q, s, m, sign in struct:
            vm = v[m]
            if not vm:
                continue
            cf = vm if sign > 0 else p - vm
            rowq = rows[q]
            for i in range(10):
                a = arows[i][s]
                if a:
                    rowq[i] = (rowq[i] + cf * a) % p
        counts[10 - _rank_modp(rows, p, 10)] += 1
    return counts


def rref_reps_modp(n, k, p):
    """All RREF representatives of Gr(k, F_p^n), grouped by pivot pattern."""
    for pattern in combinations(range(n), k):
        free_slots = []
        for i in range(k):
            for j in range(pattern[i] + 1, n):
                if j not in pattern:
                    free_slots.append((i, j))
        nfree = len(free_slots)
        for code in range(p**nfree):
            mat = [[0] * n for _ in range(k)]
            for i in range(k):
                mat[i][pattern[i]] = 1
            c = code
            for (i, j) in free_slots:
                mat[i][j] = c % p
                c //= p
            yield mat


def theta_scan_modp(annrows, p):
    """3-dim subspaces W of F_p^6 with wedge^3 W inside A, A given by its
    annihilator rows (each row r: sum_s r[s] * x[s] = 0 cuts out A).

    Returns flattened 3x6 RREF bases, in enumeration order.
    """
    triples = subsets(6, 3)
    nann = len(annrows)
    hits = []
    for w in rref_reps_modp(6, 3, p):
        r0, r1, r2 = w
        pl = []
        for (a, b, c) in triples:
            d = (
                r0[a] * (r1[b] * r2[c] - r1[c] * r2[b])
                - r0[b] * (r1[a] * r2[c] - r1[c] * r2[a])
                + r0[c] * (r1[a] * r2[b] - r1[b] * r2[a])
            ) % p
            pl.append(d)
        ok = True
        for row in annrows:
            acc = 0
            for s in range(20):
                acc += row[s] * pl[s]
            if acc % p:
                ok = False
                break
        if ok:
            hits.append(tuple(r0 + r1 + r2))
    return hits
