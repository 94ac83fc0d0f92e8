"""Index tables for the wedge algebra on a 6-dimensional space.

Basis of each graded piece: strictly increasing index tuples in
lexicographic order.  All signs come from sorting-permutation parity.
"""

from functools import lru_cache
from itertools import combinations


@lru_cache(maxsize=None)
def subsets(n, k):
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def subset_index(n, k):
    return {s: i for i, s in enumerate(subsets(n, k))}


def merge_sign(a, b):
    """Sign of sorting the concatenation of disjoint increasing tuples a, b."""
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def wedge_table(n, p, q):
    """Structure constants of wedge: list of (i, j, sign, k) meaning
    e_{S_i} ^ e_{T_j} = sign * e_{U_k} whenever S_i, T_j are disjoint."""
    out = []
    idx = subset_index(n, p + q)
    for i, s in enumerate(subsets(n, p)):
        ss = set(s)
        for j, t in enumerate(subsets(n, q)):
            if ss & set(t):
                continue
            u = tuple(sorted(s + t))
            out.append((i, j, merge_sign(s, t), idx[u]))
    return tuple(out)


# wedge-by-a-vector structure on trivectors: e_m ^ e_S = sign * e_Q,
# rows indexed by 4-subsets Q, entries (q_index, s_index, m, sign)
@lru_cache(maxsize=None)
def vector_wedge3_struct():
    out = []
    idx4 = subset_index(6, 4)
    for si, s in enumerate(subsets(6, 3)):
        for m in range(6):
            if m in s:
                continue
            q = tuple(sorted((m,) + s))
            out.append((idx4[q], si, m, merge_sign((m,), s)))
    return tuple(out)


@lru_cache(maxsize=None)
def complement_sign3():
    """For each 3-subset S: (index of S^c, vol(e_S ^ e_{S^c}))."""
    idx3 = subset_index(6, 3)
    out = []
    for s in subsets(6, 3):
        comp = tuple(i for i in range(6) if i not in s)
        out.append((idx3[comp], merge_sign(s, comp)))
    return tuple(out)
