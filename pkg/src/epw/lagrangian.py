"""Lagrangian subspaces of (wedge^3 V, symp): validation, graph charts,
random generation and isotropic extension.
"""

import random
from itertools import combinations

from .exterior import F_of, KVector, symp, trivector_of, wedge_many
from .fields import same_field
from .linalg import (
    Mat,
    Subspace,
    complement_rows,
    intersect,
    kernel,
    rank,
    rref,
    subspace_sum,
)

AMBIENT = 20  # dim of wedge^3 V


class NonTransversalError(ValueError):
    pass


class ChartMissError(ValueError):
    pass


class NotIsotropicError(ValueError):
    pass


def _check_ambient(s):
    if s.ambient != AMBIENT:
        raise ValueError("expected a subspace of the 20-dimensional wedge^3 V")


def symp_gram(s, t=None):
    """Gram matrix of the symplectic form between the bases of s and t."""
    t = s if t is None else t
    f = same_field(s.field, t.field)
    rows = [KVector(f, 3, row) for row in s.basis]
    cols = [KVector(f, 3, row) for row in t.basis]
    return Mat(f, [[symp(a, b) for b in cols] for a in rows])


def is_isotropic(s):
    _check_ambient(s)
    g = symp_gram(s)
    return all(not x for row in g.entries for x in row)


def is_lagrangian(s):
    """True iff dim 10 and the symplectic Gram matrix vanishes."""
    _check_ambient(s)
    return s.dim == 10 and is_isotropic(s)


def S_of(u):
    """S_U = (wedge^2 U) ^ V for a 3-dimensional U; always Lagrangian."""
    if u.dim != 3:
        raise ValueError("S_U needs dim U = 3")
    f = u.field
    eye = Mat.identity(f, 6)
    vecs = []
    for (a, b) in combinations(range(3), 2):
        for w in eye.entries:
            t = trivector_of(f, u.basis[a], u.basis[b], w)
            if t:
                vecs.append(t.coords)
    return Subspace.from_vectors(f, AMBIENT, vecs)


def T_of(u):
    """Quotient description of T_U = S_U / wedge^3 U: returns
    (S_U, the distinguished line wedge^3 U, complement rows)."""
    su = S_of(u)
    line = Subspace.from_vectors(u.field, AMBIENT, [trivector_of(u.field, *u.basis).coords])
    comp = complement_rows(line, su)
    return su, line, comp


def rho_U(u, alpha, vcomp=None):
    """Class of alpha in T_U as a 3x3 matrix over (wedge^2 U basis) x (V/U).

    alpha must lie in S_U.  vcomp optionally fixes the complement basis of
    V/U (rows); defaults to the coordinate completion of u.
    """
    f = u.field
    if vcomp is None:
        vcomp = complement_rows(u, Subspace.full(f, 6))
    pairs = list(combinations(range(3), 2))
    gens = []
    for (a, b) in pairs:
        for w in vcomp:
            gens.append(trivector_of(f, u.basis[a], u.basis[b], w).coords)
    # solve alpha = combo of gens modulo wedge^3 U
    u3 = trivector_of(f, *u.basis).coords
    m = Mat(f, gens + [u3]).transpose()
    from .linalg import solve

    sol = solve(m, alpha.coords)
    if sol is None:
        raise ValueError("alpha does not lie in S_U")
    entries = [[sol[i * len(vcomp) + j] for j in range(len(vcomp))] for i in range(len(pairs))]
    return Mat(f, entries)


def graph_matrix(a, b, v):
    """Matrix of the symmetric map whose graph over A (against B = A-dual
    via symp) is F_v; corank equals dim(A meet F_v)."""
    f = same_field(a.field, b.field)
    _check_ambient(a)
    _check_ambient(b)
    if a.dim != 10 or b.dim != 10:
        raise ValueError("graph chart needs two Lagrangians")
    if intersect(a, b).dim:
        raise NonTransversalError("A and B are not transversal")
    fv = F_of(f, v)
    if intersect(fv, b).dim:
        raise ChartMissError("F_v meets B; the point misses the chart")
    basis = Mat(f, a.basis + b.basis).transpose()  # columns = basis of A then B
    red, _ = rref(Mat(f, [col + fvrow for col, fvrow in zip(basis.entries, [list(r) for r in zip(*fv.basis)])]))
    # columns 0..19 hold the A+B basis, columns 20.. hold the F_v basis images
    x = [[red.entries[i][20 + j] for j in range(10)] for i in range(10)]
    y = [[red.entries[10 + i][20 + j] for j in range(10)] for i in range(10)]
    xm, ym = Mat(f, x), Mat(f, y)
    if rank(xm) < 10:
        raise ChartMissError("F_v is not a graph over A in this chart")
    # tau = Y X^{-1}; graph matrix Q = G Y X^{-1} with G the symp pairing
    g = symp_gram(a, b)
    xinv = _inverse(xm)
    return g.mul(ym.mul(xinv))


def _inverse(m):
    f = m.field
    n = m.rows
    aug = Mat(f, [row + eye_row for row, eye_row in zip(m.entries, Mat.identity(f, n).entries)])
    red, r = rref(aug)
    if r < n:
        raise ValueError("matrix is singular")
    return Mat(f, [row[n:] for row in red.entries[:n]])


def coordinate_split(field):
    """The coordinate Lagrangian split: A0 = span{e_S : 0 in S} with the
    symp-dual basis of B0 = span{e_S : 0 not in S}."""
    from ._kernels.tables import complement_sign3, subsets

    a_rows, b_rows = [], []
    for i, s in enumerate(subsets(6, 3)):
        row = [field.zero] * AMBIENT
        if 0 in s:
            row[i] = field.one
            a_rows.append(row)
    for i, s in enumerate(subsets(6, 3)):
        if 0 in s:
            j, sign = complement_sign3()[i]
            row = [field.zero] * AMBIENT
            row[j] = field.one if sign > 0 else field.neg(field.one)
            b_rows.append(row)
    return a_rows, b_rows


def random_lagrangian(field, seed=0):
    """Graph of a random symmetric 10x10 integer matrix over the
    coordinate split; deterministic in the seed."""
    rng = random.Random(seed)
    a_rows, b_rows = coordinate_split(field)
    q = [[0] * 10 for _ in range(10)]
    for i in range(10):
        for j in range(i, 10):
            q[i][j] = q[j][i] = rng.randint(-9, 9)
    vecs = []
    for i in range(10):
        row = list(a_rows[i])
        for j in range(10):
            c = field.coerce(q[i][j])
            if c:
                row = [field.add(x, field.mul(c, y)) for x, y in zip(row, b_rows[j])]
        vecs.append(row)
    out = Subspace.from_vectors(field, AMBIENT, vecs)
    assert is_lagrangian(out)
    return out


def _symp_products(field, rows):
    cache = [KVector(field, 3, r) for r in rows]
    return lambda i, j: symp(cache[i], cache[j])


def darboux_basis(field, rows):
    """Darboux basis of the span of `rows`, on which symp is nondegenerate.

    Returns (us, ws) with symp(u_i, w_j) = delta_ij and all other pairings
    zero.  Raises NonTransversalError if the form is degenerate there.
    """
    pend = [KVector(field, 3, r) for r in rows]
    us, ws = [], []
    while pend:
        u = pend.pop(0)
        mate = None
        for i, w in enumerate(pend):
            if symp(u, w):
                mate = i
                break
        if mate is None:
            if u:
                raise NonTransversalError("degenerate symplectic form")
            continue
        w = pend.pop(mate)
        w = w.scale(field.inv(symp(u, w)))
        # make the rest symp-orthogonal to the new pair (u, w)
        pend = [x - u.scale(symp(x, w)) + w.scale(symp(x, u)) for x in pend]
        us.append(u)
        ws.append(w)
    return us, ws


def extend_isotropic(iso, seed=0):
    """Some Lagrangian containing the given isotropic subspace.

    Computes the symp-orthogonal L-perp, a random Lagrangian of the induced
    symplectic form on L-perp/L, and takes its preimage.
    """
    _check_ambient(iso)
    f = iso.field
    if not is_isotropic(iso):
        raise NotIsotropicError("input subspace is not isotropic")
    if iso.dim == 10:
        return iso
    # L-perp = kernel of v -> (symp(b_i, v))_i over the basis of L
    from ._kernels.tables import complement_sign3

    comp = complement_sign3()
    grams = []
    for row in iso.basis:
        gram_row = [f.zero] * AMBIENT
        for i, (j, sign) in enumerate(comp):
            c = row[i]
            if c:
                gram_row[j] = c if sign > 0 else f.neg(c)
        grams.append(gram_row)
    perp = kernel(Mat(f, grams)) if grams else Subspace.full(f, AMBIENT)
    comp_rows = complement_rows(iso, perp)
    us, ws = darboux_basis(f, comp_rows)
    rng = random.Random(seed)
    m = len(us)
    s = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            s[i][j] = s[j][i] = rng.randint(-9, 9) if f.p is None else rng.randrange(f.p)
    lifted = []
    for i in range(m):
        vec = us[i]
        for j in range(m):
            c = f.coerce(s[i][j])
            if c:
                vec = vec + ws[j].scale(c)
        lifted.append(vec.coords)
    out = Subspace.from_vectors(f, AMBIENT, list(iso.basis) + lifted)
    if not is_lagrangian(out) or not out.contains_subspace(iso):
        raise AssertionError("isotropic extension failed")
    return out
