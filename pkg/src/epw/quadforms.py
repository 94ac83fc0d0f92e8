"""Rank strata of quadratic forms: coranks, stratum tangent spaces and
the lowest-order expansion of the determinant near a degenerate form.
"""

from itertools import combinations_with_replacement
from math import comb

from .fields import QQ
from .linalg import Mat, Subspace, kernel, rank
from .poly import MultiPoly, poly_det


class AsymmetricError(ValueError):
    pass


def _check_symmetric(q):
    for i in range(q.rows):
        for j in range(i):
            if q.entries[i][j] != q.entries[j][i]:
                raise AsymmetricError("quadratic form matrix must be symmetric")
    if q.rows != q.cols:
        raise AsymmetricError("quadratic form matrix must be square")


def corank(q):
    _check_symmetric(q)
    return q.rows - rank(q)


def kernel_of(q):
    _check_symmetric(q)
    return kernel(q)


def stratum_codim(d, r):
    """Codimension of the rank <= r stratum inside d x d symmetric forms."""
    if not 0 <= r <= d:
        raise ValueError("need 0 <= r <= d")
    return comb(d - r + 1, 2)


def sym_index(d):
    """Coordinates on the space of symmetric d x d matrices: the upper
    triangle (i <= j) in lex order."""
    return list(combinations_with_replacement(range(d), 2))


def stratum_tangent(qstar):
    """Tangent space of the rank <= rk(qstar) stratum at qstar: all
    symmetric q with q vanishing on K = ker(qstar), as a Subspace of the
    upper-triangle coordinate space."""
    _check_symmetric(qstar)
    if not any(x for row in qstar.entries for x in row):
        raise ValueError("tangent stratum needs a nonzero base point")
    f = qstar.field
    d = qstar.rows
    coords = sym_index(d)
    kern = kernel_of(qstar)
    conditions = []
    kb = kern.basis
    for a in range(len(kb)):
        for b in range(a, len(kb)):
            # q(k_a, k_b) = 0 as a linear condition on the entries of q
            row = []
            for (i, j) in coords:
                c = f.mul(kb[a][i], kb[b][j])
                if i != j:
                    c = f.add(c, f.mul(kb[a][j], kb[b][i]))
                row.append(c)
            conditions.append(row)
    if not conditions:
        return Subspace.full(f, len(coords))
    return kernel(Mat(f, conditions))


def pack_symmetric(q):
    """Upper-triangle coordinates of a symmetric matrix."""
    return [q.entries[i][j] for (i, j) in sym_index(q.rows)]


def restrict_to(q, vectors):
    """Gram matrix of q on the span of the given vectors."""
    f = q.field
    out = []
    for u in vectors:
        qu = q.mul_vec(u)
        out.append([sum((f.mul(x, y) for x, y in zip(qu, v)), f.zero) for v in vectors])
    return Mat(f, out)


def initial_term(qstar, directions):
    """Lowest nonvanishing homogeneous part of det(qstar + sum t_i q_i).

    Returns (k, part) with part a MultiPoly in len(directions) variables.
    For corank k = dim ker(qstar) the theory gives part =
    c * det((sum t_i q_i) restricted to ker) whenever the latter is
    nonzero; both sides are computed and compared when the full expansion
    is affordable (d <= 6), otherwise only the restricted determinant.
    """
    _check_symmetric(qstar)
    for q in directions:
        _check_symmetric(q)
    f = qstar.field
    d = qstar.rows
    m = len(directions)
    k = corank(qstar)
    kern = kernel_of(qstar)
    restricted = [restrict_to(q, kern.basis) for q in directions]
    grid = [
        [
            MultiPoly.linear(m, [restricted[t].entries[i][j] for t in range(m)])
            for j in range(k)
        ]
        for i in range(k)
    ]
    det_restricted = poly_det(grid) if k else MultiPoly.const(m, 1)
    if d <= 6:
        full = [
            [
                MultiPoly.linear(
                    m,
                    [directions[t].entries[i][j] for t in range(m)],
                    qstar.entries[i][j],
                )
                for j in range(d)
            ]
            for i in range(d)
        ]
        phi = poly_det(full)
        low = phi.lowest_degree()
        if low < 0:
            return d, MultiPoly.zero(m)
        part = phi.homogeneous_part(low)
        if det_restricted and low != k:
            raise AssertionError("lowest degree disagrees with the corank")
        if det_restricted and not part.proportional(det_restricted):
            raise AssertionError("initial term is not det of the restriction")
        return low, part
    if not det_restricted:
        raise ValueError("restricted determinant vanishes; expansion not reduced")
    if k == 0:
        # det at the base point
        const = poly_det([[MultiPoly.const(m, qstar.entries[i][j]) for j in range(d)] for i in range(d)])
        return 0, const
    return k, det_restricted
