"""The EPW sextic: pointwise coranks, the global degree-6 polynomial,
local expansions, tangent data and the finite-field stratum census.

The polynomial is built on an affine chart [v0 + v], v in V0, as the
determinant of a 10x10 symmetric matrix with entries affine-linear in the
five chart coordinates, then homogenized back to the standard coordinates
X0..X5 and normalized so the graded-lex leading coefficient is 1.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._kernels import census_modp
from .exterior import (
    F_of,
    KVector,
    divide_by_vector,
    is_decomposable,
    plucker_residues,
    support,
    trivector_of,
    vol,
    wedge,
    wedge_many,
)
from .fields import QQ
from .linalg import Mat, Subspace, intersect, rank, rref, solve
from .poly import MultiPoly, p1_gcd_many, poly_det


class ChartDegenerateError(ValueError):
    pass


class YIsWholeSpaceError(ValueError):
    pass


class DegreeAnomalyError(AssertionError):
    """det q exceeded degree 6: wrong signs or pairing somewhere."""


class BadPrimeError(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    """Affine chart data: a base point v0 and a complementary V0."""

    v0: tuple
    V0: Subspace

    def __post_init__(self):
        if self.V0.dim != 5:
            raise ValueError("V0 must be 5-dimensional")
        full = Subspace.from_vectors(
            self.V0.field, 6, [list(self.v0)] + list(self.V0.basis)
        )
        if full.dim != 6:
            raise ChartDegenerateError("[v0] + V0 is not all of V")


def default_chart(field):
    e0 = [field.one] + [field.zero] * 5
    v0 = Subspace.from_vectors(
        field, 6, [[field.one if j == i else field.zero for j in range(6)] for i in range(1, 6)]
    )
    return Chart(tuple(e0), v0)


def candidate_charts(field, seed=0):
    """The fixed retry list: 6 coordinate charts, then 6 seeded random
    changes of basis (deterministic in the seed)."""
    eye = Mat.identity(field, 6).entries
    for i in range(6):
        others = [eye[j] for j in range(6) if j != i]
        yield Chart(tuple(eye[i]), Subspace.from_vectors(field, 6, others))
    rng = random.Random(seed)
    made = 0
    while made < 6:
        rows = [[field.coerce(rng.randint(-4, 4)) for _ in range(6)] for _ in range(6)]
        if Subspace.from_vectors(field, 6, rows).dim != 6:
            continue
        made += 1
        yield Chart(tuple(rows[0]), Subspace.from_vectors(field, 6, rows[1:]))


@dataclass
class EPWSextic:
    poly: MultiPoly  # homogeneous degree 6 in X0..X5, leading coeff 1
    source: Subspace
    chart: Chart


def corank_at(a, v):
    """dim(A meet F_v) via the exact rank of the stacked 20x20 matrix."""
    if not any(v):
        raise ValueError("corank_at needs a nonzero point")
    f = a.field
    fv = F_of(f, list(v))
    stacked = Mat(f, list(a.basis) + list(fv.basis))
    return 20 - rank(stacked)


def _chart_matrices(a, chart):
    """M0 and N_1..N_5 with M(v) = M0 + sum v_m N_m the symmetric chart
    matrix of the sextic; raises ChartDegenerateError when wedge^3 V0
    meets A."""
    f = a.field
    w = chart.V0.basis  # five rows
    v0 = KVector.from_vector(f, list(chart.v0))
    triples = list(combinations(range(5), 2))  # bivector basis indices of V0
    bivecs = [wedge(KVector.from_vector(f, w[i]), KVector.from_vector(f, w[j])) for i, j in triples]
    v0_wedge = [wedge(v0, b) for b in bivecs]
    w3 = [
        trivector_of(f, w[i], w[j], w[k]) for i, j, k in combinations(range(5), 3)
    ]
    basis_cols = Mat(f, list(a.basis) + [t.coords for t in w3]).transpose()
    if rank(Mat(f, list(a.basis) + [t.coords for t in w3])) < 20:
        raise ChartDegenerateError("wedge^3 V0 meets A")
    aug = Mat(
        f,
        [
            row + [v0_wedge[j].coords[i] for j in range(10)]
            for i, row in enumerate(basis_cols.entries)
        ],
    )
    red, _ = rref(aug)
    # gamma_j = component of v0 ^ alpha_j inside wedge^3 V0
    gammas = []
    for j in range(10):
        g = KVector.zero(f, 3)
        for t in range(10):
            c = red.entries[10 + t][20 + j]
            if c:
                g = g + w3[t].scale(c)
        gammas.append(g)
    m0 = [[f.neg(vol(wedge(v0_wedge[i], gammas[j]))) for j in range(10)] for i in range(10)]
    ns = []
    for m in range(5):
        wm = KVector.from_vector(f, w[m])
        mat = [
            [f.neg(vol(wedge(wedge(v0_wedge[i], wm), bivecs[j]))) for j in range(10)]
            for i in range(10)
        ]
        ns.append(mat)
    for grid in [m0] + ns:
        for i in range(10):
            for j in range(i):
                if grid[i][j] != grid[j][i]:
                    raise AssertionError("chart matrix is not symmetric")
    return m0, ns


def _chart_det(a, chart, matrices=None):
    """Affine local equation det M(v) as a MultiPoly in 5 chart variables."""
    m0, ns = matrices if matrices is not None else _chart_matrices(a, chart)
    grid = []
    for i in range(10):
        row = []
        for j in range(10):
            coeffs = [ns[m][i][j] for m in range(5)]
            row.append(MultiPoly.linear(5, coeffs, m0[i][j]))
        grid.append(row)
    det = poly_det(grid)
    if det.is_zero():
        raise YIsWholeSpaceError("det q vanishes identically: Y_A = P(V)")
    if det.degree() > 6:
        raise DegreeAnomalyError(f"chart determinant has degree {det.degree()} > 6")
    return det


def _homogenize(det, chart):
    """Push the affine chart polynomial to degree 6 in standard X0..X5."""
    f = chart.V0.field
    cols = Mat(f, [list(chart.v0)] + list(chart.V0.basis)).transpose()
    inv = _mat_inverse(cols)
    # row 0 of inv gives c(X); rows 1..5 give the chart coordinates t_m(X)
    hom = MultiPoly.linear(6, inv.entries[0])
    forms = [MultiPoly.linear(6, inv.entries[1 + m]) for m in range(5)]
    out = det.substitute_linear(forms, homogenizer=hom, total=6)
    if not out.is_homogeneous(6):
        raise AssertionError("homogenization did not produce a sextic")
    return out


def _mat_inverse(m):
    f = m.field
    n = m.rows
    aug = Mat(f, [row + erow for row, erow in zip(m.entries, Mat.identity(f, n).entries)])
    red, r = rref(aug)
    if r < n:
        raise ValueError("singular matrix")
    return Mat(f, [row[n:] for row in red.entries[:n]])


def build_sextic(a, chart=None, check_points=50, seed=0):
    """Construct Y_A on a chart (retrying over the fixed chart list when
    chart is None) as a normalized homogeneous sextic in X0..X5.

    Cross-contract: at `check_points` random chart points the corank of
    the chart matrix agrees with the stacked-rank corank oracle.
    """
    f = a.field
    charts = [chart] if chart is not None else candidate_charts(f, seed)
    last = None
    for ch in charts:
        try:
            matrices = _chart_matrices(a, ch)
            det = _chart_det(a, ch, matrices)
        except ChartDegenerateError as exc:
            last = exc
            continue
        out = _homogenize(det, ch).normalized()
        if check_points:
            _corank_consistency(a, ch, matrices, check_points, seed)
        return EPWSextic(out, a, ch)
    raise last if last is not None else ChartDegenerateError("no usable chart")


def _corank_consistency(a, chart, matrices, npoints, seed):
    f = a.field
    m0, ns = matrices
    rng = random.Random(seed)
    for _ in range(npoints):
        t = [rng.randint(-6, 6) for _ in range(5)]
        mat = [
            [
                f.add(
                    m0[i][j],
                    sum(
                        (f.mul(f.coerce(t[m]), ns[m][i][j]) for m in range(5)),
                        f.zero,
                    ),
                )
                for j in range(10)
            ]
            for i in range(10)
        ]
        v = list(chart.v0)
        for m in range(5):
            c = f.coerce(t[m])
            v = [f.add(x, f.mul(c, y)) for x, y in zip(v, chart.V0.basis[m])]
        expected = corank_at(a, v)
        got = 10 - rank(Mat(f, mat))
        if got != expected:
            raise AssertionError(
                f"corank mismatch at chart point {t}: matrix {got} vs stacked {expected}"
            )


def phi_quadric(v0, v, alpha):
    """phi^{v0}_v(alpha) = vol(v0 ^ v ^ beta ^ beta) where alpha = v0 ^ beta.

    The value does not depend on the chosen beta.
    """
    f = alpha.field
    if alpha.grade != 3:
        raise ValueError("alpha must be a trivector")
    v0k = KVector.from_vector(f, list(v0))
    if wedge(v0k, alpha):
        raise ValueError("alpha does not lie in F_{v0}")
    beta = divide_by_vector(alpha, list(v0))
    chain = wedge_many([v0k, KVector.from_vector(f, list(v)), beta, beta])
    return vol(chain)


def phi_bilinear_matrix(a, chart, kbasis):
    """k x k matrix of the phi-form on K = A meet F_{v0}, with the chart
    coordinates symbolic: entry (r, s) is a linear MultiPoly in 5 vars."""
    f = a.field
    v0 = list(chart.v0)
    v0k = KVector.from_vector(f, v0)
    betas = [divide_by_vector(KVector(f, 3, row), v0) for row in kbasis]
    k = len(betas)
    grid = []
    for r in range(k):
        row = []
        for s in range(k):
            coeffs = []
            for m in range(5):
                wm = KVector.from_vector(f, chart.V0.basis[m])
                coeffs.append(vol(wedge_many([v0k, wm, betas[r], betas[s]])))
            row.append(MultiPoly.linear(5, coeffs))
        grid.append(row)
    return grid


def local_expansion(a, chart):
    """(k, f_k): multiplicity data of Y_A at the chart origin.

    k = dim(A meet F_{v0}) and f_k is the degree-k polynomial
    det(phi|_K) in the 5 chart coordinates (the determinant of the empty
    matrix being 1).
    """
    f = a.field
    kspace = intersect(a, F_of(f, list(chart.v0)))
    k = kspace.dim
    if k == 0:
        return 0, MultiPoly.const(5, 1)
    grid = phi_bilinear_matrix(a, chart, kspace.basis)
    fk = poly_det(grid)
    if fk and not fk.is_homogeneous(k):
        raise AssertionError("phi determinant is not homogeneous of degree k")
    return k, fk


def tangent_space_rank1(a, v0):
    """Projective tangent space of Y_A at a corank-1 point with
    non-decomposable generator: the support of that generator."""
    f = a.field
    kspace = intersect(a, F_of(f, list(v0)))
    if kspace.dim != 1:
        raise ValueError("point does not have corank 1")
    gen = KVector(f, 3, kspace.basis[0])
    if is_decomposable(gen):
        raise ValueError("generator is decomposable; Y_A is singular here")
    supp = support(gen)
    if supp.dim != 5:
        raise AssertionError("rank-1 tangent support should be a hyperplane")
    return supp


def pencil_has_decomposable(k1, k2):
    """True iff the pencil s*k1 + t*k2 of trivectors contains a nonzero
    decomposable member over the complex numbers.

    Substitutes a0 + t*a1 into every Plucker residue and takes the gcd of
    the resulting quadratics in t (plus the t = infinity member).
    """
    if is_decomposable(k2):
        return True
    # residues of k1 + t k2 are quadratics q0 + q1 t + q2 t^2 obtained by
    # polarizing the residue map
    f = k1.field
    if f is not QQ:
        raise ValueError("pencil check runs over QQ")
    r0 = plucker_residues(k1)
    r2 = plucker_residues(k2)
    rs = plucker_residues(k1 + k2)
    polys = []
    for a0, a2, s in zip(r0, r2, rs):
        a1 = s - a0 - a2
        if a0 or a1 or a2:
            polys.append([Fraction(a0), Fraction(a1), Fraction(a2)])
        else:
            polys.append([])
    if all(not p for p in polys):
        return True
    g = p1_gcd_many([p for p in polys if p])
    return len(g) > 1


def cone_rank_at(a, v0):
    """Rank of the degree-2 part of Y_A at a corank-2 point whose pencil
    A meet F_{v0} has no nonzero decomposable member."""
    f = a.field
    kspace = intersect(a, F_of(f, list(v0)))
    if kspace.dim != 2:
        raise ValueError("point does not have corank 2")
    k1 = KVector(f, 3, kspace.basis[0])
    k2 = KVector(f, 3, kspace.basis[1])
    if pencil_has_decomposable(k1, k2):
        raise ValueError("pencil contains a decomposable trivector")
    chart = _chart_through(f, v0)
    _, f2 = local_expansion(a, chart)
    return _quadratic_rank(f2)


def _chart_through(field, v0):
    """A chart centered at v0 with a coordinate complement."""
    piv = next(i for i, c in enumerate(v0) if c)
    eye = Mat.identity(field, 6).entries
    others = [eye[j] for j in range(6) if j != piv]
    return Chart(tuple(v0), Subspace.from_vectors(field, 6, others))


def _quadratic_rank(f2):
    if not f2.is_homogeneous(2):
        raise ValueError("expected a homogeneous quadratic")
    n = f2.nvars
    m = Mat.zeros(QQ, n, n)
    for e, c in f2.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx[0], idx[1]
        if i == j:
            m.entries[i][i] = c
        else:
            half = c / 2
            m.entries[i][j] = m.entries[i][j] + half
            m.entries[j][i] = m.entries[j][i] + half
    return rank(m)


def lagrangian_mod_p(a, p):
    """Basis of A reduced mod p as integer rows; BadPrimeError when a
    cleared denominator vanishes or the reduction drops rank."""
    rows = []
    for row in a.basis:
        den = 1
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
        if den % p == 0:
            raise BadPrimeError(f"{p} divides a cleared denominator")
        ints = [int(c * den) % p for c in row]
        rows.append(ints)
    from .fields import GF

    if Subspace.from_vectors(GF(p), 20, rows).dim != a.dim:
        raise BadPrimeError(f"reduction mod {p} drops the dimension of A")
    return rows


def stratum_census_Fp(a, p):
    """Exhaustive corank census over P^5(F_p): {corank k: point count}."""
    rows = lagrangian_mod_p(a, p)
    counts = census_modp(rows, p)
    return {k: n for k, n in enumerate(counts) if n}
