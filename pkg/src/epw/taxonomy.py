"""Morin's six plane families, the twelve curve types of the plane locus,
construction of Lagrangians with a prescribed curve of planes, flag
predicates and the first-order (differential) checks.

Rational types are explicit polynomial parametrizations; non-rational
types are finite samples (over F_3 for the point-star/hyperplane types,
over Q via chord/plane-section point generation for the rest).
"""

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from ._kernels import rref_reps_modp
from ._kernels.tables import merge_sign, subset_index, subsets
from .exterior import KVector, plane_trivector, symp, trivector_of
from .fields import GF, QQ
from .lagrangian import NotIsotropicError, S_of, extend_isotropic, is_lagrangian, rho_U, symp_gram
from .linalg import (
    Mat,
    Subspace,
    annihilator,
    complement_rows,
    intersect,
    kernel,
    rank,
    subspace_sum,
)
from .menagerie import h_map, i_minus, i_plus, k_map, sym2_coords, wedge2_coords
from .poly import (
    p1_add,
    p1_eval,
    p1_gcd_many,
    p1_mul,
    p1_scale,
    p1_sub,
    p1_trim,
)
from .sextic import lagrangian_mod_p

CURVE_TAGS = (
    "F1", "D", "E2", "E2dual", "Q", "A", "Adual", "C2", "R", "S", "T", "Tdual",
)
RATIONAL_TAGS = ("F1", "D", "E2", "E2dual", "Q", "R")

# degree, projective span dim, splitting type (None where the table is blank)
CURVE_TABLE = {
    "F1": (1, 1, (0, 0, 1)),
    "D": (2, 2, (0, 1, 1)),
    "E2": (3, 3, (0, 1, 2)),
    "E2dual": (3, 3, (1, 1, 1)),
    "Q": (4, 4, (1, 1, 2)),
    "A": (5, 4, None),
    "Adual": (5, 4, None),
    "C2": (6, 5, None),
    "R": (6, 6, None),
    "S": (8, 7, None),
    "T": (9, 8, None),
    "Tdual": (9, 8, None),
}

# codimension of the closure of {A : Theta_A has a component of each type}
B_CODIM = {
    "F1": 7, "D": 9, "E2": 11, "E2dual": 11, "Q": 9, "A": 10, "Adual": 10,
    "C2": 12, "R": 17, "S": 16, "T": 18, "Tdual": 18,
}


def sigma_stratum_codim(d):
    """Codimension of the locus where some plane W has dim(A meet S_W)
    at least d+1: (d^2 + d + 2) / 2."""
    return (d * d + d + 2) // 2


def fiber_stratum_codim(d):
    """Codimension d(d+1)/2 of the corank-d condition in the Lagrangian
    Grassmannian fiber."""
    return d * (d + 1) // 2


def codim_tables():
    """Closed-form codimension data, with the fiber-plus-base identity
    asserted: (d^2+d+2)/2 = 1 + d(d+1)/2."""
    for d in range(10):
        assert sigma_stratum_codim(d) == 1 + fiber_stratum_codim(d)
    return {
        "sigma": {d: sigma_stratum_codim(d) for d in range(10)},
        "fiber": {d: fiber_stratum_codim(d) for d in range(10)},
        "B": dict(B_CODIM),
    }


# ---------------------------------------------------------------- curves


@dataclass
class ParamCurve:
    """Curve of planes given by three polynomial generator vectors: each
    generator is a list of 6 univariate coefficient lists."""

    tag: str
    gens: list

    def plane_at(self, t):
        f = QQ
        rows = [[p1_eval(c, Fraction(t)) for c in gen] for gen in self.gens]
        w = Subspace.from_vectors(f, 6, rows)
        if w.dim != 3:
            raise ValueError(f"degenerate fiber at t = {t}")
        return w


@dataclass
class CurveSample:
    """Finite list of 3-dim subspaces standing in for a non-rational
    curve of planes; `fresh` holds extra points kept out of the span."""

    tag: str
    field: object
    planes: list
    fresh: list = dc_field(default_factory=list)


def _const(x):
    return [Fraction(x)] if x else []


def _poly_vec(entries):
    """entries: 6 items, each an int/Fraction or a coefficient list."""
    out = []
    for e in entries:
        if isinstance(e, list):
            out.append(p1_trim([Fraction(c) for c in e]))
        else:
            out.append(_const(e))
    return out


def _random_gl6(rng):
    while True:
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
        if rank(Mat(QQ, rows)) == 6:
            return Mat(QQ, rows)


def _apply_gl_polyvec(g, vec):
    """Apply a 6x6 matrix to a polynomial vector (list of coeff lists)."""
    out = []
    for i in range(6):
        acc = []
        for j in range(6):
            c = g.entries[i][j]
            if c:
                acc = p1_add(acc, p1_scale(vec[j], c))
        out.append(acc)
    return out


def _pair_coords_polyvec(u, v):
    """u ^ v on the lex pair basis of wedge^2 of a 4-space, for polynomial
    4-vectors (lists of coefficient lists)."""
    out = []
    for (a, b) in combinations(range(4), 2):
        out.append(p1_sub(p1_mul(u[a], v[b]), p1_mul(u[b], v[a])))
    return out


def make_curve(tag, seed=0):
    """Constructor for each type of one-dimensional plane family.

    Rational types return a ParamCurve (after a seeded change of basis);
    the rest return a CurveSample.
    """
    rng = random.Random(seed ^ 0x5EED)
    if tag == "F1":
        gens = [
            _poly_vec([1, 0, 0, 0, 0, 0]),
            _poly_vec([0, 1, 0, 0, 0, 0]),
            [_const(0), _const(0), [Fraction(1)], [Fraction(0), Fraction(1)], _const(0), _const(0)],
        ]
    elif tag == "D":
        gens = [
            _poly_vec([1, 0, 0, 0, 0, 0]),
            [_const(0), [Fraction(1)], [Fraction(0), Fraction(1)], _const(0), _const(0), _const(0)],
            [_const(0), _const(0), _const(0), [Fraction(1)], [Fraction(0), Fraction(1)], _const(0)],
        ]
    elif tag == "E2":
        gens = [
            _poly_vec([1, 0, 0, 0, 0, 0]),
            [_const(0), [Fraction(1)], [Fraction(0), Fraction(1)], _const(0), _const(0), _const(0)],
            [_const(0), _const(0), _const(0), [Fraction(1)], [Fraction(0), Fraction(1)], [Fraction(0), Fraction(0), Fraction(1)]],
        ]
    elif tag == "E2dual":
        # annihilator of the E2 model: x0 = 0, x1 + t x2 = 0, x3 + t x4 + t^2 x5 = 0
        gens = [
            [_const(0), [Fraction(0), Fraction(-1)], [Fraction(1)], _const(0), _const(0), _const(0)],
            [_const(0), _const(0), _const(0), [Fraction(0), Fraction(-1)], [Fraction(1)], _const(0)],
            [_const(0), _const(0), _const(0), [Fraction(0), Fraction(0), Fraction(-1)], _const(0), [Fraction(1)]],
        ]
    elif tag in ("Q", "R"):
        # u(t) = u0 + t u1 + ... on the rational normal curve of P(U);
        # the plane u(t) ^ U is spanned by u(t) ^ u_a, a = 1, 2, 3
        deg = 2 if tag == "Q" else 3
        u_t = [[Fraction(1)], [], [], []]
        for k in range(1, deg + 1):
            u_t[k] = [Fraction(0)] * k + [Fraction(1)]
        gens = []
        for a in range(1, 4):
            ua = [[Fraction(1)] if j == a else [] for j in range(4)]
            gens.append(_pair_coords_polyvec(u_t, ua))
    elif tag in ("A", "Adual"):
        return _make_curve_A(tag, rng)
    elif tag in ("C2", "S", "T", "Tdual"):
        return _make_curve_sampled(tag, rng)
    else:
        raise ValueError(f"unknown curve type {tag!r}")
    g = _random_gl6(rng)
    gens = [_apply_gl_polyvec(g, v) for v in gens]
    return ParamCurve(tag, gens)


def plucker_polys(curve):
    """The 20 coordinates of w1 ^ w2 ^ w3 as univariate polynomials, with
    the polynomial content (gcd of all coordinates) divided out."""
    w1, w2, w3 = curve.gens
    out = []
    for (a, b, c) in subsets(6, 3):
        d = p1_mul(w1[a], p1_sub(p1_mul(w2[b], w3[c]), p1_mul(w2[c], w3[b])))
        d = p1_sub(d, p1_mul(w1[b], p1_sub(p1_mul(w2[a], w3[c]), p1_mul(w2[c], w3[a]))))
        d = p1_add(d, p1_mul(w1[c], p1_sub(p1_mul(w2[a], w3[b]), p1_mul(w2[b], w3[a]))))
        out.append(d)
    if all(not p for p in out):
        raise ValueError("degenerate generators: identically dependent")
    g = p1_gcd_many([p for p in out if p])
    if len(g) > 1:
        out = [p1_divmod_exact(p, g) for p in out]
    return out


def p1_divmod_exact(a, b):
    from .poly import p1_divmod

    q, r = p1_divmod(a, b)
    if r:
        raise ArithmeticError("content division left a remainder")
    return q


def curve_degree(curve):
    """Plucker degree of a rational type: max degree after clearing the
    polynomial content."""
    if not isinstance(curve, ParamCurve):
        raise ValueError("curve degree is computed for rational types only")
    pl = plucker_polys(curve)
    return max(len(p) - 1 for p in pl if p)


def span_dim(curve):
    """Projective dimension of the span of the plane trivectors."""
    if isinstance(curve, CurveSample):
        vecs = [plane_trivector(w).coords for w in curve.planes]
        return Subspace.from_vectors(curve.field, 20, vecs).dim - 1
    pl = plucker_polys(curve)
    span = Subspace.zero(QQ, 20)
    stable = 0
    t = 0
    seq = _t_sequence()
    while stable < 5:
        tv = next(seq)
        vec = [p1_eval(p, tv) for p in pl]
        if not any(vec):
            continue
        new = Subspace.from_vectors(QQ, 20, span.basis + [vec])
        if new.dim == span.dim:
            stable += 1
        else:
            stable = 0
        span = new
    return span.dim - 1


def _t_sequence():
    t = 0
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def splitting_type(curve):
    """Multiset {a1, a2, a3} with the restricted tautological bundle
    isomorphic to O(-a1) + O(-a2) + O(-a3).

    h^0 of twists is the dimension of {polynomial vectors s(t) of degree
    <= m with s ^ w1 ^ w2 ^ w3 = 0}; the ladder is run for both the given
    and the reversed parametrization and must agree.
    """
    if not isinstance(curve, ParamCurve):
        raise ValueError("splitting type is computed for rational types only")
    fw = _splitting_from_plucker(plucker_polys(curve))
    rev = _splitting_from_plucker(_reverse_plucker(plucker_polys(curve)))
    if fw != rev:
        raise ArithmeticError(
            f"splitting differs between charts ({fw} vs {rev}): base-locus artifact"
        )
    return fw


def _reverse_plucker(pl):
    d = max(len(p) - 1 for p in pl if p)
    out = []
    for p in pl:
        padded = list(p) + [Fraction(0)] * (d + 1 - len(p))
        out.append(p1_trim(list(reversed(padded))))
    return out


def _splitting_from_plucker(pl):
    d = max(len(p) - 1 for p in pl if p)
    a = []
    prev_h = 0
    # h0(m) - h0(m-1) counts the summands with a_i <= m
    for m in range(d + 2):
        hm = _h0_twist(pl, m)
        n_m = hm - prev_h
        a.extend([m] * (n_m - len(a)))
        prev_h = hm
        if len(a) == 3:
            break
    if len(a) != 3:
        raise ArithmeticError("splitting ladder did not resolve three summands")
    return tuple(sorted(a))


def _h0_twist(pl, m):
    """dim{s in V x Q[t], deg <= m, s(t) wedge P(t) = 0}."""
    dmax = max(len(p) for p in pl)
    nunk = 6 * (m + 1)
    # each 4-subset coordinate of s ^ P is sum over v in it of
    # sign * s_v * P_{rest}; one linear equation per t-coefficient
    tri_idx = subset_index(6, 3)
    deg_bound = m + dmax + 2
    mat_rows = []
    for q in subsets(6, 4):
        for dcoef in range(deg_bound):
            row = [Fraction(0)] * nunk
            nonzero = False
            for v in q:
                rest = tuple(x for x in q if x != v)
                sign = merge_sign((v,), rest)
                p = pl[tri_idx[rest]]
                # s_v has coefficients s_{v,0..m}; contribution to t^dcoef is
                # sum_k s_{v,k} * p[dcoef - k]
                for kk in range(m + 1):
                    j = dcoef - kk
                    if 0 <= j < len(p) and p[j]:
                        row[v * (m + 1) + kk] += sign * p[j]
                        nonzero = True
            if nonzero:
                mat_rows.append(row)
    if not mat_rows:
        return nunk
    return nunk - rank(Mat(QQ, mat_rows))


# -- non-rational types: finite samples --


def _make_curve_A(tag, rng):
    """Type 'in J_{v0}': the degree-5 elliptic section of Gr(2, V0) by a
    random codim-5 linear space, gathered over F_3; the dual type applies
    the annihilator plane by plane."""
    p = 3
    gf = GF(p)
    pairs = list(combinations(range(5), 2))
    reps = list(rref_reps_modp(5, 2, p))
    for _ in range(400):
        conds = [[rng.randrange(p) for _ in range(10)] for _ in range(5)]
        planes = []
        for w in reps:
            pl = [
                (w[0][a] * w[1][b] - w[0][b] * w[1][a]) % p for (a, b) in pairs
            ]
            if all(
                sum(c * x for c, x in zip(row, pl)) % p == 0 for row in conds
            ):
                rows = [[1, 0, 0, 0, 0, 0], [0] + w[0], [0] + w[1]]
                planes.append(Subspace.from_vectors(gf, 6, rows))
        if len(planes) < 5:
            continue
        vecs = [plane_trivector(w).coords for w in planes]
        if Subspace.from_vectors(gf, 20, vecs).dim != 5:
            continue
        if tag == "Adual":
            planes = [annihilator(w) for w in planes]
        return CurveSample(tag, gf, planes)
    raise RuntimeError("no usable linear section found for type A")


def _rand_proj_point(rng, n):
    while True:
        v = [rng.randint(-6, 6) for _ in range(n)]
        if any(v):
            return [Fraction(x) for x in v]


def _monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for k in range(d + 1):
        for rest in _monomials(nvars - 1, d - k):
            out.append((k,) + rest)
    return out


def _eval_mono(mono, pt):
    v = Fraction(1)
    for e, x in zip(mono, pt):
        v *= x**e
    return v


def _curve_through(points, degree, nvars, rng, take=None):
    """Coefficient vectors of forms of the given degree vanishing on the
    points; returns a seeded element (or `take` independent ones)."""
    monos = _monomials(nvars, degree)
    rows = [[_eval_mono(m, pt) for m in monos] for pt in points]
    ker = kernel(Mat(QQ, rows))
    if take is None:
        if ker.dim == 0:
            return None
        combo = [Fraction(0)] * len(monos)
        for row in ker.basis:
            c = Fraction(rng.randint(1, 5))
            combo = [x + c * y for x, y in zip(combo, row)]
        return monos, combo
    if ker.dim < take:
        return None
    return monos, ker.basis[:take]


def _form_eval(monos, coeffs, pt):
    return sum(c * _eval_mono(m, pt) for m, c in zip(monos, coeffs))


def _cubic_chord_points(monos, coeffs, base_points, rng, want):
    """Extra rational points of a plane cubic via the chord construction:
    the third intersection of the line through two known points."""
    pts = [tuple(p) for p in base_points]
    seen = {_proj_normal(p) for p in pts}
    out = []
    pairs = list(combinations(range(len(pts)), 2))
    rng.shuffle(pairs)
    for (i, j) in pairs:
        if len(out) >= want:
            break
        pi, pj = pts[i], pts[j]
        # f(pi + s pj) = s * (c1 + c2 s) since f(pi) = f(pj) = 0
        f0 = _form_eval(monos, coeffs, pi)
        f_inf = _form_eval(monos, coeffs, pj)
        if f0 or f_inf:
            continue
        p_at = lambda s: [a + s * b for a, b in zip(pi, pj)]
        v1 = _form_eval(monos, coeffs, p_at(Fraction(1)))
        v2 = _form_eval(monos, coeffs, p_at(Fraction(2)))
        # v(s) = c1 s + c2 s^2; solve from s = 1, 2
        c2 = (v2 - 2 * v1) / 2
        c1 = v1 - c2
        if not c2:
            continue
        s_star = -c1 / c2
        cand = p_at(s_star)
        if not any(cand):
            continue
        key = _proj_normal(cand)
        if key in seen:
            continue
        if _form_eval(monos, coeffs, cand):
            continue
        seen.add(key)
        out.append(cand)
    return out


def _proj_normal(v):
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def _make_curve_sampled(tag, rng):
    for _ in range(60):
        try:
            if tag in ("C2",):
                sample = _sample_C2(rng)
            elif tag == "S":
                sample = _sample_S(rng)
            else:
                sample = _sample_T(tag, rng)
        except (ArithmeticError, ValueError):
            continue
        if sample is not None:
            return sample
    raise RuntimeError(f"sampling failed for type {tag}")


def _sample_plane_cubic(rng, npts=8):
    """A plane cubic through random rational points plus chord-generated
    extras; returns >= 10 distinct points."""
    while True:
        pts = []
        seen = set()
        while len(pts) < npts:
            p = _rand_proj_point(rng, 3)
            k = _proj_normal(p)
            if k not in seen:
                seen.add(k)
                pts.append(p)
        got = _curve_through(pts, 3, 3, rng)
        if got is None:
            continue
        monos, coeffs = got
        if all(not c for c in coeffs):
            continue
        extras = _cubic_chord_points(monos, coeffs, pts, rng, 12)
        if len(pts) + len(extras) >= 10:
            return pts + extras


def _sample_C2(rng):
    """i_plus of a plane cubic inside a hyperplane of U: all planes meet
    wedge^2 H in dimension >= 2, so the sample sits in I_U."""
    pts3 = _sample_plane_cubic(rng)
    planes, fresh = [], []
    for n, p in enumerate(pts3):
        u = list(p) + [Fraction(0)]  # embed P(H) in P(U)
        w = i_plus(QQ, u)
        (planes if n < 8 else fresh).append(w)
    vecs = [plane_trivector(w).coords for w in planes]
    if Subspace.from_vectors(QQ, 20, vecs).dim != 6:
        return None
    return CurveSample("C2", QQ, planes, fresh)


def _sample_T(tag, rng):
    """k (or h) image of a plane cubic: type T (or its dual)."""
    pts = _sample_plane_cubic(rng, npts=9)
    fn = k_map if tag == "T" else h_map
    planes, fresh = [], []
    for n, p in enumerate(pts):
        w = fn(QQ, p)
        (planes if n < 10 else fresh).append(w)
    vecs = [plane_trivector(w).coords for w in planes]
    if Subspace.from_vectors(QQ, 20, vecs).dim != 9:
        return None
    return CurveSample(tag, QQ, planes, fresh)


def _sample_S(rng):
    """i_plus of a complete intersection of two quadrics in P^3; extra
    rational points from plane sections through three known points."""
    pts = []
    seen = set()
    while len(pts) < 8:
        p = _rand_proj_point(rng, 4)
        k = _proj_normal(p)
        if k not in seen:
            seen.add(k)
            pts.append(p)
    got = _curve_through(pts, 2, 4, rng, take=2)
    if got is None:
        return None
    monos, (q1, q2) = got[0], got[1]
    extras = _quartic_plane_points(monos, q1, q2, pts, rng, 8)
    allpts = pts + extras
    planes = [i_plus(QQ, p) for p in allpts[:8]]
    fresh = [i_plus(QQ, p) for p in allpts[8:]]
    vecs = [plane_trivector(w).coords for w in planes]
    if Subspace.from_vectors(QQ, 20, vecs).dim != 8:
        return None
    return CurveSample("S", QQ, planes, fresh)


def _quartic_plane_points(monos, q1, q2, base, rng, want):
    """Fourth intersection point of the quadric pencil with planes through
    three known points of the base curve."""
    out = []
    seen = {_proj_normal(p) for p in base}
    triples = list(combinations(range(len(base)), 3))
    rng.shuffle(triples)
    for (i, j, k) in triples:
        if len(out) >= want:
            break
        pi, pj, pk = base[i], base[j], base[k]
        if Subspace.from_vectors(QQ, 4, [pi, pj, pk]).dim != 3:
            continue
        emb = lambda a, b, c: [a * x + b * y + c * z for x, y, z in zip(pi, pj, pk)]

        def restrict(q):
            # quadratic form in plane coordinates (a, b, c)
            vals = {}
            pts = [
                (1, 0, 0), (0, 1, 0), (0, 0, 1),
                (1, 1, 0), (1, 0, 1), (0, 1, 1),
            ]
            rows = []
            rhs = []
            pm = _monomials(3, 2)
            for pt in pts:
                rows.append([_eval_mono(m, [Fraction(x) for x in pt]) for m in pm])
                rhs.append(_form_eval(monos, q, emb(*[Fraction(x) for x in pt])))
            from .linalg import solve

            sol = solve(Mat(QQ, rows), rhs)
            return pm, sol

        pm, c1 = restrict(q1)
        _, c2 = restrict(q2)
        if c1 is None or c2 is None:
            continue
        p4 = _pencil_fourth_point(pm, c1, c2)
        if p4 is None:
            continue
        cand = emb(*p4)
        if not any(cand):
            continue
        key = _proj_normal(cand)
        if key in seen:
            continue
        if _form_eval(monos, q1, cand) or _form_eval(monos, q2, cand):
            continue
        seen.add(key)
        out.append(cand)
    return out


def _pencil_fourth_point(pm, c1, c2):
    """Two plane conics through (1,0,0), (0,1,0), (0,0,1): their fourth
    common point, via factoring degenerate pencil members."""

    def eval_conic(c, pt):
        return sum(
            cc * _eval_mono(m, [Fraction(x) for x in pt]) for m, cc in zip(pm, c)
        )

    def line_factor(var):
        # pencil member vanishing on a third point of the line {x_var = 0}
        third = [Fraction(1), Fraction(1), Fraction(1)]
        third[var] = Fraction(0)
        lam, mu = eval_conic(c2, third), -eval_conic(c1, third)
        if not lam and not mu:
            return None
        comb = [lam * a + mu * b for a, b in zip(c1, c2)]
        # the degenerate member must be divisible by x_var
        if any(c for m, c in zip(pm, comb) if m[var] == 0):
            return None
        # quotient line: coefficients of x_var * (l0 x0 + l1 x1 + l2 x2)
        line = [Fraction(0)] * 3
        for m, c in zip(pm, comb):
            if not c:
                continue
            rest = list(m)
            rest[var] -= 1
            line[rest.index(1)] += c
        return line

    l1 = line_factor(2)  # split {p0, p1} | {p2, p4}
    l2 = line_factor(1)  # split {p0, p2} | {p1, p4}
    if l1 is None or l2 is None:
        return None
    ker = kernel(Mat(QQ, [l1, l2]))
    if ker.dim != 1:
        return None
    return list(ker.basis[0])


# ------------------------------------------------------------- families


@dataclass
class PlaneFamily:
    kind: str  # J_v0 | Gr3E | I_U | F_plus_Q | F_minus_Q | C_V | T_V
    datum: object = None


def family_contains(fam, w):
    """Membership of a 3-dim subspace in a Morin family."""
    f = w.field
    if fam.kind == "J_v0":
        return w.contains([f.coerce(x) for x in fam.datum])
    if fam.kind == "Gr3E":
        return fam.datum.contains_subspace(w)
    if fam.kind == "I_U":
        return intersect(w, fam.datum).dim >= 2
    if fam.kind == "F_plus_Q":
        u = _common_wedge_factor(w)
        return u is not None and i_plus(f, u) == w
    if fam.kind == "F_minus_Q":
        from .exterior import support, wedge

        supp = _union_support(w)
        if supp.dim != 3:
            return False
        vecs = [
            wedge2_coords(f, supp.basis[a], supp.basis[b])
            for (a, b) in combinations(range(3), 2)
        ]
        return Subspace.from_vectors(f, 6, vecs) == w
    if fam.kind == "C_V":
        fvec = _common_matrix_kernel(w)
        return fvec is not None and h_map(f, fvec) == w
    if fam.kind == "T_V":
        l = _common_matrix_column(w)
        return l is not None and k_map(f, l) == w
    raise ValueError(f"unknown family kind {fam.kind!r}")


def _sym_matrix_doubled(f, q):
    """2 * symmetric matrix of q in Sym^2(3-space) unit coordinates."""
    x = list(q)
    return Mat(
        f,
        [
            [f.mul(f.coerce(2), x[0]), x[1], x[2]],
            [x[1], f.mul(f.coerce(2), x[3]), x[4]],
            [x[2], x[4], f.mul(f.coerce(2), x[5])],
        ],
    )


def _common_wedge_factor(w):
    """u with w = {u ^ u' : u'}, if any: the common kernel of wedging the
    basis bivectors (as forms on the 4-space)."""
    f = w.field
    rows = []
    for biv in w.basis:
        # u ^ biv = 0 in wedge^3 of the 4-space: 4 linear conditions on u
        for tri in combinations(range(4), 3):
            row = []
            for m in range(4):
                if m not in tri:
                    row.append(f.zero)
                    continue
                rest = tuple(x for x in tri if x != m)
                pr = list(combinations(range(4), 2)).index(rest)
                row.append(
                    biv[pr] if merge_sign((m,), rest) > 0 else f.neg(biv[pr])
                )
            rows.append(row)
    ker = kernel(Mat(f, rows))
    if ker.dim != 1:
        return None
    return list(ker.basis[0])


def _union_support(w):
    from .exterior import KVector, support

    f = w.field
    acc = Subspace.zero(f, 4)
    for biv in w.basis:
        # support of a bivector on the 4-space: contract by each covector
        vecs = []
        pairs = list(combinations(range(4), 2))
        for m in range(4):
            vec = [f.zero] * 4
            for idx, (a, b) in enumerate(pairs):
                if a == m:
                    vec[b] = f.add(vec[b], biv[idx])
                elif b == m:
                    vec[a] = f.sub(vec[a], biv[idx])
            vecs.append(vec)
        acc = subspace_sum(acc, Subspace.from_vectors(f, 4, vecs))
    return acc


def _common_matrix_kernel(w):
    f = w.field
    rows = []
    for q in w.basis:
        m = _sym_matrix_doubled(f, q)
        rows.extend(m.entries)
    ker = kernel(Mat(f, rows))
    if ker.dim != 1:
        return None
    return list(ker.basis[0])


def _common_matrix_column(w):
    f = w.field
    spaces = []
    for q in w.basis:
        m = _sym_matrix_doubled(f, q)
        spaces.append(Subspace.from_vectors(f, 3, m.transpose().entries))
    acc = spaces[0]
    for s in spaces[1:]:
        acc = intersect(acc, s)
    if acc.dim < 1:
        return None
    for cand in acc.basis:
        if k_map(f, list(cand)) == w:
            return list(cand)
    return None


def family_sample(fam, seed=0, n=6):
    """n random members of the family (over Q)."""
    rng = random.Random(seed)
    f = QQ
    out = []
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 100 * n + 50:
            raise RuntimeError("sampling stalled")
        if fam.kind == "J_v0":
            v0 = [f.coerce(x) for x in fam.datum]
            rows = [v0, _rand_proj_point(rng, 6), _rand_proj_point(rng, 6)]
            w = Subspace.from_vectors(f, 6, rows)
        elif fam.kind == "Gr3E":
            combo = lambda: [
                sum((f.mul(f.coerce(rng.randint(-3, 3)), b) for b in col), f.zero)
                for col in zip(*fam.datum.basis)
            ]
            w = Subspace.from_vectors(f, 6, [combo() for _ in range(3)])
        elif fam.kind == "I_U":
            u = fam.datum
            c1 = [rng.randint(-3, 3) for _ in range(3)]
            c2 = [rng.randint(-3, 3) for _ in range(3)]
            v1 = [sum(f.mul(f.coerce(c), b) for c, b in zip(c1, col)) for col in zip(*u.basis)]
            v2 = [sum(f.mul(f.coerce(c), b) for c, b in zip(c2, col)) for col in zip(*u.basis)]
            rows = [v1, v2, _rand_proj_point(rng, 6)]
            w = Subspace.from_vectors(f, 6, rows)
        elif fam.kind == "F_plus_Q":
            w = i_plus(f, _rand_proj_point(rng, 4))
        elif fam.kind == "F_minus_Q":
            w = i_minus(f, _rand_proj_point(rng, 4))
        elif fam.kind == "C_V":
            w = h_map(f, _rand_proj_point(rng, 3))
        elif fam.kind == "T_V":
            w = k_map(f, _rand_proj_point(rng, 3))
        else:
            raise ValueError(f"unknown family kind {fam.kind!r}")
        if w.dim == 3:
            out.append(w)
    return out


def pairwise_incident(planes):
    return all(
        intersect(a, b).dim > 0 for a, b in combinations(planes, 2)
    )


def span_isotropic(planes):
    f = planes[0].field
    vecs = [plane_trivector(w).coords for w in planes]
    span = Subspace.from_vectors(f, 20, vecs)
    g = symp_gram(span)
    return all(not x for row in g.entries for x in row)


def I_U_cone_check(u, seed=0, n=6):
    """Samples of I_U map to rank-1 classes in T_U; the vertex maps to 0;
    rank-2 classes are not in the image."""
    f = u.field
    fam = PlaneFamily("I_U", u)
    checks = []
    vcomp = complement_rows(u, Subspace.full(f, 6))
    for i, w in enumerate(family_sample(fam, seed, n)):
        if w == u:
            continue
        m = rho_U(u, plane_trivector(w), vcomp)
        checks.append((f"rho_U of sample {i} has rank 1", rank(m) == 1, ""))
    m0 = rho_U(u, plane_trivector(u), vcomp)
    checks.append(
        ("the vertex wedge^3 U maps to 0", all(not x for r in m0.entries for x in r), "")
    )
    # rank-2 control: (u1^u2)^w1 + (u1^u3)^w2
    a = trivector_of(f, u.basis[0], u.basis[1], vcomp[0])
    b = trivector_of(f, u.basis[0], u.basis[2], vcomp[1])
    m2 = rho_U(u, a + b, vcomp)
    checks.append(("a rank-2 class is not an I_U image", rank(m2) == 2, ""))
    return checks


# ------------------------------------------------------ prescribed Theta


@dataclass
class GenlagReport:
    tag: str
    field_name: str
    span_vector_dim: int
    lagrangian_ok: bool
    containment_ok: bool
    containment_checked: int
    transversality_ok: bool
    kernel_dims: list
    attempts: int

    @property
    def ok(self):
        return self.lagrangian_ok and self.containment_ok and self.transversality_ok


def _subspace_mod_p(s, p):
    """Reduction of a QQ-subspace mod p (clearing row denominators)."""
    import math as _math

    gf = GF(p)
    rows = []
    for row in s.basis:
        den = 1
        for c in row:
            den = den * c.denominator // _math.gcd(den, c.denominator)
        if den % p == 0:
            raise ValueError(f"{p} divides a cleared denominator")
        rows.append([int(c * den) % p for c in row])
    out = Subspace.from_vectors(gf, s.ambient, rows)
    if out.dim != s.dim:
        raise ValueError(f"reduction mod {p} drops rank")
    return out


def curve_planes_for_genlag(curve, p=3):
    """(field, span planes, fresh planes) used by build_A_with_theta.

    Rational types stay over QQ; sampled types are taken over F_p (native
    for the point-star types, reduced mod p otherwise).
    """
    if isinstance(curve, ParamCurve):
        seq = _t_sequence()
        planes = [curve.plane_at(next(seq)) for _ in range(12)]
        fresh = [curve.plane_at(next(seq)) for _ in range(20)]
        return QQ, planes, fresh
    if curve.field.p is not None:
        fresh = curve.fresh if curve.fresh else curve.planes
        return curve.field, curve.planes, fresh
    gf = GF(p)
    planes, fresh = [], []
    for src, dst in ((curve.planes, planes), (curve.fresh, fresh)):
        for w in src:
            try:
                dst.append(_subspace_mod_p(w, p))
            except ValueError:
                continue
    if not fresh:
        fresh = planes
    return gf, planes, fresh


def build_A_with_theta(curve, seed=0, p=3, max_attempts=32):
    """A Lagrangian whose plane locus contains the given curve, with the
    generic-transversality certificate.

    The span L of the sampled plane trivectors must have the catalogued
    vector dimension; A extends L isotropically, retrying the random
    extension until the transversality certificate (A meet S_W equals
    L meet S_W of dimension 2) holds at the sampled planes.
    """
    tag = curve.tag
    expected = CURVE_TABLE[tag][1] + 1
    f, planes, fresh = curve_planes_for_genlag(curve, p)
    vecs = [plane_trivector(w).coords for w in planes]
    lspace = Subspace.from_vectors(f, 20, vecs)
    if lspace.dim != expected:
        raise ValueError(
            f"span dimension {lspace.dim} does not match the catalogued {expected}"
        )
    last_report = None
    for attempt in range(max_attempts):
        a = extend_isotropic(lspace, seed=(seed << 8) + attempt)
        lag_ok = is_lagrangian(a) and a.contains_subspace(lspace)
        cont_checked = 0
        cont_ok = True
        for w in fresh[:20]:
            cont_checked += 1
            if not a.contains(plane_trivector(w).coords):
                cont_ok = False
                break
        trans_ok = True
        kdims = []
        for w in planes[:5]:
            sw = S_of(w)
            asw = intersect(a, sw)
            lsw = intersect(lspace, sw)
            kdims.append(asw.dim - 1)
            if lsw.dim != 2 or asw != lsw:
                trans_ok = False
                break
        last_report = GenlagReport(
            tag, f.name, lspace.dim, lag_ok, cont_ok, cont_checked, trans_ok, kdims,
            attempt + 1,
        )
        if last_report.ok:
            return a, last_report
    return a, last_report


def sigma_tilde_kernel(w, a):
    """A meet S_W modulo wedge^3 W, as a representative subspace; its
    dimension is the kernel of the projection differential at (W, A)."""
    f = a.field
    t = plane_trivector(w)
    if not a.contains(t.coords):
        raise ValueError("wedge^3 W is not contained in A")
    sw = S_of(w)
    inter = intersect(a, sw)
    line = Subspace.from_vectors(f, 20, [t.coords])
    reps = complement_rows(line, inter)
    return Subspace.from_vectors(f, 20, reps)


# -------------------------------------------------------- flag conditions


def _span_rows(field, vectors):
    return Subspace.from_vectors(field, 6, [list(v) for v in vectors])


def wedge_subspace(field, factors):
    """Span of wedges picking the prescribed number of vectors from each
    subspace: factors is a list of (Subspace, power) with total power 3."""
    total = sum(p for _, p in factors)
    if total != 3:
        raise ValueError("wedge subspace of trivectors needs total power 3")
    choices = [list(combinations(range(s.dim), p)) for s, p in factors]

    def rec(i, picked):
        if i == len(factors):
            vecs = []
            for (s, _), combo in zip(factors, picked):
                vecs.extend(s.basis[c] for c in combo)
            yield vecs
            return
        for combo in choices[i]:
            yield from rec(i + 1, picked + [combo])

    gens = []
    for vecs in rec(0, []):
        t = trivector_of(field, *vecs)
        if t:
            gens.append(t.coords)
    return Subspace.from_vectors(field, 20, gens)


FLAG_NAMES = (
    "B_A", "B_Adual", "B_C2", "B_D", "B_E2", "B_E2dual", "B_F1",
    "X_A_plus", "X_Adual_plus", "X_C1_plus", "X_C2_plus", "X_D_plus",
    "X_E2_plus", "X_E2dual_plus", "X_F1_plus",
)


def flag_predicate(name, a, basis):
    """Flag conditions on A relative to a basis v0..v5 of V.

    The names cover the two catalogued tables: B_* for the curve types
    and X_*_plus for the surface refinements.
    """
    f = a.field
    rows = [[f.coerce(x) for x in v] for v in basis]
    if Subspace.from_vectors(f, 6, rows).dim != 6:
        raise ValueError("basis rows are not a basis")

    def V(i, j):
        return _span_rows(f, rows[i : j + 1])

    def line(i):
        return _span_rows(f, [rows[i]])

    def dim_meet(sub):
        return intersect(a, sub).dim

    def w(*factors):
        return wedge_subspace(f, list(factors))

    if name == "B_A":
        return dim_meet(w((line(0), 1), (V(1, 5), 2))) >= 5
    if name == "B_Adual":
        return dim_meet(w((V(0, 4), 3))) >= 5
    if name == "B_C2":
        s = subspace_sum(w((V(0, 2), 3)), w((V(0, 2), 2), (V(3, 5), 1)))
        return dim_meet(s) >= 6
    if name == "B_D":
        return dim_meet(w((line(0), 1), (V(1, 4), 2))) >= 3
    if name == "B_E2":
        s = subspace_sum(
            w((line(0), 1), (V(1, 2), 2)),
            w((line(0), 1), (V(1, 2), 1), (V(3, 5), 1)),
        )
        return dim_meet(s) >= 4
    if name == "B_E2dual":
        s = subspace_sum(w((V(0, 2), 3)), w((V(0, 2), 2), (V(3, 4), 1)))
        return dim_meet(s) >= 4
    if name == "B_F1":
        return a.contains_subspace(w((V(0, 1), 2), (V(2, 3), 1)))
    if name == "X_A_plus":
        return dim_meet(w((line(0), 1), (V(1, 5), 2))) >= 6
    if name == "X_Adual_plus":
        return dim_meet(w((V(0, 4), 3))) >= 6
    if name == "X_C1_plus":
        return a.contains_subspace(w((V(0, 2), 3))) and dim_meet(
            w((V(0, 2), 2), (V(3, 5), 1))
        ) >= 4
    if name == "X_C2_plus":
        s = subspace_sum(w((V(0, 2), 3)), w((V(0, 2), 2), (V(3, 5), 1)))
        return dim_meet(s) >= 7
    if name == "X_D_plus":
        return dim_meet(w((line(0), 1), (V(1, 4), 2))) >= 4
    if name == "X_E2_plus":
        s = subspace_sum(
            w((line(0), 1), (V(1, 2), 2)),
            w((line(0), 1), (V(1, 2), 1), (V(3, 5), 1)),
        )
        return dim_meet(s) >= 5
    if name == "X_E2dual_plus":
        s = subspace_sum(w((V(0, 2), 3)), w((V(0, 2), 2), (V(3, 4), 1)))
        return dim_meet(s) >= 5
    if name == "X_F1_plus":
        if not a.contains_subspace(w((V(0, 1), 2), (V(2, 3), 1))):
            return False
        s = subspace_sum(
            w((V(0, 1), 2), (V(4, 5), 1)),
            w((V(0, 1), 1), (V(2, 3), 2)),
        )
        return dim_meet(s) >= 1
    raise ValueError(f"unknown flag predicate {name!r}")
