"""Special Lagrangians and their verifications: the triple quadric, the
double chordal cubic, the six-hyperplane example, duality identities and
the finite-field enumerator of the plane locus Theta_A.

Identifications are fixed coordinate bijections: V = wedge^2 U with the
lex pair basis u_i ^ u_j, and V = Sym^2 L with the lex product basis
l_i l_j taken with unit coefficients.
"""

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement

from ._kernels import theta_scan_modp
from .exterior import KVector, delta_subspace, plane_trivector
from .fields import GF, QQ
from .lagrangian import is_lagrangian
from .linalg import Mat, Subspace, annihilator, intersect, kernel, rank
from .poly import MultiPoly, poly_det
from .sextic import BadPrimeError, build_sextic, lagrangian_mod_p

PAIRS4 = list(combinations(range(4), 2))
SYMPAIRS3 = list(combinations_with_replacement(range(3), 2))


def wedge2_coords(field, u, v):
    """Coordinates of u ^ v (u, v in a 4-space) on the lex pair basis."""
    out = []
    for (a, b) in PAIRS4:
        out.append(field.sub(field.mul(u[a], v[b]), field.mul(u[b], v[a])))
    return out


def sym2_coords(field, a, b):
    """Coordinates of the symmetric product a.b (a, b in a 3-space) on the
    lex product basis with unit coefficients."""
    out = []
    for (i, j) in SYMPAIRS3:
        if i == j:
            out.append(field.mul(a[i], b[i]))
        else:
            out.append(field.add(field.mul(a[i], b[j]), field.mul(a[j], b[i])))
    return out


def _apply_ident(ident, vecs):
    if ident is None:
        return [list(v) for v in vecs]
    return [ident.mul_vec(list(v)) for v in vecs]


def i_plus(field, u, ident=None):
    """The plane {u ^ u' : u' in U} inside V = wedge^2 U."""
    if not any(u):
        raise ValueError("zero input")
    eye = Mat.identity(field, 4).entries
    vecs = [wedge2_coords(field, u, e) for e in eye]
    return Subspace.from_vectors(field, 6, _apply_ident(ident, vecs))


def i_minus(field, f, ident=None):
    """The plane wedge^2(ker f) inside V = wedge^2 U, f a covector on U."""
    if not any(f):
        raise ValueError("zero input")
    ker = kernel(Mat(field, [list(f)]))
    vecs = [
        wedge2_coords(field, ker.basis[a], ker.basis[b])
        for (a, b) in combinations(range(ker.dim), 2)
    ]
    return Subspace.from_vectors(field, 6, _apply_ident(ident, vecs))


def k_map(field, l, ident=None):
    """The plane {l.l' : l' in L} inside V = Sym^2 L (tangent plane to the
    Veronese at [l^2])."""
    if not any(l):
        raise ValueError("zero input")
    eye = Mat.identity(field, 3).entries
    vecs = [sym2_coords(field, l, e) for e in eye]
    return Subspace.from_vectors(field, 6, _apply_ident(ident, vecs))


def h_map(field, f, ident=None):
    """The plane {q in Sym^2 L : f in ker q}: quadrics whose symmetric
    matrix kills the covector f (plane meeting the Veronese in a conic)."""
    if not any(f):
        raise ValueError("zero input")
    two = field.coerce(2)
    conds = []
    for r in range(3):
        row = []
        for idx, (i, j) in enumerate(SYMPAIRS3):
            # entry (r, s) of the symmetric matrix of q is X_rr or X_rs/2;
            # scale conditions by 2 to stay integral
            c = field.zero
            if i == j == r:
                c = field.mul(two, f[r])
            elif i == r:
                c = f[j]
            elif j == r:
                c = f[i]
            row.append(c)
        conds.append(row)
    plane = kernel(Mat(field, conds))
    return Subspace.from_vectors(field, 6, _apply_ident(ident, plane.basis))


A_III_TRIPLES = [
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 4),
    (1, 2, 5),
    (2, 3, 5),
    (2, 3, 4),
    (1, 4, 5),
    (1, 3, 4),
    (0, 3, 5),
    (0, 4, 5),
]


@dataclass
class MenagerieLagrangian:
    tag: str
    A: Subspace
    ident: Mat = None


def _span_of_planes(field, planes, expect_dim):
    vecs = []
    stable = 0
    dim = 0
    span = Subspace.zero(field, 20)
    for w in planes:
        t = plane_trivector(w)
        vecs.append(t.coords)
        span = Subspace.from_vectors(field, 20, span.basis + [t.coords])
        if span.dim == dim:
            stable += 1
            if stable >= 5 and dim == expect_dim:
                break
        else:
            stable = 0
            dim = span.dim
    if span.dim != expect_dim:
        raise AssertionError(f"plane span stabilized at {span.dim}, expected {expect_dim}")
    return span


def _point_stream(rng, n):
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    yield from eye
    yield [1] * n
    while True:
        yield [rng.randint(-5, 5) for _ in range(n)]


def build_A_plus(field=QQ, ident=None, seed=0):
    if ident is not None and rank(ident) != 6:
        raise ValueError("identification matrix is not invertible")
    rng = random.Random(seed)
    pts = (u for u in _point_stream(rng, 4) if any(u))
    planes = (i_plus(field, [field.coerce(x) for x in u], ident) for u in pts)
    a = _span_of_planes(field, planes, 10)
    assert is_lagrangian(a)
    return MenagerieLagrangian("A_plus", a, ident)


def build_A_minus(field=QQ, ident=None, seed=0):
    if ident is not None and rank(ident) != 6:
        raise ValueError("identification matrix is not invertible")
    rng = random.Random(seed)
    pts = (u for u in _point_stream(rng, 4) if any(u))
    planes = (i_minus(field, [field.coerce(x) for x in u], ident) for u in pts)
    a = _span_of_planes(field, planes, 10)
    assert is_lagrangian(a)
    return MenagerieLagrangian("A_minus", a, ident)


def build_A_k(field=QQ, ident=None, seed=0):
    if ident is not None and rank(ident) != 6:
        raise ValueError("identification matrix is not invertible")
    rng = random.Random(seed)
    pts = (l for l in _point_stream(rng, 3) if any(l))
    planes = (k_map(field, [field.coerce(x) for x in l], ident) for l in pts)
    a = _span_of_planes(field, planes, 10)
    assert is_lagrangian(a)
    return MenagerieLagrangian("A_k", a, ident)


def build_A_h(field=QQ, ident=None, seed=0):
    if ident is not None and rank(ident) != 6:
        raise ValueError("identification matrix is not invertible")
    rng = random.Random(seed)
    pts = (f for f in _point_stream(rng, 3) if any(f))
    planes = (h_map(field, [field.coerce(x) for x in f], ident) for f in pts)
    a = _span_of_planes(field, planes, 10)
    assert is_lagrangian(a)
    return MenagerieLagrangian("A_h", a, ident)


def build_A_III(field=QQ):
    vecs = []
    for tri in A_III_TRIPLES:
        vecs.append(KVector.basis(field, tri).coords)
    a = Subspace.from_vectors(field, 20, vecs)
    assert is_lagrangian(a)
    return MenagerieLagrangian("A_III", a, None)


def build_menagerie(tag, field=QQ, seed=0):
    builders = {
        "A_plus": build_A_plus,
        "A_minus": build_A_minus,
        "A_k": build_A_k,
        "A_h": build_A_h,
    }
    if tag == "A_III":
        return build_A_III(field)
    if tag not in builders:
        raise ValueError(f"unknown menagerie tag {tag!r}")
    return builders[tag](field=field, seed=seed)


# reference polynomials in the model coordinates


def plucker_quadric_poly():
    """Equation of Gr(2, U) in the lex pair coordinates:
    X0 X5 - X1 X4 + X2 X3."""
    t = {}
    t[(1, 0, 0, 0, 0, 1)] = 1
    t[(0, 1, 0, 0, 1, 0)] = -1
    t[(0, 0, 1, 1, 0, 0)] = 1
    return MultiPoly(6, t)


def chordal_cubic_poly():
    """Discriminant of a plane conic in the lex Sym^2 coordinates: the
    determinant of the doubled symmetric 3x3 matrix."""
    x = [MultiPoly.variable(6, i) for i in range(6)]
    two = MultiPoly.const(6, 2)
    grid = [
        [two * x[0], x[1], x[2]],
        [x[1], two * x[3], x[4]],
        [x[2], x[4], two * x[5]],
    ]
    return poly_det(grid)


def _poly_power(p, n):
    out = MultiPoly.const(p.nvars, 1)
    for _ in range(n):
        out = out * p
    return out


def verify_triple_quadric(seed=0):
    """Y_{A_plus} = Y_{A_minus} = (Plucker quadric)^3 up to scalar."""
    checks = []
    q3 = _poly_power(plucker_quadric_poly(), 3).normalized()
    for tag, builder in (("A_plus", build_A_plus), ("A_minus", build_A_minus)):
        a = builder(seed=seed)
        s = build_sextic(a.A, seed=seed)
        ok = s.poly.normalized().proportional(q3)
        checks.append((f"sextic of {tag} equals the cubed Plucker quadric", ok,
                       _diff_info(s.poly, q3, ok)))
    return checks


def verify_double_cubic(seed=0):
    """Y_{A_k} = Y_{A_h} = (chordal cubic)^2 up to scalar."""
    checks = []
    c2 = _poly_power(chordal_cubic_poly(), 2).normalized()
    for tag, builder in (("A_k", build_A_k), ("A_h", build_A_h)):
        a = builder(seed=seed)
        s = build_sextic(a.A, seed=seed)
        ok = s.poly.normalized().proportional(c2)
        checks.append((f"sextic of {tag} equals the squared chordal cubic", ok,
                       _diff_info(s.poly, c2, ok)))
    return checks


def verify_six_hyperplanes(seed=0):
    """Y_{A_III} = V(X0 X1 X2 X3 X4 X5) up to scalar."""
    a = build_A_III()
    s = build_sextic(a.A, seed=seed)
    target = MultiPoly(6, {(1, 1, 1, 1, 1, 1): 1})
    ok = s.poly.normalized().proportional(target)
    return [("sextic of A_III equals X0*X1*X2*X3*X4*X5", ok, _diff_info(s.poly, target, ok))]


def _diff_info(got, expected, ok):
    if ok:
        return ""
    return f"normalized difference: {(got.normalized() - expected.normalized())!r}"


# finite-field Theta enumeration


@dataclass
class ThetaEnumeration:
    prime: int
    planes: list  # Subspaces over GF(p)
    caveat: str = (
        "mod-p count may exceed the characteristic-0 plane locus; "
        "matches are certified only over F_p"
    )


def theta_enum_Fp(a, p):
    """All W in Gr(3, F_p^6) with wedge^3 W inside A mod p."""
    gf = GF(p)
    rows = lagrangian_mod_p(a, p)
    ann = annihilator(Subspace.from_vectors(gf, 20, rows))
    hits = theta_scan_modp([list(r) for r in ann.basis], p)
    planes = [
        Subspace.from_vectors(gf, 6, [h[0:6], h[6:12], h[12:18]]) for h in hits
    ]
    return ThetaEnumeration(p, planes)


def theta_expected_Fp(tag, p, ident=None):
    """The image planes of the defining maps over F_p, as a set of
    canonical subspaces: i_plus(P^3), i_minus(P^3), k(P^2), h(P^2)."""
    gf = GF(p)
    maps = {"A_plus": (i_plus, 4), "A_minus": (i_minus, 4), "A_k": (k_map, 3), "A_h": (h_map, 3)}
    if tag not in maps:
        raise ValueError(f"no expected enumeration for {tag!r}")
    fn, n = maps[tag]
    out = set()
    for pt in _proj_points_gf(n, p):
        out.add(fn(gf, pt, ident))
    return out


def _proj_points_gf(n, p):
    for lead in range(n):
        nfree = n - lead - 1
        for code in range(p**nfree):
            v = [0] * n
            v[lead] = 1
            c = code
            for i in range(nfree):
                v[lead + 1 + i] = c % p
                c //= p
            yield v


def invasive_Fp(a, p):
    """True iff the planes of Theta_A mod p cover all of P^5(F_p)."""
    gf = GF(p)
    planes = theta_enum_Fp(a, p).planes
    for pt in _proj_points_gf(6, p):
        if not any(w.contains([gf.coerce(x) for x in pt]) for w in planes):
            return False
    return True


# duality


def dual_of(a):
    """delta_V(A) as a subspace in the dual wedge coordinates."""
    return delta_subspace(a)


def _sym2_dual_rescale(field):
    """Matrix of the canonical pairing Sym^2(L-dual) -> (Sym^2 L)-dual in
    the unit-coefficient bases: squares pick up a factor 2."""
    diag = [2 if i == j else 1 for (i, j) in SYMPAIRS3]
    m = Mat.zeros(field, 6, 6)
    for t, d in enumerate(diag):
        m.entries[t][t] = field.coerce(d)
    return m


def a_minus_on_dual(field=QQ, seed=0):
    """A_minus(U-dual) in the dual wedge coordinates: planes
    wedge^2(Ann(u)) for [u] in P(U).  The lex pair basis of wedge^2(U-dual)
    is already dual to the lex pair basis of wedge^2 U."""
    rng = random.Random(seed)
    pts = (u for u in _point_stream(rng, 4) if any(u))

    def plane(u):
        ann = kernel(Mat(field, [[field.coerce(x) for x in u]]))
        vecs = [
            wedge2_coords(field, ann.basis[a], ann.basis[b])
            for (a, b) in combinations(range(3), 2)
        ]
        return Subspace.from_vectors(field, 6, vecs)

    return _span_of_planes(field, (plane(u) for u in pts), 10)


def a_h_on_dual(field=QQ, seed=0):
    """A_h(L-dual) pushed into the dual coordinates of V = Sym^2 L via the
    canonical pairing (squares weighted by 2)."""
    rng = random.Random(seed)
    rescale = _sym2_dual_rescale(field)
    pts = (l for l in _point_stream(rng, 3) if any(l))

    def plane(l):
        # q in Sym^2(L-dual) with l in ker q, coordinates rescaled
        raw = h_map(field, [field.coerce(x) for x in l])
        return Subspace.from_vectors(
            field, 6, [rescale.mul_vec(row) for row in raw.basis]
        )

    return _span_of_planes(field, (plane(l) for l in pts), 10)


def duality_identities(seed=0):
    """The image of special subspaces under delta_V, checked exactly."""
    f = QQ
    checks = []
    from .exterior import F_of

    # delta(F_{e0}) = wedge^3 of the dual coordinate hyperplane X1..X5
    fe0 = F_of(f, [1, 0, 0, 0, 0, 0])
    target = Subspace.from_vectors(
        f, 20, [KVector.basis(f, tri).coords for tri in combinations(range(1, 6), 3)]
    )
    checks.append(("delta(F_e0) = wedge^3 <X1..X5>", dual_of(fe0) == target, ""))

    # delta(wedge^3 W) = wedge^3 Ann(W) for coordinate and random W
    rng = random.Random(seed)
    for trial in range(3):
        if trial == 0:
            rows = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]]
        else:
            rows = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(3)]
        w = Subspace.from_vectors(f, 6, [[f.coerce(x) for x in r] for r in rows])
        if w.dim != 3:
            continue
        lhs = dual_of(Subspace.from_vectors(f, 20, [plane_trivector(w).coords]))
        annw = annihilator(w)
        rhs = Subspace.from_vectors(f, 20, [plane_trivector(annw).coords])
        checks.append((f"delta(wedge^3 W) = wedge^3 Ann(W), trial {trial}", lhs == rhs, ""))

    ap = build_A_plus(seed=seed)
    checks.append(
        ("delta(A_plus(U)) = A_minus(U-dual)", dual_of(ap.A) == a_minus_on_dual(seed=seed), "")
    )
    ak = build_A_k(seed=seed)
    checks.append(
        ("delta(A_k(L)) = A_h(L-dual)", dual_of(ak.A) == a_h_on_dual(seed=seed), "")
    )
    return checks


def membership_duality(a, e_subspace):
    """uaidelta: E in Y_{delta(A)} iff wedge^3 E meets A, E 5-dimensional."""
    f = a.field
    vecs = [
        plane_trivector(Subspace.from_vectors(f, 6, [e_subspace.basis[i] for i in tri]))
        for tri in combinations(range(5), 3)
    ]
    w3e = Subspace.from_vectors(f, 20, [v.coords for v in vecs])
    rhs = intersect(w3e, a).dim > 0
    # left side: the dual point [phi] with ker phi = E has corank >= 1 for delta(A)
    phi = annihilator(e_subspace).basis[0]
    from .sextic import corank_at

    lhs = corank_at(dual_of(a), phi) >= 1
    return lhs, rhs
