"""Exterior algebra of a fixed 6-dimensional space V.

Multivectors carry their grade k and C(6,k) coordinates indexed by
strictly increasing index tuples in lex order.  The volume form is
normalized by vol(e0^...^e5) = 1 and the symplectic form on trivectors
is symp(a, b) = vol(a ^ b).
"""

from ._kernels.tables import (
    complement_sign3,
    merge_sign,
    subset_index,
    subsets,
    wedge_table,
)
from .fields import same_field
from .linalg import Mat, Subspace, kernel

DIM = 6


class GradeError(ValueError):
    pass


class KVector:
    """Homogeneous multivector of grade k on the 6-dimensional V."""

    __slots__ = ("field", "grade", "coords")

    def __init__(self, field, grade, coords, coerce=False):
        if not 1 <= grade <= DIM:
            raise GradeError(f"grade {grade} out of range")
        n = len(subsets(DIM, grade))
        coords = list(coords)
        if len(coords) != n:
            raise GradeError(f"grade-{grade} vector needs {n} coordinates")
        if coerce:
            coords = [field.coerce(x) for x in coords]
        self.field = field
        self.grade = grade
        self.coords = coords

    @classmethod
    def zero(cls, field, grade):
        return cls(field, grade, [field.zero] * len(subsets(DIM, grade)))

    @classmethod
    def basis(cls, field, indices):
        """e_{i1} ^ ... ^ e_{ik} for strictly increasing indices."""
        indices = tuple(indices)
        k = len(indices)
        v = cls.zero(field, k)
        v.coords[subset_index(DIM, k)[indices]] = field.one
        return v

    @classmethod
    def from_vector(cls, field, vec):
        return cls(field, 1, vec)

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, KVector)
            and self.grade == other.grade
            and self.coords == other.coords
        )

    def __add__(self, other):
        f = same_field(self.field, other.field)
        if self.grade != other.grade:
            raise GradeError("grade mismatch in sum")
        return KVector(f, self.grade, [f.add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        f = same_field(self.field, other.field)
        if self.grade != other.grade:
            raise GradeError("grade mismatch in difference")
        return KVector(f, self.grade, [f.sub(a, b) for a, b in zip(self.coords, other.coords)])

    def scale(self, c):
        f = self.field
        return KVector(f, self.grade, [f.mul(c, x) for x in self.coords])

    def __repr__(self):
        bits = []
        for s, c in zip(subsets(DIM, self.grade), self.coords):
            if c:
                bits.append(f"{c}*e{''.join(map(str, s))}")
        return " + ".join(bits) if bits else "0"


def wedge(a, b):
    """Wedge product; bilinear, associative, graded-commutative."""
    f = same_field(a.field, b.field)
    k = a.grade + b.grade
    if k > DIM:
        raise GradeError("grade overflow")
    out = [f.zero] * len(subsets(DIM, k))
    for i, j, sign, t in wedge_table(DIM, a.grade, b.grade):
        x, y = a.coords[i], b.coords[j]
        if x and y:
            v = f.mul(x, y)
            out[t] = f.add(out[t], v) if sign > 0 else f.sub(out[t], v)
    return KVector(f, k, out)


def wedge_many(vectors):
    acc = vectors[0]
    for v in vectors[1:]:
        acc = wedge(acc, v)
    return acc


def vol(a):
    """Coefficient on e0^...^e5; vol(e012345) = 1."""
    if a.grade != DIM:
        raise GradeError("vol needs a grade-6 input")
    return a.coords[0]


def symp(a, b):
    """Symplectic form (a, b) = vol(a ^ b) on trivectors."""
    if a.grade != 3 or b.grade != 3:
        raise GradeError("symp needs two trivectors")
    f = same_field(a.field, b.field)
    acc = f.zero
    for i, (j, sign) in enumerate(complement_sign3()):
        x, y = a.coords[i], b.coords[j]
        if x and y:
            v = f.mul(x, y)
            acc = f.add(acc, v) if sign > 0 else f.sub(acc, v)
    return acc


def contract(a, dual_indices):
    """Contraction of a grade-k vector by the dual basis covectors with the
    given strictly increasing indices; result has grade k - len(indices)."""
    f = a.field
    j = tuple(dual_indices)
    k = a.grade - len(j)
    if k < 0:
        raise GradeError("contraction past grade 0")
    idx_in = subset_index(DIM, a.grade)
    out = KVector.zero(f, k) if k else None
    jset = set(j)
    if k == 0:
        return a.coords[idx_in[j]]
    idx_out = subset_index(DIM, k)
    for s, c in zip(subsets(DIM, a.grade), a.coords):
        if not c or not jset <= set(s):
            continue
        rest = tuple(i for i in s if i not in jset)
        sign = merge_sign(j, rest)
        cur = out.coords[idx_out[rest]]
        out.coords[idx_out[rest]] = f.add(cur, c) if sign > 0 else f.sub(cur, c)
    return out


def support(a):
    """Smallest subspace U with a in image(wedge^k U -> wedge^k V).

    Computed as the span of all contractions of a by (k-1)-fold dual basis
    covectors; the membership-oracle cross-check lives in the tests.
    """
    if not a:
        raise ValueError("support of the zero multivector")
    if a.grade == DIM:
        return Subspace.full(a.field, DIM)
    vecs = []
    for j in subsets(DIM, a.grade - 1):
        w = contract(a, j)
        if w:
            vecs.append(w.coords)
    return Subspace.from_vectors(a.field, DIM, vecs)


def is_decomposable(a):
    """A nonzero trivector is decomposable iff its support is 3-dimensional."""
    if a.grade != 3:
        raise GradeError("decomposability test is for trivectors")
    if not a:
        raise ValueError("zero input")
    return support(a).dim == 3


def plucker_residues(a):
    """Coordinates of iota_psi(a) ^ a over all grade-2 dual basis psi.

    All residues vanish iff the trivector a is decomposable; substituting a
    pencil a0 + t*a1 turns each residue into a quadratic in t.
    """
    out = []
    for j in subsets(DIM, 2):
        w = contract(a, j)
        out.extend(wedge(w, a).coords)
    return out


def delta_V(a):
    """Duality map: trivector to trivector-on-the-dual, b -> symp(a, b).

    Coordinates are taken on the dual wedge basis X_S with the dual volume
    normalized by vol(X0^...^X5) = 1.
    """
    if a.grade != 3:
        raise GradeError("delta_V acts on trivectors")
    f = a.field
    out = [f.zero] * 20
    for i, (j, sign) in enumerate(complement_sign3()):
        c = a.coords[i]
        if c:
            out[j] = c if sign > 0 else f.neg(c)
    return KVector(f, 3, out)


def delta_subspace(s):
    """Image of a subspace of trivectors under delta_V (dual coordinates)."""
    vecs = [delta_V(KVector(s.field, 3, row)).coords for row in s.basis]
    return Subspace.from_vectors(s.field, 20, vecs)


def wedge_map_mat(field, v, grade):
    """Matrix of a |-> v ^ a from grade `grade` to grade+1, v a plain vector."""
    rows_idx = subsets(DIM, grade + 1)
    cols_idx = subsets(DIM, grade)
    m = Mat.zeros(field, len(rows_idx), len(cols_idx))
    out_index = subset_index(DIM, grade + 1)
    for j, s in enumerate(cols_idx):
        sset = set(s)
        for i in range(DIM):
            if i in sset or not v[i]:
                continue
            t = tuple(sorted((i,) + s))
            sign = merge_sign((i,), s)
            r = out_index[t]
            cur = m.entries[r][j]
            m.entries[r][j] = field.add(cur, v[i]) if sign > 0 else field.sub(cur, v[i])
    return m


def trivector_of(field, w1, w2, w3):
    """w1 ^ w2 ^ w3 for plain coordinate vectors."""
    return wedge_many([KVector.from_vector(field, w) for w in (w1, w2, w3)])


def plane_trivector(w):
    """Plucker trivector of a 3-dimensional Subspace."""
    if w.dim != 3:
        raise ValueError("need a 3-dimensional subspace")
    return trivector_of(w.field, *w.basis)


def divide_by_vector(a, v):
    """Some b with v ^ b = a, for a in the image of wedging by v."""
    f = a.field
    m = wedge_map_mat(f, v, a.grade - 1)
    from .linalg import solve

    b = solve(m, a.coords)
    if b is None:
        raise ValueError("input is not divisible by the given vector")
    return KVector(f, a.grade - 1, b)


def plucker_q(v0, V0, v, alpha):
    """Plucker quadratic form q_v(alpha) = vol(v0 ^ v ^ alpha ^ alpha).

    v must lie in V0 (a 5-dimensional complement of [v0]); alpha is a
    bivector supported on V0.  q_v(alpha) = 0 for every v in V0 exactly
    when alpha is decomposable.
    """
    f = alpha.field
    if not V0.contains(v):
        raise ValueError("v must lie in the chart complement V0")
    if alpha.grade != 2:
        raise GradeError("alpha must be a bivector")
    if alpha and not all(V0.contains(row) for row in support(alpha).basis):
        raise ValueError("alpha must be supported on V0")
    chain = wedge(
        wedge(KVector.from_vector(f, v0), KVector.from_vector(f, v)),
        wedge(alpha, alpha),
    )
    return vol(chain)


def F_of(field, v):
    """The Lagrangian F_v = {a in wedge^3 V : v ^ a = 0}, for v != 0."""
    if not any(v):
        raise ValueError("F_v needs a nonzero vector")
    return kernel(wedge_map_mat(field, v, 3))
