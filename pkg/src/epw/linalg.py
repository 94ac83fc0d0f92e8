"""Exact dense matrices and subspaces in reduced row echelon form.

Every subspace is held as its unique RREF basis, so equality of subspaces
is plain data comparison.  All operations are allocation-heavy but exact;
the sizes in this project never exceed 20x30.
"""

from .fields import QQ, same_field


class DimensionMismatchError(ValueError):
    pass


class Mat:
    """Dense rectangular matrix over an explicit field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, coerce=False):
        self.field = field
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatchError("ragged rows")
        if coerce:
            c = field.coerce
            self.entries = [[c(x) for x in row] for row in self.entries]

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.entries[i][i] = field.one
        return m

    def copy(self):
        return Mat(self.field, self.entries)

    def transpose(self):
        return Mat(self.field, [list(col) for col in zip(*self.entries)])

    def mul(self, other):
        f = same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError("matrix product shape mismatch")
        bt = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(f, row, col) for col in bt])
        return Mat(f, out)

    def mul_vec(self, vec):
        if self.cols != len(vec):
            raise DimensionMismatchError("matrix-vector shape mismatch")
        return [_dot(self.field, row, vec) for row in self.entries]

    def stack(self, other):
        same_field(self.field, other.field)
        if self.cols != other.cols:
            raise DimensionMismatchError("stack column mismatch")
        return Mat(self.field, self.entries + other.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field.p == other.field.p
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols})"


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        if a and b:
            acc = field.add(acc, field.mul(a, b))
    return acc


def dot(field, u, v):
    if len(u) != len(v):
        raise DimensionMismatchError("vector length mismatch")
    return _dot(field, u, v)


def rref(m):
    """Reduced row echelon form.  Returns (Mat, rank)."""
    f = m.field
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    for j in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][j]:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = f.inv(a[r][j])
        if inv != f.one:
            a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][j]:
                c = a[i][j]
                a[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return Mat(f, a), r


def rank(m):
    return rref(m)[1]


class Subspace:
    """Linear subspace stored as its canonical RREF basis (no zero rows)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, rref_rows, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = rref_rows
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field, ambient, vectors):
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatchError("ambient dimension mismatch")
        if not vectors:
            return cls(field, ambient, [], ())
        red, r = rref(Mat(field, vectors))
        rows = red.entries[:r]
        pivots = [next(j for j, x in enumerate(row) if x) for row in rows]
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [], ())

    @classmethod
    def full(cls, field, ambient):
        eye = Mat.identity(field, ambient)
        return cls(field, ambient, eye.entries, range(ambient))

    @property
    def dim(self):
        return len(self.basis)

    def basis_mat(self):
        return Mat(self.field, self.basis)

    def contains(self, vec):
        return self.coordinates(vec) is not None

    def coordinates(self, vec):
        """Coefficients of vec on the RREF basis, or None if not contained."""
        if len(vec) != self.ambient:
            raise DimensionMismatchError("ambient dimension mismatch")
        f = self.field
        resid = list(vec)
        coeffs = []
        for row, piv in zip(self.basis, self.pivots):
            c = resid[piv]
            coeffs.append(c)
            if c:
                resid = [f.sub(x, f.mul(c, y)) for x, y in zip(resid, row)]
        if any(resid):
            return None
        return coeffs

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field.p == other.field.p
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self.basis)))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient} over {self.field})"


def kernel(m):
    """Right null space {x : m x = 0} as a Subspace of dimension m.cols."""
    f = m.field
    red, r = rref(m)
    pivot_of_col = {}
    for i in range(r):
        lead = next(j for j, x in enumerate(red.entries[i]) if x)
        pivot_of_col[lead] = i
    vecs = []
    for j in range(m.cols):
        if j in pivot_of_col:
            continue
        v = [f.zero] * m.cols
        v[j] = f.one
        for pj, pr in pivot_of_col.items():
            v[pj] = f.neg(red.entries[pr][j])
        vecs.append(v)
    return Subspace.from_vectors(f, m.cols, vecs)


def annihilator(s):
    """Covectors vanishing on s, as a Subspace of the dual coordinates."""
    if s.dim == 0:
        return Subspace.full(s.field, s.ambient)
    return kernel(s.basis_mat())


def intersect(a, b):
    same_field(a.field, b.field)
    if a.ambient != b.ambient:
        raise DimensionMismatchError("ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.ambient)
    anns = annihilator(a).basis + annihilator(b).basis
    if not anns:
        return Subspace.full(a.field, a.ambient)
    return kernel(Mat(a.field, anns))


def subspace_sum(a, b):
    same_field(a.field, b.field)
    if a.ambient != b.ambient:
        raise DimensionMismatchError("ambient dimension mismatch")
    return Subspace.from_vectors(a.field, a.ambient, a.basis + b.basis)


def complement_rows(inner, outer):
    """Rows of `outer` extending a basis of `inner` to one of `outer`.

    Both are Subspaces with inner <= outer; returned vectors are rows of
    outer's basis whose pivots are new relative to inner.
    """
    f = inner.field
    chosen = []
    cur = inner
    for v in outer.basis:
        if not cur.contains(v):
            chosen.append(v)
            cur = Subspace.from_vectors(f, cur.ambient, cur.basis + [v])
    return chosen


def solve(m, rhs):
    """One solution x of m x = rhs, or None."""
    f = m.field
    aug = Mat(f, [row + [b] for row, b in zip(m.entries, rhs)])
    red, _ = rref(aug)
    x = [f.zero] * m.cols
    for row in red.entries:
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            continue
        if lead == m.cols:
            return None
        x[lead] = row[m.cols]
    return x
