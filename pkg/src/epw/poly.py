"""Multivariate polynomials over QQ with graded-lex canonical order,
plus dense univariate helpers and the exact polynomial determinant.
"""

import math
from fractions import Fraction

from ._kernels import EXP_SHIFT, det_packed


class MultiPoly:
    """Polynomial in `nvars` variables; terms maps exponent tuples to
    nonzero Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, nvars, coeffs, const=0):
        """c0 + sum coeffs[i] * x_i."""
        t = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[i] = 1
                t[tuple(e)] = Fraction(c)
        if const:
            t[(0,) * nvars] = Fraction(const)
        return cls(nvars, t)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_part(self, d):
        return MultiPoly(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}
        )

    def lowest_degree(self):
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def leading_term(self):
        """(exponent, coeff) that is maximal in graded lexicographic order."""
        if not self.terms:
            return None
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def normalized(self):
        """Scale so the graded-lex leading coefficient is 1."""
        lt = self.leading_term()
        if lt is None:
            return self
        return self.scale(1 / lt[1])

    def evaluate(self, point):
        point = [Fraction(x) for x in point]
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            acc += v
        return acc

    def proportional(self, other):
        """True iff self = c * other for a single nonzero scalar c."""
        if self.nvars != other.nvars:
            return False
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        if set(self.terms) != set(other.terms):
            return False
        e0 = next(iter(self.terms))
        ratio = self.terms[e0] / other.terms[e0]
        return all(c == ratio * other.terms[e] for e, c in self.terms.items())

    def substitute_linear(self, forms, homogenizer=None, total=None):
        """Substitute x_i -> forms[i] (MultiPolys in the target variables).

        With `homogenizer` h and `total` D, each degree-d term gets an
        extra factor h^(D-d), so a degree-<=D polynomial homogenizes to
        degree D in the target variables.
        """
        if len(forms) != self.nvars:
            raise ValueError("one form per variable required")
        tgt = forms[0].nvars if forms else (homogenizer.nvars if homogenizer else 0)
        out = MultiPoly.zero(tgt)
        pow_cache = [{0: MultiPoly.const(tgt, 1)} for _ in range(self.nvars)]
        hom_cache = {0: MultiPoly.const(tgt, 1)}

        def powered(cache, base, k):
            got = cache.get(k)
            if got is None:
                got = cache[k] = powered(cache, base, k - 1) * base
            return got

        for e, c in self.terms.items():
            term = MultiPoly.const(tgt, c)
            for i, k in enumerate(e):
                if k:
                    term = term * powered(pow_cache[i], forms[i], k)
            if homogenizer is not None:
                d = sum(e)
                if total is None or d > total:
                    raise ValueError("degree exceeds homogenization total")
                term = term * powered(hom_cache, homogenizer, total - d)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), tuple(-x for x in t))):
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k
            )
            bits.append(f"{self.terms[e]}{'*' + mono if mono else ''}")
        return " + ".join(bits)


def _pack(e):
    key = 0
    for i, k in enumerate(e):
        if k >= (1 << EXP_SHIFT):
            raise OverflowError("exponent too large to pack")
        key |= k << (EXP_SHIFT * i)
    return key


def _unpack(key, nvars):
    return tuple((key >> (EXP_SHIFT * i)) & ((1 << EXP_SHIFT) - 1) for i in range(nvars))


def poly_det(grid):
    """Exact determinant of a square grid of MultiPolys (same nvars).

    Division-free subset expansion on packed integer-coefficient
    polynomials; denominators are cleared once up front and restored on
    the way out.
    """
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("non-square input")
    if n == 0:
        raise ValueError("empty matrix")
    if n > 10:
        raise ValueError("matrices beyond 10x10 are not supported")
    nvars = grid[0][0].nvars
    den = 1
    for row in grid:
        for p in row:
            if p.nvars != nvars:
                raise ValueError("mixed variable counts")
            for c in p.terms.values():
                den = den * c.denominator // math.gcd(den, c.denominator)
    packed = [
        [{_pack(e): int(c * den) for e, c in p.terms.items()} for p in row]
        for row in grid
    ]
    det = det_packed(packed)
    scale = Fraction(1, den**n)
    return MultiPoly(nvars, {_unpack(k, nvars): scale * c for k, c in det.items()})


def poly_det_cofactor(grid):
    """Cofactor-expansion determinant; independent oracle for poly_det."""
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("non-square input")
    nvars = grid[0][0].nvars
    if n == 1:
        return grid[0][0]
    acc = MultiPoly.zero(nvars)
    for j in range(n):
        if not grid[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = grid[0][j] * poly_det_cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


# dense univariate helpers (coefficient lists, low degree first)


def p1_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def p1_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return p1_trim(out)


def p1_scale(a, c):
    c = Fraction(c)
    return p1_trim([c * x for x in a])

def p1_sub(a, b):
    return p1_add(a, p1_scale(b, -1))


def p1_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return p1_trim(out)


def p1_divmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and p1_trim(a):
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a.pop()
        while a and not a[-1]:
            a.pop()
    return p1_trim(q), p1_trim(a)


def p1_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, p1_divmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = [inv * x for x in a]
    return a


def p1_gcd_many(polys):
    g = []
    for p in polys:
        g = p1_gcd(g, p)
        if len(g) == 1:
            break
    return g


def p1_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc
