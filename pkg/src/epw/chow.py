"""Symbolic intersection theory on P^5: the truncated ring Z[h]/(h^6),
Chern classes of the Lagrangian-frame bundle F and the Porteous class of
the corank-2 locus.

Two independent evaluation paths compute c(wedge^3 Q): an elementary
symmetric-function expansion in 5 formal Chern roots, and a Chern
character / Newton identity path working directly with power sums.
"""

from fractions import Fraction
from itertools import combinations

from .poly import MultiPoly


class ChowClass:
    """Integer polynomial in the hyperplane class h, truncated at h^6."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)[:6]
        c += [0] * (6 - len(c))
        self.coeffs = [Fraction(x) for x in c]

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def h_power(cls, k, coeff=1):
        c = [0] * 6
        if k < 6:
            c[k] = coeff
        return cls(c)

    def __add__(self, other):
        return ChowClass([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return ChowClass([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChowClass([other * a for a in self.coeffs])
        out = [Fraction(0)] * 6
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b and i + j < 6:
                    out[i + j] += a * b
        return ChowClass(out)

    __rmul__ = __mul__

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("no inverse: constant term vanishes")
        inv = [Fraction(1) / self.coeffs[0]] + [Fraction(0)] * 5
        for k in range(1, 6):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * inv[k - i]
            inv[k] = -acc / self.coeffs[0]
        return ChowClass(inv)

    def integral_coeffs(self):
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(int(c))
        return out

    def __eq__(self, other):
        return isinstance(other, ChowClass) and self.coeffs == other.coeffs

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coeffs):
            if c:
                bits.append(f"{c}" if i == 0 else f"{c}*h^{i}")
        return " + ".join(bits) if bits else "0"


def chern_quotient_bundle():
    """c(Q5) = (1 - h)^{-1} truncated: 1 + h + ... + h^5."""
    return ChowClass([1, 1, 1, 1, 1, 1])


# ---- path 1: elementary symmetric expansion in 5 formal roots ----


def _truncate(p, deg):
    return MultiPoly(p.nvars, {e: c for e, c in p.terms.items() if sum(e) <= deg})


def _elementary_symmetric(nvars, k):
    out = MultiPoly.zero(nvars)
    for comb in combinations(range(nvars), k):
        e = [0] * nvars
        for i in comb:
            e[i] = 1
        out = out + MultiPoly(nvars, {tuple(e): 1})
    return out


def symmetric_to_elementary(p):
    """Rewrite a symmetric polynomial as a polynomial in e_1..e_n; returns
    {(a_1..a_n): coeff} meaning prod e_i^{a_i}."""
    n = p.nvars
    es = [None] + [_elementary_symmetric(n, k) for k in range(1, n + 1)]
    out = {}
    work = p
    while work.terms:
        # graded-lex leading exponent, sorted decreasingly = partition
        e, c = work.leading_term()
        lam = sorted(e, reverse=True)
        if list(e) != lam:
            raise ValueError("polynomial is not symmetric")
        # lambda -> e-product via conjugate exponents a_i = lam_i - lam_{i+1}
        a = [0] * n
        for i in range(n):
            nxt = lam[i + 1] if i + 1 < n else 0
            a[i] = lam[i] - nxt
        prod = MultiPoly.const(n, c)
        for i, ai in enumerate(a):
            for _ in range(ai):
                prod = prod * es[i + 1]
        work = work - prod
        key = tuple(a)
        out[key] = out.get(key, 0) + c
    return out


def chern_wedge3_elementary():
    """c(wedge^3 Q) by expanding prod over triples (1 + x_i + x_j + x_k)
    truncated at degree 5, then substituting e_i(x) -> h^i."""
    n = 5
    prod = MultiPoly.const(n, 1)
    for tri in combinations(range(n), 3):
        e = [0] * n
        lin = MultiPoly.const(n, 1)
        for i in tri:
            lin = lin + MultiPoly.variable(n, i)
        prod = _truncate(prod * lin, 5)
    decomposition = symmetric_to_elementary(prod)
    out = ChowClass([0] * 6)
    for a, c in decomposition.items():
        degree = sum((i + 1) * ai for i, ai in enumerate(a))
        if degree < 6:
            out = out + ChowClass.h_power(degree, c)
    return out


# ---- path 2: Chern character and Newton identities ----


def _newton_p_from_e(e, upto):
    """Power sums p_1..p_upto from elementary symmetric e_1..e_n (as
    ChowClasses), via p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... +- k e_k."""
    ps = [None]
    for k in range(1, upto + 1):
        acc = ChowClass([0] * 6)
        for i in range(1, k):
            term = e[i] * ps[k - i]
            acc = acc + term if i % 2 == 1 else acc - term
        ek = e[k] if k < len(e) else ChowClass([0] * 6)
        kek = ChowClass([k]) * ek
        acc = acc + kek if k % 2 == 1 else acc - kek
        ps.append(acc)
    return ps


def _newton_e_from_p(ps, upto):
    """Elementary symmetric e_1..e_upto from power sums, k e_k =
    sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i."""
    es = [ChowClass.one()]
    for k in range(1, upto + 1):
        acc = ChowClass([0] * 6)
        for i in range(1, k + 1):
            term = es[k - i] * ps[i]
            acc = acc + term if i % 2 == 1 else acc - term
        es.append(acc * Fraction(1, k))
    return es


def chern_wedge3_newton():
    """c(wedge^3 Q) via Sigma_{i<j<k} exp(x_i + x_j + x_k) expressed with
    the power sums of the roots of Q, then Newton back to Chern classes."""
    # e_i(x) = h^i, i = 1..5
    e = [ChowClass.one()] + [ChowClass.h_power(i) for i in range(1, 6)]
    px = _newton_p_from_e(e, 5)
    # P_r = sum_i exp(r x_i) = 5 + sum_m r^m p_m(x)/m!
    fact = [1, 1, 2, 6, 24, 120]

    def exp_sum(r):
        acc = ChowClass([5])
        for m in range(1, 6):
            acc = acc + px[m] * Fraction(r**m, fact[m])
        return acc

    p1, p2, p3 = exp_sum(1), exp_sum(2), exp_sum(3)
    # ch(wedge^3 Q) = elementary symmetric e_3 of the exponentials
    ch = (p1 * p1 * p1 - 3 * (p1 * p2) + 2 * p3) * Fraction(1, 6)
    # p_m(y) = m! ch_m for the 10 roots y = x_i + x_j + x_k
    py = [None] + [
        ChowClass([fact[m] * ch.coeffs[m] if d == m else 0 for d in range(6)])
        for m in range(1, 6)
    ]
    ey = _newton_e_from_p(py, 5)
    out = ChowClass.one()
    for k in range(1, 6):
        out = out + ey[k]
    return out


def chern_F(path="elementary"):
    """Total Chern class of F: the inverse of c(wedge^3 Q5)."""
    if path == "elementary":
        cw = chern_wedge3_elementary()
    elif path == "newton":
        cw = chern_wedge3_newton()
    else:
        raise ValueError(f"unknown path {path!r}")
    out = ChowClass(cw.integral_coeffs()).inverse()
    out.integral_coeffs()
    return out


def porteous_YA2():
    """Expected class of the corank-2 locus: 2 c3(F) - c1(F) c2(F)."""
    c = chern_F().coeffs
    c1, c2, c3 = c[1], c[2], c[3]
    val = 2 * c3 - c1 * c2
    return ChowClass.h_power(3, val)


def chern_wedge2_twist():
    """c(wedge^2 Q tensor O(-1)): an independent geometric description of
    F, used as a cross-check (roots x_i + x_j - h over pairs)."""
    n = 5
    prod = MultiPoly.const(n + 1, 1)  # variables x1..x5, h
    for (i, j) in combinations(range(n), 2):
        lin = (
            MultiPoly.const(n + 1, 1)
            + MultiPoly.variable(n + 1, i)
            + MultiPoly.variable(n + 1, j)
            - MultiPoly.variable(n + 1, n)
        )
        prod = _truncate(prod * lin, 5)
    # split off powers of h, symmetrize the x-part degree by degree
    out = ChowClass([0] * 6)
    by_hdeg = {}
    for e, c in prod.terms.items():
        hdeg = e[n]
        xexp = e[:n]
        by_hdeg.setdefault(hdeg, {})[xexp] = by_hdeg.get(hdeg, {}).get(xexp, 0) + c
    for hdeg, terms in by_hdeg.items():
        part = MultiPoly(n, terms)
        for a, c in symmetric_to_elementary(part).items():
            degree = hdeg + sum((i + 1) * ai for i, ai in enumerate(a))
            if degree < 6:
                out = out + ChowClass.h_power(degree, c)
    return out
