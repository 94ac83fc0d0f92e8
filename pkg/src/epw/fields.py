"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Scalars are plain Python values (``fractions.Fraction`` over QQ, ints in
``[0, p)`` over GF(p)); a field object bundles the arithmetic so matrix and
polynomial code stays generic without per-scalar wrapper objects.
"""

from fractions import Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are mixed."""


class RationalField:
    """The field of rationals, scalars stored as Fraction in lowest terms."""

    p = None
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into QQ")

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def inv(a):
        return 1 / a

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) with scalars stored as ints in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, p - 2, p) % p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise FieldMismatchError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in " + self.name)
        return a * pow(b, self.p - 2, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def __repr__(self):
        return self.name


_GF_CACHE = {}


def GF(p):
    """Return the cached PrimeField of order p."""
    field = _GF_CACHE.get(p)
    if field is None:
        field = _GF_CACHE[p] = PrimeField(p)
    return field


def same_field(a, b):
    if a is not b and (a.p != b.p):
        raise FieldMismatchError(f"field mismatch: {a} vs {b}")
    return a
