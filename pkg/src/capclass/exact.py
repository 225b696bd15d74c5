"""Exact arithmetic helpers: rational square roots, quadratic irrationals, valuations.

Everything here is exact. Floating point never enters a comparison; square
roots are kept symbolic (as the rational under the radical) and compared by
squaring, which is valid because all radicands are nonnegative.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Union

RationalLike = Union[int, Fraction]


def floor_sqrt(q: Fraction) -> int:
    """Largest integer k with k*k <= q, for rational q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    n, d = q.numerator, q.denominator
    k = isqrt(n // d)
    while (k + 1) * (k + 1) * d <= n:
        k += 1
    while k * k * d > n:
        k -= 1
    return k


def ceil_sqrt(q: Fraction) -> int:
    """Smallest integer k with k*k >= q, for rational q >= 0."""
    k = floor_sqrt(q)
    return k if Fraction(k * k) == q else k + 1


def floor_shifted_sqrt(center: Fraction, rad: Fraction) -> int:
    """floor(center + sqrt(rad)) computed exactly (rad >= 0)."""
    if rad < 0:
        raise ValueError("negative radicand")
    k = int(center) + floor_sqrt(rad) + 2
    # h <= center + sqrt(rad)  <=>  h - center <= sqrt(rad)
    def ok(h: int) -> bool:
        t = h - center
        return t <= 0 or t * t <= rad
    while not ok(k):
        k -= 1
    while ok(k + 1):
        k += 1
    return k


def ceil_shifted_sqrt(center: Fraction, rad: Fraction) -> int:
    """ceil(center - sqrt(rad)) computed exactly (rad >= 0)."""
    return -floor_shifted_sqrt(-center, rad)


def rational_sqrt_approx(q: Fraction, bits: int = 96) -> Fraction:
    """Rational approximation of sqrt(q) with relative error below 2**-bits."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    scale = 1 << bits
    n = q.numerator * scale * scale
    return Fraction(isqrt(n // q.denominator), scale)


def is_rational_square(q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    if n < 0:
        return False
    rn, rd = isqrt(n), isqrt(d)
    return rn * rn == n and rd * rd == d


class SqrtRat:
    """The nonnegative real sqrt(q) for an exact rational q >= 0.

    Closed under multiplication and division and under comparison with
    rationals and other SqrtRat values, which covers every bound check the
    lattice search and the lens geometry need. Rationals embed exactly
    (SqrtRat.of_rational), so size bounds may be rational or quadratic
    irrational without separate code paths.
    """

    __slots__ = ("sq",)

    def __init__(self, square: RationalLike):
        sq = Fraction(square)
        if sq < 0:
            raise ValueError("SqrtRat needs a nonnegative square")
        self.sq = sq

    @classmethod
    def of_rational(cls, value: RationalLike) -> "SqrtRat":
        v = Fraction(value)
        if v < 0:
            raise ValueError("SqrtRat represents nonnegative reals")
        return cls(v * v)

    def is_rational(self) -> bool:
        return is_rational_square(self.sq)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"sqrt({self.sq}) is irrational")
        return Fraction(isqrt(self.sq.numerator), isqrt(self.sq.denominator))

    def __mul__(self, other) -> "SqrtRat":
        if isinstance(other, SqrtRat):
            return SqrtRat(self.sq * other.sq)
        f = Fraction(other)
        if f < 0:
            raise ValueError("negative factor would leave the nonnegative reals")
        return SqrtRat(self.sq * f * f)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtRat":
        if isinstance(other, SqrtRat):
            return SqrtRat(self.sq / other.sq)
        f = Fraction(other)
        if f <= 0:
            raise ValueError("divisor must be positive")
        return SqrtRat(self.sq / (f * f))

    def __rtruediv__(self, other) -> "SqrtRat":
        f = Fraction(other)
        if f < 0:
            raise ValueError("negative numerator would leave the nonnegative reals")
        return SqrtRat(f * f / self.sq)

    def _cmp(self, other) -> int:
        """Sign of (self - other) against SqrtRat or rational."""
        if isinstance(other, SqrtRat):
            a, b = self.sq, other.sq
            return (a > b) - (a < b)
        f = Fraction(other)
        if f < 0:
            return 0 if (self.sq == 0 and f == 0) else 1
        a, b = self.sq, f * f
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (SqrtRat, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_rational())
        return hash(("sqrt", self.sq))

    def __float__(self) -> float:
        return float(rational_sqrt_approx(self.sq, 64))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"SqrtRat({self.as_rational()})"
        return f"sqrt({self.sq})"

    def approx(self, bits: int = 96) -> Fraction:
        return rational_sqrt_approx(self.sq, bits)


def compare_sqrt_sum(a: SqrtRat, b: SqrtRat, c: Fraction) -> int:
    """Sign of (sqrt(a.sq) + sqrt(b.sq) - c), exactly."""
    if c < 0:
        return 1
    # sqrt(A) + sqrt(B) vs c  <=>  A + B + 2 sqrt(AB) vs c^2
    A, B = a.sq, b.sq
    lhs = c * c - A - B          # compare 2 sqrt(AB) vs lhs
    if lhs < 0:
        return 1
    t = 4 * A * B
    rhs = lhs * lhs
    return (t > rhs) - (t < rhs)


def compare_sqrt_diff(a: SqrtRat, b: SqrtRat, c: Fraction) -> int:
    """Sign of (sqrt(a.sq) - sqrt(b.sq) - c), exactly (any rational c)."""
    # sqrt(A) vs c + sqrt(B)
    A, B = a.sq, b.sq
    if c >= 0:
        # both sides nonnegative: square once, then once more
        lhs = A - B - c * c      # compare vs 2 c sqrt(B)
        if lhs < 0:
            return -1
        t = lhs * lhs
        rhs = 4 * c * c * B
        return (t > rhs) - (t < rhs)
    # c < 0: flip to sqrt(B) - sqrt(A) vs -c > 0 and negate
    lhs = B - A - c * c
    if lhs < 0:
        return 1
    t = lhs * lhs
    rhs = 4 * c * c * A
    return (t < rhs) - (t > rhs)


class QuadraticNumber:
    """Exact element a + b*sqrt(m) of a real quadratic field, m a positive
    nonsquare rational fixed per computation. Supports ring operations and
    exact comparison, which is what the census interval endpoints need."""

    __slots__ = ("a", "b", "m")

    def __init__(self, a: RationalLike, b: RationalLike, m: RationalLike):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.m = Fraction(m)
        if self.m <= 0:
            raise ValueError("radicand must be positive")

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.m != self.m and other.b != 0 and self.b != 0:
                raise ValueError("mixed radicands")
            return other
        return QuadraticNumber(Fraction(other), 0, self.m)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.m)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(
            self.a * o.a + self.m * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.m,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        den = o.a * o.a - self.m * o.b * o.b
        if den == 0:
            raise ZeroDivisionError
        inv = QuadraticNumber(o.a / den, -o.b / den, self.m)
        return self * inv

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.m)

    def sign(self) -> int:
        """Sign of a + b*sqrt(m), exactly."""
        a, b, m = self.a, self.b, self.m
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 vs b^2 m, sign decided by the larger side
        t, u = a * a, b * b * m
        if t == u:
            return 0
        bigger_rational = t > u
        return (1 if a > 0 else -1) if bigger_rational else (1 if b > 0 else -1)

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadraticNumber, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.m))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * float(rational_sqrt_approx(self.m, 64))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.m}))"


def padic_valuation(x: Fraction, p: int) -> int:
    """v_p(x) for nonzero rational x; raises on x = 0 (valuation infinite)."""
    if x == 0:
        raise ValueError("v_p(0) is infinite")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def padic_abs_exp(x: Fraction, p: int) -> int:
    """Integer k with |x|_p = p**k (x nonzero)."""
    return -padic_valuation(x, p)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| by trial division (desk-scale inputs)."""
    n = abs(n)
    out = []
    for p in (2, 3):
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                out.append(p)
                while n % p == 0:
                    n //= p
        f += 6
    if n > 1:
        out.append(n)
    return out


# witnesses proving primality for every n below 3.3e24 (Sorenson-Webster)
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all inputs below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def invmod(a: int, n: int) -> int:
    """Inverse of a modulo n (n >= 1, gcd(a, n) = 1)."""
    g = gcd(a % n if n else a, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    return pow(a, -1, n)


def integer_range_sqrt(lo_sq: Fraction, hi_sq: Fraction) -> Iterator[int]:
    """Integers k with lo_sq <= k*k <= hi_sq and k >= 0 (helper for range setup)."""
    k = ceil_sqrt(lo_sq) if lo_sq > 0 else 0
    top = floor_sqrt(hi_sq)
    return iter(range(k, top + 1))
