"""The four imaginary quadratic orders the brute-force oracle searches.

Elements are integer pairs (u, v) standing for u + v*theta, where theta is
0 (plain integers), sqrt(-1), sqrt(-2), or (1 + sqrt(-3))/2. Each ring has
a single archimedean place, so "for every embedding" size conditions reduce
to one exact integer comparison of norms, and each is norm-Euclidean, so
gcds are computable by rounded division.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

Element = tuple[int, int]


@dataclass(frozen=True)
class SearchRing:
    """Quadratic order Z[theta] with norm form u^2 + b*u*v + c*v^2."""

    name: str
    b: int  # trace of theta (the u*v coefficient of the norm form)
    c: int  # norm of theta

    def norm(self, x: Element) -> int:
        u, v = x
        return u * u + self.b * u * v + self.c * v * v

    def conj(self, x: Element) -> Element:
        # theta + theta_bar = b and theta*theta_bar = c, so
        # conj(u + v*theta) = (u + b*v) - v*theta
        u, v = x
        return (u + self.b * v, -v)

    def mul(self, x: Element, y: Element) -> Element:
        # theta^2 = b*theta - c
        (a, bb), (cc, d) = x, y
        return (a * cc - self.c * bb * d, a * d + bb * cc + self.b * bb * d)

    def add(self, x: Element, y: Element) -> Element:
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x: Element, y: Element) -> Element:
        return (x[0] - y[0], x[1] - y[1])

    def neg(self, x: Element) -> Element:
        return (-x[0], -x[1])

    def scale(self, k: int, x: Element) -> Element:
        return (k * x[0], k * x[1])

    def is_zero(self, x: Element) -> bool:
        return x == (0, 0)

    def is_unit(self, x: Element) -> bool:
        return self.norm(x) == 1

    def divmod_rounded(self, x: Element, y: Element) -> tuple[Element, Element]:
        """Euclidean step: q with N(x - q*y) < N(y), via rounding x/y."""
        if self.is_zero(y):
            raise ZeroDivisionError("division by zero ring element")
        ny = self.norm(y)
        prod = self.mul(x, self.conj(y))  # = (x/y) * N(y)
        q = (_round_div(prod[0], ny), _round_div(prod[1], ny))
        r = self.sub(x, self.mul(q, y))
        return q, r

    def gcd(self, x: Element, y: Element) -> Element:
        while not self.is_zero(y):
            _, r = self.divmod_rounded(x, y)
            x, y = y, r
        return x

    def coprime(self, x: Element, y: Element) -> bool:
        g = self.gcd(x, y)
        return not self.is_zero(g) and self.is_unit(g)

    def embed_int(self, k: int) -> Element:
        return (k, 0)

    def elements_in_disk(self, radius_sq: Fraction) -> Iterator[Element]:
        """All ring elements with |u + v*theta|^2 <= radius_sq, exactly."""
        return self.elements_in_disk_congruent(radius_sq, 1, (0, 0))

    def elements_in_disk_congruent(self, radius_sq: Fraction, modulus: int,
                                   residue: Element) -> Iterator[Element]:
        """Ring elements x with |x|^2 <= radius_sq and x = residue mod
        modulus (both coordinates). Exact; windows over-cover by one and the
        final norm comparison filters."""
        radius_sq = Fraction(radius_sq)
        if radius_sq < 0:
            return
        # squared imaginary part of theta; 0 exactly for the plain integers
        im2 = Fraction(4 * self.c - self.b * self.b, 4)
        vmax = 0 if im2 == 0 else _floor_sqrt_frac(radius_sq / im2)
        vfirst = -vmax + ((residue[1] + vmax) % modulus)
        for v in range(vfirst, vmax + 1, modulus):
            # u^2 + b u v + (c v^2 - R) <= 0: u in the root window around
            # -bv/2 with half-width sqrt(R - im2 v^2)
            rem = radius_sq - im2 * v * v
            if rem < 0:
                continue
            half = _floor_sqrt_frac(rem)
            center = Fraction(-self.b * v, 2)
            lo = math.ceil(center) - half - 1
            hi = math.floor(center) + half + 1
            ufirst = lo + ((residue[0] - lo) % modulus)
            for u in range(ufirst, hi + 1, modulus):
                if Fraction(self.norm((u, v))) <= radius_sq:
                    yield (u, v)

    def abs_float(self, x: Element) -> float:
        return math.sqrt(self.norm(x))

    def format(self, x: Element) -> str:
        u, v = x
        if v == 0:
            return str(u)
        theta = {"Z[i]": "i", "Z[sqrt(-2)]": "sqrt(-2)",
                 "Z[omega]": "omega"}[self.name]
        if u == 0:
            return f"{v}*{theta}"
        return f"{u}{v:+d}*{theta}"


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b (ties toward +infinity); b > 0."""
    return (2 * a + b) // (2 * b)


def _floor_sqrt_frac(q: Fraction) -> int:
    if q < 0:
        raise ValueError("negative radicand")
    return math.isqrt(q.numerator // q.denominator) if q >= 1 else 0


RING_Z = SearchRing(name="Z", b=0, c=0)
RING_GAUSS = SearchRing(name="Z[i]", b=0, c=1)
RING_SQRT_MINUS_2 = SearchRing(name="Z[sqrt(-2)]", b=0, c=2)
# omega = (1 + sqrt(-3))/2 satisfies omega^2 = omega - 1: norm u^2 + uv + v^2
RING_OMEGA = SearchRing(name="Z[omega]", b=1, c=1)

ALL_RINGS = (RING_Z, RING_GAUSS, RING_SQRT_MINUS_2, RING_OMEGA)
RINGS_BY_NAME = {r.name: r for r in ALL_RINGS}
# accepted CLI spellings
RING_ALIASES = {
    "Z": "Z", "int": "Z", "integers": "Z",
    "Z[i]": "Z[i]", "gauss": "Z[i]", "gaussian": "Z[i]",
    "Z[sqrt(-2)]": "Z[sqrt(-2)]", "sqrt-2": "Z[sqrt(-2)]",
    "Z[omega]": "Z[omega]", "eisenstein": "Z[omega]", "omega": "Z[omega]",
}


def ring_by_name(name: str) -> SearchRing:
    key = RING_ALIASES.get(name)
    if key is None:
        raise KeyError(f"unknown ring {name!r}; choose from {sorted(RING_ALIASES)}")
    return RINGS_BY_NAME[key]
