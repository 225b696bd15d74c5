"""Problem instances and the Minkowski-style feasibility gate.

An instance fixes a congruence x + t*y + a = 0 (mod n) together with size
bounds X, Y at the archimedean place and the invariants of the ambient number
field. Bounds are exact: rational or square roots of rationals (SqrtRat), so
the census scale X = Y = c*sqrt(p) needs no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .exact import SqrtRat, is_rational_square, rational_sqrt_approx
from .intervals import iv_context, _endpoint_fraction


@dataclass(frozen=True)
class FieldInvariants:
    """Degree, signature, |discriminant| and ideal norm of the ambient field."""

    degree: int
    r1: int
    r2: int
    abs_disc: int
    ideal_norm: Fraction

    def __post_init__(self):
        if self.degree < 1 or self.r1 < 0 or self.r2 < 0:
            raise ValueError("invalid signature")
        if self.r1 + 2 * self.r2 != self.degree:
            raise ValueError("signature does not match degree")
        if self.abs_disc < 1:
            raise ValueError("|discriminant| must be >= 1")
        if self.degree == 1 and self.abs_disc != 1:
            raise ValueError("degree 1 forces |discriminant| = 1")
        if self.ideal_norm <= 0:
            raise ValueError("ideal norm must be positive")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "r1": self.r1,
            "r2": self.r2,
            "abs_disc": str(self.abs_disc),
            "ideal_norm": _frac_token(self.ideal_norm),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldInvariants":
        return cls(
            degree=int(obj["degree"]),
            r1=int(obj["r1"]),
            r2=int(obj["r2"]),
            abs_disc=int(obj["abs_disc"]),
            ideal_norm=Fraction(obj["ideal_norm"]),
        )


def rational_field(ideal_norm) -> FieldInvariants:
    return FieldInvariants(degree=1, r1=1, r2=0, abs_disc=1,
                           ideal_norm=Fraction(ideal_norm))


def _as_bound(value) -> SqrtRat:
    if isinstance(value, SqrtRat):
        return value
    return SqrtRat.of_rational(Fraction(value))


@dataclass(frozen=True)
class CongruenceInstance:
    """x + t*y + a = 0 (mod n) with |x| <= X, |y| <= Y at the real place.

    t and a are stored as least nonnegative residues; t must be a unit mod n.
    """

    n: int
    t: int
    a: int
    X: SqrtRat
    Y: SqrtRat
    field: FieldInvariants = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "t", self.t % self.n)
        object.__setattr__(self, "a", self.a % self.n)
        if gcd(self.t, self.n) != 1:
            raise ValueError(f"t = {self.t} is not a unit mod {self.n}")
        object.__setattr__(self, "X", _as_bound(self.X))
        object.__setattr__(self, "Y", _as_bound(self.Y))
        if not self.X > 0:
            raise ValueError("X must be positive")
        if not self.Y > Fraction(1, 3):
            raise ValueError("Y must exceed 1/3")
        if self.field is None:
            object.__setattr__(self, "field", rational_field(self.n))

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "t": str(self.t),
            "a": str(self.a),
            "X": bound_token(self.X),
            "Y": bound_token(self.Y),
            "field": self.field.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CongruenceInstance":
        fld = FieldInvariants.from_json(obj["field"]) if "field" in obj else None
        return cls(
            n=int(obj["n"]),
            t=int(obj["t"]),
            a=int(obj["a"]),
            X=parse_bound(obj["X"]),
            Y=parse_bound(obj["Y"]),
            field=fld,
        )


def bound_token(b: SqrtRat) -> str:
    """Serialize a bound: plain 'p/q' when rational, else 'sqrt(p/q)'."""
    if b.is_rational():
        return _frac_token(b.as_rational())
    return f"sqrt({_frac_token(b.sq)})"


def parse_bound(token) -> SqrtRat:
    if isinstance(token, SqrtRat):
        return token
    s = str(token).strip()
    if s.startswith("sqrt(") and s.endswith(")"):
        return SqrtRat(Fraction(s[5:-1]))
    return SqrtRat.of_rational(Fraction(s))


def _frac_token(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


_PI_GUARD_BITS = 224  # >= 64 decimal digits for the directed pi power


def minkowski_threshold(fld: FieldInvariants) -> Fraction:
    """Safe under-approximation of (pi/2)^(3 r2) * 3^(-3 deg) * |D|^(-3/2) * Norm.

    Exact rational whenever the pi power is trivial (r2 = 0) and |D| is a
    perfect square; otherwise the transcendental factors are evaluated with
    directed rounding and the lower endpoint is returned, so a feasibility
    claim made against this threshold is never optimistic.
    """
    rational_part = fld.ideal_norm / Fraction(3) ** (3 * fld.degree)
    disc_sq = isqrt(fld.abs_disc)
    disc_is_square = disc_sq * disc_sq == fld.abs_disc
    if fld.r2 == 0 and disc_is_square:
        return rational_part / Fraction(disc_sq) ** 3

    ctx = iv_context()
    saved = ctx.prec
    try:
        ctx.prec = max(saved, _PI_GUARD_BITS)
        value = ctx.mpf(rational_part.numerator) / ctx.mpf(rational_part.denominator)
        if fld.r2 > 0:
            value *= (ctx.pi / 2) ** (3 * fld.r2)
        if fld.abs_disc != 1:
            value /= ctx.sqrt(ctx.mpf(fld.abs_disc)) ** 3
        lower = _endpoint_fraction(value.a, upper=False)
    finally:
        ctx.prec = saved
    if lower <= 0:
        raise ArithmeticError("threshold under-approximation collapsed to zero")
    return lower


def feasible(instance: CongruenceInstance) -> tuple[bool, Fraction]:
    """Whether (X*Y)^degree clears the Minkowski threshold, plus the margin.

    The margin is threshold - (X*Y)^degree, exact when the product power is
    rational and rounded toward zero otherwise (conservative both ways).
    """
    if not instance.Y > Fraction(1, 3):
        raise ValueError("Y must exceed 1/3")
    threshold = minkowski_threshold(instance.field)
    power_sq = (instance.X.sq * instance.Y.sq) ** instance.field.degree
    power = SqrtRat(power_sq)  # equals (X*Y)^degree
    ok = power < threshold
    if is_rational_square(power_sq):
        margin = threshold - power.as_rational()
    else:
        # round the subtrahend up so a positive margin is trustworthy
        approx = rational_sqrt_approx(power_sq, 128)
        up = approx + max(approx, Fraction(1)) * Fraction(1, 1 << 100)
        margin = threshold - up
    return ok, margin
