"""Weierstrass models Y^2 = X^3 + a*X^2 + b*X + c with the chord-tangent
group law over Q, and the torsion-bound certificate of infinite order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import _kernels
from .errors import DomainError
from .numbers import RationalLike, is_square, rational, sqrt_rational


@dataclass(frozen=True)
class WeierstrassPoint:
    x: Fraction
    y: Fraction


class _Identity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Identity"

    def __eq__(self, other):
        return isinstance(other, _Identity)

    def __hash__(self):
        return hash("weierstrass-identity")


IDENTITY = _Identity()
CurvePoint = Union[WeierstrassPoint, _Identity]


def is_identity(point: CurvePoint) -> bool:
    return isinstance(point, _Identity)


@dataclass(frozen=True)
class WeierstrassCurve:
    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a: RationalLike, b: RationalLike, c: RationalLike):
        object.__setattr__(self, "a", rational(a))
        object.__setattr__(self, "b", rational(b))
        object.__setattr__(self, "c", rational(c))

    def __repr__(self) -> str:
        return f"WeierstrassCurve({self.a}, {self.b}, {self.c})"

    def discriminant(self) -> Fraction:
        """Discriminant of the cubic X^3 + a*X^2 + b*X + c."""
        a, b, c = self.a, self.b, self.c
        return (
            -4 * a**3 * c + a**2 * b**2 + 18 * a * b * c - 4 * b**3 - 27 * c**2
        )

    def is_nonsingular(self) -> bool:
        return self.discriminant() != 0

    def rhs(self, x: RationalLike) -> Fraction:
        x = rational(x)
        return x**3 + self.a * x**2 + self.b * x + self.c

    def contains(self, point: CurvePoint) -> bool:
        if is_identity(point):
            return True
        return point.y**2 == self.rhs(point.x)

    def point(self, x: RationalLike, y: RationalLike) -> WeierstrassPoint:
        pt = WeierstrassPoint(rational(x), rational(y))
        if not self.contains(pt):
            raise DomainError(f"({pt.x}, {pt.y}) is not on {self}")
        return pt

    # -- group law ---------------------------------------------------------

    def negate(self, point: CurvePoint) -> CurvePoint:
        if is_identity(point):
            return IDENTITY
        return WeierstrassPoint(point.x, -point.y)

    def add(self, p: CurvePoint, q: CurvePoint) -> CurvePoint:
        if not self.is_nonsingular():
            raise DomainError(f"group law on singular curve {self}")
        for pt in (p, q):
            if not self.contains(pt):
                raise DomainError(f"point {pt} is not on {self}")
        if is_identity(p):
            return q
        if is_identity(q):
            return p
        if p.x == q.x:
            if p.y == -q.y:
                return IDENTITY
            # p == q with y != 0: tangent
            slope = (3 * p.x**2 + 2 * self.a * p.x + self.b) / (2 * p.y)
        else:
            slope = (q.y - p.y) / (q.x - p.x)
        x3 = slope**2 - self.a - p.x - q.x
        y3 = slope * (p.x - x3) - p.y
        return WeierstrassPoint(x3, y3)

    def multiply(self, k: int, point: CurvePoint) -> CurvePoint:
        if k < 0:
            return self.multiply(-k, self.negate(point))
        acc: CurvePoint = IDENTITY
        base = point
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def infinite_order_certificate(self, point: CurvePoint) -> bool:
        """True iff k*P != 0 for all k <= 12; a proof of infinite order,
        since rational torsion points have order at most 12."""
        if not self.contains(point):
            raise DomainError(f"point {point} is not on {self}")
        if not self.is_nonsingular():
            raise DomainError(f"certificate on singular curve {self}")
        if is_identity(point):
            return False
        acc: CurvePoint = point
        for _ in range(11):
            acc = self.add(acc, point)
            if is_identity(acc):
                return False
        return True

    # -- point search --------------------------------------------------------

    def search_points(self, height: int) -> list[CurvePoint]:
        """Identity plus all points with reduced X = m/n, max(|m|,|n|) <= height.

        On integral models the scan multiplies through by n^4: X = m/n is
        on the curve iff m^3*n + a*m^2*n^2 + b*m*n^3 + c*n^4 is a square.
        Ordering: Identity, then by (n, m, +Y before -Y).
        """
        if height < 1:
            raise DomainError("height bound must be positive")
        points: list[CurvePoint] = [IDENTITY]
        if all(v.denominator == 1 for v in (self.a, self.b, self.c)):
            hits = _kernels.quartic_square_scan(
                0, 1, int(self.a), int(self.b), int(self.c), height
            )
            for m, n, y_int in hits:
                x = Fraction(m, n)
                y = Fraction(y_int, n * n)
                points.append(WeierstrassPoint(x, y))
                if y != 0:
                    points.append(WeierstrassPoint(x, -y))
        else:
            # rational coefficients: exact Fraction scan
            from math import gcd

            for n in range(1, height + 1):
                for m in range(-height, height + 1):
                    if gcd(m, n) != 1:
                        continue
                    val = self.rhs(Fraction(m, n))
                    if val >= 0 and is_square(val):
                        y = sqrt_rational(val)
                        points.append(WeierstrassPoint(Fraction(m, n), y))
                        if y != 0:
                            points.append(WeierstrassPoint(Fraction(m, n), -y))
        return points
