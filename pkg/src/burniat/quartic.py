"""Genus-1 curves given by even quartic models y^2 = r*x^4 + s*x^2 + t.

The model lives in the weighted projective plane P(1,2,1) with coordinates
(x : y : z); the affine chart z = 1 is the equation above, and the two
points at infinity (1 : eta : 0) with eta^2 = r exist over Q exactly when
r is a square.  The model is smooth if and only if r*t*(s^2 - 4*r*t) != 0.

Everything is exact: coefficients and point coordinates are Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from . import _kernels
from .errors import DomainError
from .numbers import (
    PrimeSet,
    RationalLike,
    factorize,
    is_prime,
    is_square,
    rational,
    sqrt_rational,
    squarefree_part,
)
from .weierstrass import WeierstrassCurve


@dataclass(frozen=True)
class AffinePoint:
    """(x, y) with z = 1."""

    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class InfinityPoint:
    """(1 : eta : 0); exists over Q only when r is a square, eta^2 = r."""

    eta: Fraction


QuarticPoint = Union[AffinePoint, InfinityPoint]


@dataclass(frozen=True)
class QuarticCurve:
    r: Fraction
    s: Fraction
    t: Fraction

    def __init__(self, r: RationalLike, s: RationalLike, t: RationalLike):
        object.__setattr__(self, "r", rational(r))
        object.__setattr__(self, "s", rational(s))
        object.__setattr__(self, "t", rational(t))

    def __repr__(self) -> str:
        return f"QuarticCurve({self.r}, {self.s}, {self.t})"

    # -- basic structure ------------------------------------------------

    def is_smooth(self) -> bool:
        return self.r * self.t * (self.s**2 - 4 * self.r * self.t) != 0

    def discriminant_data(self) -> Fraction:
        """r*t*(s^2 - 4rt)^2; nonzero iff smooth, its odd prime divisors
        (on the integral model) are the primes of bad reduction."""
        return self.r * self.t * (self.s**2 - 4 * self.r * self.t) ** 2

    def a_squared(self) -> Fraction:
        """The moduli parameter s^2/(r*t) of the curve-with-marked-involution."""
        if not self.is_smooth():
            raise DomainError(f"a_squared undefined on singular curve {self}")
        return self.s**2 / (self.r * self.t)

    def rhs(self, x: RationalLike) -> Fraction:
        x = rational(x)
        return self.r * x**4 + self.s * x**2 + self.t

    def contains(self, point: QuarticPoint) -> bool:
        if isinstance(point, AffinePoint):
            return point.y**2 == self.rhs(point.x)
        if isinstance(point, InfinityPoint):
            return point.eta**2 == self.r
        return False

    # -- model normalization --------------------------------------------

    def integral_model(self) -> tuple["QuarticCurve", Fraction]:
        """Rescale y to clear denominators and strip square content.

        Returns (curve, lam) with integer coefficients whose gcd is
        squarefree, where lam > 0 satisfies (curve) = lam^2 * (self); a
        point (x, y) on self corresponds to (x, lam*y) on the result.
        The x-coordinate, which carries the product relation on a Burniat
        surface, is untouched.
        """
        dens = [self.r.denominator, self.s.denominator, self.t.denominator]
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        ints = [int(v * lcm * lcm) for v in (self.r, self.s, self.t)]
        g = math.gcd(math.gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
        sq = 1
        if g > 1:
            for prime, exp in factorize(g).items():
                sq *= prime ** (2 * (exp // 2))
        lam = Fraction(lcm) / Fraction(math.isqrt(sq))
        return QuarticCurve(*(v // sq for v in ints)), lam

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (self.r, self.s, self.t))

    # -- real and p-adic solvability --------------------------------------

    def solvable_real(self) -> bool:
        """True iff the weighted-projective model has a real point.

        r > 0 gives a point at infinity, t > 0 the point over x = 0, and
        otherwise a real point exists iff the quadratic r*u + s*u + t in
        u = x^2 is nonnegative somewhere on u >= 0.
        """
        r, s, t = self.r, self.s, self.t
        if r > 0 or t > 0:
            return True
        if t == 0:
            return True  # q(0) = 0 gives the point (0, 0)
        # now r <= 0 and t < 0
        if r == 0:
            return s > 0
        if s <= 0:
            return False  # decreasing from t < 0 on u >= 0
        return s**2 - 4 * r * t >= 0  # vertex value -(s^2-4rt)/(4r) >= 0

    def solvable_padic(self, p: int) -> bool:
        """Whether the curve has a Q_p-point.

        Decided by refining residue classes to precision p^N with
        N = 2*v_p(4*disc) + 3, disc = r*t*(s^2-4rt)^2, on both affine
        charts (z = 1 and x = 1); simple classes are settled by Hensel
        lifting.  See `_kernels.pure.zp_solvable_even_quartic`.
        """
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if not self.is_smooth():
            raise DomainError(f"local solvability on singular curve {self}")
        curve, _ = self.integral_model()
        r, s, t = (int(curve.r), int(curve.s), int(curve.t))
        disc = 4 * r * t * (s * s - 4 * r * t) ** 2
        depth = 2 * _valuation(disc, p) + 3
        if _kernels.zp_solvable_even_quartic(r, s, t, p, depth):
            return True
        return _kernels.zp_solvable_even_quartic(t, s, r, p, depth)

    def everywhere_locally_solvable(self, primes: Union[PrimeSet, Iterable[int]]) -> bool:
        """Real solvability plus Q_p-solvability for p in primes and p = 2.

        Odd primes in the set at which this curve has good reduction are
        skipped: a smooth genus-1 curve over F_p has a point by the Weil
        bound, and it lifts.
        """
        if not self.is_smooth():
            raise DomainError(f"local solvability on singular curve {self}")
        if not self.solvable_real():
            return False
        curve, _ = self.integral_model()
        disc_data = int(curve.r * curve.t * (curve.s**2 - 4 * curve.r * curve.t))
        for p in sorted(set(primes) | {2}):
            if p != 2 and disc_data % p != 0:
                continue
            if not self.solvable_padic(p):
                return False
        return True

    def failing_place(self, primes: Union[PrimeSet, Iterable[int]]):
        """First place (the string "R" or a prime) where solvability fails,
        or None if everywhere locally solvable over primes + {2}."""
        if not self.is_smooth():
            raise DomainError(f"local solvability on singular curve {self}")
        if not self.solvable_real():
            return "R"
        curve, _ = self.integral_model()
        disc_data = int(curve.r * curve.t * (curve.s**2 - 4 * curve.r * curve.t))
        for p in sorted(set(primes) | {2}):
            if p != 2 and disc_data % p != 0:
                continue
            if not self.solvable_padic(p):
                return p
        return None

    # -- point search ------------------------------------------------------

    def search_points(self, height: int) -> list[QuarticPoint]:
        """All rational points with reduced x = m/n, max(|m|, |n|) <= height.

        Both y-signs are returned, and the points at infinity are appended
        whenever r is a square.  Ordering: affine by (n, m, +y before -y),
        then (1 : +eta : 0), (1 : -eta : 0).
        """
        if height < 1:
            raise DomainError("height bound must be positive")
        if not self.is_smooth():
            raise DomainError(f"point search on singular curve {self}")
        curve, lam = self.integral_model()
        hits = _kernels.quartic_square_scan(
            int(curve.r), 0, int(curve.s), 0, int(curve.t), height
        )
        points: list[QuarticPoint] = []
        for m, n, y_int in hits:
            x = Fraction(m, n)
            y = Fraction(y_int, n * n) / lam
            points.append(AffinePoint(x, y))
            if y != 0:
                points.append(AffinePoint(x, -y))
        if is_square(self.r):
            eta = sqrt_rational(self.r)
            points.append(InfinityPoint(eta))
            if eta != 0:
                points.append(InfinityPoint(-eta))
        return points

    # -- twists and the Jacobian -------------------------------------------

    def quadratic_twist(self, m: int) -> "QuarticCurve":
        """The quadratic twist m*y^2 = r*x^4 + s*x^2 + t, rescaled to
        (m*r, m*s, m*t); m must be a nonzero squarefree integer."""
        if not isinstance(m, int) or m == 0:
            raise DomainError("twist factor must be a nonzero integer")
        if squarefree_part(m) != m:
            raise DomainError(f"twist factor {m} is not squarefree")
        return QuarticCurve(m * self.r, m * self.s, m * self.t)

    def jacobian(self, m: RationalLike = 1) -> WeierstrassCurve:
        """Weierstrass model of the Jacobian of the m-twist m*y^2 = rhs(x).

        Y^2 = m*X*(r*X^2 + s*X + t) becomes, after absorbing the leading
        coefficient by X -> m*r*X, Y -> m*r*Y and dividing by (m*r)^2,

            Y^2 = X^3 + s*m*X^2 + r*t*m^2*X,

        a fixed model with a marked rational 2-torsion point at X = 0.
        Affine points (x, y) of the twist map to (m*r*x^2, m*r*x*y).
        """
        m = rational(m)
        if m == 0:
            raise DomainError("twist factor must be nonzero")
        if not self.is_smooth():
            raise DomainError(f"jacobian of singular curve {self}")
        return WeierstrassCurve(self.s * m, self.r * self.t * m * m, 0)


def _valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
