"""The surface X: x1*x2*x3 = c inside a product of three even-quartic
genus-1 curves, together with the free (Z/2)^3 action whose quotient is a
primary Burniat surface S.

This module computes the symmetric invariants sigma_1..sigma_4, the
degree-16 discriminant D controlling smoothness and bad reduction, the
sign-flip group action and its orbits, the six genus-1 curves at infinity
of S (arranged as a hexagon), and the genus-5 fiber models of the three
projections with their degenerations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DomainError, InvariantViolation
from .numbers import PrimeSet, RationalLike, prime_support, rational
from .quartic import AffinePoint, InfinityPoint, QuarticCurve, QuarticPoint
from .weierstrass import WeierstrassCurve

GammaElement = tuple[int, int, int]

GAMMA_ELEMENTS: tuple[GammaElement, ...] = tuple(itertools.product((0, 1), repeat=3))


@dataclass(frozen=True)
class SigmaInvariants:
    sigma1: Fraction
    sigma2: Fraction
    sigma3: Fraction
    sigma4: Fraction

    def as_tuple(self):
        return (self.sigma1, self.sigma2, self.sigma3, self.sigma4)

    def curve_smoothness_product(self) -> Fraction:
        """sigma4 - 4*sigma3 + 16*sigma2 - 64*sigma1, identically equal to
        prod_j (s_j^2 - 4*r_j*t_j); nonzero together with sigma1 iff all
        three curves are smooth."""
        return self.sigma4 - 4 * self.sigma3 + 16 * self.sigma2 - 64 * self.sigma1


@dataclass(frozen=True)
class BurniatSurface:
    curves: tuple[QuarticCurve, QuarticCurve, QuarticCurve]
    c: Fraction

    def __init__(self, curves: Sequence[QuarticCurve], c: RationalLike):
        if len(curves) != 3 or not all(isinstance(e, QuarticCurve) for e in curves):
            raise DomainError("a surface needs exactly three quartic curves")
        object.__setattr__(self, "curves", tuple(curves))
        object.__setattr__(self, "c", rational(c))

    def curve(self, j: int) -> QuarticCurve:
        """1-based access matching the usual E_1, E_2, E_3 numbering."""
        if j not in (1, 2, 3):
            raise DomainError(f"curve index must be 1, 2 or 3, got {j}")
        return self.curves[j - 1]

    def __repr__(self) -> str:
        return f"BurniatSurface({list(self.curves)}, c={self.c})"


# -- invariants --------------------------------------------------------------


def sigma(surface: BurniatSurface) -> SigmaInvariants:
    (r1, s1, t1), (r2, s2, t2), (r3, s3, t3) = [
        (e.r, e.s, e.t) for e in surface.curves
    ]
    return SigmaInvariants(
        sigma1=r1 * r2 * r3 * t1 * t2 * t3,
        sigma2=r1 * r2 * s3**2 * t1 * t2
        + r1 * r3 * s2**2 * t1 * t3
        + r2 * r3 * s1**2 * t2 * t3,
        sigma3=r1 * s2**2 * s3**2 * t1
        + r2 * s1**2 * s3**2 * t2
        + r3 * s1**2 * s2**2 * t3,
        sigma4=(s1 * s2 * s3) ** 2,
    )


def discriminant_D(surface: BurniatSurface) -> Fraction:
    """The degree-16 polynomial in c whose vanishing (together with c = 0)
    detects the fixed points of the full sign-change involution on X."""
    sg = sigma(surface)
    s1, s2, s3, s4 = sg.as_tuple()
    (e1, e2, e3) = surface.curves
    rp = e1.r * e2.r * e3.r
    tp = e1.t * e2.t * e3.t
    sp = e1.s * e2.s * e3.s
    c = surface.c
    return (
        rp**4 * c**16
        + rp**3 * sp * c**14
        + rp**2 * (4 * s1 - 2 * s2 + s3) * c**12
        + rp * sp * (-5 * s1 + s2) * c**10
        + (6 * s1**2 - 4 * s1 * s2 - 2 * s1 * s3 + s1 * s4 + s2**2) * c**8
        + sp * tp * (-5 * s1 + s2) * c**6
        + tp**2 * (4 * s1 - 2 * s2 + s3) * c**4
        + sp * tp**3 * c**2
        + tp**4
    )


def is_smooth_surface(surface: BurniatSurface) -> bool:
    """c != 0, D != 0 and all three curves smooth.  Cross-checks the
    identity sigma4 - 4*sigma3 + 16*sigma2 - 64*sigma1 = prod_j (s_j^2 - 4*r_j*t_j)."""
    if surface.c == 0:
        return False
    curves_smooth = all(e.is_smooth() for e in surface.curves)
    sg = sigma(surface)
    combo = sg.curve_smoothness_product()
    prod = Fraction(1)
    for e in surface.curves:
        prod *= e.s**2 - 4 * e.r * e.t
    if combo != prod:
        raise InvariantViolation(
            "sigma identity failed: "
            f"sigma-combination {combo} != product of curve discriminant factors {prod}"
        )
    if curves_smooth != (sg.sigma1 * combo != 0):
        raise InvariantViolation("curve smoothness disagrees with sigma cross-check")
    return curves_smooth and discriminant_D(surface) != 0


def bad_primes(surface: BurniatSurface) -> PrimeSet:
    """Primes dividing 2*c*D*sigma1*(sigma4 - 4*sigma3 + 16*sigma2 - 64*sigma1),
    numerators and denominators both; always contains 2.  Twists ramified
    outside this set fail to have points over some completion."""
    if not is_smooth_surface(surface):
        raise DomainError("bad primes are defined for smooth surfaces only")
    sg = sigma(surface)
    value = (
        2
        * surface.c
        * discriminant_D(surface)
        * sg.sigma1
        * sg.curve_smoothness_product()
    )
    return prime_support(value) | PrimeSet([2])


# -- points of X and the group action ----------------------------------------


@dataclass(frozen=True)
class XPointAffine:
    """A point with all three coordinates finite and nonzero; the product
    of the x-coordinates equals the surface constant."""

    components: tuple[AffinePoint, AffinePoint, AffinePoint]

    def x(self, j: int) -> Fraction:
        return self.components[j - 1].x

    def y(self, j: int) -> Fraction:
        return self.components[j - 1].y


@dataclass(frozen=True)
class XPointInfinity:
    """A point on the infinity locus: x = 0 on curve `zero_index`, the
    point at infinity on curve `infinity_index`, anything on the third."""

    zero_index: int
    zero_point: AffinePoint
    infinity_index: int
    infinity_point: InfinityPoint
    free_index: int
    free_point: QuarticPoint


XPoint = Union[XPointAffine, XPointInfinity]


def _component_signs(g: GammaElement, j: int) -> tuple[int, int]:
    """(x-sign, y-sign) of the action of gamma_1^e1*gamma_2^e2*gamma_3^e3 on
    curve j.  Generator gamma_i fixes curve i, acts by (-x, -y) on curve
    i+1 and by (-x, y) on curve i+2 (indices cyclic)."""
    e = g
    nxt = e[j % 3]  # e_{j+1}
    prv = e[(j + 1) % 3]  # e_{j+2}
    ex = -1 if (nxt + prv) % 2 else 1
    ey = -1 if prv % 2 else 1
    return ex, ey


def _act_on_quartic_point(point: QuarticPoint, ex: int, ey: int) -> QuarticPoint:
    if isinstance(point, AffinePoint):
        return AffinePoint(ex * point.x, ey * point.y)
    # On (1 : eta : 0) the x-flip is absorbed by the weighted rescaling
    # (x : y : z) ~ (-x : y : -z); only the y-sign acts, by eta -> -eta.
    return InfinityPoint(ey * point.eta)


def surface_contains(surface: BurniatSurface, point: XPoint) -> bool:
    if isinstance(point, XPointAffine):
        if any(not surface.curve(j).contains(point.components[j - 1]) for j in (1, 2, 3)):
            return False
        if any(point.x(j) == 0 for j in (1, 2, 3)):
            return False
        return point.x(1) * point.x(2) * point.x(3) == surface.c
    if isinstance(point, XPointInfinity):
        if sorted((point.zero_index, point.infinity_index, point.free_index)) != [1, 2, 3]:
            return False
        if point.zero_point.x != 0:
            return False
        return (
            surface.curve(point.zero_index).contains(point.zero_point)
            and surface.curve(point.infinity_index).contains(point.infinity_point)
            and surface.curve(point.free_index).contains(point.free_point)
        )
    return False


def gamma_act(g: GammaElement, point: XPoint, on: Optional[BurniatSurface] = None) -> XPoint:
    """Image of an X-point under a group element (e1, e2, e3).

    The sign-flip formulas do not involve the surface constant, so they
    apply verbatim on every twist; pass `on=` to validate membership.
    """
    if tuple(g) not in GAMMA_ELEMENTS:
        raise DomainError(f"group element must be a 0/1 triple, got {g!r}")
    if on is not None and not surface_contains(on, point):
        raise DomainError(f"point {point} is not on the given surface")
    g = tuple(g)
    if isinstance(point, XPointAffine):
        comps = tuple(
            _act_on_quartic_point(point.components[j - 1], *_component_signs(g, j))
            for j in (1, 2, 3)
        )
        return XPointAffine(comps)  # type: ignore[arg-type]
    if isinstance(point, XPointInfinity):
        return XPointInfinity(
            zero_index=point.zero_index,
            zero_point=_act_on_quartic_point(
                point.zero_point, *_component_signs(g, point.zero_index)
            ),
            infinity_index=point.infinity_index,
            infinity_point=_act_on_quartic_point(
                point.infinity_point, *_component_signs(g, point.infinity_index)
            ),
            free_index=point.free_index,
            free_point=_act_on_quartic_point(
                point.free_point, *_component_signs(g, point.free_index)
            ),
        )
    raise DomainError(f"not an X-point: {point!r}")


def orbit(point: XPoint, on: Optional[BurniatSurface] = None) -> tuple[XPoint, ...]:
    """The 8 images of the point under the full group, in generator order.

    The action is free on a smooth surface, so fewer than 8 distinct
    images signals non-smooth input data and raises InvariantViolation.
    """
    images = tuple(gamma_act(g, point, on=on) for g in GAMMA_ELEMENTS)
    if len(set(images)) != 8:
        raise InvariantViolation(
            f"orbit has size {len(set(images))} < 8; the action is not free here"
        )
    return images


# -- the hexagon of curves at infinity ----------------------------------------

# Sides listed curve by curve; the cycle below gives the hexagon adjacency.
HEXAGON_SIDE_LABELS: tuple[tuple[int, str], ...] = (
    (1, "t3"),
    (1, "r3"),
    (2, "t1"),
    (2, "r1"),
    (3, "t2"),
    (3, "r2"),
)

HEXAGON_CYCLE: tuple[tuple[int, str], ...] = (
    (1, "t3"),
    (2, "r1"),
    (3, "t2"),
    (1, "r3"),
    (2, "t1"),
    (3, "r2"),
)


@dataclass(frozen=True)
class HexagonCurve:
    """One genus-1 curve at infinity of S.

    The side labelled (j, "t_k") is the Jacobian model of the t_k-twist of
    E_j (and (j, "r_k") the r_k-twist).  Its two marked rational points,
    the 2-torsion point (0, 0) and the identity, are the vertices the side
    shares with its neighbours in the cycle; `zero_vertex` and
    `identity_vertex` are global vertex ids 0..5.
    """

    curve_index: int
    twist_label: str
    twist_value: Fraction
    model: WeierstrassCurve
    cycle_position: int
    zero_vertex: int
    identity_vertex: int

    @property
    def label(self) -> str:
        return f"E{self.curve_index}.{self.twist_label}"


def hexagon(surface: BurniatSurface) -> list[HexagonCurve]:
    """The six curves at infinity, in the fixed label order
    (E1,t3), (E1,r3), (E2,t1), (E2,r1), (E3,t2), (E3,r2).

    Adjacent sides of the cycle share exactly one vertex; with both marked
    points rational on every side, the six shared vertices give the bound
    of at least 6 rational points on S.
    """
    if not is_smooth_surface(surface):
        raise DomainError("hexagon is defined for smooth surfaces only")
    cycle_pos = {label: i for i, label in enumerate(HEXAGON_CYCLE)}
    sides = []
    for curve_index, twist_label in HEXAGON_SIDE_LABELS:
        source = surface.curve(int(twist_label[1]))
        value = source.t if twist_label[0] == "t" else source.r
        pos = cycle_pos[(curve_index, twist_label)]
        sides.append(
            HexagonCurve(
                curve_index=curve_index,
                twist_label=twist_label,
                twist_value=value,
                model=surface.curve(curve_index).jacobian(value),
                cycle_position=pos,
                zero_vertex=(pos - 1) % 6,
                identity_vertex=pos,
            )
        )
    return sides


# -- fibers of the three projections -----------------------------------------


class FiberType(Enum):
    SMOOTH_GENUS5 = "SmoothGenus5"
    GENUS3_TWO_NODES = "Genus3TwoNodes"
    SPLIT_TWO_ELLIPTIC = "SplitTwoElliptic"


@dataclass(frozen=True)
class FiberModels:
    """Models attached to the fiber of projection j over x_j = x0.

    The fiber is the bidouble cover u^2 = A(x, z), v^2 = B(x, z) of P^1,
    where A, B are the two even binary quartics with coefficient triples
    `quartic_a`, `quartic_b`.  `curve_d` is the genus-3 hyperelliptic
    octic y^2 = A*B (coefficients of x^8, x^6 z^2, ..., z^8), `curve_e`
    the genus-1 quartic obtained by substituting (x', z') = (x^2, z^2),
    and `curve_f` the genus-2 sextic w^2 = x'*z'*E(x', z')."""

    projection: int
    x0: Fraction
    quartic_a: tuple[Fraction, Fraction, Fraction]
    quartic_b: tuple[Fraction, Fraction, Fraction]
    curve_d: tuple[Fraction, ...]
    curve_e: tuple[Fraction, ...]
    curve_f: tuple[Fraction, ...]


def fiber_models(surface: BurniatSurface, j: int, x0: RationalLike) -> FiberModels:
    """Fiber of the j-th projection over a nonzero x-value.

    With c' = c/x0 and the remaining curves (r, s, t) over index k1 < k2,
    the product relation eliminates the second x-coordinate via
    x_{k2} = c'/x_{k1}, turning curve k2 into the quartic
    (t2, s2*c'^2, r2*c'^4) in the chart of curve k1."""
    x0 = rational(x0)
    if x0 == 0:
        raise DomainError("fiber over x = 0 degenerates into curves at infinity")
    if j not in (1, 2, 3):
        raise DomainError(f"projection index must be 1, 2 or 3, got {j}")
    k1, k2 = sorted(set((1, 2, 3)) - {j})
    cp = surface.c / x0
    first = surface.curve(k1)
    second = surface.curve(k2)
    qa = (first.r, first.s, first.t)
    qb = (second.t, second.s * cp**2, second.r * cp**4)
    a0, a1, a2 = qa
    b0, b1, b2 = qb
    product = (
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 * b2 + a1 * b1 + a2 * b0,
        a1 * b2 + a2 * b1,
        a2 * b2,
    )
    zero = Fraction(0)
    return FiberModels(
        projection=j,
        x0=x0,
        quartic_a=qa,
        quartic_b=qb,
        curve_d=product,
        curve_e=product,
        curve_f=(zero,) + product + (zero,),
    )


def quartic_pair_resultant(
    qa: Sequence[Fraction], qb: Sequence[Fraction]
) -> Fraction:
    """Resultant of the binary quartics A(x,z), B(x,z) built from even
    coefficient triples; equals the square of the resultant of the
    underlying binary quadratic forms in (x^2, z^2)."""
    a0, a1, a2 = qa
    b0, b1, b2 = qb
    res2 = (a0 * b2 - a2 * b0) ** 2 - (a0 * b1 - a1 * b0) * (a1 * b2 - a2 * b1)
    return res2**2


def fiber_type(surface: BurniatSurface, j: int, x0: RationalLike) -> FiberType:
    """SplitTwoElliptic when the two fiber quartics are proportional,
    Genus3TwoNodes when they merely share roots, SmoothGenus5 otherwise."""
    fm = fiber_models(surface, j, x0)
    a0, a1, a2 = fm.quartic_a
    b0, b1, b2 = fm.quartic_b
    proportional = (
        a0 * b1 == a1 * b0 and a0 * b2 == a2 * b0 and a1 * b2 == a2 * b1
    )
    if proportional:
        return FiberType.SPLIT_TWO_ELLIPTIC
    if quartic_pair_resultant(fm.quartic_a, fm.quartic_b) == 0:
        return FiberType.GENUS3_TWO_NODES
    return FiberType.SMOOTH_GENUS5
