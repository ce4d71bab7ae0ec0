"""Bounded rational point search on surviving twists, orbit counting,
point classification, and the rational-point accounting for the six
curves at infinity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, InvariantViolation
from .numbers import is_square, sqrt_rational
from .quartic import AffinePoint, QuarticCurve, QuarticPoint
from .surface import (
    GAMMA_ELEMENTS,
    BurniatSurface,
    FiberType,
    HexagonCurve,
    XPointAffine,
    fiber_models,
    fiber_type,
    gamma_act,
    hexagon,
    is_smooth_surface,
)
from .twists import TwistClass, TwistedSurface, TwistStatus
from .weierstrass import CurvePoint, WeierstrassCurve, is_identity


def hyperelliptic_search(coeffs, height: int) -> list:
    """Rational points on w^2 = F(x, z), F a binary form given by its
    descending coefficient list, searched over reduced x = m/n with
    max(|m|, |n|) <= height.

    Entries: the string "inf" for the single point at infinity of an
    odd-degree model (leading coefficient 0), ("inf", eta) pairs when the
    leading coefficient is a nonzero square, and (x, w) pairs for affine
    points, both w-signs listed.  Used for the genus-2 fiber quotient
    curves, whose degree-6 scans are cheap enough in plain Python.
    """
    from math import gcd, isqrt, lcm

    if height < 1:
        raise DomainError("height bound must be positive")
    cs = [Fraction(c) for c in coeffs]
    if not cs or all(c == 0 for c in cs):
        raise DomainError("zero form")
    degree = len(cs) - 1
    if degree % 2 != 0:
        raise DomainError("the form must have even degree (pad with a zero coefficient)")
    scale = 1
    for c in cs:
        scale = lcm(scale, c.denominator)
    ints = [int(c * scale * scale) for c in cs]
    out: list = []
    if ints[0] == 0:
        out.append("inf")
    elif is_square(Fraction(ints[0])):
        eta = Fraction(isqrt(ints[0]), scale)
        out.append(("inf", eta))
        out.append(("inf", -eta))
    for n in range(1, height + 1):
        for m in range(-height, height + 1):
            if gcd(m, n) != 1:
                continue
            value = 0
            for i, c in enumerate(ints):
                value += c * m ** (degree - i) * n**i
            if value < 0:
                continue
            w_int = isqrt(value)
            if w_int * w_int != value:
                continue
            x = Fraction(m, n)
            w = Fraction(w_int, scale * n ** (degree // 2))
            out.append((x, w))
            if w != 0:
                out.append((x, -w))
    return out


def affine_factor_points(curve: QuarticCurve, height: int) -> list[AffinePoint]:
    """Found points with finite nonzero x, in search order."""
    return [
        p
        for p in curve.search_points(height)
        if isinstance(p, AffinePoint) and p.x != 0
    ]


def choose_enumeration_factors(
    counts: Sequence[int], preferred: Optional[tuple[int, int]] = None
) -> tuple[int, int]:
    """The two curve indices (1-based) with the fewest found points; ties
    break toward the lower index."""
    if preferred is not None:
        a, b = sorted(preferred)
        if a == b or a not in (1, 2, 3) or b not in (1, 2, 3):
            raise DomainError(f"enumeration factors must be two distinct indices, got {preferred}")
        return (a, b)
    order = sorted(range(1, 4), key=lambda j: (counts[j - 1], j))
    return tuple(sorted(order[:2]))  # type: ignore[return-value]


def search_twist(
    twisted: TwistedSurface,
    height: int,
    factors: Optional[tuple[int, int]] = None,
) -> list[XPointAffine]:
    """All points of the twist with every coordinate finite and nonzero
    whose two enumeration-factor x-heights are at most `height`.

    Points on the two chosen factors are enumerated, the third
    x-coordinate is forced by the product relation, and a point is kept
    when the third curve's value there is a rational square.  Both signs
    of the third y are emitted; ordering follows the factor searches.
    """
    lists = [affine_factor_points(twisted.curve(j), height) for j in (1, 2, 3)]
    ja, jb = choose_enumeration_factors([len(l) for l in lists], factors)
    jc = ({1, 2, 3} - {ja, jb}).pop()
    third = twisted.curve(jc)
    out: list[XPointAffine] = []
    for pa in lists[ja - 1]:
        for pb in lists[jb - 1]:
            xc = twisted.c_prime / (pa.x * pb.x)
            value = third.rhs(xc)
            if value < 0 or not is_square(value):
                continue
            yc = sqrt_rational(value)
            for y in (yc, -yc) if yc != 0 else (yc,):
                comps: list[AffinePoint] = [None, None, None]  # type: ignore[list-item]
                comps[ja - 1] = pa
                comps[jb - 1] = pb
                comps[jc - 1] = AffinePoint(xc, y)
                out.append(XPointAffine(tuple(comps)))  # type: ignore[arg-type]
    return out


def orbit_count(points: Sequence[XPointAffine]) -> int:
    """Number of group orbits; the point set must be closed under the
    action and every orbit must have the full size 8."""
    pool = set(points)
    if len(pool) != len(points):
        raise InvariantViolation("duplicate points in orbit count input")
    seen: set[XPointAffine] = set()
    orbits = 0
    for p in points:
        if p in seen:
            continue
        images = {gamma_act(g, p) for g in GAMMA_ELEMENTS}
        if len(images) != 8:
            raise InvariantViolation("orbit of size < 8: the action is not free here")
        if not images <= pool:
            raise InvariantViolation("point set is not closed under the group action")
        seen |= images
        orbits += 1
    return orbits


@dataclass(frozen=True)
class ClassifiedPoint:
    """A found point, tagged type-I when some fiber through it splits into
    two elliptic curves, sporadic-candidate otherwise."""

    twist: TwistClass
    point: XPointAffine
    kind: str  # "type_i" | "sporadic"
    fiber_projection: Optional[int] = None
    fiber_x0: Optional[Fraction] = None
    orbit_id: Optional[int] = None


def classify(
    surface: BurniatSurface, twisted: TwistedSurface, point: XPointAffine
) -> ClassifiedPoint:
    """Type-I iff one of the three fibers through the point splits as two
    elliptic curves (proportional fiber quartics); the projections are
    tried in index order."""
    base = twisted.as_surface()
    for j in (1, 2, 3):
        x0 = point.x(j)
        if fiber_type(base, j, x0) is FiberType.SPLIT_TWO_ELLIPTIC:
            return ClassifiedPoint(
                twist=twisted.origin,
                point=point,
                kind="type_i",
                fiber_projection=j,
                fiber_x0=x0,
            )
    return ClassifiedPoint(twist=twisted.origin, point=point, kind="sporadic")


# -- rank certificates and the hexagon accounting ------------------------------


@dataclass(frozen=True)
class RankCertificate:
    """Outcome of the torsion-bound test on a Weierstrass curve.

    "positive_rank": some found point survives multiplication up to 12 and
    is therefore of infinite order.  "only_torsion": every found point is
    killed by some multiple <= 12 (each individually a torsion proof; rank
    0 itself is not claimed).  "no_points": nothing found beyond the
    identity.
    """

    curve: WeierstrassCurve
    status: str  # "positive_rank" | "only_torsion" | "no_points"
    height: int
    witness: Optional[CurvePoint] = None
    source: str = "search"  # "search" | "oracle"


def rank_certificate(
    curve: WeierstrassCurve, points: Sequence[CurvePoint], height: int
) -> RankCertificate:
    finite_points = [p for p in points if not is_identity(p)]
    if not finite_points:
        return RankCertificate(curve=curve, status="no_points", height=height)
    for p in finite_points:
        if curve.infinite_order_certificate(p):
            return RankCertificate(
                curve=curve, status="positive_rank", height=height, witness=p
            )
    return RankCertificate(curve=curve, status="only_torsion", height=height)


@dataclass(frozen=True)
class HexagonSideReport:
    side: HexagonCurve
    points: tuple[CurvePoint, ...]
    certificate: RankCertificate

    @property
    def count(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class HexagonAccounting:
    """Per-side searches plus the rational-point summary for the part of S
    at infinity.  With the six shared vertices identified, a finite count
    is (sum of per-side counts) - 6; one positive-rank side makes it
    infinite."""

    sides: tuple[HexagonSideReport, ...]
    height: int
    at_infinity: object  # "infinite" or int
    qualifier: str  # "proven" | "up to height H, conditional on rank 0"

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(s.count for s in self.sides)

    @property
    def positive_rank_sides(self) -> tuple[str, ...]:
        return tuple(
            s.side.label for s in self.sides if s.certificate.status == "positive_rank"
        )


def hexagon_accounting(
    surface: BurniatSurface,
    height: int,
    side_rank_facts: Optional[dict[str, int]] = None,
) -> HexagonAccounting:
    """Search every hexagon side to the height bound and certify ranks.

    `side_rank_facts` maps side labels (like "E1.t3") to externally proven
    ranks; a rank-0 fact makes the finite count unconditional for that
    side, a positive rank fact forces the infinite outcome.  Facts are
    checked against the certificates."""
    side_rank_facts = side_rank_facts or {}
    reports = []
    for side in hexagon(surface):
        pts = tuple(side.model.search_points(height))
        cert = rank_certificate(side.model, pts, height)
        fact = side_rank_facts.get(side.label)
        if fact is not None:
            if fact == 0 and cert.status == "positive_rank":
                raise InvariantViolation(
                    f"oracle says rank 0 on side {side.label} but {cert.witness} has infinite order"
                )
            if fact > 0 and cert.status != "positive_rank":
                cert = RankCertificate(
                    curve=side.model, status="positive_rank", height=height, source="oracle"
                )
        reports.append(HexagonSideReport(side=side, points=pts, certificate=cert))

    if any(r.certificate.status == "positive_rank" for r in reports):
        return HexagonAccounting(
            sides=tuple(reports),
            height=height,
            at_infinity="infinite",
            qualifier="proven",
        )
    count = sum(r.count for r in reports) - 6
    all_rank0_proven = all(
        side_rank_facts.get(r.side.label) == 0 for r in reports
    )
    qualifier = (
        "proven"
        if all_rank0_proven
        else f"complete up to height {height}, conditional on rank 0 at the torsion-only sides"
    )
    return HexagonAccounting(
        sides=tuple(reports), height=height, at_infinity=count, qualifier=qualifier
    )


# -- search planning -----------------------------------------------------------


@dataclass(frozen=True)
class SearchPlan:
    """Which finiteness case applies to a surviving twist, given oracle
    facts, and which two factors the enumeration runs over."""

    twist: TwistClass
    case: str  # "AllFinite" | "TwoFinite" | "OneFinite" | "AllInfinite" | "Unknown"
    factors: tuple[int, int]
    note: str = ""


def plan_twist(
    twist: TwistClass,
    factor_counts: Sequence[int],
    finiteness: Sequence[Optional[bool]],
) -> SearchPlan:
    """`finiteness[j]` is True/False/None for factor j+1 finite, infinite,
    or unknown (from oracle facts)."""
    factors = choose_enumeration_factors(factor_counts)
    if any(v is None for v in finiteness):
        return SearchPlan(twist=twist, case="Unknown", factors=factors)
    finite_count = sum(1 for v in finiteness if v)
    case = {3: "AllFinite", 2: "TwoFinite", 1: "OneFinite", 0: "AllInfinite"}[finite_count]
    note = (
        "method-limit: determining the points is out of reach when all three factors are infinite"
        if case == "AllInfinite"
        else ""
    )
    return SearchPlan(twist=twist, case=case, factors=factors, note=note)


# -- type-I classes -------------------------------------------------------------


@dataclass(frozen=True)
class TypeIClassReport:
    """One type-I curve class on S: the group orbit of split fibers of one
    projection, keyed by (projection, |x0|).  When the two proportional
    fiber quartics differ by a square factor the two components are
    defined over Q and isomorphic to the listed component curve, whose
    Jacobian carries the rank certificate."""

    projection: int
    x0_abs: Fraction
    component: Optional[QuarticCurve]
    component_jacobian: Optional[WeierstrassCurve]
    certificate: Optional[RankCertificate]
    point_count: int = 0


def type_i_class_report(
    twisted: TwistedSurface,
    projection: int,
    x0: Fraction,
    height: int,
    point_count: int = 0,
) -> TypeIClassReport:
    fm = fiber_models(twisted.as_surface(), projection, x0)
    a0 = fm.quartic_a[0]
    ratio = fm.quartic_b[0] / a0
    if not is_square(ratio):
        return TypeIClassReport(
            projection=projection,
            x0_abs=abs(x0),
            component=None,
            component_jacobian=None,
            certificate=None,
            point_count=point_count,
        )
    component = QuarticCurve(*fm.quartic_a)
    jac = component.jacobian(1)
    mapped: list[CurvePoint] = []
    for pt in affine_factor_points(component, height):
        mapped.append(jac.point(component.r * pt.x**2, component.r * pt.x * pt.y))
    cert = rank_certificate(jac, mapped, height)
    return TypeIClassReport(
        projection=projection,
        x0_abs=abs(x0),
        component=component,
        component_jacobian=jac,
        certificate=cert,
        point_count=point_count,
    )
