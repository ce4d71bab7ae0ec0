"""Assembly of the full per-surface report and its exact serialization.

The report is deterministic: identical surface, height and oracle facts
produce an identical object, and the JSON form round-trips losslessly
(every number is carried as an exact rational string, never a float).
Claim language is conservative: "proven" only on the strength of local
obstructions, torsion certificates, or oracle facts; everything else is
qualified by the height bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .moduli import (
    CensusCounts,
    ModuliPoint,
    StrataFlags,
    automorphism_group,
    census,
    is_generic,
    moduli_point,
    strata,
)
from .numbers import PrimeSet, format_rational, rational
from .oracle import OracleFact, check_point_list_consistency
from .quartic import AffinePoint, InfinityPoint, QuarticCurve, QuarticPoint
from .search import (
    ClassifiedPoint,
    HexagonAccounting,
    SearchPlan,
    TypeIClassReport,
    affine_factor_points,
    classify,
    hexagon_accounting,
    orbit_count,
    plan_twist,
    search_twist,
    type_i_class_report,
)
from .surface import (
    GAMMA_ELEMENTS,
    BurniatSurface,
    SigmaInvariants,
    XPointAffine,
    bad_primes,
    discriminant_D,
    gamma_act,
    is_smooth_surface,
    sigma,
)
from .twists import TwistClass, TwistStatus, TwistedSurface, enumerate_twists, filter_twists, twist_surface
from .weierstrass import IDENTITY, WeierstrassPoint, is_identity


@dataclass(frozen=True)
class TwistSearchResult:
    twist: TwistClass
    plan: SearchPlan
    points: tuple[XPointAffine, ...]
    orbits: int


@dataclass(frozen=True)
class SRationalSummary:
    at_infinity: object  # "infinite" or int
    at_infinity_qualifier: str
    sporadic_orbits: int
    sporadic_qualifier: str
    caveats: tuple[str, ...]


@dataclass(frozen=True)
class SurfaceReport:
    surface: BurniatSurface
    height: int
    discriminant: Fraction
    sigma: SigmaInvariants
    bad: PrimeSet
    moduli: ModuliPoint
    flags: StrataFlags
    aut_group: str
    census_counts: CensusCounts
    generic: bool
    statuses: tuple[tuple[TwistClass, TwistStatus], ...]
    searches: tuple[TwistSearchResult, ...]
    classified: tuple[ClassifiedPoint, ...]
    type_i_classes: tuple[TypeIClassReport, ...]
    hexagon: HexagonAccounting
    summary: SRationalSummary


def _factor_finiteness(
    tw: TwistClass, facts: Sequence[OracleFact]
) -> list[Optional[bool]]:
    finiteness: list[Optional[bool]] = [None, None, None]
    for fact in facts:
        if fact.subject_kind != "twist_factor" or fact.twist != tw.as_tuple():
            continue
        verdict = fact.asserts_finite()
        j = fact.curve_index
        if finiteness[j - 1] is not None and finiteness[j - 1] != verdict:
            raise DomainError(
                f"contradictory oracle facts for twist {tw} factor {j}"
            )
        finiteness[j - 1] = verdict
    return finiteness


def _side_rank_facts(facts: Sequence[OracleFact]) -> dict[str, int]:
    out: dict[str, int] = {}
    for fact in facts:
        if fact.subject_kind != "hexagon_side" or fact.rank is None:
            continue
        if fact.side in out and out[fact.side] != fact.rank:
            raise DomainError(f"contradictory oracle ranks for side {fact.side}")
        out[fact.side] = fact.rank
    return out


def build_report(
    surface: BurniatSurface,
    height: int = 1000,
    oracle_facts: Sequence[OracleFact] = (),
    filter_height: Optional[int] = None,
) -> SurfaceReport:
    """Run the whole pipeline on one surface.

    `height` drives the per-twist and hexagon searches; `filter_height`
    (default: same) is the bound used when filtering twists for witness
    points."""
    if not is_smooth_surface(surface):
        raise DomainError("reports are defined for smooth surfaces only")
    if filter_height is None:
        filter_height = height
    bad = bad_primes(surface)
    mp = moduli_point(surface)
    flags = strata(mp)
    cens = census(surface)

    twist_list = enumerate_twists(bad)
    statuses = filter_twists(surface, filter_height, bad=bad, twists=twist_list)
    ordered_statuses = tuple((tw, statuses[tw]) for tw in twist_list)

    searches = []
    classified: list[ClassifiedPoint] = []
    sporadic_orbits = 0
    type_i_seen: dict[tuple[int, Fraction], tuple[TwistedSurface, Fraction, int]] = {}
    for tw in twist_list:
        if statuses[tw].kind != "points":
            continue
        twisted = twist_surface(surface, tw)
        factor_lists = [affine_factor_points(twisted.curve(j), height) for j in (1, 2, 3)]
        for fact in oracle_facts:
            if fact.subject_kind == "twist_factor" and fact.twist == tw.as_tuple():
                check_point_list_consistency(
                    fact,
                    list(factor_lists[fact.curve_index - 1]),
                    f"twist {tw} factor {fact.curve_index}",
                )
        plan = plan_twist(tw, [len(l) for l in factor_lists], _factor_finiteness(tw, oracle_facts))
        points = tuple(search_twist(twisted, height, factors=plan.factors))
        orbits = orbit_count(points)
        searches.append(TwistSearchResult(twist=tw, plan=plan, points=points, orbits=orbits))

        twist_classified = [classify(surface, twisted, p) for p in points]
        # orbit ids: stable numbering in point order within the twist
        assigned: dict[XPointAffine, int] = {}
        next_id = 0
        final_points: list[ClassifiedPoint] = []
        for cp in twist_classified:
            if cp.point not in assigned:
                for g in GAMMA_ELEMENTS:
                    assigned[gamma_act(g, cp.point)] = next_id
                next_id += 1
            final_points.append(
                ClassifiedPoint(
                    twist=cp.twist,
                    point=cp.point,
                    kind=cp.kind,
                    fiber_projection=cp.fiber_projection,
                    fiber_x0=cp.fiber_x0,
                    orbit_id=assigned[cp.point],
                )
            )
        classified.extend(final_points)
        sporadic_ids = {cp.orbit_id for cp in final_points if cp.kind == "sporadic"}
        sporadic_orbits += len(sporadic_ids)
        for cp in final_points:
            if cp.kind == "type_i":
                key = (cp.fiber_projection, abs(cp.fiber_x0))
                prev = type_i_seen.get(key)
                count = (prev[2] if prev else 0) + 1
                type_i_seen[key] = (twisted, cp.fiber_x0, count)

    type_i_classes = tuple(
        type_i_class_report(twisted, proj, x0, height, point_count=count)
        for (proj, _absx0), (twisted, x0, count) in sorted(
            type_i_seen.items(), key=lambda kv: (kv[0][0], kv[0][1])
        )
    )

    hexagon_acc = hexagon_accounting(surface, height, _side_rank_facts(oracle_facts))

    caveats = []
    undetermined = [tw for tw, st in ordered_statuses if st.kind == "undetermined"]
    if undetermined:
        caveats.append(
            "undetermined twists (everywhere locally solvable, no points found up to "
            f"height {filter_height}): " + ", ".join(str(t) for t in undetermined)
        )
    if cens.type_ii > 0:
        caveats.append(
            "the surface carries curves of type II; per-point type-II membership is "
            "not tested, so sporadic classifications may include points on them"
        )
    for sr in searches:
        if sr.plan.case == "AllInfinite":
            caveats.append(
                f"twist {sr.twist}: all three factors are infinite ({sr.plan.note})"
            )
    if hexagon_acc.at_infinity != "infinite" and hexagon_acc.qualifier != "proven":
        caveats.append(
            "the at-infinity count assumes rank 0 on the torsion-only hexagon sides; "
            "supply rank oracle facts to remove the condition"
        )
    sporadic_qualifier = f"complete up to height {height} on the surviving twists"

    summary = SRationalSummary(
        at_infinity=hexagon_acc.at_infinity,
        at_infinity_qualifier=hexagon_acc.qualifier,
        sporadic_orbits=sporadic_orbits,
        sporadic_qualifier=sporadic_qualifier,
        caveats=tuple(caveats),
    )
    return SurfaceReport(
        surface=surface,
        height=height,
        discriminant=discriminant_D(surface),
        sigma=sigma(surface),
        bad=bad,
        moduli=mp,
        flags=flags,
        aut_group=automorphism_group(flags),
        census_counts=cens,
        generic=is_generic(surface),
        statuses=ordered_statuses,
        searches=tuple(searches),
        classified=tuple(classified),
        type_i_classes=type_i_classes,
        hexagon=hexagon_acc,
        summary=summary,
    )


# -- exact serialization -------------------------------------------------------
#
# Every rational is a "p/q" string; the dict form feeds json.dumps directly
# and from_dict rebuilds an equal SurfaceReport.

def _frac(q) -> str:
    return format_rational(q)


def _point_tag(p: QuarticPoint) -> list:
    if isinstance(p, AffinePoint):
        return ["aff", _frac(p.x), _frac(p.y)]
    return ["inf", _frac(p.eta)]


def _point_untag(entry) -> QuarticPoint:
    if entry[0] == "aff":
        return AffinePoint(rational(entry[1]), rational(entry[2]))
    if entry[0] == "inf":
        return InfinityPoint(rational(entry[1]))
    raise DomainError(f"unknown point tag {entry!r}")


def _wpoint_tag(p) -> list:
    if is_identity(p):
        return ["id"]
    return [_frac(p.x), _frac(p.y)]


def _wpoint_untag(entry):
    if entry == ["id"]:
        return IDENTITY
    return WeierstrassPoint(rational(entry[0]), rational(entry[1]))


def _curve_dict(c: QuarticCurve) -> list:
    return [_frac(c.r), _frac(c.s), _frac(c.t)]


def _curve_undict(entry) -> QuarticCurve:
    return QuarticCurve(*entry)


def _xpoint_dict(p: XPointAffine) -> list:
    return [[_frac(a.x), _frac(a.y)] for a in p.components]


def _xpoint_undict(entry) -> XPointAffine:
    return XPointAffine(tuple(AffinePoint(rational(x), rational(y)) for x, y in entry))


def _status_dict(st: TwistStatus) -> dict:
    return {
        "kind": st.kind,
        "witness_curve": st.witness_curve,
        "witness_place": st.witness_place,
        "witness_points": [_point_tag(p) for p in st.witness_points]
        if st.witness_points is not None
        else None,
    }


def _status_undict(d) -> TwistStatus:
    return TwistStatus(
        kind=d["kind"],
        witness_curve=d["witness_curve"],
        witness_place=d["witness_place"],
        witness_points=tuple(_point_untag(p) for p in d["witness_points"])
        if d["witness_points"] is not None
        else None,
    )


def _certificate_dict(cert) -> Optional[dict]:
    if cert is None:
        return None
    return {
        "curve": [_frac(cert.curve.a), _frac(cert.curve.b), _frac(cert.curve.c)],
        "status": cert.status,
        "height": cert.height,
        "witness": _wpoint_tag(cert.witness) if cert.witness is not None else None,
        "source": cert.source,
    }


def _certificate_undict(d):
    from .search import RankCertificate
    from .weierstrass import WeierstrassCurve

    if d is None:
        return None
    return RankCertificate(
        curve=WeierstrassCurve(*d["curve"]),
        status=d["status"],
        height=d["height"],
        witness=_wpoint_untag(d["witness"]) if d["witness"] is not None else None,
        source=d["source"],
    )


def report_to_dict(report: SurfaceReport) -> dict:
    return {
        "surface": {
            "curves": [_curve_dict(c) for c in report.surface.curves],
            "c": _frac(report.surface.c),
        },
        "height": report.height,
        "discriminant": _frac(report.discriminant),
        "sigma": [_frac(v) for v in report.sigma.as_tuple()],
        "bad_primes": list(report.bad),
        "moduli": [_frac(v) for v in report.moduli.as_tuple()],
        "strata": {
            "m1": report.flags.m1,
            "m2": report.flags.m2,
            "m3": report.flags.m3,
            "m4": report.flags.m4,
            "n1": report.flags.n1,
            "n2_parameter": _frac(report.flags.n2_parameter)
            if report.flags.n2_parameter is not None
            else None,
        },
        "automorphism_group": report.aut_group,
        "census": {
            "infinity": report.census_counts.infinity,
            "type_i": report.census_counts.type_i,
            "type_ii": report.census_counts.type_ii,
        },
        "generic": report.generic,
        "twists": [
            {"twist": list(tw.as_tuple()), "status": _status_dict(st)}
            for tw, st in report.statuses
        ],
        "searches": [
            {
                "twist": list(sr.twist.as_tuple()),
                "plan": {
                    "case": sr.plan.case,
                    "factors": list(sr.plan.factors),
                    "note": sr.plan.note,
                },
                "points": [_xpoint_dict(p) for p in sr.points],
                "orbits": sr.orbits,
            }
            for sr in report.searches
        ],
        "classified": [
            {
                "twist": list(cp.twist.as_tuple()),
                "point": _xpoint_dict(cp.point),
                "kind": cp.kind,
                "fiber_projection": cp.fiber_projection,
                "fiber_x0": _frac(cp.fiber_x0) if cp.fiber_x0 is not None else None,
                "orbit_id": cp.orbit_id,
            }
            for cp in report.classified
        ],
        "type_i_classes": [
            {
                "projection": tc.projection,
                "x0_abs": _frac(tc.x0_abs),
                "component": _curve_dict(tc.component) if tc.component else None,
                "component_jacobian": [
                    _frac(tc.component_jacobian.a),
                    _frac(tc.component_jacobian.b),
                    _frac(tc.component_jacobian.c),
                ]
                if tc.component_jacobian
                else None,
                "certificate": _certificate_dict(tc.certificate),
                "point_count": tc.point_count,
            }
            for tc in report.type_i_classes
        ],
        "hexagon": {
            "height": report.hexagon.height,
            "at_infinity": report.hexagon.at_infinity,
            "qualifier": report.hexagon.qualifier,
            "sides": [
                {
                    "curve_index": sr.side.curve_index,
                    "twist_label": sr.side.twist_label,
                    "twist_value": _frac(sr.side.twist_value),
                    "model": [
                        _frac(sr.side.model.a),
                        _frac(sr.side.model.b),
                        _frac(sr.side.model.c),
                    ],
                    "cycle_position": sr.side.cycle_position,
                    "zero_vertex": sr.side.zero_vertex,
                    "identity_vertex": sr.side.identity_vertex,
                    "points": [_wpoint_tag(p) for p in sr.points],
                    "certificate": _certificate_dict(sr.certificate),
                }
                for sr in report.hexagon.sides
            ],
        },
        "summary": {
            "at_infinity": report.summary.at_infinity,
            "at_infinity_qualifier": report.summary.at_infinity_qualifier,
            "sporadic_orbits": report.summary.sporadic_orbits,
            "sporadic_qualifier": report.summary.sporadic_qualifier,
            "caveats": list(report.summary.caveats),
        },
    }


def report_from_dict(data: dict) -> SurfaceReport:
    from .quartic import QuarticCurve
    from .search import HexagonSideReport
    from .surface import HexagonCurve
    from .weierstrass import WeierstrassCurve

    surface = BurniatSurface(
        [_curve_undict(c) for c in data["surface"]["curves"]], data["surface"]["c"]
    )
    flags = StrataFlags(
        m1=data["strata"]["m1"],
        m2=data["strata"]["m2"],
        m3=data["strata"]["m3"],
        m4=data["strata"]["m4"],
        n1=data["strata"]["n1"],
        n2_parameter=rational(data["strata"]["n2_parameter"])
        if data["strata"]["n2_parameter"] is not None
        else None,
    )
    statuses = tuple(
        (TwistClass(*entry["twist"]), _status_undict(entry["status"]))
        for entry in data["twists"]
    )
    searches = tuple(
        TwistSearchResult(
            twist=TwistClass(*entry["twist"]),
            plan=SearchPlan(
                twist=TwistClass(*entry["twist"]),
                case=entry["plan"]["case"],
                factors=tuple(entry["plan"]["factors"]),
                note=entry["plan"]["note"],
            ),
            points=tuple(_xpoint_undict(p) for p in entry["points"]),
            orbits=entry["orbits"],
        )
        for entry in data["searches"]
    )
    classified = tuple(
        ClassifiedPoint(
            twist=TwistClass(*entry["twist"]),
            point=_xpoint_undict(entry["point"]),
            kind=entry["kind"],
            fiber_projection=entry["fiber_projection"],
            fiber_x0=rational(entry["fiber_x0"]) if entry["fiber_x0"] is not None else None,
            orbit_id=entry["orbit_id"],
        )
        for entry in data["classified"]
    )
    type_i_classes = tuple(
        TypeIClassReport(
            projection=entry["projection"],
            x0_abs=rational(entry["x0_abs"]),
            component=_curve_undict(entry["component"]) if entry["component"] else None,
            component_jacobian=WeierstrassCurve(*entry["component_jacobian"])
            if entry["component_jacobian"]
            else None,
            certificate=_certificate_undict(entry["certificate"]),
            point_count=entry["point_count"],
        )
        for entry in data["type_i_classes"]
    )
    sides = tuple(
        HexagonSideReport(
            side=HexagonCurve(
                curve_index=entry["curve_index"],
                twist_label=entry["twist_label"],
                twist_value=rational(entry["twist_value"]),
                model=WeierstrassCurve(*entry["model"]),
                cycle_position=entry["cycle_position"],
                zero_vertex=entry["zero_vertex"],
                identity_vertex=entry["identity_vertex"],
            ),
            points=tuple(_wpoint_untag(p) for p in entry["points"]),
            certificate=_certificate_undict(entry["certificate"]),
        )
        for entry in data["hexagon"]["sides"]
    )
    hexagon_acc = HexagonAccounting(
        sides=sides,
        height=data["hexagon"]["height"],
        at_infinity=data["hexagon"]["at_infinity"],
        qualifier=data["hexagon"]["qualifier"],
    )
    summary = SRationalSummary(
        at_infinity=data["summary"]["at_infinity"],
        at_infinity_qualifier=data["summary"]["at_infinity_qualifier"],
        sporadic_orbits=data["summary"]["sporadic_orbits"],
        sporadic_qualifier=data["summary"]["sporadic_qualifier"],
        caveats=tuple(data["summary"]["caveats"]),
    )
    return SurfaceReport(
        surface=surface,
        height=data["height"],
        discriminant=rational(data["discriminant"]),
        sigma=SigmaInvariants(*(rational(v) for v in data["sigma"])),
        bad=PrimeSet(data["bad_primes"]),
        moduli=ModuliPoint(*data["moduli"]),
        flags=flags,
        aut_group=data["automorphism_group"],
        census_counts=CensusCounts(
            infinity=data["census"]["infinity"],
            type_i=data["census"]["type_i"],
            type_ii=data["census"]["type_ii"],
        ),
        generic=data["generic"],
        statuses=statuses,
        searches=searches,
        classified=classified,
        type_i_classes=type_i_classes,
        hexagon=hexagon_acc,
        summary=summary,
    )
