"""Twists of the covering X -> S.

The forms of X -> S are classified by triples (d1, d2, d3) of squarefree
integers up to squares.  The twisted surface keeps the shape of X: three
even-quartic curves and a product relation, with

    curve 1 -> (r1*d2^2*d3^3, s1*d2*d3^2, t1*d3)
    curve 2 -> (r2*d1^3*d3^2, s2*d1^2*d3, t2*d1)
    curve 3 -> (r3*d1^2*d2^3, s3*d1*d2^2, t3*d2)
    constant -> c/(d1*d2*d3)

(each line is the corresponding twisted equation with its y rescaled to
clear the d-multiplier on the left).  A twist ramified at a prime outside
the surface's bad set automatically fails to have points over some
completion, so the enumeration is restricted to the bad primes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Optional

from ._util import parallel_map, thread_cap
from .errors import DomainError
from .numbers import PrimeSet, squarefree_part
from .quartic import QuarticCurve, QuarticPoint
from .surface import BurniatSurface, bad_primes, is_smooth_surface


@lru_cache(maxsize=4096)
def _validate_coordinate(d) -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d == 0:
        raise DomainError("twist coordinates must be nonzero integers")
    if squarefree_part(d) != d:
        raise DomainError(f"twist coordinate {d} is not squarefree")


@dataclass(frozen=True)
class TwistClass:
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        for d in (self.d1, self.d2, self.d3):
            _validate_coordinate(d)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    def is_identity(self) -> bool:
        return self.as_tuple() == (1, 1, 1)

    def __repr__(self) -> str:
        return f"({self.d1},{self.d2},{self.d3})"


@dataclass(frozen=True)
class TwistedSurface:
    curves: tuple[QuarticCurve, QuarticCurve, QuarticCurve]
    c_prime: Fraction
    origin: TwistClass

    def curve(self, j: int) -> QuarticCurve:
        if j not in (1, 2, 3):
            raise DomainError(f"curve index must be 1, 2 or 3, got {j}")
        return self.curves[j - 1]

    def as_surface(self) -> BurniatSurface:
        return BurniatSurface(self.curves, self.c_prime)


@dataclass(frozen=True)
class TwistStatus:
    """Outcome of the local-global filter on one twist.

    kind "empty": some factor curve fails local solvability; the witness
    is (curve index, place), place being "R" or a prime.  kind "points":
    every factor has a point within the height bound; one witness point
    per curve is kept.  kind "undetermined": locally solvable everywhere
    but some factor search came back empty.
    """

    kind: str
    witness_curve: Optional[int] = None
    witness_place: Optional[object] = None
    witness_points: Optional[tuple[QuarticPoint, QuarticPoint, QuarticPoint]] = None

    @classmethod
    def empty_proven(cls, curve_index: int, place) -> "TwistStatus":
        return cls(kind="empty", witness_curve=curve_index, witness_place=place)

    @classmethod
    def points_found(cls, witnesses) -> "TwistStatus":
        return cls(kind="points", witness_points=tuple(witnesses))

    @classmethod
    def undetermined(cls) -> "TwistStatus":
        return cls(kind="undetermined")


def coordinate_values(bad: PrimeSet) -> list[int]:
    """All signed squarefree integers supported on the given primes,
    ascending; 2^(k+1) of them for k primes."""
    values = []
    primes = list(bad)
    for mask in range(1 << len(primes)):
        prod = 1
        for i, p in enumerate(primes):
            if mask >> i & 1:
                prod *= p
        values.extend((prod, -prod))
    return sorted(values)


def enumerate_twists(bad: PrimeSet) -> list[TwistClass]:
    """All (2^(k+1))^3 twist classes supported on k bad primes, in
    lexicographic order of the coordinate triples."""
    values = coordinate_values(bad)
    return [
        TwistClass(d1, d2, d3)
        for d1, d2, d3 in itertools.product(values, repeat=3)
    ]


def _resolve_key(key, surface: BurniatSurface, bad: tuple, height: int):
    """Worker for the parallel path: status data for one (slot, da, db)."""
    slot, da, db = key
    curve = _raw_factor(surface, slot, da, db).integral_model()[0]
    place = curve.failing_place(bad)
    points = tuple(curve.search_points(height)) if place is None else None
    return key, place, points


def _raw_factor(surface: BurniatSurface, slot: int, da: int, db: int) -> QuarticCurve:
    """Twisted factor for one slot; (da, db) are the two coordinates the
    slot depends on: (d2, d3) for slot 1, (d1, d3) for slot 2, (d1, d2)
    for slot 3."""
    e = surface.curve(slot)
    if slot == 1:
        return QuarticCurve(e.r * da**2 * db**3, e.s * da * db**2, e.t * db)
    if slot == 2:
        return QuarticCurve(e.r * da**3 * db**2, e.s * da**2 * db, e.t * da)
    return QuarticCurve(e.r * da**2 * db**3, e.s * da * db**2, e.t * db)


def _slot_pair(tw: TwistClass, slot: int) -> tuple[int, int]:
    d1, d2, d3 = tw.as_tuple()
    return {1: (d2, d3), 2: (d1, d3), 3: (d1, d2)}[slot]


def twist_surface(surface: BurniatSurface, tw: TwistClass) -> TwistedSurface:
    """The twisted model, with every factor normalized to integer
    coefficients and squarefree content (y-rescaling only, so the
    x-coordinates keep satisfying the product relation)."""
    if not is_smooth_surface(surface):
        raise DomainError("twisting is defined for smooth surfaces only")
    normalized = tuple(
        _raw_factor(surface, slot, *_slot_pair(tw, slot)).integral_model()[0]
        for slot in (1, 2, 3)
    )
    d1, d2, d3 = tw.as_tuple()
    return TwistedSurface(
        curves=normalized,  # type: ignore[arg-type]
        c_prime=surface.c / (d1 * d2 * d3),
        origin=tw,
    )


def filter_twists(
    surface: BurniatSurface,
    height: int,
    bad: Optional[PrimeSet] = None,
    twists: Optional[list[TwistClass]] = None,
) -> dict[TwistClass, TwistStatus]:
    """Status of every enumerated twist.

    A twist is EmptyProven as soon as one normalized factor fails to be
    everywhere locally solvable over the bad primes, PointsFound when all
    three factors have a point within the height bound, Undetermined
    otherwise.  Factor curves repeat heavily across twists (each depends
    on only two of the three coordinates), so local solvability and
    searches are cached per normalized model.
    """
    if not is_smooth_surface(surface):
        raise DomainError("twist filtering is defined for smooth surfaces only")
    if bad is None:
        bad = bad_primes(surface)
    if twists is None:
        twists = enumerate_twists(bad)

    # every slot sees each coordinate pair many times across the cube of
    # twists; resolve each (slot, pair) once, keyed by plain integers so
    # the hot loop never hashes curve objects
    place_cache: dict[tuple[int, int, int], object] = {}
    points_cache: dict[tuple[int, int, int], tuple] = {}
    model_place: dict[QuarticCurve, object] = {}
    model_points: dict[QuarticCurve, tuple] = {}

    def resolve(slot: int, pair: tuple[int, int]) -> None:
        key = (slot, *pair)
        curve = _raw_factor(surface, slot, *pair).integral_model()[0]
        if curve not in model_place:
            model_place[curve] = curve.failing_place(bad)
        place = model_place[curve]
        place_cache[key] = place
        if place is None:
            if curve not in model_points:
                model_points[curve] = tuple(curve.search_points(height))
            points_cache[key] = model_points[curve]

    threads = thread_cap()
    if threads > 1:
        # resolve the whole key space up front, fanned out over processes
        keys = sorted({
            (slot, *pair)
            for tw in twists
            for slot, pair in zip((1, 2, 3), (
                (tw.d2, tw.d3), (tw.d1, tw.d3), (tw.d1, tw.d2)
            ))
        })
        resolved = parallel_map(
            partial(_resolve_key, surface=surface, bad=tuple(bad), height=height),
            keys,
            threads,
        )
        for key, place, points in resolved:
            place_cache[key] = place
            if place is None:
                points_cache[key] = points

    result: dict[TwistClass, TwistStatus] = {}
    for tw in twists:
        d1, d2, d3 = tw.as_tuple()
        pairs = ((d2, d3), (d1, d3), (d1, d2))
        status = None
        for j in (1, 2, 3):
            key = (j, *pairs[j - 1])
            if key not in place_cache:
                resolve(j, pairs[j - 1])
            place = place_cache[key]
            if place is not None:
                status = TwistStatus.empty_proven(j, place)
                break
        if status is None:
            witnesses = []
            for j in (1, 2, 3):
                pts = points_cache[(j, *pairs[j - 1])]
                if not pts:
                    status = TwistStatus.undetermined()
                    break
                witnesses.append(pts[0])
            else:
                status = TwistStatus.points_found(witnesses)
        result[tw] = status
    return result
