"""Externally proven facts injected into the report.

The bounded search can certify infinite order but can never prove a rank
is zero or a point list complete; such statements enter only through this
channel, each with a provenance string, and are consistency-checked
against everything the search did find before being used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InvariantViolation
from .numbers import format_rational, rational
from .quartic import AffinePoint, InfinityPoint, QuarticPoint

SUBJECT_KINDS = ("hexagon_side", "twist_factor", "fiber_curve")


@dataclass(frozen=True)
class OracleFact:
    """One externally proven statement.

    subject_kind "hexagon_side" needs `side` (a label like "E1.t3");
    "twist_factor" needs `twist` and `curve_index`; "fiber_curve" needs
    `projection`, `x0` and `model` (one of "D", "E", "F").  The assertion
    is a rank value and/or a complete list of rational points; affine
    points are (x, y) pairs, points at infinity are ("inf", eta).
    """

    subject_kind: str
    side: Optional[str] = None
    twist: Optional[tuple[int, int, int]] = None
    curve_index: Optional[int] = None
    projection: Optional[int] = None
    x0: Optional[Fraction] = None
    model: Optional[str] = None
    rank: Optional[int] = None
    points: Optional[tuple[tuple[str, str], ...]] = None
    provenance: str = ""

    def __post_init__(self):
        if self.subject_kind not in SUBJECT_KINDS:
            raise DomainError(f"unknown oracle subject kind {self.subject_kind!r}")
        if self.subject_kind == "hexagon_side" and not self.side:
            raise DomainError("hexagon_side fact needs a side label")
        if self.subject_kind == "twist_factor" and (
            self.twist is None or self.curve_index not in (1, 2, 3)
        ):
            raise DomainError("twist_factor fact needs a twist triple and curve index 1-3")
        if self.subject_kind == "fiber_curve" and (
            self.projection not in (1, 2, 3) or self.x0 is None or self.model not in ("D", "E", "F")
        ):
            raise DomainError("fiber_curve fact needs projection, x0 and model D/E/F")
        if self.rank is None and self.points is None:
            raise DomainError("an oracle fact must assert a rank or a complete point list")
        if self.rank is not None and self.rank < 0:
            raise DomainError("rank must be nonnegative")

    def asserts_finite(self) -> Optional[bool]:
        """True = finitely many points, False = infinitely many, None = no claim."""
        if self.rank is not None:
            return self.rank == 0
        if self.points is not None:
            return True
        return None

    def point_set(self) -> set[QuarticPoint]:
        out: set[QuarticPoint] = set()
        for entry in self.points or ():
            tag, value = entry
            if tag == "inf":
                out.add(InfinityPoint(rational(value)))
            else:
                out.add(AffinePoint(rational(tag), rational(value)))
        return out


def check_point_list_consistency(
    fact: OracleFact, found: list[QuarticPoint], subject: str
) -> None:
    """A complete-list assertion must contain every point the search found."""
    if fact.points is None:
        return
    claimed = fact.point_set()
    for pt in found:
        if pt not in claimed:
            if isinstance(pt, AffinePoint):
                desc = f"({format_rational(pt.x)}, {format_rational(pt.y)})"
            else:
                desc = f"(1 : {format_rational(pt.eta)} : 0)"
            raise InvariantViolation(
                f"oracle fact on {subject} claims a complete point list, "
                f"but the search found {desc} which it does not contain "
                f"(provenance: {fact.provenance or 'none given'})"
            )
