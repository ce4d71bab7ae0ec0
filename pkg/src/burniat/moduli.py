"""Moduli coordinates of a primary Burniat surface and everything read off
from them: validity of the point, extra-automorphism strata, the
automorphism group, and the census of low-genus curves on S.

The moduli point is (u1, u2, u3, d, v, w) where the u_i are the elementary
symmetric functions of the three curve parameters a_j^2 = s_j^2/(r_j*t_j),
d is the sign-carrying product of their pairwise differences, and v, w
mix in the surface constant c.  The strata:

    M1: v = 4                     extra involution
    M2: u2 = u3 = 0               extra order-4 automorphism
    M3: u3 = v = 0                extra involution
    M4: d = 0, u1^2 = 3*u2,       extra order-3 automorphism
        u1*u2 = 9*u3
    N1: d = 0                     surfaces carrying curves of type I
    N2: a rational curve in M     surfaces carrying curves of type II
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .numbers import RationalLike, rational, rational_roots
from .surface import BurniatSurface, is_smooth_surface


@dataclass(frozen=True)
class ModuliPoint:
    u1: Fraction
    u2: Fraction
    u3: Fraction
    d: Fraction
    v: Fraction
    w: Fraction

    def __init__(self, u1, u2, u3, d, v, w):
        for name, value in zip(("u1", "u2", "u3", "d", "v", "w"), (u1, u2, u3, d, v, w)):
            object.__setattr__(self, name, rational(value))

    def as_tuple(self):
        return (self.u1, self.u2, self.u3, self.d, self.v, self.w)


@dataclass(frozen=True)
class StrataFlags:
    m1: bool
    m2: bool
    m3: bool
    m4: bool
    n1: bool
    n2_parameter: Optional[Fraction]  # parameter t on the type-II curve, if on it

    @property
    def n2(self) -> bool:
        return self.n2_parameter is not None


@dataclass(frozen=True)
class CensusCounts:
    infinity: int
    type_i: int
    type_ii: int

    _ALLOWED = {(0, 0), (1, 0), (2, 0), (3, 0), (6, 0), (1, 1), (2, 2), (3, 3)}

    def __post_init__(self):
        if self.infinity != 6:
            raise DomainError("every primary Burniat surface has 6 curves at infinity")
        if (self.type_i, self.type_ii) not in self._ALLOWED:
            raise DomainError(
                f"census ({self.type_i}, {self.type_ii}) is not a possible combination"
            )


def _moduli_values(surface: BurniatSurface) -> ModuliPoint:
    """The raw formulas; requires smooth curves and c != 0 but tolerates
    D = 0, which the D-equivalence test in the suite relies on."""
    if surface.c == 0:
        raise DomainError("moduli coordinates need c != 0")
    if not all(e.is_smooth() for e in surface.curves):
        raise DomainError("moduli coordinates need all three curves smooth")
    a = [e.a_squared() for e in surface.curves]
    rp = surface.curves[0].r * surface.curves[1].r * surface.curves[2].r
    tp = surface.curves[0].t * surface.curves[1].t * surface.curves[2].t
    sp = surface.curves[0].s * surface.curves[1].s * surface.curves[2].s
    c = surface.c
    return ModuliPoint(
        u1=a[0] + a[1] + a[2],
        u2=a[0] * a[1] + a[1] * a[2] + a[2] * a[0],
        u3=a[0] * a[1] * a[2],
        d=(a[0] - a[1]) * (a[1] - a[2]) * (a[2] - a[0]),
        v=(rp / tp) * c**4 + 2 + (tp / rp) / c**4,
        w=sp * (c**2 / tp + 1 / (c**2 * rp)),
    )


def moduli_point(surface: BurniatSurface) -> ModuliPoint:
    if not is_smooth_surface(surface):
        raise DomainError("moduli point is defined for smooth surfaces only")
    return _moduli_values(surface)


def first_inequality(p: ModuliPoint) -> Fraction:
    """(v - u1)^2 + u2*(v - 4) + u3 + (u1 + v - 8)*w; vanishes exactly when
    the surface discriminant D vanishes."""
    return (p.v - p.u1) ** 2 + p.u2 * (p.v - 4) + p.u3 + (p.u1 + p.v - 8) * p.w


def second_inequality(p: ModuliPoint) -> Fraction:
    """64 - 16*u1 + 4*u2 - u3 = (4 - a1^2)(4 - a2^2)(4 - a3^2); vanishes
    exactly when some curve is singular."""
    return 64 - 16 * p.u1 + 4 * p.u2 - p.u3


def validate_moduli(p: ModuliPoint) -> bool:
    """Membership in the moduli space: two equations and two inequalities.

        -4*u1^3*u3 + u1^2*u2^2 + 18*u1*u2*u3 - 4*u2^3 - 27*u3^2 = d^2
        u3*v = w^2
        first_inequality != 0,  second_inequality != 0
    """
    eq1 = (
        -4 * p.u1**3 * p.u3
        + p.u1**2 * p.u2**2
        + 18 * p.u1 * p.u2 * p.u3
        - 4 * p.u2**3
        - 27 * p.u3**2
    )
    if eq1 != p.d**2:
        return False
    if p.u3 * p.v != p.w**2:
        return False
    return first_inequality(p) != 0 and second_inequality(p) != 0


def n2_point(t: RationalLike) -> ModuliPoint:
    """The point of the type-II locus with parameter t != 0."""
    t = rational(t)
    if t == 0:
        raise DomainError("the type-II locus parameterization needs t != 0")
    return ModuliPoint(
        u1=-2 * (t**3 - 4 * t**2 - 7 * t - 8) / t**2,
        u2=(t - 1) ** 2 * (t**3 - 10 * t**2 - 31 * t - 32) / t**3,
        u3=4 * (t - 1) ** 4 * (t + 2) ** 2 / t**4,
        d=0,
        v=4,
        w=-4 * (t - 1) ** 2 * (t + 2) / t**2,
    )


def _n2_parameter(p: ModuliPoint) -> Optional[Fraction]:
    """A rational parameter t placing p on the type-II locus, or None.

    Candidates are the rational roots of 4*(t-1)^2*(t+2) + w*t^2 (the w
    coordinate of the parameterization, cleared of denominators); each is
    verified against the full point.  Sound, and complete whenever the
    parameter of the point is rational.
    """
    if p.d != 0 or p.v != 4:
        return None
    # 4*(t-1)^2*(t+2) + w*t^2 = 4t^3 + w*t^2 - 12t + 8, ascending coefficients:
    for t in rational_roots([8, -12, p.w, 4]):
        if t == 0:
            continue
        cand = n2_point(t)
        if (cand.u1, cand.u2, cand.u3) == (p.u1, p.u2, p.u3) and cand.w == p.w:
            return t
    return None


def strata(p: ModuliPoint) -> StrataFlags:
    if not validate_moduli(p):
        raise DomainError("strata are defined for valid moduli points only")
    return StrataFlags(
        m1=p.v == 4,
        m2=p.u2 == 0 and p.u3 == 0,
        m3=p.u3 == 0 and p.v == 0,
        m4=p.d == 0 and p.u1**2 == 3 * p.u2 and p.u1 * p.u2 == 9 * p.u3,
        n1=p.d == 0,
        n2_parameter=_n2_parameter(p),
    )


# finest-stratum lookup of the automorphism group of S
_AUT_TABLE = (
    (("m1", "m2", "m4"), "((C4 wr C3)/C4) : C2"),
    (("m2", "m4"), "(C4 wr C3)/C4"),
    (("m2", "m3"), "C2xD4"),
    (("m1", "m4"), "C2xA4"),
    (("m1", "m2"), "C2xD4"),
    (("m4",), "A4"),
    (("m3",), "C2^3"),
    (("m2",), "C2xC4"),
    (("m1",), "C2^3"),
    ((), "C2^2"),
)


def automorphism_group(flags: StrataFlags) -> str:
    """Descriptor of Aut(S) for the finest stratum the flags land in."""
    if flags.m4 and not flags.n1:
        raise DomainError("inconsistent flags: the order-3 stratum lies inside d = 0")
    if flags.m1 and flags.m3:
        raise DomainError("inconsistent flags: v cannot be both 4 and 0")
    if flags.m3 and flags.m4:
        raise DomainError("inconsistent flags: these strata do not meet")
    active = {name for name in ("m1", "m2", "m3", "m4") if getattr(flags, name)}
    for required, descriptor in _AUT_TABLE:
        if set(required) == active:
            return descriptor
    raise DomainError(f"no stratum matches flags {sorted(active)}")


def census(surface: BurniatSurface) -> CensusCounts:
    """Counts of genus-1 curves on S: 6 at infinity always; type I from the
    coincidence pattern of (a1^2, a2^2, a3^2); type II via the N2 locus."""
    if not is_smooth_surface(surface):
        raise DomainError("census is defined for smooth surfaces only")
    a = sorted(e.a_squared() for e in surface.curves)
    if a[0] == a[1] == a[2]:
        type_i = 6 if a[0] == 0 else 3
    elif a[0] == a[1] or a[1] == a[2]:
        pair = a[0] if a[0] == a[1] else a[1]
        type_i = 2 if pair == 0 else 1
    else:
        type_i = 0
    flags = strata(moduli_point(surface))
    if flags.n2:
        type_ii = 2 if flags.m2 else 3 if flags.m4 else 1
    else:
        type_ii = 0
    return CensusCounts(infinity=6, type_i=type_i, type_ii=type_ii)


def is_generic(surface: BurniatSurface) -> bool:
    """d != 0: no curves of type I or II on S."""
    if not is_smooth_surface(surface):
        raise DomainError("genericity is defined for smooth surfaces only")
    return moduli_point(surface).d != 0
