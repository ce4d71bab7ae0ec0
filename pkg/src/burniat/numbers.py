"""Exact rational and integer arithmetic shared by the whole package.

Rationals are `fractions.Fraction` throughout: always in lowest terms with
positive denominator, so equality is structural and sets/dicts of values
behave correctly.  Nothing in this package ever touches a float.

Integer factorization is trial division up to a configurable bound plus a
Miller-Rabin primality test (deterministic for inputs below 3.3e24, far
beyond anything produced at desk scale).  A composite cofactor that
survives the bound raises `FactorizationError` instead of silently
returning a partial factorization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, FactorizationError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

# Witnesses making Miller-Rabin deterministic for n < 3_317_044_064_679_887_385_961_981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_TRIAL_BOUND = 1_000_000


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction.

    Strings must be integer or integer/integer; floats are rejected to keep
    the no-rounding guarantee.
    """
    if isinstance(value, bool):
        raise DomainError(f"expected a rational number, got bool {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational from {value!r}: {exc}") from exc
    raise DomainError(f"expected int, Fraction or 'p/q' string, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Serialize exactly: 'p' or 'p/q'."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> dict[int, int]:
    """Factor |n| into primes; n must be nonzero.  Returns {prime: exponent}."""
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # remaining candidates are 6k +- 1
    d = 5
    step = 2
    while d <= bound and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        if is_prime(n):
            factors[n] = factors.get(n, 0) + 1
        elif n <= bound * bound:
            # no prime factor <= bound and n <= bound^2 forces primality,
            # so reaching here means the primality test disagreed; treat as prime
            factors[n] = factors.get(n, 0) + 1
        else:
            raise FactorizationError(
                f"composite cofactor {n} exceeds trial bound {bound}^2; raise the bound"
            )
    return factors


class PrimeSet:
    """An immutable, strictly increasing tuple of primes."""

    __slots__ = ("_primes",)

    def __init__(self, primes: Iterable[int] = ()):
        uniq = sorted(set(primes))
        for p in uniq:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
        self._primes = tuple(uniq)

    @property
    def primes(self) -> tuple[int, ...]:
        return self._primes

    def __contains__(self, p: int) -> bool:
        return p in self._primes

    def __iter__(self):
        return iter(self._primes)

    def __len__(self) -> int:
        return len(self._primes)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeSet):
            return self._primes == other._primes
        if isinstance(other, (set, frozenset, tuple, list)):
            return self._primes == tuple(sorted(set(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._primes)

    def __or__(self, other: "PrimeSet") -> "PrimeSet":
        return PrimeSet(self._primes + tuple(other))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(p) for p in self._primes) + "}"


def squarefree_part(q: RationalLike) -> int:
    """The unique squarefree integer e with q/e a square of a rational.

    For q = a/b in lowest terms this is the squarefree part of a*b: the
    sign survives, squares are stripped.
    """
    q = rational(q)
    if q == 0:
        raise DomainError("squarefree_part of 0 is undefined")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    e = sign
    for p, a in factorize(n).items():
        if a % 2 == 1:
            e *= p
    return e


def prime_support(q: RationalLike) -> PrimeSet:
    """Primes dividing numerator or denominator of q != 0."""
    q = rational(q)
    if q == 0:
        raise DomainError("prime support of 0 is undefined")
    n = abs(q.numerator * q.denominator)
    return PrimeSet(factorize(n).keys())


def is_square(q: RationalLike) -> bool:
    """True iff q is the square of a rational; 0 counts as a square."""
    q = rational(q)
    if q < 0:
        return False
    return _is_square_int(q.numerator) and _is_square_int(q.denominator)


def _is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def sqrt_rational(q: RationalLike) -> Fraction:
    """Exact square root of a rational square; DomainError otherwise."""
    q = rational(q)
    if not is_square(q):
        raise DomainError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def rational_roots(coeffs: Sequence[RationalLike]) -> list[Fraction]:
    """All rational roots of the polynomial sum(coeffs[i] * x**i), each once.

    Uses the rational-root criterion on the primitive integer part, so the
    search is exact and complete.  Coefficients are ascending by degree.
    """
    cs = [rational(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise DomainError("the zero polynomial has no well-defined root set")
    if len(cs) == 1:
        return []
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]

    roots: set[Fraction] = set()
    # strip x | polynomial
    low = 0
    while ints[low] == 0:
        low += 1
    if low > 0:
        roots.add(Fraction(0))
        ints = ints[low:]
    if len(ints) > 1:
        a0, an = abs(ints[0]), abs(ints[-1])
        num_cands = sorted(_divisors(a0))
        den_cands = sorted(_divisors(an))
        for p in num_cands:
            for qd in den_cands:
                for cand in (Fraction(p, qd), Fraction(-p, qd)):
                    if cand in roots:
                        continue
                    if _poly_eval(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    divs = []
    for p, a in factorize(n).items():
        pw = [p**k for k in range(a + 1)]
        divs = [d * q for d in divs for q in pw] if divs else pw
    return divs or [1]


def _poly_eval(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
