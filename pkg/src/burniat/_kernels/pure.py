"""Pure-Python kernels for the two hot inner loops.

These are the reference implementations; `burniat._kernels` swaps in the
compiled twins from `_speedups` when they are available and the arguments
fit in machine words.  Both implementations must stay behaviourally
identical -- the test suite runs them against each other.
"""

from __future__ import annotations

from math import gcd, isqrt

IMPLEMENTATION = "pure"


def quartic_square_scan(g0: int, g1: int, g2: int, g3: int, g4: int, height: int):
    """Perfect-square values of a binary quartic form over the coprime grid.

    Scans all pairs (m, n) with 1 <= n <= height, |m| <= height and
    gcd(m, n) = 1, and returns the triples (m, n, y) with

        G(m, n) = g0*m^4 + g1*m^3*n + g2*m^2*n^2 + g3*m*n^3 + g4*n^4 = y^2,

    y >= 0, ordered by (n, m).
    """
    out = []
    for n in range(1, height + 1):
        n2 = n * n
        n3 = n2 * n
        n4 = n2 * n2
        c1 = g1 * n
        c2 = g2 * n2
        c3 = g3 * n3
        c4 = g4 * n4
        for m in range(-height, height + 1):
            if gcd(m, n) != 1:
                continue
            m2 = m * m
            v = ((g0 * m2 + c1 * m + c2) * m2) + c3 * m + c4
            if v >= 0:
                y = isqrt(v)
                if y * y == v:
                    out.append((m, n, y))
    return out


def zp_solvable_even_quartic(r: int, s: int, t: int, p: int, max_depth: int) -> bool:
    """Whether r*x^4 + s*x^2 + t takes a square value (or 0) for some x in Z_p.

    Residue classes x = b (mod p^k) are refined depth-first.  A class whose
    value has p-adic valuation m < k with k - m large enough (1 for odd p,
    3 for p = 2) has its square-ness decided by b alone: accept or prune,
    both rigorous.  A class still undecided at depth `max_depth` is counted
    as solvable; with the caller's depth 2*v_p(4*disc) + 3 such a class
    pins an actual zero of the quartic in Z_p (a point with y = 0), and any
    slack in that bound only errs toward "solvable", never toward a false
    emptiness proof.
    """
    req = 3 if p == 2 else 1
    legendre_exp = (p - 1) // 2
    # residues mod p^(max_depth+2) determine every decision below, and keep
    # the arithmetic small at deep levels
    mod = p ** (max_depth + 2)
    rr, ss, tt = r % mod, s % mod, t % mod
    powers = [1]
    for _ in range(max_depth + 1):
        powers.append(powers[-1] * p)
    stack = [(0, 0)]
    while stack:
        b, k = stack.pop()
        if k >= max_depth:
            return True
        step = powers[k]
        for j in range(p):
            x = b + j * step
            depth = k + 1
            x2 = x * x % mod
            fx = ((rr * x2 + ss) * x2 + tt) % mod
            if fx == 0:
                # valuation at least max_depth + 2 > depth: refine further
                stack.append((x, depth))
                continue
            m = 0
            v = fx
            while v % p == 0:
                v //= p
                m += 1
            if m < depth and depth - m >= req:
                if m % 2 == 0:
                    if p == 2:
                        if v % 8 == 1:
                            return True
                    elif pow(v, legendre_exp, p) == 1:
                        return True
                # decided insolvable on this class: prune
            else:
                stack.append((x, depth))
    return False
