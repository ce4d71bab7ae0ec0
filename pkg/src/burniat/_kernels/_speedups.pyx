# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in `pure.py`.

Callers guarantee the machine-word preconditions (see `_kernels.__init__`):
the scan requires 5*max|g|*H^4 < 2^62, the p-adic walk requires
p^(max_depth+2) < 2^62.  Products inside the modular walk use 128-bit
intermediates, so moduli close to 2^62 stay exact.
"""

from libc.math cimport sqrtl

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"

IMPLEMENTATION = "compiled"


cdef inline long long c_gcd(long long a, long long b) noexcept:
    if a < 0:
        a = -a
    while b:
        a, b = b, a % b
    return a


cdef inline long long c_isqrt(long long v) noexcept:
    cdef long long r = <long long> sqrtl(<long double> v)
    while r > 0 and r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


def quartic_square_scan(long long g0, long long g1, long long g2, long long g3,
                        long long g4, long long height):
    cdef list out = []
    cdef long long n, m, n2, n3, n4, c1, c2, c3, c4, m2, v, y
    for n in range(1, height + 1):
        n2 = n * n
        n3 = n2 * n
        n4 = n2 * n2
        c1 = g1 * n
        c2 = g2 * n2
        c3 = g3 * n3
        c4 = g4 * n4
        for m in range(-height, height + 1):
            if c_gcd(m, n) != 1:
                continue
            m2 = m * m
            v = (g0 * m2 + c1 * m + c2) * m2 + c3 * m + c4
            if v >= 0:
                y = c_isqrt(v)
                if y * y == v:
                    out.append((m, n, y))
    return out


cdef inline unsigned long long mulmod(unsigned long long a, unsigned long long b,
                                      unsigned long long mod) noexcept:
    return <unsigned long long> ((<uint128> a * b) % mod)


def zp_solvable_even_quartic(long long r, long long s, long long t,
                             long long p, long long max_depth):
    cdef list stack = [(0, 0)]
    cdef long long req = 3 if p == 2 else 1
    cdef long long legendre_exp = (p - 1) // 2
    cdef long long b, k, j, x, m, depth
    cdef unsigned long long step, mod, x2, fx, v, e, acc, base
    cdef unsigned long long rr, ss, tt
    # work with nonnegative residues of the coefficients mod p^(max_depth+2)
    mod = 1
    for j in range(max_depth + 2):
        mod *= <unsigned long long> p
    rr = <unsigned long long> (r % <long long> mod + <long long> mod) % mod
    ss = <unsigned long long> (s % <long long> mod + <long long> mod) % mod
    tt = <unsigned long long> (t % <long long> mod + <long long> mod) % mod

    while stack:
        b, k = stack.pop()
        if k >= max_depth:
            return True
        step = 1
        for j in range(k):
            step *= <unsigned long long> p
        for j in range(p):
            x = b + j * <long long> step
            depth = k + 1
            x2 = mulmod(<unsigned long long> x, <unsigned long long> x, mod)
            fx = mulmod(rr, x2, mod)
            fx = (fx + ss) % mod
            fx = mulmod(fx, x2, mod)
            fx = (fx + tt) % mod
            if fx == 0:
                # valuation at least max_depth + 2 > depth: refine further
                stack.append((x, depth))
                continue
            m = 0
            v = fx
            while v % <unsigned long long> p == 0:
                v //= <unsigned long long> p
                m += 1
            if m < depth and depth - m >= req:
                if m % 2 == 0:
                    if p == 2:
                        if v % 8 == 1:
                            return True
                    else:
                        # Euler's criterion on the unit part
                        e = <unsigned long long> legendre_exp
                        base = v % <unsigned long long> p
                        acc = 1
                        while e:
                            if e & 1:
                                acc = acc * base % <unsigned long long> p
                            base = base * base % <unsigned long long> p
                            e >>= 1
                        if acc == 1:
                            return True
            else:
                stack.append((x, depth))
    return False
