"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled kernels only accept machine-word-sized work; the wrappers here
check the bounds per call and quietly use the pure implementation for
anything oversized, so callers never need to care.  Set BURNIAT_KERNEL=pure
(or =compiled) to force a choice; "compiled" raises if the extension is
missing.
"""

from __future__ import annotations

import os

from . import pure as _pure

try:
    from . import _speedups as _compiled
except ImportError:  # extension not built
    _compiled = None

_FORCE = os.environ.get("BURNIAT_KERNEL", "").strip().lower()
if _FORCE == "compiled" and _compiled is None:
    raise ImportError("BURNIAT_KERNEL=compiled but the extension is not built")

_WORD_BOUND = 2**62


def _use_compiled() -> bool:
    if _FORCE == "pure":
        return False
    return _compiled is not None


ACTIVE_IMPLEMENTATION = "compiled" if _use_compiled() else "pure"


def quartic_square_scan(g0: int, g1: int, g2: int, g3: int, g4: int, height: int):
    """See `pure.quartic_square_scan`."""
    if _use_compiled():
        maxg = max(abs(g0), abs(g1), abs(g2), abs(g3), abs(g4), 1)
        if 5 * maxg * height**4 < _WORD_BOUND:
            return _compiled.quartic_square_scan(g0, g1, g2, g3, g4, height)
    return _pure.quartic_square_scan(g0, g1, g2, g3, g4, height)


def zp_solvable_even_quartic(r: int, s: int, t: int, p: int, max_depth: int) -> bool:
    """See `pure.zp_solvable_even_quartic`."""
    if _use_compiled():
        if p ** (max_depth + 2) < _WORD_BOUND and max(abs(r), abs(s), abs(t)) < _WORD_BOUND:
            return _compiled.zp_solvable_even_quartic(r, s, t, p, max_depth)
    return _pure.zp_solvable_even_quartic(r, s, t, p, max_depth)
