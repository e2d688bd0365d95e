"""Certified float64 constant tables for the screening kernels.

The fast sweep kernels work in IEEE float64 interval arithmetic.  Every
transcendental input they touch is precomputed here with MPFR at 53-bit
precision in each rounding direction; a 53-bit MPFR value converts to float64
exactly (same significand grid), so the (lo, hi) float pairs are rigorous
enclosures of ln(i), log2(i) and the named constants.
"""

from __future__ import annotations

import gmpy2
import numpy as np
from gmpy2 import mpz

_DN = gmpy2.context(precision=53, round=gmpy2.RoundDown)
_UP = gmpy2.context(precision=53, round=gmpy2.RoundUp)

_cache: dict[str, tuple[np.ndarray, np.ndarray]] = {}


def _int_log_table(kind: str, size: int) -> tuple[np.ndarray, np.ndarray]:
    """(lo, hi) float64 arrays of ln(i) or log2(i), i = 0..size (entry 0 is nan)."""
    cached = _cache.get(kind)
    if cached is not None and len(cached[0]) >= size + 1:
        return cached[0][: size + 1], cached[1][: size + 1]
    fn_dn = _DN.log if kind == "ln" else _DN.log2
    fn_up = _UP.log if kind == "ln" else _UP.log2
    lo = np.empty(size + 1, dtype=np.float64)
    hi = np.empty(size + 1, dtype=np.float64)
    lo[0] = hi[0] = np.nan
    for i in range(1, size + 1):
        z = mpz(i)
        lo[i] = float(fn_dn(z))
        hi[i] = float(fn_up(z))
    lo.setflags(write=False)
    hi.setflags(write=False)
    _cache[kind] = (lo, hi)
    return lo, hi


def ln_table(size: int) -> tuple[np.ndarray, np.ndarray]:
    return _int_log_table("ln", size)


def log2_table(size: int) -> tuple[np.ndarray, np.ndarray]:
    return _int_log_table("log2", size)


def constant_pair(name: str) -> tuple[float, float]:
    """(lo, hi) float64 enclosure of a named constant."""
    if name == "log2_pi":
        return float(_DN.log2(_DN.const_pi())), float(_UP.log2(_UP.const_pi()))
    if name == "log2_e":
        one = gmpy2.mpfr(1, precision=2)
        return (float(_DN.div(one, _UP.const_log2())),
                float(_UP.div(one, _DN.const_log2())))
    if name == "ln2":
        return float(_DN.const_log2()), float(_UP.const_log2())
    if name == "pi":
        return float(_DN.const_pi()), float(_UP.const_pi())
    raise KeyError(name)
