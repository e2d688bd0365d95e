"""Numba JIT implementations of the hot screening and enumeration kernels.

All float arithmetic is outward-rounded interval arithmetic: a round-to-
nearest IEEE result differs from the exact value by at most half an ulp, so
``nextafter`` towards the appropriate infinity after every operation yields a
rigorous directed bound.  Transcendental inputs come from the MPFR-built
tables in :mod:`binenv.kernels.tables`; no libm transcendental is ever
trusted inside a kernel.

Each function has a drop-in twin in :mod:`binenv.kernels.numpy_backend`.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

_INF = math.inf


@njit(cache=True, inline="always")
def _dn(x):
    return math.nextafter(x, -_INF)


@njit(cache=True, inline="always")
def _up(x):
    return math.nextafter(x, _INF)


# -- log2 C(n, k) row ---------------------------------------------------------

@njit(cache=True)
def log2_binom_row(n, l2lo, l2hi):
    """Certified enclosures of log2 C(n, k) for k = 0..n.

    Sequential cumulative sum of log2((n-k)/(k+1)) steps; each addition is
    bracketed with nextafter, so the directed error never leaks.
    """
    clo = np.empty(n + 1, dtype=np.float64)
    chi = np.empty(n + 1, dtype=np.float64)
    clo[0] = 0.0
    chi[0] = 0.0
    acc_lo = 0.0
    acc_hi = 0.0
    for k in range(n):
        acc_lo = _dn(acc_lo + _dn(l2lo[n - k] - l2hi[k + 1]))
        acc_hi = _up(acc_hi + _up(l2hi[n - k] - l2lo[k + 1]))
        clo[k + 1] = acc_lo
        chi[k + 1] = acc_hi
    return clo, chi


# -- Gaussian-envelope bound screens ------------------------------------------

@njit(cache=True)
def theorem_row(n, l2lo, l2hi, l2pi_lo, l2pi_hi, l2e_lo, l2e_hi):
    """(lhs_lo, lhs_hi, rhs_lo, rhs_hi) for the n-th row of the main bound.

    lhs = log2 C(n, k); rhs = n - log2(pi*n/2)/2 + (23/(18n) - (2k-n)^2/(2n)) * log2(e).
    """
    lhs_lo, lhs_hi = log2_binom_row(n, l2lo, l2hi)
    rhs_lo = np.empty(n + 1, dtype=np.float64)
    rhs_hi = np.empty(n + 1, dtype=np.float64)
    # head = n - (log2 pi + log2 n - 1) / 2, constant along the row
    head_lo = _dn(n - _up(_up(l2pi_hi + l2hi[n]) - 1.0) * 0.5)
    head_hi = _up(n - _dn(_dn(l2pi_lo + l2lo[n]) - 1.0) * 0.5)
    c_lo = _dn(23.0 / (18.0 * n))  # 18n exact below 2^53
    c_hi = _up(23.0 / (18.0 * n))
    inv2n = 2.0 * n  # exact
    for k in range(n + 1):
        d = 2.0 * k - n          # exact
        q = d * d                # exact while n <= 2^26
        g_lo = _dn(c_lo - _up(q / inv2n))
        g_hi = _up(c_hi - _dn(q / inv2n))
        # multiply [g_lo, g_hi] by positive constant interval [l2e_lo, l2e_hi]
        t_lo = _dn(g_lo * (l2e_hi if g_lo < 0.0 else l2e_lo))
        t_hi = _up(g_hi * (l2e_lo if g_hi < 0.0 else l2e_hi))
        rhs_lo[k] = _dn(head_lo + t_lo)
        rhs_hi[k] = _up(head_hi + t_hi)
    return lhs_lo, lhs_hi, rhs_lo, rhs_hi


@njit(cache=True)
def lemma_row(n, l2lo, l2hi, l2pi_lo, l2pi_hi, l2e_lo, l2e_hi):
    """(lhs_lo, lhs_hi, rhs_lo, rhs_hi) for C(2n, n+k) vs its envelope, k = 0..n.

    rhs = 2n - log2(pi*n)/2 + (23/(36n) - k^2/n) * log2(e); values for k < 0
    coincide with |k| by symmetry of both sides.
    """
    full_lo, full_hi = log2_binom_row(2 * n, l2lo, l2hi)
    lhs_lo = full_lo[n:]
    lhs_hi = full_hi[n:]
    rhs_lo = np.empty(n + 1, dtype=np.float64)
    rhs_hi = np.empty(n + 1, dtype=np.float64)
    head_lo = _dn(2.0 * n - _up(l2pi_hi + l2hi[n]) * 0.5)
    head_hi = _up(2.0 * n - _dn(l2pi_lo + l2lo[n]) * 0.5)
    c_lo = _dn(23.0 / (36.0 * n))
    c_hi = _up(23.0 / (36.0 * n))
    for k in range(n + 1):
        q = float(k) * float(k)  # exact
        g_lo = _dn(c_lo - _up(q / n))
        g_hi = _up(c_hi - _dn(q / n))
        t_lo = _dn(g_lo * (l2e_hi if g_lo < 0.0 else l2e_lo))
        t_hi = _up(g_hi * (l2e_lo if g_hi < 0.0 else l2e_hi))
        rhs_lo[k] = _dn(head_lo + t_lo)
        rhs_hi[k] = _up(head_hi + t_hi)
    return lhs_lo, lhs_hi, rhs_lo, rhs_hi


# -- proof-support screens ----------------------------------------------------

@njit(cache=True, inline="always")
def _b_interval(n, k, lnlo, lnhi):
    """Enclosure of b = (2n+2k+1)/2 * ln((n+k)/n) + (2n-2k+1)/2 * ln((n-k)/n)."""
    la_lo = _dn(lnlo[n + k] - lnhi[n])   # >= 0 side
    la_hi = _up(lnhi[n + k] - lnlo[n])
    lb_lo = _dn(lnlo[n - k] - lnhi[n])   # <= 0 side
    lb_hi = _up(lnhi[n - k] - lnlo[n])
    ca = (2.0 * n + 2.0 * k + 1.0) * 0.5  # exact
    cb = (2.0 * n - 2.0 * k + 1.0) * 0.5  # exact, positive for k <= n-1
    b_lo = _dn(_dn(ca * la_lo) + _dn(cb * lb_lo))
    b_hi = _up(_up(ca * la_hi) + _up(cb * lb_hi))
    return b_lo, b_hi


@njit(cache=True)
def b_row(n, lnlo, lnhi):
    """Margins of b_{k,n} - k^2/n + 3/(4n) > 0 for k = 0..n-1."""
    mlo = np.empty(n, dtype=np.float64)
    mhi = np.empty(n, dtype=np.float64)
    for k in range(n):
        b_lo, b_hi = _b_interval(n, k, lnlo, lnhi)
        q = float(k) * float(k)
        corr_lo = _dn(0.75 / n - _up(q / n))
        corr_hi = _up(0.75 / n - _dn(q / n))
        mlo[k] = _dn(b_lo + corr_lo)
        mhi[k] = _up(b_hi + corr_hi)
    return mlo, mhi


@njit(cache=True)
def f_row(n, k_start, k_stop, lnlo, lnhi):
    """Margins of f(k+1) - f(k) > 0, f(k) = b_{k,n} - k^2/n, k = k_start..k_stop."""
    width = max(0, k_stop - k_start + 1)
    mlo = np.empty(width, dtype=np.float64)
    mhi = np.empty(width, dtype=np.float64)
    for i in range(width):
        k = k_start + i
        b0_lo, b0_hi = _b_interval(n, k, lnlo, lnhi)
        b1_lo, b1_hi = _b_interval(n, k + 1, lnlo, lnhi)
        # f(k+1) - f(k) = (b1 - b0) - (2k+1)/n
        step_lo = _dn(float(2 * k + 1) / n)
        step_hi = _up(float(2 * k + 1) / n)
        mlo[i] = _dn(_dn(b1_lo - b0_hi) - step_hi)
        mhi[i] = _up(_up(b1_hi - b0_lo) - step_lo)
    return mlo, mhi


@njit(cache=True)
def t_row(m, lnlo, lnhi):
    """Margins of t(k) = ln((2m-k)/m) - (2m^2 - m - 2k^2)/(2m(2m-1)) for k = 0..m."""
    mlo = np.empty(m + 1, dtype=np.float64)
    mhi = np.empty(m + 1, dtype=np.float64)
    den = 2.0 * m * (2.0 * m - 1.0)  # exact while 4m^2 < 2^53
    for k in range(m + 1):
        l_lo = _dn(lnlo[2 * m - k] - lnhi[m])
        l_hi = _up(lnhi[2 * m - k] - lnlo[m])
        num = 2.0 * m * m - m - 2.0 * float(k) * float(k)  # exact
        r_lo = _dn(num / den)
        r_hi = _up(num / den)
        mlo[k] = _dn(l_lo - r_hi)
        mhi[k] = _up(l_hi - r_lo)
    return mlo, mhi


@njit(cache=True, parallel=True)
def t_sweep(m_min, m_max, lnlo, lnhi):
    """Aggregate screen of the t(k) >= 0 grid over m = m_min..m_max.

    Returns per-m arrays: (n_fail, n_undecided, min_lo, hi_at_argmin, argmin_k)
    where the minimum is taken over the certified lower margin.
    """
    count = m_max - m_min + 1
    n_fail = np.zeros(count, dtype=np.int64)
    n_undec = np.zeros(count, dtype=np.int64)
    min_lo = np.empty(count, dtype=np.float64)
    hi_at = np.empty(count, dtype=np.float64)
    argmin = np.zeros(count, dtype=np.int64)
    for i in prange(count):
        m = m_min + i
        den = 2.0 * m * (2.0 * m - 1.0)
        best_lo = _INF
        best_hi = _INF
        best_k = 0
        fails = 0
        undec = 0
        for k in range(m + 1):
            l_lo = _dn(lnlo[2 * m - k] - lnhi[m])
            l_hi = _up(lnhi[2 * m - k] - lnlo[m])
            num = 2.0 * m * m - m - 2.0 * float(k) * float(k)
            r_lo = _dn(num / den)
            r_hi = _up(num / den)
            g_lo = _dn(l_lo - r_hi)
            g_hi = _up(l_hi - r_lo)
            if g_hi < 0.0:
                fails += 1
            elif g_lo < 0.0:
                undec += 1
            if g_lo < best_lo:
                best_lo = g_lo
                best_hi = g_hi
                best_k = k
        n_fail[i] = fails
        n_undec[i] = undec
        min_lo[i] = best_lo
        hi_at[i] = best_hi
        argmin[i] = best_k
    return n_fail, n_undec, min_lo, hi_at, argmin


# -- Walsh-Hadamard transform and bent enumeration ----------------------------

@njit(cache=True)
def wht(signs):
    """In-place-style fast transform of an int64 +-1 (or integer) vector."""
    out = signs.copy()
    n = out.shape[0]
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            for j in range(start, start + h):
                a = out[j]
                b = out[j + h]
                out[j] = a + b
                out[j + h] = a - b
        h *= 2
    return out


@njit(cache=True, parallel=True)
def batch_wht(mat):
    """Row-wise fast transform of an int64 matrix."""
    out = mat.copy()
    rows, n = out.shape
    for r in prange(rows):
        h = 1
        while h < n:
            for start in range(0, n, 2 * h):
                for j in range(start, start + h):
                    a = out[r, j]
                    b = out[r, j + h]
                    out[r, j] = a + b
                    out[r, j + h] = a - b
            h *= 2
    return out


@njit(cache=True, parallel=True)
def bent_flags(n_vars):
    """flags[t] = 1 iff the function with truth-table bits t (bit x = f(x)) is bent."""
    size = 1 << n_vars
    total = 1 << size
    target = 1 << (n_vars // 2)
    flags = np.zeros(total, dtype=np.uint8)
    for t in prange(total):
        w = np.empty(size, dtype=np.int64)
        for x in range(size):
            w[x] = 1 - 2 * ((t >> x) & 1)
        h = 1
        while h < size:
            for start in range(0, size, 2 * h):
                for j in range(start, start + h):
                    a = w[j]
                    b = w[j + h]
                    w[j] = a + b
                    w[j + h] = a - b
            h *= 2
        ok = True
        for x in range(size):
            v = w[x]
            if v != target and v != -target:
                ok = False
                break
        flags[t] = 1 if ok else 0
    return flags
