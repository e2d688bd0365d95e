"""Pure-NumPy twins of the numba kernels (selected via BINENV_KERNELS=numpy).

Same contracts as :mod:`binenv.kernels.numba_backend`: every returned (lo, hi)
pair is a rigorous enclosure.  Elementwise operations are bracketed with
``np.nextafter``; the one place that cannot be vectorized that way is the
cumulative sum inside the binomial row, which instead uses the standard
summation error bound: for any evaluation order of a j-term float64 sum,

    |fl(sum) - sum| <= gamma_j * sum(|terms|),   gamma_j = j*u / (1 - j*u),

with u = 2^-53 (unit roundoff).  The envelope applied below multiplies that
bound by 1.25 to absorb, with room to spare, the rounding of the envelope
computation itself and the underestimation of sum(|terms|) by its float
value (both relative-1e-12-level effects at the row lengths involved).
"""

from __future__ import annotations

import numpy as np

_U = 2.0 ** -53
_NEG = np.float64(-np.inf)
_POS = np.float64(np.inf)


def _dn(x):
    return np.nextafter(x, _NEG)


def _up(x):
    return np.nextafter(x, _POS)


def log2_binom_row(n, l2lo, l2hi):
    """Certified enclosures of log2 C(n, k) for k = 0..n (vectorized)."""
    clo = np.zeros(n + 1, dtype=np.float64)
    chi = np.zeros(n + 1, dtype=np.float64)
    if n == 0:
        return clo, chi
    k = np.arange(n)
    t_lo = _dn(l2lo[n - k] - l2hi[k + 1])
    t_hi = _up(l2hi[n - k] - l2lo[k + 1])
    j = np.arange(1, n + 1, dtype=np.float64)
    gam = (j * _U) / (1.0 - j * _U)
    env_lo = 1.25 * gam * np.cumsum(np.abs(t_lo))
    env_hi = 1.25 * gam * np.cumsum(np.abs(t_hi))
    clo[1:] = _dn(np.cumsum(t_lo) - env_lo)
    chi[1:] = _up(np.cumsum(t_hi) + env_hi)
    return clo, chi


def _scale_pos_const(g_lo, g_hi, c_lo, c_hi):
    """Interval product with a positive constant interval [c_lo, c_hi]."""
    t_lo = _dn(g_lo * np.where(g_lo < 0.0, c_hi, c_lo))
    t_hi = _up(g_hi * np.where(g_hi < 0.0, c_lo, c_hi))
    return t_lo, t_hi


def theorem_row(n, l2lo, l2hi, l2pi_lo, l2pi_hi, l2e_lo, l2e_hi):
    lhs_lo, lhs_hi = log2_binom_row(n, l2lo, l2hi)
    head_lo = _dn(n - _up(_up(l2pi_hi + l2hi[n]) - 1.0) * 0.5)
    head_hi = _up(n - _dn(_dn(l2pi_lo + l2lo[n]) - 1.0) * 0.5)
    c_lo = _dn(23.0 / (18.0 * n))
    c_hi = _up(23.0 / (18.0 * n))
    k = np.arange(n + 1, dtype=np.float64)
    q = (2.0 * k - n) ** 2  # exact below 2^53
    g_lo = _dn(c_lo - _up(q / (2.0 * n)))
    g_hi = _up(c_hi - _dn(q / (2.0 * n)))
    t_lo, t_hi = _scale_pos_const(g_lo, g_hi, l2e_lo, l2e_hi)
    return lhs_lo, lhs_hi, _dn(head_lo + t_lo), _up(head_hi + t_hi)


def lemma_row(n, l2lo, l2hi, l2pi_lo, l2pi_hi, l2e_lo, l2e_hi):
    full_lo, full_hi = log2_binom_row(2 * n, l2lo, l2hi)
    lhs_lo = full_lo[n:]
    lhs_hi = full_hi[n:]
    head_lo = _dn(2.0 * n - _up(l2pi_hi + l2hi[n]) * 0.5)
    head_hi = _up(2.0 * n - _dn(l2pi_lo + l2lo[n]) * 0.5)
    c_lo = _dn(23.0 / (36.0 * n))
    c_hi = _up(23.0 / (36.0 * n))
    k = np.arange(n + 1, dtype=np.float64)
    q = k * k
    g_lo = _dn(c_lo - _up(q / n))
    g_hi = _up(c_hi - _dn(q / n))
    t_lo, t_hi = _scale_pos_const(g_lo, g_hi, l2e_lo, l2e_hi)
    return lhs_lo, lhs_hi, _dn(head_lo + t_lo), _up(head_hi + t_hi)


def _b_interval_vec(n, k, lnlo, lnhi):
    la_lo = _dn(lnlo[n + k] - lnhi[n])
    la_hi = _up(lnhi[n + k] - lnlo[n])
    lb_lo = _dn(lnlo[n - k] - lnhi[n])
    lb_hi = _up(lnhi[n - k] - lnlo[n])
    ca = (2.0 * n + 2.0 * k + 1.0) * 0.5
    cb = (2.0 * n - 2.0 * k + 1.0) * 0.5
    b_lo = _dn(_dn(ca * la_lo) + _dn(cb * lb_lo))
    b_hi = _up(_up(ca * la_hi) + _up(cb * lb_hi))
    return b_lo, b_hi


def b_row(n, lnlo, lnhi):
    k = np.arange(n)
    b_lo, b_hi = _b_interval_vec(n, k, lnlo, lnhi)
    q = k.astype(np.float64) ** 2
    corr_lo = _dn(0.75 / n - _up(q / n))
    corr_hi = _up(0.75 / n - _dn(q / n))
    return _dn(b_lo + corr_lo), _up(b_hi + corr_hi)


def f_row(n, k_start, k_stop, lnlo, lnhi):
    width = max(0, k_stop - k_start + 1)
    k = k_start + np.arange(width)
    b0_lo, b0_hi = _b_interval_vec(n, k, lnlo, lnhi)
    b1_lo, b1_hi = _b_interval_vec(n, k + 1, lnlo, lnhi)
    step_lo = _dn((2.0 * k + 1.0) / n)
    step_hi = _up((2.0 * k + 1.0) / n)
    mlo = _dn(_dn(b1_lo - b0_hi) - step_hi)
    mhi = _up(_up(b1_hi - b0_lo) - step_lo)
    return (np.atleast_1d(mlo).astype(np.float64),
            np.atleast_1d(mhi).astype(np.float64))


def t_row(m, lnlo, lnhi):
    ki = np.arange(m + 1)
    kf = ki.astype(np.float64)
    den = 2.0 * m * (2.0 * m - 1.0)
    l_lo = _dn(lnlo[2 * m - ki] - lnhi[m])
    l_hi = _up(lnhi[2 * m - ki] - lnlo[m])
    num = 2.0 * m * m - m - 2.0 * kf * kf
    r_lo = _dn(num / den)
    r_hi = _up(num / den)
    return _dn(l_lo - r_hi), _up(l_hi - r_lo)


def t_sweep(m_min, m_max, lnlo, lnhi):
    count = m_max - m_min + 1
    n_fail = np.zeros(count, dtype=np.int64)
    n_undec = np.zeros(count, dtype=np.int64)
    min_lo = np.empty(count, dtype=np.float64)
    hi_at = np.empty(count, dtype=np.float64)
    argmin = np.zeros(count, dtype=np.int64)
    for i in range(count):
        m = m_min + i
        mlo, mhi = t_row(m, lnlo, lnhi)
        n_fail[i] = int(np.count_nonzero(mhi < 0.0))
        n_undec[i] = int(np.count_nonzero((mlo < 0.0) & (mhi >= 0.0)))
        j = int(np.argmin(mlo))
        min_lo[i] = mlo[j]
        hi_at[i] = mhi[j]
        argmin[i] = j
    return n_fail, n_undec, min_lo, hi_at, argmin


# -- Walsh-Hadamard transform and bent enumeration ----------------------------

def wht(signs):
    return batch_wht(signs.reshape(1, -1))[0]


def batch_wht(mat):
    out = np.array(mat, dtype=np.int64, copy=True)
    rows, n = out.shape
    h = 1
    while h < n:
        view = out.reshape(rows, n // (2 * h), 2, h)
        a = view[:, :, 0, :].copy()
        b = view[:, :, 1, :].copy()
        view[:, :, 0, :] = a + b
        view[:, :, 1, :] = a - b
        h *= 2
    return out


def bent_flags(n_vars):
    size = 1 << n_vars
    total = 1 << size
    target = 1 << (n_vars // 2)
    flags = np.empty(total, dtype=np.uint8)
    chunk = 1 << 14
    bit = np.arange(size, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        signs = 1 - 2 * ((idx[:, None] >> bit[None, :]) & 1)
        spectra = batch_wht(signs)
        flags[idx] = np.all(np.abs(spectra) == target, axis=1).astype(np.uint8)
    return flags
