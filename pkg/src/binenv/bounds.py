"""Certified checks of the Gaussian-envelope upper bound on binomial coefficients.

The central inequality verified here, for positive ``n`` and ``0 <= k <= n``::

    C(n, k) <= 2^n / sqrt(pi*n/2) * exp(-2(k - n/2)^2 / n + 23/(18n))

together with its even-row form (``C(2n, n+k) <= 2^{2n}/sqrt(pi*n) *
exp(-k^2/n + 23/(36n))``), the two classical reference bounds (ratio form and
binary-entropy form), and the three scalar inequalities that support the
proof of the central bound on integer grids:

* ``b_{k,n} - k^2/n + 3/(4n) > 0`` where
  ``b_{k,n} = n((1+(k+1/2)/n) ln(1+k/n) + (1-(k-1/2)/n) ln(1-k/n))``;
* ``t(k) = ln(2 - k/m) - (2m^2 - m - 2k^2)/(2m(2m-1)) >= 0`` on ``[0, m]``;
* monotonicity of ``f(k) = b_{k,n} - k^2/n`` on ``[ceil(sqrt(3n/2)), n-1]``.

All comparisons are done in log2 scale (margins are bits).  Point checks use
MPFR interval arithmetic with adaptive precision; full sweeps first run a
certified float64 screen (see :mod:`binenv.kernels`) and escalate only the
cells the screen cannot decide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels
from .errors import CapabilityError, DomainError
from .exact import binomial, log2_binomial
from .intervals import (PRECISION_CAP, PRECISION_START, Interval, certify_sign,
                        const_enclosure, log2_int)
from .kernels import tables

SCREEN_PRECISION = 53  # float64 screen; disabled when the precision cap is lower


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class BoundVerdict:
    """Certified outcome of one inequality check.

    ``margin`` encloses rhs - lhs of the checked inequality (log2 scale for
    the binomial bounds, natural scale for the proof-support grids).  HOLDS
    means the margin is certified nonnegative (strictly positive, or exactly
    zero for non-strict checks decided symbolically), FAILS means certified
    negative, INCONCLUSIVE means the precision cap was hit.
    """
    status: Verdict
    margin: Interval
    precision_used: int
    witness: tuple[int, int] | None = None

    @property
    def holds(self) -> bool:
        return self.status is Verdict.HOLDS


@dataclass
class SweepReport:
    """Aggregated result of a (n, k) grid sweep."""
    target: str
    n_min: int
    n_max: int
    checked: int
    failures: list[tuple[int, int]] = field(default_factory=list)
    inconclusive: list[tuple[int, int]] = field(default_factory=list)
    min_margin: Interval | None = None
    argmin: tuple[int, int] | None = None

    @property
    def all_hold(self) -> bool:
        return not self.failures and not self.inconclusive


def _verdict(margin_fn: Callable[[int], Interval], precision_start: int,
             precision_cap: int, witness: tuple[int, int] | None = None) -> BoundVerdict:
    sign, iv, p = certify_sign(margin_fn, precision_start, precision_cap)
    if sign is None:
        status = Verdict.INCONCLUSIVE
    elif sign < 0:
        status = Verdict.FAILS
    else:
        status = Verdict.HOLDS
    return BoundVerdict(status, iv, p, witness)


# -- the central bound ---------------------------------------------------------

def theorem_rhs_log2(n: int, k: int, precision: int = PRECISION_START) -> Interval:
    """Enclosure of ``n - log2(pi*n/2)/2 + (23/(18n) - (2k-n)^2/(2n)) * log2 e``."""
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"require 1 <= n and 0 <= k <= n, got n={n}, k={k}")
    l2e = const_enclosure("log2_e", precision)
    l2pi = const_enclosure("pi", precision + 4).log2()
    gauss = Fraction(23, 18 * n) - Fraction((2 * k - n) ** 2, 2 * n)
    return (Interval.from_int(n, precision)
            - (l2pi + log2_int(n, precision) - 1) * Fraction(1, 2)
            + l2e * gauss)


def lemma_rhs_log2(n: int, k: int, precision: int = PRECISION_START) -> Interval:
    """Enclosure of ``2n - log2(pi*n)/2 + (23/(36n) - k^2/n) * log2 e``."""
    if n < 1 or abs(k) > n:
        raise DomainError(f"require 1 <= n and |k| <= n, got n={n}, k={k}")
    l2e = const_enclosure("log2_e", precision)
    l2pi = const_enclosure("pi", precision + 4).log2()
    gauss = Fraction(23, 36 * n) - Fraction(k * k, n)
    return (Interval.from_int(2 * n, precision)
            - (l2pi + log2_int(n, precision)) * Fraction(1, 2)
            + l2e * gauss)


def check_theorem(n: int, k: int, precision_start: int = PRECISION_START,
                  precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified check of the central bound at one (n, k)."""
    def margin(p: int) -> Interval:
        return theorem_rhs_log2(n, k, p) - log2_binomial(n, k, p)
    return _verdict(margin, precision_start, precision_cap, witness=(n, k))


def check_lemma(n: int, k: int, precision_start: int = PRECISION_START,
                precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified check of the even-row bound ``C(2n, n+k) <= envelope`` at one (n, k)."""
    def margin(p: int) -> Interval:
        return lemma_rhs_log2(n, k, p) - log2_binomial(2 * n, n + abs(k), p)
    return _verdict(margin, precision_start, precision_cap, witness=(n, k))


# -- classical reference bounds -------------------------------------------------

@dataclass(frozen=True)
class ClassicalBounds:
    """log2-scale enclosures of the two classical bound pairs.

    ``ratio``: (n/k)^k <= C(n,k) <= (en/k)^k for 1 <= k <= n.
    ``entropy``: 2^{nH2(k/n)}/sqrt(8k(1-k/n)) <= C(n,k) <=
    2^{nH2(k/n)}/sqrt(2 pi k(1-k/n)) for 1 <= k <= n-1 (fields are None at k = n).
    """
    ratio_lower: Interval
    ratio_upper: Interval
    entropy_lower: Interval | None
    entropy_upper: Interval | None


def classical_bounds(n: int, k: int, precision: int = PRECISION_START) -> ClassicalBounds:
    if n < 1 or k < 1 or k > n:
        raise DomainError(f"classical bounds require 1 <= k <= n, got n={n}, k={k}")
    l2n = log2_int(n, precision)
    l2k = log2_int(k, precision)
    l2e = const_enclosure("log2_e", precision)
    ratio_lower = (l2n - l2k) * k
    ratio_upper = (l2e + l2n - l2k) * k
    if k == n:
        return ClassicalBounds(ratio_lower, ratio_upper, None, None)
    l2nk = log2_int(n - k, precision)
    # n*H2(k/n) = k(log2 n - log2 k) + (n-k)(log2 n - log2(n-k))
    entropy = (l2n - l2k) * k + (l2n - l2nk) * (n - k)
    # log2 of (8 or 2pi) * k * (n-k) / n
    l2pi = const_enclosure("pi", precision + 4).log2()
    common = l2k + l2nk - l2n
    entropy_lower = entropy - (common + 3) * Fraction(1, 2)
    entropy_upper = entropy - (common + l2pi + 1) * Fraction(1, 2)
    return ClassicalBounds(ratio_lower, ratio_upper, entropy_lower, entropy_upper)


# -- proof-support inequalities --------------------------------------------------

def _ln_int(value: int, precision: int) -> Interval:
    return log2_int(value, precision) * const_enclosure("ln2", precision)


def _b_interval(n: int, k: int, precision: int) -> Interval:
    """Enclosure of b_{k,n} (natural-log scale)."""
    ln_n = _ln_int(n, precision)
    la = _ln_int(n + k, precision) - ln_n
    lb = _ln_int(n - k, precision) - ln_n if k < n else None
    if lb is None:
        raise DomainError("b_{k,n} needs k < n")
    return la * Fraction(2 * n + 2 * k + 1, 2) + lb * Fraction(2 * n - 2 * k + 1, 2)


def check_b_inequality(n: int, k: int, precision_start: int = PRECISION_START,
                       precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified ``b_{k,n} - k^2/n + 3/(4n) > 0`` for n >= 3, 0 <= k <= n-1."""
    if n < 3 or k < 0 or k >= n:
        raise DomainError(f"require n >= 3 and 0 <= k < n, got n={n}, k={k}")
    shift = Fraction(3, 4 * n) - Fraction(k * k, n)

    def margin(p: int) -> Interval:
        return _b_interval(n, k, p) + shift
    return _verdict(margin, precision_start, precision_cap, witness=(n, k))


def check_t_nonneg(m: int, k: int, precision_start: int = PRECISION_START,
                   precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified ``t(k) >= 0`` at an integer grid point, 0 <= k <= m."""
    if m < 1 or k < 0 or k > m:
        raise DomainError(f"require m >= 1 and 0 <= k <= m, got m={m}, k={k}")
    rational = Fraction(2 * m * m - m - 2 * k * k, 2 * m * (2 * m - 1))

    def margin(p: int) -> Interval:
        return _ln_int(2 * m - k, p) - _ln_int(m, p) - rational
    return _verdict(margin, precision_start, precision_cap, witness=(m, k))


def check_t_at_min(m: int, precision_start: int = PRECISION_START,
                   precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified ``t(k0) > 0`` at the real minimizer ``k0 = m - sqrt(m/2)``.

    Uses the closed form ``t(k0) = ln(1 + 1/sqrt(2m)) - 1/(1 + sqrt(2m))``.
    """
    if m < 1:
        raise DomainError(f"require m >= 1, got m={m}")

    def margin(p: int) -> Interval:
        root = Interval.from_int(2 * m, p).sqrt()
        return (1 + 1 / root).log() - 1 / (root + 1)
    return _verdict(margin, precision_start, precision_cap, witness=(m, 0))


def f_monotone_grid(n: int) -> range:
    """Integer grid ``[ceil(sqrt(3n/2)), n-2]`` of left endpoints for f steps."""
    lo = math.isqrt(3 * n // 2)
    while 2 * lo * lo < 3 * n:  # smallest integer with 2*lo^2 >= 3n, i.e. lo >= sqrt(3n/2)
        lo += 1
    return range(lo, n - 1)


def check_f_monotone(n: int, precision_start: int = PRECISION_START,
                     precision_cap: int = PRECISION_CAP) -> BoundVerdict:
    """Certified ``f(k+1) > f(k)`` on the integer grid (vacuous HOLDS when empty)."""
    if n < 3:
        raise DomainError(f"require n >= 3, got n={n}")
    grid = f_monotone_grid(n)
    if len(grid) == 0:
        return BoundVerdict(Verdict.HOLDS, Interval.from_int(0, precision_start),
                            precision_start, witness=(n, -1))
    worst: BoundVerdict | None = None
    for k in grid:
        def margin(p: int, k: int = k) -> Interval:
            return (_b_interval(n, k + 1, p) - _b_interval(n, k, p)
                    - Fraction(2 * k + 1, n))
        v = _verdict(margin, precision_start, precision_cap, witness=(n, k))
        if not v.holds:
            return v
        if worst is None or v.margin.lo < worst.margin.lo:
            worst = v
    return worst


# -- grid sweeps -----------------------------------------------------------------

def _screen_enabled(precision_cap: int) -> bool:
    return precision_cap >= SCREEN_PRECISION


class _MinTracker:
    """Deterministic running (margin.lo, witness) minimum."""

    def __init__(self):
        self.lo = math.inf
        self.witness: tuple[int, int] | None = None

    def offer(self, lo: float, witness: tuple[int, int]) -> None:
        if lo < self.lo:
            self.lo = lo
            self.witness = witness


def _finalize_report(report: SweepReport, tracker: _MinTracker,
                     recompute: Callable[[int, int], BoundVerdict]) -> SweepReport:
    if tracker.witness is not None:
        v = recompute(*tracker.witness)
        report.min_margin = v.margin
        report.argmin = tracker.witness
    return report


def sweep(n_min: int, n_max: int, target: str = "theorem",
          precision_start: int = PRECISION_START, precision_cap: int = PRECISION_CAP,
          kernel_backend: str | None = None,
          row_sink: Callable[[int, np.ndarray, np.ndarray, np.ndarray, np.ndarray,
                              np.ndarray, np.ndarray, list], None] | None = None,
          ) -> SweepReport:
    """Certified sweep of the central bound (``theorem``) or even-row bound (``lemma``).

    ``theorem`` covers k = 0..n for n = n_min..n_max; ``lemma`` covers
    |k| <= n (margins are symmetric in k, computed for k >= 0).  ``row_sink``,
    when given, receives per-row enclosure arrays for streaming CSV output.
    """
    if target not in ("theorem", "lemma"):
        raise DomainError(f"unknown sweep target {target!r}")
    if not 1 <= n_min <= n_max:
        raise DomainError(f"require 1 <= n_min <= n_max, got {n_min}..{n_max}")
    if n_max > 1_000_000:
        raise CapabilityError("sweep capped at n_max <= 1e6 (table memory)")
    is_theorem = target == "theorem"
    point_check = check_theorem if is_theorem else check_lemma
    report = SweepReport(target, n_min, n_max, checked=0)
    tracker = _MinTracker()

    if not _screen_enabled(precision_cap):
        for n in range(n_min, n_max + 1):
            for k in range(0, n + 1):
                v = point_check(n, k, precision_start, precision_cap)
                _record_point(report, tracker, v, n, k, mirror=not is_theorem)
        return _finalize_report(report, tracker,
                                lambda n, k: point_check(n, k, precision_start, precision_cap))

    backend = kernels.get_backend(kernel_backend)
    table_size = n_max + 1 if is_theorem else 2 * n_max + 1
    l2lo, l2hi = tables.log2_table(table_size)
    l2pi_lo, l2pi_hi = tables.constant_pair("log2_pi")
    l2e_lo, l2e_hi = tables.constant_pair("log2_e")
    row_fn = backend.theorem_row if is_theorem else backend.lemma_row

    for n in range(n_min, n_max + 1):
        lhs_lo, lhs_hi, rhs_lo, rhs_hi = row_fn(
            n, l2lo, l2hi, l2pi_lo, l2pi_hi, l2e_lo, l2e_hi)
        m_lo = np.nextafter(rhs_lo - lhs_hi, -np.inf)
        m_hi = np.nextafter(rhs_hi - lhs_lo, np.inf)
        report.checked += len(m_lo) if is_theorem else 2 * len(m_lo) - 1
        undecided = np.flatnonzero(m_lo <= 0.0)
        statuses: list = [Verdict.HOLDS] * len(m_lo)
        for k in undecided:
            v = point_check(n, int(k), precision_start, precision_cap)
            statuses[int(k)] = v.status
            _record_point(report, tracker, v, n, int(k), mirror=not is_theorem,
                          count=False)
        j = int(np.argmin(m_lo))
        tracker.offer(float(m_lo[j]), (n, j))
        if row_sink is not None:
            row_sink(n, lhs_lo, lhs_hi, rhs_lo, rhs_hi, m_lo, m_hi, statuses)
    return _finalize_report(report, tracker,
                            lambda n, k: point_check(n, k, precision_start, precision_cap))


def _record_point(report: SweepReport, tracker: _MinTracker, v: BoundVerdict,
                  n: int, k: int, mirror: bool, count: bool = True) -> None:
    if count:
        report.checked += 1 if (not mirror or k == 0) else 2
        tracker.offer(float(v.margin.lo), (n, k))
    if v.status is Verdict.FAILS:
        report.failures.append((n, k))
        if mirror and k != 0:
            report.failures.append((n, -k))
    elif v.status is Verdict.INCONCLUSIVE:
        report.inconclusive.append((n, k))
        if mirror and k != 0:
            report.inconclusive.append((n, -k))


def sweep_b(n_min: int, n_max: int, precision_start: int = PRECISION_START,
            precision_cap: int = PRECISION_CAP,
            kernel_backend: str | None = None) -> SweepReport:
    """Sweep of the b-inequality over n = n_min..n_max, k = 0..n-1."""
    if not 3 <= n_min <= n_max:
        raise DomainError(f"require 3 <= n_min <= n_max, got {n_min}..{n_max}")
    report = SweepReport("b_inequality", n_min, n_max, checked=0)
    tracker = _MinTracker()
    if not _screen_enabled(precision_cap):
        for n in range(n_min, n_max + 1):
            for k in range(0, n):
                v = check_b_inequality(n, k, precision_start, precision_cap)
                _record_point(report, tracker, v, n, k, mirror=False)
        return _finalize_report(
            report, tracker,
            lambda n, k: check_b_inequality(n, k, precision_start, precision_cap))
    backend = kernels.get_backend(kernel_backend)
    lnlo, lnhi = tables.ln_table(2 * n_max)
    for n in range(n_min, n_max + 1):
        m_lo, m_hi = backend.b_row(n, lnlo, lnhi)
        report.checked += len(m_lo)
        for k in np.flatnonzero(m_lo <= 0.0):
            v = check_b_inequality(n, int(k), precision_start, precision_cap)
            _record_point(report, tracker, v, n, int(k), mirror=False, count=False)
        j = int(np.argmin(m_lo))
        tracker.offer(float(m_lo[j]), (n, j))
    return _finalize_report(
        report, tracker,
        lambda n, k: check_b_inequality(n, k, precision_start, precision_cap))


def sweep_f(n_min: int, n_max: int, precision_start: int = PRECISION_START,
            precision_cap: int = PRECISION_CAP,
            kernel_backend: str | None = None) -> SweepReport:
    """Sweep of the f-monotonicity steps over n = n_min..n_max."""
    if not 3 <= n_min <= n_max:
        raise DomainError(f"require 3 <= n_min <= n_max, got {n_min}..{n_max}")
    report = SweepReport("f_monotone", n_min, n_max, checked=0)
    tracker = _MinTracker()
    use_screen = _screen_enabled(precision_cap)
    backend = kernels.get_backend(kernel_backend) if use_screen else None
    if use_screen:
        lnlo, lnhi = tables.ln_table(2 * n_max)
    for n in range(n_min, n_max + 1):
        grid = f_monotone_grid(n)
        if len(grid) == 0:
            continue
        if use_screen:
            m_lo, m_hi = backend.f_row(n, grid.start, grid.stop - 1, lnlo, lnhi)
            report.checked += len(m_lo)
            for i in np.flatnonzero(m_lo <= 0.0):
                k = grid.start + int(i)
                def margin(p: int, k: int = k) -> Interval:
                    return (_b_interval(n, k + 1, p) - _b_interval(n, k, p)
                            - Fraction(2 * k + 1, n))
                v = _verdict(margin, precision_start, precision_cap, witness=(n, k))
                _record_point(report, tracker, v, n, k, mirror=False, count=False)
            j = int(np.argmin(m_lo))
            tracker.offer(float(m_lo[j]), (n, grid.start + j))
        else:
            v = check_f_monotone(n, precision_start, precision_cap)
            report.checked += len(grid)
            if v.status is Verdict.FAILS:
                report.failures.append(v.witness)
            elif v.status is Verdict.INCONCLUSIVE:
                report.inconclusive.append(v.witness)
            tracker.offer(float(v.margin.lo), v.witness)

    def recompute(n: int, k: int) -> BoundVerdict:
        def margin(p: int) -> Interval:
            return (_b_interval(n, k + 1, p) - _b_interval(n, k, p)
                    - Fraction(2 * k + 1, n))
        return _verdict(margin, precision_start, precision_cap, witness=(n, k))
    return _finalize_report(report, tracker, recompute)


def sweep_t(m_min: int, m_max: int, precision_start: int = PRECISION_START,
            precision_cap: int = PRECISION_CAP,
            kernel_backend: str | None = None) -> SweepReport:
    """Sweep of ``t(k) >= 0`` over m = m_min..m_max, k = 0..m."""
    if not 1 <= m_min <= m_max:
        raise DomainError(f"require 1 <= m_min <= m_max, got {m_min}..{m_max}")
    report = SweepReport("t_nonneg", m_min, m_max, checked=0)
    tracker = _MinTracker()
    if not _screen_enabled(precision_cap) or m_max > kernels.EXACT_GRID_LIMIT:
        for m in range(m_min, m_max + 1):
            for k in range(0, m + 1):
                v = check_t_nonneg(m, k, precision_start, precision_cap)
                _record_point(report, tracker, v, m, k, mirror=False)
        return _finalize_report(
            report, tracker,
            lambda m, k: check_t_nonneg(m, k, precision_start, precision_cap))
    backend = kernels.get_backend(kernel_backend)
    lnlo, lnhi = tables.ln_table(2 * m_max)
    n_fail, n_undec, min_lo, hi_at, argmin = backend.t_sweep(m_min, m_max, lnlo, lnhi)
    report.checked = sum(m + 1 for m in range(m_min, m_max + 1))
    for i in np.flatnonzero((n_fail + n_undec) > 0):
        m = m_min + int(i)
        m_lo, m_hi = backend.t_row(m, lnlo, lnhi)
        for k in np.flatnonzero(m_lo <= 0.0):
            v = check_t_nonneg(m, int(k), precision_start, precision_cap)
            _record_point(report, tracker, v, m, int(k), mirror=False, count=False)
    i = int(np.argmin(min_lo))
    tracker.offer(float(min_lo[i]), (m_min + i, int(argmin[i])))
    return _finalize_report(
        report, tracker,
        lambda m, k: check_t_nonneg(m, k, precision_start, precision_cap))
