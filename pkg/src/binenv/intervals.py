"""Certified interval arithmetic on dyadic (MPFR) endpoints.

An :class:`Interval` is a pair ``lo <= hi`` of MPFR numbers, i.e. dyadic
rationals ``mantissa * 2**exponent``, together with the working precision in
bits.  Every constructor and operation rounds outward (``RoundDown`` for the
lower endpoint, ``RoundUp`` for the upper), so the exact real value of the
expression the interval was built from is always contained in ``[lo, hi]``.

Two gmpy2 facts this module relies on (exercised by the test suite):

* context operations with ``mpz`` operands use the exact integer value and
  round once in the context direction;
* ``mpq`` operands are *not* exact (gmpy2 rounds them to context precision
  first), so rationals are converted here via exact ``mpfr`` construction at
  full bit length followed by a single directed division.

Endpoint comparisons between ``mpfr`` and ``int``/``mpq`` values are exact in
gmpy2, which is what makes containment assertions cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import gmpy2
from gmpy2 import mpfr, mpz

from .errors import DomainError, PrecisionError

PRECISION_START = 64
PRECISION_CAP = 4096

_CONTEXTS: dict[int, tuple[gmpy2.context, gmpy2.context]] = {}


def _ctx(precision: int) -> tuple[gmpy2.context, gmpy2.context]:
    """Return cached (round-down, round-up) contexts at ``precision`` bits."""
    pair = _CONTEXTS.get(precision)
    if pair is None:
        if precision < 2:
            raise DomainError(f"precision must be >= 2 bits, got {precision}")
        pair = (
            gmpy2.context(precision=precision, round=gmpy2.RoundDown),
            gmpy2.context(precision=precision, round=gmpy2.RoundUp),
        )
        _CONTEXTS[precision] = pair
    return pair


def _exact_mpfr(value: int) -> mpfr:
    """Lossless mpfr holding the integer ``value`` (precision = bit length)."""
    z = mpz(value)
    bits = max(2, z.bit_length())
    return mpfr(z, precision=bits)


class Interval:
    """Enclosure ``[lo, hi]`` of a real number, endpoints at ``precision`` bits."""

    __slots__ = ("lo", "hi", "precision")

    def __init__(self, lo: mpfr, hi: mpfr, precision: int):
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi) or lo > hi:
            raise DomainError(f"invalid interval endpoints [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.precision = precision

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, value: int, precision: int) -> "Interval":
        dn, up = _ctx(precision)
        x = _exact_mpfr(value)
        return cls(dn.plus(x), up.plus(x), precision)

    @classmethod
    def from_fraction(cls, value, precision: int) -> "Interval":
        """Enclosure of an exact rational (Fraction, int or mpq)."""
        if isinstance(value, int):
            return cls.from_int(value, precision)
        num, den = value.numerator, value.denominator
        if den == 1:
            return cls.from_int(num, precision)
        dn, up = _ctx(precision)
        a, b = _exact_mpfr(num), _exact_mpfr(den)
        return cls(dn.div(a, b), up.div(a, b), precision)

    @classmethod
    def point(cls, value: mpfr, precision: int) -> "Interval":
        return cls(value, value, precision)

    # -- queries -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Interval([{self.lo}, {self.hi}], precision={self.precision})"

    def width(self) -> mpfr:
        _, up = _ctx(self.precision)
        return up.sub(self.hi, self.lo)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, value) -> bool:
        """Exact containment test for int/Fraction/mpfr values."""
        if isinstance(value, Fraction):
            value = gmpy2.mpq(value.numerator, value.denominator)
        return self.lo <= value <= self.hi

    def midpoint(self) -> mpfr:
        dn, _ = _ctx(self.precision + 1)
        return dn.div(dn.add(self.lo, self.hi), 2)

    def decimal(self, digits: int = 20) -> str:
        """Decimal rendering of the midpoint with ``digits`` significant digits."""
        return f"{self.midpoint():.{digits}g}"

    def __float__(self) -> float:
        return float(self.midpoint())

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.from_fraction(other, self.precision)
        raise TypeError(f"cannot mix Interval with {type(other).__name__}")

    def __add__(self, other) -> "Interval":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        dn, up = _ctx(p)
        return Interval(dn.add(self.lo, o.lo), up.add(self.hi, o.hi), p)

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        dn, up = _ctx(p)
        return Interval(dn.sub(self.lo, o.hi), up.sub(self.hi, o.lo), p)

    def __rsub__(self, other) -> "Interval":
        return self._coerce(other).__sub__(self)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.precision)

    def __mul__(self, other) -> "Interval":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        dn, up = _ctx(p)
        cands = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.mul(a, b) for a, b in cands)
        hi = max(up.mul(a, b) for a, b in cands)
        return Interval(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError(f"division by interval containing zero: {o}")
        p = max(self.precision, o.precision)
        dn, up = _ctx(p)
        cands = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.div(a, b) for a, b in cands)
        hi = max(up.div(a, b) for a, b in cands)
        return Interval(lo, hi, p)

    def __rtruediv__(self, other) -> "Interval":
        return self._coerce(other).__truediv__(self)

    # -- elementary functions (monotone, endpoint-wise) ----------------------

    def exp(self) -> "Interval":
        dn, up = _ctx(self.precision)
        return Interval(dn.exp(self.lo), up.exp(self.hi), self.precision)

    def exp2(self) -> "Interval":
        dn, up = _ctx(self.precision)
        return Interval(dn.exp2(self.lo), up.exp2(self.hi), self.precision)

    def log(self) -> "Interval":
        if self.lo <= 0:
            raise DomainError(f"log of interval touching (-inf, 0]: {self}")
        dn, up = _ctx(self.precision)
        return Interval(dn.log(self.lo), up.log(self.hi), self.precision)

    def log2(self) -> "Interval":
        if self.lo <= 0:
            raise DomainError(f"log2 of interval touching (-inf, 0]: {self}")
        dn, up = _ctx(self.precision)
        return Interval(dn.log2(self.lo), up.log2(self.hi), self.precision)

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise DomainError(f"sqrt of partially negative interval: {self}")
        dn, up = _ctx(self.precision)
        return Interval(dn.sqrt(self.lo), up.sqrt(self.hi), self.precision)

    def pow_int(self, exponent: int) -> "Interval":
        """Integer power of a nonnegative-based interval (monotone case)."""
        if exponent < 0:
            return (Interval.from_int(1, self.precision)) / self.pow_int(-exponent)
        if exponent == 0:
            return Interval.from_int(1, self.precision)
        if self.lo < 0:
            raise DomainError("pow_int requires a nonnegative interval base")
        dn, up = _ctx(self.precision)
        e = mpz(exponent)
        return Interval(dn.pow(self.lo, e), up.pow(self.hi, e), self.precision)


# -- named constants ---------------------------------------------------------

_CONSTANT_NAMES = ("pi", "e", "log2_e", "ln2")


def const_enclosure(name: str, precision: int) -> Interval:
    """Enclosure of a named constant with width <= 2**(-precision).

    Supported names: ``pi``, ``e``, ``log2_e``, ``ln2``.  Enclosures refine
    monotonically: the interval at a higher precision is nested inside the
    one at any lower precision.
    """
    if name not in _CONSTANT_NAMES:
        raise DomainError(f"unknown constant {name!r}; expected one of {_CONSTANT_NAMES}")
    work = precision + 4
    dn, up = _ctx(work)
    if name == "pi":
        iv = Interval(dn.const_pi(), up.const_pi(), work)
    elif name == "e":
        one = mpfr(1, precision=2)
        iv = Interval(dn.exp(one), up.exp(one), work)
    elif name == "ln2":
        iv = Interval(dn.const_log2(), up.const_log2(), work)
    else:  # log2_e = 1/ln2
        l2 = Interval(dn.const_log2(), up.const_log2(), work)
        iv = Interval.from_int(1, work) / l2
    assert iv.width() <= mpfr(2) ** (-precision)
    return iv


def log2_int(value: int, precision: int) -> Interval:
    """Enclosure of ``log2(value)`` for a positive integer, width <= 2**(-precision).

    Exact point interval when ``value`` is a power of two.
    """
    if value <= 0:
        raise DomainError(f"log2 of non-positive integer {value}")
    z = mpz(value)
    if (z & (z - 1)) == 0:
        e = _exact_mpfr(z.bit_length() - 1)
        return Interval(e, e, precision)
    work = precision + max(z.bit_length().bit_length(), 1) + 2
    dn, up = _ctx(work)
    return Interval(dn.log2(z), up.log2(z), work)


# -- certified sign decisions -------------------------------------------------

def certify_sign(
    evaluate: Callable[[int], Interval],
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> tuple[int | None, Interval, int]:
    """Decide the sign of a real number given by an interval evaluator.

    ``evaluate(p)`` must return an enclosure of the same fixed real number at
    working precision ``p``.  The precision is doubled until the enclosure
    excludes zero or the cap is reached.  Returns ``(sign, interval,
    precision_used)`` where ``sign`` is +1, -1, or ``None`` when undecided at
    the cap (the caller decides whether that is an error or a verdict).
    """
    if precision_start > precision_cap:
        raise DomainError("precision_start exceeds precision_cap")
    p = precision_start
    while True:
        iv = evaluate(p)
        if iv.strictly_positive():
            return 1, iv, p
        if iv.strictly_negative():
            return -1, iv, p
        if iv.is_point():  # exact zero, no amount of precision will help
            return 0, iv, p
        if p >= precision_cap:
            return None, iv, p
        p = min(2 * p, precision_cap)


def require_sign(evaluate: Callable[[int], Interval], start: int = PRECISION_START,
                 cap: int = PRECISION_CAP) -> int:
    """Like :func:`certify_sign` but raises :class:`PrecisionError` if undecided."""
    sign, iv, p = certify_sign(evaluate, start, cap)
    if sign is None:
        raise PrecisionError(f"sign undecided at precision cap {cap}: {iv}")
    return sign
