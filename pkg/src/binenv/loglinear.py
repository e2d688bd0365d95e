"""Exact numbers of the form ``a + c*log2(m)`` (rational ``a``, ``c``; positive ``m``).

Tuned bound coefficients such as ``14/3 - log2 7`` live in this class.  The
internal representation is fully factored::

    value = a + sum_p  coeff[p] * log2(p)      (p odd prime, coeff rational)

Powers of two inside ``m`` fold into the rational part (``log2 2 = 1``), so
only odd primes remain.  Because ``{1} U {log2 p : p odd prime}`` is linearly
independent over the rationals (unique factorization), *exact* equality and
zero tests are decidable: a value is zero iff every coefficient is zero.
Sign queries for nonzero values are decided by interval evaluation at
escalating precision.

The factored form is closed under addition, subtraction and rational
scaling, which is what the coefficient-tuning algebra needs (``gamma =
alpha + beta/M`` must hold exactly).  The canonical public view ``(a, c, m)``
is recovered on demand; ``m`` is an integer whenever the term exponents allow
it and a reduced positive fraction otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

import gmpy2

from .errors import DomainError
from .exact import factorize
from .intervals import Interval, certify_sign, log2_int, PRECISION_CAP, PRECISION_START

_RationalLike = int | Fraction


def _as_fraction(x: _RationalLike) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LogLinearNumber:
    """Exact ``a + c*log2(m)`` value."""

    __slots__ = ("_a", "_terms")

    def __init__(self, a: _RationalLike = 0, c: _RationalLike = 0, m: _RationalLike = 1):
        a = _as_fraction(a)
        c = _as_fraction(c)
        if isinstance(m, Fraction):
            m_num, m_den = m.numerator, m.denominator
        else:
            m_num, m_den = int(m), 1
        if m_num <= 0:
            raise DomainError(f"log2 argument must be positive, got {m}")
        terms: dict[int, Fraction] = {}
        if c != 0 and (m_num, m_den) != (1, 1):
            for p, e in factorize(m_num).items():
                _accumulate(terms, p, c * e)
            for p, e in factorize(m_den).items():
                _accumulate(terms, p, -c * e)
        # fold log2(2) = 1 into the rational part
        two = terms.pop(2, None)
        if two is not None:
            a += two
        self._a = a
        self._terms = terms

    @classmethod
    def _from_parts(cls, a: Fraction, terms: dict[int, Fraction]) -> "LogLinearNumber":
        self = cls.__new__(cls)
        self._a = a
        self._terms = {p: c for p, c in terms.items() if c != 0}
        two = self._terms.pop(2, None)
        if two is not None:
            self._a = self._a + two
        return self

    @classmethod
    def from_rational(cls, a: _RationalLike) -> "LogLinearNumber":
        return cls._from_parts(_as_fraction(a), {})

    @classmethod
    def log2_of_factored(cls, factorization: dict[int, int],
                         scale: _RationalLike = 1) -> "LogLinearNumber":
        """``scale * log2(prod p**e)`` from an explicit prime factorization."""
        s = _as_fraction(scale)
        return cls._from_parts(Fraction(0), {p: s * e for p, e in factorization.items()})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._a == 0 and not self._terms

    @property
    def is_rational(self) -> bool:
        return not self._terms

    @property
    def rational_value(self) -> Fraction:
        if self._terms:
            raise DomainError(f"{self} is irrational")
        return self._a

    def canonical(self) -> tuple[Fraction, Fraction, Fraction]:
        """Canonical ``(a, c, m)`` with ``m`` a reduced positive fraction > 1.

        ``c = 0`` and ``m = 1`` when the value is rational.  The exponents
        ``coeff[p]/c`` are integers with no common factor, making the form
        unique up to the sign convention ``m > 1``.
        """
        if not self._terms:
            return self._a, Fraction(0), Fraction(1)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        g = Fraction(math.gcd(*nums), math.lcm(*dens))
        m_num, m_den = 1, 1
        for p, c in self._terms.items():
            e = c / g
            assert e.denominator == 1
            e = e.numerator
            if e > 0:
                m_num *= p ** e
            else:
                m_den *= p ** (-e)
        if m_num < m_den:  # flip sign so that m > 1
            g = -g
            m_num, m_den = m_den, m_num
        return self._a, g, Fraction(m_num, m_den)

    @property
    def a(self) -> Fraction:
        return self.canonical()[0]

    @property
    def c(self) -> Fraction:
        return self.canonical()[1]

    @property
    def m(self) -> Fraction:
        return self.canonical()[2]

    def __repr__(self) -> str:
        if self.is_rational:
            return f"LogLinearNumber({self._a})"
        a, c, m = self.canonical()
        return f"LogLinearNumber({a} + {c}*log2({m}))"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LogLinearNumber.from_rational(other)
        if not isinstance(other, LogLinearNumber):
            return NotImplemented
        return self._a == other._a and self._terms == other._terms

    def __hash__(self):
        return hash((self._a, tuple(sorted(self._terms.items()))))

    # -- exact algebra ---------------------------------------------------------

    def __add__(self, other) -> "LogLinearNumber":
        if isinstance(other, (int, Fraction)):
            return LogLinearNumber._from_parts(self._a + other, dict(self._terms))
        if not isinstance(other, LogLinearNumber):
            return NotImplemented
        terms = dict(self._terms)
        for p, c in other._terms.items():
            _accumulate(terms, p, c)
        return LogLinearNumber._from_parts(self._a + other._a, terms)

    __radd__ = __add__

    def __neg__(self) -> "LogLinearNumber":
        return LogLinearNumber._from_parts(-self._a, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other) -> "LogLinearNumber":
        return self + (-other if isinstance(other, LogLinearNumber) else -_as_fraction(other))

    def __rsub__(self, other) -> "LogLinearNumber":
        return (-self) + other

    def __mul__(self, scalar) -> "LogLinearNumber":
        s = _as_fraction(scalar)
        if s == 0:
            return LogLinearNumber.from_rational(0)
        return LogLinearNumber._from_parts(self._a * s, {p: c * s for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LogLinearNumber":
        return self * (Fraction(1) / _as_fraction(scalar))

    # -- certified numerics -----------------------------------------------------

    def enclosure(self, precision: int) -> Interval:
        """Enclosure of the value with width <= 2**(-precision)."""
        target = gmpy2.mpfr(2) ** (-precision)  # exact power of two
        work = precision + 8
        while True:
            iv = Interval.from_fraction(self._a, work)
            for p, coeff in sorted(self._terms.items()):
                iv = iv + log2_int(p, work) * coeff
            if iv.width() <= target:
                return iv
            work *= 2

    def sign(self, precision_start: int = PRECISION_START,
             precision_cap: int = PRECISION_CAP) -> int:
        """Exact sign (-1, 0, +1); zero is decided symbolically."""
        if self.is_zero:
            return 0
        sign, iv, _ = certify_sign(self.enclosure, precision_start, precision_cap)
        if sign is None or sign == 0:
            raise DomainError(
                f"nonzero log-linear value not separated from zero at cap: {self} in {iv}")
        return sign

    def compare(self, other) -> int:
        """Exact three-way comparison with another exact value."""
        if isinstance(other, (int, Fraction)):
            other = LogLinearNumber.from_rational(other)
        return (self - other).sign()

    def json_dict(self) -> dict:
        """Flat JSON form: numerators/denominators of (a, c) plus m."""
        a, c, m = self.canonical()
        return {
            "a_num": a.numerator, "a_den": a.denominator,
            "c_num": c.numerator, "c_den": c.denominator,
            "m": m.numerator if m.denominator == 1 else f"{m.numerator}/{m.denominator}",
        }


def _accumulate(terms: dict[int, Fraction], p: int, delta: Fraction) -> None:
    c = terms.get(p, Fraction(0)) + delta
    if c == 0:
        terms.pop(p, None)
    else:
        terms[p] = c


def eval_loglinear(x: LogLinearNumber, precision: int) -> Interval:
    """Certified enclosure of a log-linear value (width <= 2**(-precision))."""
    return x.enclosure(precision)


def sum_loglinear(values: Iterable[LogLinearNumber]) -> LogLinearNumber:
    total = LogLinearNumber.from_rational(0)
    for v in values:
        total = total + v
    return total
