"""Exact arithmetic on rational combinations of square roots.

A :class:`RadicalNumber` is a finite sum ``c1*sqrt(k1) + c2*sqrt(k2) + ...``
with rational ``ci`` and distinct square-free ``ki >= 1`` (``k = 1`` is the
rational part).  Products of square-free radicands never need factoring:
with ``g = gcd(m, n)`` we have ``sqrt(m)*sqrt(n) = g*sqrt((m/g)*(n/g))`` and
the cofactor is again square-free.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "RadicalNumber",
    "rad_add",
    "rad_mul",
    "rad_to_float",
    "sqrt_rational",
    "square_free_split",
    "is_square_free",
]


@lru_cache(maxsize=4096)
def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n == s*s*t`` and ``t`` square-free.

    >>> square_free_split(20)
    (2, 5)
    >>> square_free_split(72)
    (6, 2)
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    s, t = 1, 1
    rest = n
    d = 2
    while d * d <= rest:
        k = 0
        while rest % d == 0:
            rest //= d
            k += 1
        s *= d ** (k // 2)
        if k % 2:
            t *= d
        d += 1 if d == 2 else 2
    return s, t * rest


def is_square_free(n: int) -> bool:
    return n >= 1 and square_free_split(n)[0] == 1


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class RadicalNumber:
    """Immutable exact value ``sum(coef * sqrt(radicand))``.

    Construct from a mapping ``{radicand: coefficient}``; non-square-free
    radicands are reduced and zero coefficients dropped, so equal values
    always have equal term maps.

    >>> RadicalNumber({2: 2, 5: 1}) + RadicalNumber({2: 1, 5: -1})
    RadicalNumber('3*sqrt(2)')
    >>> RadicalNumber.sqrt(2) * RadicalNumber.sqrt(10)
    RadicalNumber('2*sqrt(5)')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict[int, Fraction] = {}
        for k, c in dict(terms or {}).items():
            k = int(k)
            c = _as_fraction(c)
            if k < 1:
                raise ValueError(f"radicand must be a positive integer, got {k}")
            s, t = square_free_split(k)
            acc[t] = acc.get(t, Fraction(0)) + c * s
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _from_canonical(cls, items) -> RadicalNumber:
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((k, c) for k, c in items if c != 0))
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value) -> RadicalNumber:
        return cls._from_canonical([(1, _as_fraction(value))])

    @classmethod
    def sqrt(cls, n: int) -> RadicalNumber:
        """``sqrt(n)`` for a nonnegative integer ``n``."""
        return sqrt_rational(n)

    @classmethod
    def coerce(cls, value) -> RadicalNumber:
        if isinstance(value, RadicalNumber):
            return value
        return cls.rational(value)

    @property
    def terms(self) -> dict[int, Fraction]:
        """Canonical term map, radicand -> coefficient (a fresh copy)."""
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == 1 for k, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = RadicalNumber.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return RadicalNumber._from_canonical(acc.items())

    __radd__ = __add__

    def __neg__(self):
        return RadicalNumber._from_canonical((k, -c) for k, c in self._terms)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = RadicalNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = RadicalNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = RadicalNumber.coerce(other)
        except TypeError:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for m, a in self._terms:
            for n, b in other._terms:
                g = math.gcd(m, n)
                k = (m // g) * (n // g)
                acc[k] = acc.get(k, Fraction(0)) + a * b * g
        return RadicalNumber._from_canonical(acc.items())

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational or a single-term radical."""
        try:
            other = RadicalNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def reciprocal(self) -> RadicalNumber:
        """Exact inverse of a nonzero monomial ``c*sqrt(k)`` (= ``sqrt(k)/(c*k)``)."""
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        if not self.is_monomial():
            raise ValueError(f"no exact reciprocal for multi-term value {self}")
        (k, c), = self._terms
        return RadicalNumber._from_canonical([(k, 1 / (c * k))])

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.reciprocal()
        result = RadicalNumber.rational(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # comparison / conversion ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RadicalNumber):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == RadicalNumber.rational(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __float__(self):
        return rad_to_float(self)

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"RadicalNumber({render(self)!r})"


def rad_add(a: RadicalNumber, b: RadicalNumber) -> RadicalNumber:
    return a + b


def rad_mul(a: RadicalNumber, b: RadicalNumber) -> RadicalNumber:
    return a * b


def rad_to_float(a: RadicalNumber) -> float:
    """Float value, summed in ascending radicand order."""
    total = 0.0
    for k, c in a._terms:
        total += float(c) if k == 1 else float(c) * math.sqrt(k)
    return total


def sqrt_rational(value) -> RadicalNumber:
    """Exact square root of a nonnegative rational.

    ``sqrt(a/b) = sqrt(a*b)/b``, then the square part of ``a*b`` is pulled out.
    """
    r = _as_fraction(value)
    if r < 0:
        raise ValueError(f"square root of negative rational {r}")
    if r == 0:
        return RadicalNumber()
    s, t = square_free_split(r.numerator * r.denominator)
    return RadicalNumber._from_canonical([(t, Fraction(s, r.denominator))])


def _render_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(a: RadicalNumber) -> str:
    """Text form ``c1*sqrt(k1) + c2*sqrt(k2)``, ascending radicand.

    >>> render(RadicalNumber({1: 4, 2: 15, 5: -10}))
    '4 + 15*sqrt(2) - 10*sqrt(5)'
    """
    if a.is_zero():
        return "0"
    parts = []
    for i, (k, c) in enumerate(a._terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 1:
            body = _render_fraction(mag)
        elif mag == 1:
            body = f"sqrt({k})"
        else:
            body = f"{_render_fraction(mag)}*sqrt({k})"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
