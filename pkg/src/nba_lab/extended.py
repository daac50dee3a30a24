"""Nonnegative rationals extended by a single point at infinity.

Measures and squared distances in this package live in [0, inf]. Finite
values are exact :class:`fractions.Fraction` objects; ``INF`` is the only
infinite value.  Arithmetic follows the usual measure-theoretic rules and
``INF - INF`` raises.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["ExtendedRational", "INF", "ZERO", "ext", "parse_rational", "format_rational"]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

RationalLike = Union[int, Fraction, str]


def parse_rational(text: str) -> Fraction:
    """Parse a ``"p/q"`` or ``"p"`` string into a Fraction.

    Floats are refused on purpose: a decimal literal has no exact meaning here.
    """
    if isinstance(text, bool) or not isinstance(text, (str, int, Fraction)):
        raise ValueError(f"expected a rational string, got {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"malformed rational {text!r} (expected 'p/q')")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(value: Fraction | int) -> str:
    """Canonical string form: ``"p/q"`` in lowest terms, ``"p"`` for integers."""
    return str(Fraction(value))


class ExtendedRational:
    """An exact value in ``[0, inf]``.

    >>> ExtendedRational(Fraction(1, 2)) + 1
    ExtendedRational('3/2')
    >>> INF - 5
    ExtendedRational('inf')
    """

    __slots__ = ("_value",)

    def __init__(self, value: RationalLike | ExtendedRational | None):
        if isinstance(value, ExtendedRational):
            self._value = value._value
            return
        if value is None:
            self._value = None
            return
        if isinstance(value, str):
            if value.strip() == "inf":
                self._value = None
                return
            value = parse_rational(value)
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise TypeError(f"cannot build an exact value from {value!r}")
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"extended rationals are nonnegative, got {value}")
        self._value = value

    # -- inspection -------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> Fraction:
        """The finite value; raises for ``INF``."""
        if self._value is None:
            raise ValueError("INF has no finite value")
        return self._value

    def __bool__(self) -> bool:
        return self._value is None or self._value != 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._value is None or other._value is None:
            return INF
        return ExtendedRational(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other._value is None:
            if self._value is None:
                raise ArithmeticError("inf - inf is undefined")
            raise ArithmeticError("finite - inf is negative")
        if self._value is None:
            return INF
        return ExtendedRational(self._value - other._value)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        # 0 * inf = 0, the convention used for integrals of simple functions.
        if self._value == 0 or other._value == 0:
            return ZERO
        if self._value is None or other._value is None:
            return INF
        return ExtendedRational(self._value * other._value)

    __rmul__ = __mul__

    # -- ordering ---------------------------------------------------------
    def _key(self):
        return (1, 0) if self._value is None else (0, self._value)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._value == other._value

    def __hash__(self):
        return hash(("ExtendedRational", self._value))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._key() < other._key()

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._key() <= other._key()

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._key() > other._key()

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._key() >= other._key()

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        return "inf" if self._value is None else format_rational(self._value)

    def __repr__(self) -> str:
        return f"ExtendedRational('{self}')"

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def from_json(cls, text: str) -> ExtendedRational:
        return cls(text)

    def __float__(self) -> float:
        return float("inf") if self._value is None else float(self._value)


def _coerce(other):
    if isinstance(other, ExtendedRational):
        return other
    if isinstance(other, bool):
        return NotImplemented
    if isinstance(other, Rational):
        if other < 0:
            return NotImplemented
        return ExtendedRational(other)
    return NotImplemented


INF = ExtendedRational(None)
ZERO = ExtendedRational(0)


def ext(value) -> ExtendedRational:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"inf"`` to ExtendedRational."""
    return value if isinstance(value, ExtendedRational) else ExtendedRational(value)


def ext_min(a: ExtendedRational, b: ExtendedRational) -> ExtendedRational:
    return a if a <= b else b
