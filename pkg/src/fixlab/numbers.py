"""Exact rational parsing and rendering."""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

def to_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be decimals (``"0.85"`` is 85/100) or ``"p/q"``.  Binary
    floats are refused, since ``0.1`` as a float is not one tenth.
    """
    if isinstance(value, bool):
        raise DomainError(f"expected a rational, got bool {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"non-finite decimal {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse {value!r} as an exact rational") from exc
    if isinstance(value, float):
        raise DomainError(
            f"binary float {value!r} is not accepted; pass a string such as {repr(str(value))}"
        )
    raise DomainError(f"expected a rational, got {type(value).__name__}")


def _two_five_exponents(d: int) -> tuple[int, int, int]:
    a = b = 0
    while d % 2 == 0:
        d //= 2
        a += 1
    while d % 5 == 0:
        d //= 5
        b += 1
    return a, b, d


def is_terminating(q: Fraction) -> bool:
    return _two_five_exponents(q.denominator)[2] == 1


def format_rational(q: Fraction) -> str:
    """Render ``q`` as a terminating decimal when possible, else ``p/q``.

    Integers keep one fractional digit (``0.0``, ``1.0``) so orbit tables
    read the same way as hand-written ones.
    """
    q = Fraction(q)
    a, b, rest = _two_five_exponents(q.denominator)
    if rest != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(a, b)
    n = q.numerator * 10**k // q.denominator
    sign = "-" if n < 0 else ""
    digits = str(abs(n))
    if k == 0:
        return f"{sign}{digits}.0"
    digits = digits.rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"
