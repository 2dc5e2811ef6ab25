"""Coefficient rings: arbitrary-precision integers and exact rationals.

Finite fields live in :mod:`mpstable.fields` and share this small interface:
``ring(x)`` coerces an integer, ``ring.zero`` / ``ring.one``, ``ring.is_unit``,
``ring.contains`` and ``ring.characteristic``.
"""

from __future__ import annotations

from fractions import Fraction


class IntegerRing:
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def inverse(self, x) -> int:
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit in ZZ")
        return x

    def __repr__(self):
        return "ZZ"


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x) -> Fraction:
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()
