"""The rational numbers, the bottom of every coefficient tower.

Elements are FLINT ``fmpq`` values: arbitrary precision, always reduced,
positive denominator.
"""

from fractions import Fraction

from flint import fmpq, fmpz

__all__ = ["QQ", "RationalField", "fmpq"]


class RationalField:
    name = "QQ"
    zero = fmpq(0)
    one = fmpq(1)

    def __call__(self, value):
        if isinstance(value, fmpq):
            return value
        if isinstance(value, (int, fmpz)):
            return fmpq(value)
        if isinstance(value, Fraction):
            return fmpq(value.numerator, value.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} to QQ")

    def contains(self, value):
        return isinstance(value, fmpq)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_qq, ())


def _qq():
    return QQ


QQ = RationalField()
