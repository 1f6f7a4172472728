"""Exact coefficient arithmetic over Q and prime fields F_p.

All scalars are either arbitrary-precision rationals (characteristic 0)
or residues in {0, ..., p-1} (characteristic p).  No floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, InvalidArgs, MixedField

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


class FieldSpec:
    """The base field: Q when characteristic is 0, else F_p with p prime."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise InvalidArgs(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        if self.characteristic == 0:
            return "Q"
        return f"F_{self.characteristic}"

    def coeff(self, value: Scalar) -> "Coefficient":
        """Coerce an integer or rational into this field."""
        p = self.characteristic
        if p == 0:
            return Coefficient(Fraction(value), self)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
            num = value.numerator % p
            den = value.denominator % p
            return Coefficient(num * pow(den, p - 2, p) % p, self)
        return Coefficient(value % p, self)

    @property
    def zero(self) -> "Coefficient":
        return self.coeff(0)

    @property
    def one(self) -> "Coefficient":
        return self.coeff(1)

    def elements(self):
        """All field elements; only available for finite fields."""
        p = self.characteristic
        if p == 0:
            raise InvalidArgs("Q is infinite")
        return [Coefficient(v, self) for v in range(p)]


class Coefficient:
    """An exact field element together with its field."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: FieldSpec):
        self.value = value
        self.field = field

    def _check(self, other: "Coefficient"):
        if self.field != other.field:
            raise MixedField(f"cannot combine {self.field} with {other.field}")

    def _wrap(self, value) -> "Coefficient":
        p = self.field.characteristic
        return Coefficient(value % p if p else value, self.field)

    def __add__(self, other):
        self._check(other)
        return self._wrap(self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return self._wrap(self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return self._wrap(self.value * other.value)

    def __truediv__(self, other):
        self._check(other)
        if not other:
            raise DivisionByZero("division by zero coefficient")
        p = self.field.characteristic
        if p == 0:
            return Coefficient(self.value / other.value, self.field)
        return self._wrap(self.value * pow(other.value, p - 2, p))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, n: int):
        if n < 0:
            return self.field.one / self ** (-n)
        p = self.field.characteristic
        if p:
            return Coefficient(pow(self.value, n, p), self.field)
        return Coefficient(self.value ** n, self.field)

    def inverse(self) -> "Coefficient":
        return self.field.one / self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        return (
            isinstance(other, Coefficient)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return str(self.value)


def field_ops(a: Coefficient, b: Coefficient, op: str) -> Coefficient:
    """Dispatch exact field arithmetic by operation name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidArgs(f"unknown operation {op!r}")


def binom_residue(n: int, k: int, field: FieldSpec) -> Coefficient:
    """Binomial coefficient C(n, k) reduced into the field.

    In characteristic p this is computed digit-wise in base p (Lucas'
    theorem); in characteristic 0 it is the exact integer.
    """
    if k > n or k < 0 or n < 0:
        raise InvalidArgs(f"need 0 <= k <= n, got n={n}, k={k}")
    p = field.characteristic
    if p == 0:
        return field.coeff(math.comb(n, k))
    result = 1
    while n or k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return field.zero
        result = result * math.comb(nd, kd) % p
    return field.coeff(result)
