"""Exact coefficient rings: the integers, the rationals and Z/nZ.

Every other module stores coefficients as *raw* Python values (``int`` or
``Fraction``) already normalized by a :class:`RingSpec`; :class:`RingElem`
is the boxed form used at API boundaries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Raw = Union[int, Fraction]

INTEGERS = "integers"
RATIONALS = "rationals"
INTEGERS_MOD = "integers_mod"


class RingMismatchError(ValueError):
    """Raised when combining values from different coefficient rings."""


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, INTEGERS_MOD):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD:
            if self.modulus < 2:
                raise ValueError("Z/nZ needs n >= 2")
        elif self.modulus != 0:
            raise ValueError("modulus only applies to Z/nZ")

    # construction helpers

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``z``, ``q`` or ``zmod:<n>``."""
        t = text.strip().lower()
        if t == "z":
            return ZZ
        if t == "q":
            return QQ
        if t.startswith("zmod:"):
            try:
                n = int(t[5:])
            except ValueError:
                raise ValueError(f"bad modulus in ring string {text!r}") from None
            return cls(INTEGERS_MOD, n)
        raise ValueError(f"unknown ring string {text!r}")

    def __str__(self):
        if self.kind == INTEGERS:
            return "z"
        if self.kind == RATIONALS:
            return "q"
        return f"zmod:{self.modulus}"

    # raw-value arithmetic

    def normalize(self, x) -> Raw:
        if isinstance(x, RingElem):
            if x.ring != self:
                raise RingMismatchError(f"{x.ring} value used in {self}")
            return x.value
        if self.kind == INTEGERS:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            return int(x)
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                num = x.numerator % self.modulus
                inv = pow(x.denominator, -1, self.modulus)
                return num * inv % self.modulus
            x = x.numerator
        return int(x) % self.modulus

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.kind == RATIONALS else 1

    def is_unit_value(self, v: Raw) -> bool:
        if self.kind == INTEGERS:
            return v in (1, -1)
        if self.kind == RATIONALS:
            return v != 0
        return math.gcd(int(v), self.modulus) == 1

    def element(self, x) -> "RingElem":
        return RingElem(self, self.normalize(x))

    def format(self, v: Raw) -> str:
        if isinstance(v, Fraction) and v.denominator == 1:
            return str(v.numerator)
        return str(v)


ZZ = RingSpec(INTEGERS)
QQ = RingSpec(RATIONALS)


def zmod(n: int) -> RingSpec:
    return RingSpec(INTEGERS_MOD, n)


@dataclass(frozen=True)
class RingElem:
    ring: RingSpec
    value: Raw

    def _check(self, other) -> "RingElem":
        if not isinstance(other, RingElem):
            return self.ring.element(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElem(self.ring, self.ring.normalize(self.value + other.value))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, self.ring.normalize(-self.value))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return RingElem(self.ring, self.ring.normalize(self.value * other.value))

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ring.format(self.value)


def add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def is_unit(x: RingElem) -> bool:
    return x.ring.is_unit_value(x.value)
