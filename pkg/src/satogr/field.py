"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values, which are
already kept in lowest terms with a positive denominator.  Prime-field
scalars are :class:`Fp` instances.  A :class:`Field` descriptor converts,
parses and formats scalars and is what matrices carry around.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from numbers import Integral

from .errors import FieldMismatchError, InvalidModulusError

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Fp:
    """Residue class modulo a prime ``p``.

    Instances are immutable.  Integers coerce into the field; mixing two
    moduli, or a residue with a :class:`~fractions.Fraction`, raises
    :class:`~satogr.errors.FieldMismatchError`.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def __reduce__(self):
        return (Fp, (self.value, self.p))

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) and GF({other.p}) do not mix")
            return other.value
        if isinstance(other, Integral):
            return int(other) % self.p
        raise FieldMismatchError(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * Fp(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, Integral):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Descriptor of an exact field: conversion, parsing and formatting."""

    name: str
    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, token):
        raise NotImplementedError

    def format(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    __str__ = __repr__


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Fp):
            raise FieldMismatchError(f"GF({x.p}) element is not rational")
        if isinstance(x, Integral):
            return Fraction(int(x))
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot convert {type(x).__name__} to Q")

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def parse(self, token) -> Fraction:
        """Read ``"a/b"``, ``"a"`` or an integer."""
        if isinstance(token, bool) or isinstance(token, float):
            raise ValueError(f"not an exact rational: {token!r}")
        if isinstance(token, Integral):
            return Fraction(int(token))
        if not isinstance(token, str) or not re.fullmatch(r"\s*-?\d+(\s*/\s*-?\d+)?\s*", token):
            raise ValueError(f"not a rational literal: {token!r}")
        num, _, den = token.replace(" ", "").partition("/")
        return Fraction(int(num), int(den) if den else 1)

    def format(self, x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, Integral) or not 2 <= p < MAX_MODULUS or not is_prime(int(p)):
            raise InvalidModulusError(f"GF(p) needs a prime p < 2^31, got {p!r}")
        self.p = int(p)
        self.characteristic = self.p
        self.name = f"GF({self.p})"

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) element is not in {self.name}")
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise FieldMismatchError(f"rational {x} is not in {self.name}")
            return Fp(x.numerator, self.p)
        if isinstance(x, Integral):
            return Fp(int(x), self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot convert {type(x).__name__} to {self.name}")

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def parse(self, token) -> Fp:
        if isinstance(token, bool):
            raise ValueError(f"not a residue: {token!r}")
        if isinstance(token, Integral):
            return Fp(int(token), self.p)
        if isinstance(token, str) and re.fullmatch(r"\s*-?\d+\s*", token):
            return Fp(int(token), self.p)
        raise ValueError(f"not a residue literal: {token!r}")

    def format(self, x: Fp) -> int:
        return x.value

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """``"Q"`` or ``"GF(p)"`` (``"GF7"`` and ``"F7"`` are accepted too)."""
    text = name.strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF|F)\(?(\d+)\)?", text, flags=re.IGNORECASE)
    if m is None:
        raise ValueError(f"unknown field {name!r}; use 'Q' or 'GF(p)'")
    return GF(int(m.group(1)))


def field_of(x) -> Field | None:
    if isinstance(x, Fp):
        return GF(x.p)
    if isinstance(x, Fraction):
        return QQ
    return None
