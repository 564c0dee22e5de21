"""Finitely supported Laurent vectors ``sum c_a z^a`` in k((z))."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import FieldMismatchError
from .field import Field


@dataclass(frozen=True)
class LaurentVector:
    """Sparse element of k((z)): exponent -> nonzero coefficient.

    Zero coefficients are dropped at construction, so equality is
    structural.  ``e(a)`` is the basis vector ``z^a``.
    """

    field: Field
    support: tuple  # sorted ((exponent, coefficient), ...)

    @classmethod
    def from_dict(cls, field: Field, coeffs: Mapping[int, object]) -> LaurentVector:
        items = []
        for a, c in sorted(coeffs.items()):
            c = field(c)
            if c:
                items.append((int(a), c))
        return cls(field, tuple(items))

    @classmethod
    def e(cls, field: Field, a: int, c=1) -> LaurentVector:
        return cls.from_dict(field, {a: c})

    def as_dict(self) -> dict[int, object]:
        return dict(self.support)

    def __getitem__(self, a: int):
        for b, c in self.support:
            if b == a:
                return c
        return self.field.zero

    def __bool__(self):
        return bool(self.support)

    @property
    def order(self) -> int:
        """Lowest exponent with a nonzero coefficient."""
        if not self.support:
            raise ValueError("the zero vector has no order")
        return self.support[0][0]

    @property
    def degree(self) -> int:
        if not self.support:
            raise ValueError("the zero vector has no degree")
        return self.support[-1][0]

    def _same_field(self, other: LaurentVector) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} and {other.field}")

    def __add__(self, other: LaurentVector) -> LaurentVector:
        self._same_field(other)
        out = self.as_dict()
        for a, c in other.support:
            out[a] = out.get(a, self.field.zero) + c
        return LaurentVector.from_dict(self.field, out)

    def __neg__(self) -> LaurentVector:
        return LaurentVector(self.field, tuple((a, -c) for a, c in self.support))

    def __sub__(self, other: LaurentVector) -> LaurentVector:
        return self + (-other)

    def __mul__(self, other: LaurentVector) -> LaurentVector:
        """Product in k((z)); both factors finitely supported."""
        self._same_field(other)
        out: dict[int, object] = {}
        for a, c in self.support:
            for b, d in other.support:
                out[a + b] = out.get(a + b, self.field.zero) + c * d
        return LaurentVector.from_dict(self.field, out)

    def scale(self, c) -> LaurentVector:
        return LaurentVector.from_dict(self.field, {a: c * x for a, x in self.support})

    def shift(self, m: int) -> LaurentVector:
        """Multiply by ``z^m``."""
        return LaurentVector(self.field, tuple((a + m, c) for a, c in self.support))

    def truncate(self, lo: int, hi: int) -> LaurentVector:
        """Keep the exponents in ``[lo, hi)``."""
        return LaurentVector(self.field, tuple((a, c) for a, c in self.support if lo <= a < hi))

    def __str__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{c}*z^{a}" for a, c in self.support)
