"""Monomials ``c * t**d`` in the one-variable equivariant coefficient ring."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


@dataclass(frozen=True, order=False)
class GradedScalar:
    coeff: int | Fraction = 0
    degree: int = 0

    def __post_init__(self):
        if not isinstance(self.coeff, Rational):
            raise TypeError(f"coefficient must be exact, got {type(self.coeff).__name__}")
        c = _norm(self.coeff)
        object.__setattr__(self, "coeff", c)
        if c == 0:
            object.__setattr__(self, "degree", 0)
        elif self.degree < 0:
            raise ArithmeticError(f"negative degree {self.degree} for nonzero coefficient {c}")

    @classmethod
    def one(cls) -> "GradedScalar":
        return cls(1, 0)

    def __bool__(self):
        return self.coeff != 0

    @property
    def is_integral(self) -> bool:
        return isinstance(self.coeff, int)

    def _coerce(self, other):
        if isinstance(other, GradedScalar):
            return other
        if isinstance(other, Rational):
            return GradedScalar(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        if self.degree != other.degree:
            raise ArithmeticError(f"cannot add t^{self.degree} and t^{other.degree} terms")
        return GradedScalar(self.coeff + other.coeff, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return GradedScalar(-self.coeff, self.degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return GradedScalar()
        return GradedScalar(self.coeff * other.coeff, self.degree + other.degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact division; raises ``ArithmeticError`` if the quotient has negative degree."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by zero graded scalar")
        if not self:
            return GradedScalar()
        return GradedScalar(Fraction(self.coeff) / other.coeff, self.degree - other.degree)

    def __str__(self):
        c = self.coeff
        if not c or self.degree == 0:
            return str(c)
        tpart = "t" if self.degree == 1 else f"t^{self.degree}"
        if c == 1:
            return tpart
        if c == -1:
            return "-" + tpart
        return f"{c}{tpart}" if isinstance(c, int) else f"({c}){tpart}"

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "deg": self.degree}

    @classmethod
    def from_json(cls, data: dict) -> "GradedScalar":
        return cls(Fraction(data["coeff"]), int(data["deg"]))


ZERO = GradedScalar()
ONE = GradedScalar(1, 0)
