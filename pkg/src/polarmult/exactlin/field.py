"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Coefficient field of the base ring.

    ``kind`` is ``"rational"`` or ``"prime"``; prime fields carry their
    characteristic.  Instances also do the arithmetic, so the Gröbner code never
    needs to know which field it runs over.
    """

    kind: str = "rational"
    characteristic: int | None = None
    _p: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "rational":
            if self.characteristic not in (None, 0):
                raise ValueError("the rational field has characteristic 0")
            object.__setattr__(self, "characteristic", None)
        elif self.kind == "prime":
            p = self.characteristic
            if not isinstance(p, int) or not is_prime(p):
                raise ValueError(f"characteristic {p!r} is not a prime")
            object.__setattr__(self, "_p", p)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldDescriptor:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldDescriptor:
        return cls("prime", p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __call__(self, x):
        """Coerce an int or Fraction into the field."""
        if self._p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self._p) % self._p
            return int(x) % self._p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def add(self, a, b):
        if self._p:
            return (a + b) % self._p
        return a + b

    def sub(self, a, b):
        if self._p:
            return (a - b) % self._p
        return a - b

    def mul(self, a, b):
        if self._p:
            return a * b % self._p
        return a * b

    def neg(self, a):
        if self._p:
            return -a % self._p
        return -a

    def inv(self, a):
        if self._p:
            return pow(a, -1, self._p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if a == 1 or a == -1:
            return int(a)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self) -> dict:
        if self._p:
            return {"kind": "prime", "characteristic": self._p}
        return {"kind": "rational"}

    def __str__(self):
        return f"GF({self._p})" if self._p else "QQ"


QQ = FieldDescriptor.rational()
