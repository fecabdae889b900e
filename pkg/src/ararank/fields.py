"""Coefficient fields: the rationals, prime fields GF(p), and the four-element field."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldSpec:
    """Base class. Field elements are plain Python values (Fraction or int)."""

    characteristic: int = 0
    finite: bool = False

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        d = self.from_int(den)
        if self.is_zero(d):
            raise ZeroDivisionError(f"denominator {den} vanishes in {self}")
        return self.div(self.from_int(num), d)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def elements(self) -> Iterator:
        raise ValueError(f"{self} is infinite")

    def format(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class RationalField(FieldSpec):
    characteristic = 0
    finite = False

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, num: int, den: int) -> Fraction:
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __str__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int
    finite = True

    def __post_init__(self):
        if not (is_prime(self.p) and self.p < 2**16):
            raise ValueError(f"GF(p) needs a prime p < 65536, got {self.p}")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def size(self) -> int:
        return self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def __str__(self) -> str:
        return f"GF({self.p})"


# GF(4) = GF(2)[w]/(w^2 + w + 1); element a + b*w is encoded as the integer a | (b << 1).
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_GF4_INV = (None, 1, 3, 2)


@dataclass(frozen=True)
class Field4(FieldSpec):
    """The four-element field {0, 1, w, w+1} with w^2 = w + 1, encoded as 0, 1, 2, 3."""

    characteristic = 2
    finite = True

    PRIMITIVE = 2
    size = 4

    def from_int(self, n: int) -> int:
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return _GF4_MUL[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _GF4_INV[a]

    def elements(self) -> Iterator[int]:
        return iter(range(4))

    def format(self, a) -> str:
        return ("0", "1", "w", "w+1")[a]

    def __str__(self) -> str:
        return "GF4"


QQ = RationalField()
GF4 = Field4()


def parse_field(text: str) -> FieldSpec:
    """Parse ``QQ``, ``GF(p)`` or ``GF4``."""
    t = text.strip().replace(" ", "")
    if t in ("QQ", "Q"):
        return QQ
    if t in ("GF4", "GF(4)"):
        return GF4
    if t.startswith("GF(") and t.endswith(")"):
        body = t[3:-1]
        if body.isdigit():
            return PrimeField(int(body))
    raise ValueError(f"unknown field {text!r}; expected QQ, GF(p) or GF4")
