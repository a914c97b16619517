"""Exact scalars over prime fields GF(p) and the rationals.

Raw representatives are plain Python objects so that arrays can hold them
cheaply: an ``int`` in ``[0, p)`` for GF(p), a :class:`fractions.Fraction`
for Q.  :class:`Scalar` wraps a representative together with its field for
callers that want operator syntax and field-mismatch checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

P_MAX = 2**31


class FieldMismatch(ValueError):
    """Operands or structures live over different fields."""


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) when ``p`` is set, Q when ``p`` is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not 2 <= self.p < P_MAX:
                raise ValueError(f"prime must satisfy 2 <= p < 2^31, got {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return f"gf{self.p}" if self.p is not None else "q"

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.p is not None else "QQ"

    # -- representatives -------------------------------------------------
    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def coerce(self, x: Any):
        """Canonical representative of an int, Fraction, Scalar or string."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} scalar used over {self!r}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def parse(self, text: str):
        text = text.strip()
        if self.p is None:
            return Fraction(text)
        if "/" in text:
            return self.coerce(Fraction(text))
        return int(text) % self.p

    def format(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    # -- arithmetic on representatives ------------------------------------
    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def mul(self, a, b):
        return a * b % self.p if self.p is not None else a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.p is not None:
            return pow(int(a), -1, self.p)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": "GF", "p": self.p} if self.p is not None else {"kind": "Q"}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = str(obj.get("kind", "")).upper()
        if kind == "GF":
            return cls(int(obj["p"]))
        if kind == "Q":
            return cls(None)
        raise ValueError(f"unknown field kind {obj!r}")

    @classmethod
    def from_name(cls, name: str) -> "FieldSpec":
        """Parse the CLI spelling ``gf<p>`` or ``q``."""
        low = name.strip().lower()
        if low in ("q", "qq", "rationals"):
            return cls(None)
        if low.startswith("gf"):
            return cls(int(low[2:]))
        raise ValueError(f"field must be gf<p> or q, got {name!r}")


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


QQ = FieldSpec(None)


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: Any

    @classmethod
    def of(cls, field: FieldSpec, x) -> "Scalar":
        return cls(field, field.coerce(x))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.field.format(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Dispatch ``add|sub|mul|div|inv|neg`` on scalars of one field."""
    if op in ("inv", "neg"):
        return a.inverse() if op == "inv" else -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
