"""Exact scalar arithmetic over Q and over prime fields GF(p).

A Scalar is either a ``fractions.Fraction`` (always reduced, positive
denominator) or a :class:`PrimeFieldElement`.  Both are immutable, compare
structurally, and support the arithmetic operators; plain ``int`` operands
are lifted into the field, but rationals and prime-field elements never mix
(:class:`~ratherm.errors.MixedFields`).

Zero tests are done by truthiness (``if x:``), which both scalar kinds
support; ``PrimeFieldElement`` deliberately does not compare equal to raw
ints because residue classes contain many of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import (
    CharacteristicTooSmall,
    DivisionByZero,
    InvalidInput,
    MixedFields,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


@dataclass(frozen=True, slots=True)
class PrimeFieldElement:
    """Residue modulo a prime.  Immutable; mixed moduli raise MixedFields."""

    residue: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidInput(f"modulus {self.p} is not prime")
        object.__setattr__(self, "residue", self.residue % self.p)

    def _lift(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise MixedFields(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if isinstance(other, Fraction):
            raise MixedFields(f"GF({self.p}) vs rational")
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + o.residue, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - o.residue, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o.residue - self.residue, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * o.residue, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElement(pow(self.residue, e, self.p), self.p)

    def inverse(self) -> "PrimeFieldElement":
        if not self.residue:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return PrimeFieldElement(pow(self.residue, -1, self.p), self.p)

    def __bool__(self):
        return self.residue != 0

    def __str__(self):
        return f"{self.residue} mod {self.p}"


Scalar = Union[Fraction, PrimeFieldElement]


@dataclass(frozen=True, slots=True)
class FieldConfig:
    """The active field: Q when ``p`` is None, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise InvalidInput(f"field modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldConfig":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldConfig":
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> Scalar:
        return self.from_int(0)

    @property
    def one(self) -> Scalar:
        return self.from_int(1)

    def from_int(self, n: int) -> Scalar:
        if self.p is None:
            return Fraction(n)
        return PrimeFieldElement(n, self.p)

    def from_fraction(self, fr: Fraction) -> Scalar:
        if self.p is None:
            return fr
        if fr.denominator % self.p == 0:
            raise DivisionByZero(
                f"denominator {fr.denominator} not invertible in GF({self.p})"
            )
        return PrimeFieldElement(fr.numerator, self.p) / PrimeFieldElement(
            fr.denominator, self.p
        )

    def contains(self, x: Scalar) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, PrimeFieldElement) and x.p == self.p

    def coerce(self, x) -> Scalar:
        """Lift an int / Fraction / same-field Scalar into this field."""
        if isinstance(x, int):
            return self.from_int(x)
        if self.contains(x):
            return x
        if self.p is None and isinstance(x, Fraction):
            return x
        if self.p is not None and isinstance(x, Fraction):
            raise MixedFields(f"rational {x} used in GF({self.p})")
        raise MixedFields(f"{x!r} does not belong to {self}")

    def require_characteristic(self, n_vec) -> None:
        """Characteristic 0 or p >= max multiplicity; else error."""
        if self.p is not None and self.p < max(n_vec):
            raise CharacteristicTooSmall(
                f"GF({self.p}) too small for multiplicities {tuple(n_vec)}"
            )

    # JSON forms: rationals "p/q" or "p"; prime elements {"residue": r, "p": p}.
    def format_scalar(self, x: Scalar):
        if self.p is None:
            return str(x)
        return {"residue": x.residue, "p": x.p}

    def parse_scalar(self, obj) -> Scalar:
        if self.p is None:
            if isinstance(obj, int):
                return Fraction(obj)
            if isinstance(obj, str):
                try:
                    return Fraction(obj)
                except (ValueError, ZeroDivisionError) as exc:
                    raise InvalidInput(f"bad rational literal {obj!r}") from exc
            raise InvalidInput(f"bad rational value {obj!r}")
        if isinstance(obj, int):
            return PrimeFieldElement(obj, self.p)
        if isinstance(obj, dict) and set(obj) == {"residue", "p"}:
            if obj["p"] != self.p:
                raise InvalidInput(f"residue mod {obj['p']} in a GF({self.p}) document")
            return PrimeFieldElement(obj["residue"], self.p)
        raise InvalidInput(f"bad GF({self.p}) value {obj!r}")

    def to_json(self):
        return "Q" if self.p is None else {"p": self.p}

    @classmethod
    def from_json(cls, obj) -> "FieldConfig":
        if obj == "Q":
            return cls.rationals()
        if isinstance(obj, dict) and set(obj) == {"p"} and isinstance(obj["p"], int):
            return cls.prime(obj["p"])
        raise InvalidInput(f"bad field descriptor {obj!r}")

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"


RATIONALS = FieldConfig.rationals()


def infer_field(scalars) -> FieldConfig:
    """FieldConfig of the first non-int scalar; Q when all are ints."""
    for x in scalars:
        if isinstance(x, PrimeFieldElement):
            return FieldConfig.prime(x.p)
        if isinstance(x, Fraction):
            return RATIONALS
    return RATIONALS


def _check_pair(a: Scalar, b: Scalar) -> None:
    ok_a = isinstance(a, (Fraction, PrimeFieldElement))
    ok_b = isinstance(b, (Fraction, PrimeFieldElement))
    if not (ok_a and ok_b):
        raise MixedFields(f"not scalars: {a!r}, {b!r}")
    if isinstance(a, Fraction) != isinstance(b, Fraction):
        raise MixedFields(f"cannot mix {a!r} and {b!r}")
    if isinstance(a, PrimeFieldElement) and a.p != b.p:
        raise MixedFields(f"GF({a.p}) vs GF({b.p})")


def add(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    if not b:
        raise DivisionByZero("scalar division by zero")
    return a / b


def pochhammer(j: int, t: int, field: FieldConfig = RATIONALS) -> Scalar:
    """Falling factorial (j)_t = j(j-1)...(j-t+1); (j)_0 = 1, 0 when t > j."""
    if j < 0 or t < 0:
        raise InvalidInput("pochhammer arguments must be nonnegative")
    return field.from_int(math.perm(j, t) if t <= j else 0)


def binomial(k: int, j: int, field: FieldConfig = RATIONALS) -> Scalar:
    """Binomial coefficient as a Scalar; zero when j > k."""
    if k < 0 or j < 0:
        raise InvalidInput("binomial arguments must be nonnegative")
    return field.from_int(math.comb(k, j))
