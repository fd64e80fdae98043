"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Values are kept in canonical form at all times: reduced fractions with a
positive denominator, or residues in [0, p).  Equality is therefore plain
structural equality, and no floating point appears anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = ["FieldSpec", "FieldElement", "parse_scalar"]

#: Raw carrier values: Fraction for the rationals, int residue for GF(p).
Raw = Union[Fraction, int]

_SCALAR_RE = re.compile(r"(-?\d+)(?:/(\d+))?")


def _is_prime(n: int) -> bool:
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
    """The scalar domain: the rationals (``modulus is None``) or GF(modulus).

    Instances double as the raw-value arithmetic kernel used by the
    elimination engine; ``FieldElement`` is the boxed public scalar.
    """

    __slots__ = ("modulus", "zero", "one")

    def __init__(self, modulus: int | None = None):
        if modulus is not None and not _is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus
        self.zero: Raw = 0 if modulus is not None else Fraction(0)
        self.one: Raw = 1 if modulus is not None else Fraction(1)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldSpec):
            return self.modulus == other.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.modulus))

    def __repr__(self) -> str:
        return "FieldSpec(rationals)" if self.modulus is None else f"FieldSpec(gf {self.modulus})"

    # raw-value arithmetic -------------------------------------------------

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a * b
        return (a * b) % self.modulus

    def neg(self, a: Raw) -> Raw:
        if self.modulus is None:
            return -a
        return (-a) % self.modulus

    def inv(self, a: Raw) -> Raw:
        if self.modulus is None:
            if a == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / Fraction(a)
        if a % self.modulus == 0:
            raise ZeroDivisionError("division by zero")
        # Fermat: p is prime, so a^(p-2) inverts a.
        return pow(a, self.modulus - 2, self.modulus)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def coerce(self, value: "int | Fraction | FieldElement") -> Raw:
        """Bring an int, Fraction, or same-field element into canonical raw form."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError(f"element of {value.spec!r} used with {self!r}")
            return value.value
        if self.modulus is None:
            if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
                raise ValueError(f"cannot coerce {value!r} into {self!r}")
            return Fraction(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"cannot coerce {value!r} into {self!r}")
        return value % self.modulus

    def parse_raw(self, text: str) -> Raw:
        """Parse ``-?digits(/digits)?`` into a canonical raw value."""
        m = _SCALAR_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"malformed scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in scalar {text!r}")
        if self.modulus is None:
            return Fraction(num, den)
        if den % self.modulus == 0:
            raise ZeroDivisionError(f"denominator of {text!r} vanishes in {self!r}")
        return self.mul(num % self.modulus, self.inv(den % self.modulus))

    def render_raw(self, value: Raw) -> str:
        # str(Fraction) already emits the canonical "n" / "n/d" form.
        return str(value)

    def element(self, value: "int | Fraction | FieldElement") -> "FieldElement":
        return FieldElement(self, self.coerce(value))


class FieldElement:
    """A scalar paired with its field.  Immutable; arithmetic is exact."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: Raw):
        self.spec = spec
        self.value = spec.coerce(value) if isinstance(value, int) else value

    def _other_raw(self, other: object) -> Raw | None:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("field elements from different fields")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.spec.coerce(other)
        if isinstance(other, Fraction) and not self.spec.is_prime_field:
            return other
        return None

    def __add__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(b, self.value))

    def __mul__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(self.value, b))

    def __rtruediv__(self, other: object) -> "FieldElement":
        b = self._other_raw(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(b, self.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.spec.coerce(other)
        if isinstance(other, Fraction) and not self.spec.is_prime_field:
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __str__(self) -> str:
        return self.spec.render_raw(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self} over {self.spec!r})"


def parse_scalar(text: str, spec: FieldSpec) -> FieldElement:
    """Parse a scalar literal into its canonical element of ``spec``."""
    return FieldElement(spec, spec.parse_raw(text))
