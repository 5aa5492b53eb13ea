"""Binary extension fields GF(2^m) in the polynomial basis.

Elements are plain ``int`` bitmasks (bit ``k`` is the coefficient of ``x^k``)
so hot loops can work on raw values through a :class:`GF2m` instance; the
:class:`GFElement` wrapper offers operator syntax for everything else.

Each degree uses one fixed modulus, the numerically smallest primitive
polynomial of that degree, so every table and every report is
bit-reproducible.  F4 is ``GF2m(2)`` with ``omega = x``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import DivisionByZero, FieldMismatch

# Smallest primitive polynomial of each degree (bit k = coefficient of x^k).
MODULI: dict[int, int] = {
    1: 0b11,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
}

_TABLE_LIMIT = 16


class GF2m:
    """The field with ``2**m`` elements; values are ints in ``[0, 2**m)``."""

    def __init__(self, m: int) -> None:
        if m not in MODULI:
            raise ValueError(f"no modulus registered for degree {m}")
        self.degree = m
        self.modulus = MODULI[m]
        self.size = 1 << m
        self.order = self.size - 1
        exp = [0] * (2 * self.order + 2)
        log = [0] * self.size
        x = 1
        for k in range(self.order):
            exp[k] = x
            log[x] = k
            x <<= 1
            if x >> m:
                x ^= self.modulus
        for k in range(self.order, len(exp)):
            exp[k] = exp[k - self.order]
        self._exp = exp
        self._log = log
        self._omega: int | None = None
        if m % 2 == 0:
            self._omega = exp[self.order // 3]

    # -- raw arithmetic on ints -------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        return self._exp[self.order - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if not b:
            raise DivisionByZero("division by zero")
        if not a:
            return 0
        return self._exp[self._log[a] + self.order - self._log[b]]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if not a:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return self._exp[(self._log[a] * e) % self.order]

    def sqrt(self, a: int) -> int:
        """Inverse Frobenius: the unique ``r`` with ``r*r == a``."""
        if not a:
            return 0
        lg = self._log[a]
        half = lg // 2 if lg % 2 == 0 else (lg + self.order) // 2
        return self._exp[half]

    def log(self, a: int) -> int:
        if not a:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self.order]

    # -- F4 embedding -----------------------------------------------------
    @property
    def has_f4(self) -> bool:
        return self._omega is not None

    @property
    def omega(self) -> int:
        """Image of the F4 generator; only for even degree."""
        if self._omega is None:
            raise FieldMismatch(f"GF(2^{self.degree}) does not contain F4")
        return self._omega

    def from_f4(self, c: int) -> int:
        """Embed an F4 value (``c0 + 2*c1`` meaning ``c0 + c1*omega``)."""
        if c < 2:
            return c
        w = self.omega
        return w if c == 2 else w ^ 1

    def to_f4(self, a: int) -> int:
        """Inverse of :meth:`from_f4`; raises if ``a`` is outside F4."""
        if a < 2:
            return a
        w = self.omega
        if a == w:
            return 2
        if a == w ^ 1:
            return 3
        raise FieldMismatch(f"{a} is not in the F4 subfield")

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def __call__(self, value: int) -> "GFElement":
        return GFElement(self, value)

    def __repr__(self) -> str:
        return f"GF2m({self.degree})"

    def __reduce__(self):
        return (field, (self.degree,))


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    """Shared field instance for degree ``m``."""
    return GF2m(m)


class GFElement:
    """An element of a specific :class:`GF2m`, with operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, fld: GF2m, value: int) -> None:
        if not 0 <= value < fld.size:
            raise ValueError(f"{value} out of range for {fld!r}")
        self.field = fld
        self.value = value

    def _check(self, other: "GFElement") -> None:
        if other.field.degree != self.field.degree:
            raise FieldMismatch(
                f"GF(2^{self.field.degree}) vs GF(2^{other.field.degree})"
            )

    def __add__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int) -> "GFElement":
        return GFElement(self.field, self.field.pow(self.value, e))

    def __neg__(self) -> "GFElement":
        return self

    def inverse(self) -> "GFElement":
        return GFElement(self.field, self.field.inv(self.value))

    def sqrt(self) -> "GFElement":
        return GFElement(self.field, self.field.sqrt(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.field.degree == other.field.degree and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field.degree, self.value))

    def __repr__(self) -> str:
        return f"GF(2^{self.field.degree})({self.value:#x})"


def gf_arith(op: str, a: GFElement, b: GFElement | None = None) -> GFElement:
    """Dispatch ``add``, ``mul`` or ``inv`` on field elements."""
    if op == "add":
        assert b is not None
        return a + b
    if op == "mul":
        assert b is not None
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


F4 = field(2)
OMEGA = F4(2)
OMEGA_BAR = F4(3)
