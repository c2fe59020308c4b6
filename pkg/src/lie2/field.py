"""Arithmetic in GF(2^k) for 1 <= k <= 16.

Elements are plain integers ``0 <= v < 2**k`` whose bits are the
coefficients of a polynomial residue modulo a fixed irreducible modulus.
Vectorised operations act on numpy integer arrays of such values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Union

import numpy as np

# Exponent lists of the fixed moduli; k=1 uses x itself.
MODULI: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 4, 3, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 6, 5, 3, 2, 1, 0),
    11: (11, 2, 0),
    12: (12, 7, 6, 5, 3, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 7, 5, 3, 0),
    15: (15, 5, 4, 2, 0),
    16: (16, 5, 3, 2, 0),
}


class FieldError(ValueError):
    """Raised for invalid field parameters or illegal operations."""


def _poly_mulmod(a: int, b: int, modulus: int, k: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= modulus
    return result


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    k = modulus.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if _poly_mod(modulus, p) == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(2^k) with a hard-coded irreducible modulus."""

    k: int
    modulus: int
    _tables: tuple = dc_field(default=(), compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def dtype(self):
        return np.uint8 if self.k <= 8 else np.uint16

    @property
    def exp(self) -> np.ndarray:
        return self._tables[0]

    @property
    def log(self) -> np.ndarray:
        return self._tables[1]

    # -- enumeration -------------------------------------------------------
    def elements(self) -> list[int]:
        return list(range(self.q))

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.q))

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= int(a) < self.q:
            raise FieldError(f"{a!r} is not an element of GF(2^{self.k})")
        return int(a)

    # -- scalar arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(a) ^ int(b)

    def mul(self, a: int, b: int) -> int:
        a, b = int(a), int(b)
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise FieldError("inversion of zero")
        if self.q == 2:
            return 1
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def sqrt(self, a: int) -> int:
        """Inverse Frobenius: ``a ** (2 ** (k - 1))``."""
        return self.pow(a, 1 << (self.k - 1))

    # -- vectorised arithmetic --------------------------------------------
    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if self.k == 1:
            return (a & b).astype(self.dtype)
        la = self.log[a].astype(np.int32)
        lb = self.log[b].astype(np.int32)
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out).astype(self.dtype)

    def sq_arr(self, a) -> np.ndarray:
        return self.mul_arr(a, a)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise FieldError("inversion of zero")
        if self.k == 1:
            return a.astype(self.dtype)
        return self.exp[(-self.log[a].astype(np.int32)) % (self.q - 1)].astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def asarray(self, a) -> np.ndarray:
        arr = np.asarray(a)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise FieldError(f"entries out of range for GF(2^{self.k})")
        return arr.astype(self.dtype)

    # -- parsing / printing -----------------------------------------------
    def parse(self, text: Union[str, int]) -> int:
        """Parse ``"0"``, ``"1"``, ``"w"``, ``"w+1"``, ``"w^2"``, ``"w^3+w"`` ...

        ``w`` is the class of x modulo the field modulus. A bare integer is
        read as the bit-vector encoding.
        """
        if isinstance(text, (int, np.integer)):
            return self.check(text)
        s = text.replace(" ", "")
        if re.fullmatch(r"\d+", s):
            return self.check(int(s))
        if not s:
            raise FieldError("empty field element")
        value = 0
        for term in s.split("+"):
            m = re.fullmatch(r"(?:(w)(?:\^(\d+))?|(\d+))", term)
            if not m:
                raise FieldError(f"cannot parse field element {text!r}")
            if m.group(3) is not None:
                value ^= int(m.group(3)) & 1
            else:
                e = int(m.group(2)) if m.group(2) else 1
                value ^= self.pow(self.gen, e)
        return value

    @property
    def gen(self) -> int:
        """The residue class of x (equal to 1 when k = 1)."""
        return 2 if self.k > 1 else 1

    def format(self, a: int) -> str:
        a = int(a)
        if a < 2:
            return str(a)
        terms = []
        for e in range(self.k - 1, -1, -1):
            if a >> e & 1:
                terms.append("1" if e == 0 else ("w" if e == 1 else f"w^{e}"))
        return "+".join(terms)


@lru_cache(maxsize=None)
def field_make(k: int) -> FieldSpec:
    """Return GF(2^k) with its fixed modulus."""
    if not isinstance(k, int) or not 1 <= k <= 16:
        raise FieldError(f"extension degree must satisfy 1 <= k <= 16, got {k!r}")
    modulus = sum(1 << e for e in MODULI[k])
    if not is_irreducible(modulus):  # pragma: no cover - table is fixed
        raise FieldError(f"modulus for k={k} is reducible")
    q = 1 << k
    # Find a generator of the multiplicative group; the moduli need not be primitive.
    exp = np.zeros(2 * q, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    for g in range(1, q):
        x, seen = 1, 0
        for i in range(q - 1):
            exp[i] = x
            x = _poly_mulmod(x, g, modulus, k) if k > 1 else x
            if x == 1:
                seen = i + 1
                break
        if seen == q - 1:
            break
    for i in range(q - 1):
        log[exp[i]] = i
    exp[q - 1 :] = exp[: q + 1]
    dt = np.uint8 if k <= 8 else np.uint16
    return FieldSpec(k, modulus, (exp[: q].astype(dt), log))


@dataclass(frozen=True)
class Scalar:
    """A field element bound to its field; supports ``+ * ** ~``-style use."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        self.field.check(self.value)

    def _other(self, b) -> int:
        if isinstance(b, Scalar):
            if b.field != self.field:
                raise FieldError("operands belong to different fields")
            return b.value
        return self.field.check(b)

    def __add__(self, b):
        return Scalar(self.field, self.value ^ self._other(b))

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, b):
        return Scalar(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def sqrt(self) -> "Scalar":
        return Scalar(self.field, self.field.sqrt(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Scalar({self.field.format(self.value)} in GF(2^{self.field.k}))"


def arith(op: str, a: Scalar, b=None) -> Scalar:
    """Dispatch ``add``, ``mul``, ``inv`` or ``pow`` on scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise FieldError(f"unknown operation {op!r}")


def frobenius_sqrt(a: Scalar) -> Scalar:
    return a.sqrt()
