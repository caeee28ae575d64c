"""Z_2^n degrees: addition, pairing, Koszul signs and the lexicographic order.

A degree is stored as a tuple of bits.  The lexicographic position of a
degree in ``enumerate_degrees(n)`` equals the integer read off its bits, which
the rest of the package uses as the "degree index".
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import DimensionError, Z2nError


class Degree(tuple):
    """An element of Z_2^n, e.g. ``Degree((0, 1))``.

    ``+`` is the group law (componentwise mod 2), not tuple concatenation.
    """

    def __new__(cls, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if not bits:
            raise DimensionError("a degree needs n >= 1 bits")
        if any(b not in (0, 1) for b in bits):
            raise Z2nError(f"degree bits must be 0 or 1, got {bits}")
        return super().__new__(cls, bits)

    @classmethod
    def parse(cls, text: str) -> "Degree":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise Z2nError(f"not a degree bitstring: {text!r}")
        return cls(int(c) for c in text)

    @classmethod
    def zero(cls, n: int) -> "Degree":
        return cls((0,) * n)

    @classmethod
    def from_index(cls, index: int, n: int) -> "Degree":
        if not 0 <= index < 2**n:
            raise Z2nError(f"degree index {index} out of range for n={n}")
        return cls(int(c) for c in format(index, f"0{n}b"))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def index(self) -> int:
        """Position in the lexicographic enumeration."""
        return int("".join(map(str, self)), 2)

    def is_zero(self) -> bool:
        return not any(self)

    def __add__(self, other):
        _check_same_n(self, other)
        return Degree(a ^ b for a, b in zip(self, other))

    __radd__ = __add__

    def __str__(self):
        return "".join(map(str, self))

    def __repr__(self):
        return f"Degree('{self}')"


def _check_same_n(a, b):
    if len(a) != len(b):
        raise DimensionError(f"degrees {a} and {b} live in different Z_2^n")


@lru_cache(maxsize=None)
def enumerate_degrees(n: int) -> tuple[Degree, ...]:
    """All 2**n degrees in lexicographic order; index 0 is the zero degree."""
    if n < 1:
        raise DimensionError(f"ambient rank must be >= 1, got {n}")
    return tuple(Degree.from_index(i, n) for i in range(2**n))


def scalar_product(a: Degree, b: Degree) -> int:
    _check_same_n(a, b)
    return sum(x * y for x, y in zip(a, b))


def koszul_sign(a: Degree, b: Degree) -> int:
    return -1 if scalar_product(a, b) % 2 else 1


def pairing_parity(i: int, j: int) -> int:
    """Parity of the scalar product of two degrees given by their indices."""
    return bin(i & j).count("1") & 1
