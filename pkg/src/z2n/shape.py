"""Graded dimensions ``p|q_1,...,q_N``."""

from __future__ import annotations

from typing import Iterable, Sequence

from .degree import Degree, enumerate_degrees
from .errors import DimensionError, Z2nError


class GradedShape(tuple):
    """Counts ``(q_0, q_1, ..., q_N)`` per degree index, with ``q_0 = p``.

    The length must be a power of two ``2**n`` with ``n >= 1``.
    """

    def __new__(cls, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        size = len(counts)
        if size < 2 or size & (size - 1):
            raise DimensionError(f"a graded shape needs 2**n entries (n >= 1), got {size}")
        if any(c < 0 for c in counts):
            raise Z2nError(f"negative count in shape {counts}")
        return super().__new__(cls, counts)

    @classmethod
    def parse(cls, text: str) -> "GradedShape":
        """Read ``p|q1,...,qN``, e.g. ``1|1,1,1``."""
        text = text.strip()
        if text.count("|") != 1:
            raise Z2nError(f"shape must look like p|q1,...,qN: {text!r}")
        head, tail = text.split("|")
        try:
            counts = [int(head)] + [int(c) for c in tail.split(",")]
        except ValueError:
            raise Z2nError(f"shape must look like p|q1,...,qN: {text!r}") from None
        return cls(counts)

    @classmethod
    def zero(cls, n: int) -> "GradedShape":
        return cls((0,) * 2**n)

    @property
    def n(self) -> int:
        return len(self).bit_length() - 1

    @property
    def p(self) -> int:
        return self[0]

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for c in self:
            out.append(acc)
            acc += c
        return tuple(out)

    def slots(self) -> list[tuple[int, int]]:
        """Coordinate slots ``(degree index, position within the degree)`` in canonical order."""
        return [(i, k) for i, c in enumerate(self) for k in range(c)]

    def slot_degrees(self) -> list[int]:
        return [i for i, c in enumerate(self) for _ in range(c)]

    def degree(self, i: int) -> Degree:
        return enumerate_degrees(self.n)[i]

    def __add__(self, other):
        """Coordinate concatenation (product of Cartesian domains)."""
        if len(self) != len(other):
            raise DimensionError(f"shapes {self} and {other} have different n")
        return GradedShape(a + b for a, b in zip(self, other))

    def __str__(self):
        return f"{self[0]}|" + ",".join(str(c) for c in self[1:])

    def __repr__(self):
        return f"GradedShape('{self}')"


def as_shape(value: GradedShape | Sequence[int] | str) -> GradedShape:
    if isinstance(value, GradedShape):
        return value
    if isinstance(value, str):
        return GradedShape.parse(value)
    return GradedShape(value)
