"""Dense matrices over Q as tuples of tuples of Fractions."""

from __future__ import annotations

from fractions import Fraction

RatMatrix = tuple  # tuple[tuple[Fraction, ...], ...]


def rat_matrix(rows) -> RatMatrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def rat_identity(size: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size))


def rat_zeros(rows: int, cols: int) -> RatMatrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def rat_matmul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)) for row in a
    )


def _eliminate(a: RatMatrix, rhs: list[list[Fraction]] | None):
    """Gauss-Jordan with exact pivots.  Returns (det, reduced rhs or None)."""
    m = [list(row) for row in a]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            if rhs is not None:
                rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(size):
            if r != col and m[r][col]:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                if rhs is not None:
                    rhs[r] = [x - f * y for x, y in zip(rhs[r], rhs[col])]
        if rhs is not None:
            rhs[col] = [x / p for x in rhs[col]]
            m[col] = [x / p for x in m[col]]
    return det, rhs


def rat_det(a: RatMatrix) -> Fraction:
    if not a:
        return Fraction(1)
    return _eliminate(a, None)[0]


def rat_inverse(a: RatMatrix) -> RatMatrix | None:
    """Exact inverse, or None when singular."""
    size = len(a)
    det, rhs = _eliminate(a, [list(row) for row in rat_identity(size)])
    if not det:
        return None
    return rat_matrix(rhs)
