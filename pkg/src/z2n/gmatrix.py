"""Graded block matrices over a truncated Grassmann algebra.

A matrix of degree ``x`` with row shape ``r|s`` and column shape ``p|q`` has
blocks ``X_ij`` of size ``s_i x q_j`` whose entries are homogeneous of degree
``gamma_i + gamma_j + x``.  Multiplication is the ordinary row-by-column
product; multiplying by a homogeneous scalar of degree ``g`` scales block row
``i`` by ``(-1)^<g, gamma_i>``.

Invertibility of a degree-0 square matrix is decided on its diagonal blocks
(their bodies must be invertible real matrices).  Inversion follows the 2x2
block formula with Schur complements, recursing over the graded blocks; the
diagonal blocks have entries in the commutative subalgebra Lambda_0, where
the adjugate formula applies.  ``invert_neumann`` is an independent route
via a finite Neumann series around the body matrix.  Truncation makes the
soul ideal nilpotent, so both are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .degree import Degree, enumerate_degrees, koszul_sign
from .errors import AlgebraMismatch, DegreeViolation, NonInvertible, ShapeMismatch, Z2nError
from .grassmann import AlgebraMorphism, AlgebraSpec, GElement, apply_morphism, body, g_invert, gmul
from .ratmat import RatMatrix, rat_det, rat_inverse, rat_matmul
from .shape import GradedShape, as_shape

Rows = list  # list[list[GElement]]


def _entry(algebra: AlgebraSpec, value) -> GElement:
    if isinstance(value, GElement):
        if value.algebra != algebra:
            raise AlgebraMismatch("matrix entry from a different algebra")
        return value
    return algebra.scalar(value)


class GMatrix:
    """An immutable graded matrix; build it with ``make_matrix`` or ``GMatrix.from_rows``."""

    __slots__ = ("algebra", "row_shape", "col_shape", "degree", "rows")

    def __init__(self, algebra, row_shape, col_shape, degree, rows, check=True):
        self.algebra = algebra
        self.row_shape = as_shape(row_shape)
        self.col_shape = as_shape(col_shape)
        self.degree = Degree(degree) if not isinstance(degree, str) else Degree.parse(degree)
        self.rows = tuple(tuple(_entry(algebra, v) for v in row) for row in rows)
        if check:
            self._validate()

    @classmethod
    def from_rows(cls, algebra, row_shape, col_shape, degree, rows) -> "GMatrix":
        return cls(algebra, row_shape, col_shape, degree, rows)

    def _validate(self):
        n = self.algebra.n
        for name, shape in (("row", self.row_shape), ("column", self.col_shape)):
            if shape.n != n:
                raise ShapeMismatch(f"{name} shape {shape} is not over Z_2^{n}")
        if self.degree.n != n:
            raise ShapeMismatch(f"degree {self.degree} is not in Z_2^{n}")
        if len(self.rows) != self.row_shape.total or any(len(r) != self.col_shape.total for r in self.rows):
            raise ShapeMismatch(
                f"entries do not form a {self.row_shape.total}x{self.col_shape.total} array"
            )
        rdeg = self.row_shape.slot_degrees()
        cdeg = self.col_shape.slot_degrees()
        x = self.degree.index
        for r, row in enumerate(self.rows):
            for c, val in enumerate(row):
                want = rdeg[r] ^ cdeg[c] ^ x
                if not val.is_homogeneous(want):
                    i, j = rdeg[r], cdeg[c]
                    raise DegreeViolation(
                        f"block ({i},{j}) entry ({r - self.row_shape.offsets[i]},"
                        f"{c - self.col_shape.offsets[j]}) = {val} is not homogeneous of degree "
                        f"{enumerate_degrees(n)[want]}"
                    )

    # structure ------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def is_square(self) -> bool:
        return self.row_shape == self.col_shape

    def entry(self, r: int, c: int) -> GElement:
        return self.rows[r][c]

    def block(self, i: int, j: int) -> list[list[GElement]]:
        ro, co = self.row_shape.offsets[i], self.col_shape.offsets[j]
        return [list(row[co : co + self.col_shape[j]]) for row in self.rows[ro : ro + self.row_shape[i]]]

    def blocks(self) -> list[list[list[list[GElement]]]]:
        size = 2**self.n
        return [[self.block(i, j) for j in range(size)] for i in range(size)]

    def map_entries(self, phi: AlgebraMorphism) -> "GMatrix":
        """Apply an algebra morphism entrywise (the matrix moves to phi's target)."""
        rows = [[apply_morphism(phi, v) for v in row] for row in self.rows]
        return GMatrix(phi.target, self.row_shape, self.col_shape, self.degree, rows)

    def truncate(self, cap: int) -> "GMatrix":
        rows = [[v.truncate(cap) for v in row] for row in self.rows]
        return GMatrix(self.algebra.with_cap(cap), self.row_shape, self.col_shape, self.degree, rows, check=False)

    # arithmetic -----------------------------------------------------------
    def _same_layout(self, other):
        if not isinstance(other, GMatrix):
            raise TypeError("expected a GMatrix")
        if other.algebra != self.algebra:
            raise AlgebraMismatch("matrices over different algebras")
        if (self.row_shape, self.col_shape, self.degree) != (other.row_shape, other.col_shape, other.degree):
            raise ShapeMismatch("matrices differ in shape or degree")

    def __add__(self, other):
        self._same_layout(other)
        rows = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        return GMatrix(self.algebra, self.row_shape, self.col_shape, self.degree, rows, check=False)

    def __neg__(self):
        rows = [[-a for a in row] for row in self.rows]
        return GMatrix(self.algebra, self.row_shape, self.col_shape, self.degree, rows, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, GMatrix):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.row_shape == other.row_shape
            and self.col_shape == other.col_shape
            and self.degree == other.degree
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.algebra, self.row_shape, self.col_shape, self.degree, self.rows))

    def __str__(self):
        from .textio import format_matrix

        return format_matrix(self)

    def __repr__(self):
        return f"GMatrix(deg={self.degree}, rows={self.row_shape}, cols={self.col_shape})"


def make_matrix(algebra: AlgebraSpec, row_shape, col_shape, degree, blocks) -> GMatrix:
    """Assemble a matrix from an (N+1)x(N+1) grid of blocks (each a list of rows)."""
    row_shape, col_shape = as_shape(row_shape), as_shape(col_shape)
    size = 2**algebra.n
    if len(blocks) != size or any(len(b) != size for b in blocks):
        raise ShapeMismatch(f"need a {size}x{size} grid of blocks")
    rows = []
    for i in range(size):
        for r in range(row_shape[i]):
            row = []
            for j in range(size):
                blk = blocks[i][j]
                if col_shape[j] == 0 or row_shape[i] == 0:
                    continue
                if len(blk) != row_shape[i] or any(len(br) != col_shape[j] for br in blk):
                    raise ShapeMismatch(f"block ({i},{j}) must be {row_shape[i]}x{col_shape[j]}")
                row.extend(blk[r])
            rows.append(row)
        for j in range(size):
            blk = blocks[i][j]
            if (row_shape[i] == 0 or col_shape[j] == 0) and any(len(br) for br in blk):
                raise ShapeMismatch(f"block ({i},{j}) must be empty")
    return GMatrix(algebra, row_shape, col_shape, degree, rows)


def identity(algebra: AlgebraSpec, shape) -> GMatrix:
    shape = as_shape(shape)
    size = shape.total
    rows = [[algebra.one() if r == c else algebra.zero() for c in range(size)] for r in range(size)]
    return GMatrix(algebra, shape, shape, Degree.zero(algebra.n), rows, check=False)


def zero_matrix(algebra: AlgebraSpec, row_shape, col_shape, degree=None) -> GMatrix:
    row_shape, col_shape = as_shape(row_shape), as_shape(col_shape)
    degree = Degree.zero(algebra.n) if degree is None else degree
    rows = [[algebra.zero()] * col_shape.total for _ in range(row_shape.total)]
    return GMatrix(algebra, row_shape, col_shape, degree, rows, check=False)


def from_real(algebra: AlgebraSpec, shape, real: RatMatrix) -> GMatrix:
    """Lift a real block-diagonal matrix to a degree-0 graded matrix."""
    shape = as_shape(shape)
    return GMatrix(algebra, shape, shape, Degree.zero(algebra.n), [[algebra.scalar(v) for v in row] for row in real])


# raw helpers on lists of rows -------------------------------------------------
def _mul_rows(a: Rows, b: Rows, algebra: AlgebraSpec) -> Rows:
    inner = len(b)
    cols = len(b[0]) if b else 0
    zero = algebra.zero()
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                x, y = row[k], b[k][j]
                if x.terms and y.terms:
                    acc = acc + gmul(x, y)
            new.append(acc)
        out.append(new)
    return out


def _add_rows(a: Rows, b: Rows) -> Rows:
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _neg_rows(a: Rows) -> Rows:
    return [[-x for x in row] for row in a]


def _real_times_rows(real: RatMatrix, b: Rows, algebra: AlgebraSpec) -> Rows:
    cols = len(b[0]) if b else 0
    out = []
    for row in real:
        new = []
        for j in range(cols):
            acc = algebra.zero()
            for k, coef in enumerate(row):
                if coef and b[k][j].terms:
                    acc = acc + b[k][j].scale(coef)
            new.append(acc)
        out.append(new)
    return out


def mat_mul(X: GMatrix, Y: GMatrix) -> GMatrix:
    if X.algebra != Y.algebra:
        raise AlgebraMismatch("matrices over different algebras")
    if X.col_shape != Y.row_shape:
        raise ShapeMismatch(f"cannot multiply {X.row_shape}x{X.col_shape} by {Y.row_shape}x{Y.col_shape}")
    rows = _mul_rows([list(r) for r in X.rows], [list(r) for r in Y.rows], X.algebra)
    return GMatrix(X.algebra, X.row_shape, Y.col_shape, X.degree + Y.degree, rows, check=False)


def scalar_mul(lam: GElement, X: GMatrix) -> GMatrix:
    """``(lam X)_ij = (-1)^<deg lam, gamma_i> lam X_ij``."""
    if lam.algebra != X.algebra:
        raise AlgebraMismatch("scalar from a different algebra")
    g = lam.degree()
    if g is None:
        if not lam.is_zero():
            raise DegreeViolation(f"scalar {lam} is not homogeneous")
        return zero_matrix(X.algebra, X.row_shape, X.col_shape, X.degree)
    degs = enumerate_degrees(X.n)
    rows = []
    for r, row in enumerate(X.rows):
        i = X.row_shape.slot_degrees()[r]
        factor = lam if koszul_sign(g, degs[i]) > 0 else -lam
        rows.append([gmul(factor, v) for v in row])
    return GMatrix(X.algebra, X.row_shape, X.col_shape, g + X.degree, rows, check=False)


def _require_square_degree_zero(X: GMatrix):
    if not X.is_square:
        raise ShapeMismatch(f"matrix {X.row_shape}x{X.col_shape} is not square")
    if not X.degree.is_zero():
        raise DegreeViolation(f"matrix has degree {X.degree}, expected 0")


def epsilon_tilde(X: GMatrix) -> RatMatrix:
    """Body of the diagonal blocks as a real block-diagonal matrix."""
    _require_square_degree_zero(X)
    sdeg = X.row_shape.slot_degrees()
    return tuple(
        tuple(body(v) if sdeg[r] == sdeg[c] else Fraction(0) for c, v in enumerate(row))
        for r, row in enumerate(X.rows)
    )


def _diag_block_indices(shape: GradedShape) -> list[int]:
    return [i for i, c in enumerate(shape) if c]


def _real_block(real: RatMatrix, shape: GradedShape, i: int) -> RatMatrix:
    o, c = shape.offsets[i], shape[i]
    return tuple(row[o : o + c] for row in real[o : o + c])


def _lambda0_rank_full(block: Rows) -> bool:
    """Gaussian elimination over Lambda_0 with unit pivots.

    Lambda_0 is local: a square matrix is invertible iff elimination always
    finds a pivot with nonzero body.
    """
    m = [list(r) for r in block]
    size = len(m)
    for col in range(size):
        pivot = next((r for r in range(col, size) if body(m[r][col])), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = g_invert(m[col][col])
        for r in range(col + 1, size):
            if m[r][col].terms:
                f = gmul(m[r][col], inv)
                m[r] = [x - gmul(f, y) for x, y in zip(m[r], m[col])]
    return True


def invertibility_criteria(X: GMatrix) -> tuple[bool, bool, bool]:
    """The three equivalent tests, computed independently.

    1. every diagonal block's body is a nonsingular real matrix;
    2. every diagonal block is invertible over Lambda (elimination over Lambda_0);
    3. the full body matrix epsilon_tilde(X) is nonsingular.
    """
    _require_square_degree_zero(X)
    shape = X.row_shape
    real = epsilon_tilde(X)
    idx = _diag_block_indices(shape)
    by_blocks = all(rat_det(_real_block(real, shape, i)) != 0 for i in idx)
    over_lambda = all(_lambda0_rank_full(X.block(i, i)) for i in idx)
    whole_body = rat_det(real) != 0
    return by_blocks, over_lambda, whole_body


def is_invertible(X: GMatrix) -> bool:
    _require_square_degree_zero(X)
    shape = X.row_shape
    real = epsilon_tilde(X)
    return all(rat_det(_real_block(real, shape, i)) != 0 for i in _diag_block_indices(shape))


# inversion ------------------------------------------------------------------
def _det_lambda0(m: Rows, algebra: AlgebraSpec):
    """Determinant and adjugate of a square matrix with commuting entries."""
    size = len(m)
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> GElement:
        if not rows:
            return algebra.one()
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r, rest = rows[0], rows[1:]
        acc = algebra.zero()
        for pos, c in enumerate(cols):
            v = m[r][c]
            if not v.terms:
                continue
            minor = det(rest, cols[:pos] + cols[pos + 1 :])
            term = gmul(v, minor)
            acc = acc - term if pos & 1 else acc + term
        memo[key] = acc
        return acc

    full = tuple(range(size))
    d = det(full, full)
    adj = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            cof = det(full[:j] + full[j + 1 :], full[:i] + full[i + 1 :])
            adj[i][j] = -cof if (i + j) & 1 else cof
    return d, adj


def _invert_single(m: Rows, algebra: AlgebraSpec) -> Rows:
    if len(m) == 1:
        return [[g_invert(m[0][0])]]
    d, adj = _det_lambda0(m, algebra)
    if not body(d):
        raise NonInvertible("a diagonal block has non-invertible determinant")
    dinv = g_invert(d)
    return [[gmul(dinv, v) for v in row] for row in adj]


def _split(m: Rows, a: int):
    return (
        [row[:a] for row in m[:a]],
        [row[a:] for row in m[:a]],
        [row[:a] for row in m[a:]],
        [row[a:] for row in m[a:]],
    )


def _invert_blocks(m: Rows, sizes: Sequence[int], algebra: AlgebraSpec) -> Rows:
    if len(sizes) == 1:
        return _invert_single(m, algebra)
    a = sizes[0]
    A, B, C, D = _split(m, a)
    Ainv = _invert_single(A, algebra)
    Dinv = _invert_blocks(D, sizes[1:], algebra)
    schur_a = _add_rows(A, _neg_rows(_mul_rows(_mul_rows(B, Dinv, algebra), C, algebra)))
    schur_d = _add_rows(D, _neg_rows(_mul_rows(_mul_rows(C, Ainv, algebra), B, algebra)))
    top_left = _invert_single(schur_a, algebra)
    bottom_right = _invert_blocks(schur_d, sizes[1:], algebra)
    top_right = _neg_rows(_mul_rows(_mul_rows(Ainv, B, algebra), bottom_right, algebra))
    bottom_left = _neg_rows(_mul_rows(_mul_rows(Dinv, C, algebra), top_left, algebra))
    return [tl + tr for tl, tr in zip(top_left, top_right)] + [bl + br for bl, br in zip(bottom_left, bottom_right)]


def invert(X: GMatrix) -> GMatrix:
    """Exact inverse via recursive 2x2 block splitting (leading block first)."""
    if not is_invertible(X):
        raise NonInvertible("a diagonal block has a singular body")
    sizes = [c for c in X.row_shape if c]
    if not sizes:
        return X
    rows = _invert_blocks([list(r) for r in X.rows], sizes, X.algebra)
    return GMatrix(X.algebra, X.row_shape, X.col_shape, X.degree, rows, check=False)


def invert_neumann(X: GMatrix) -> GMatrix:
    """Inverse as ``sum_k (-B^-1 S)^k B^-1`` with ``B`` the body matrix and ``S = X - B``."""
    if not is_invertible(X):
        raise NonInvertible("a diagonal block has a singular body")
    alg = X.algebra
    real = epsilon_tilde(X)
    binv = rat_inverse(real)
    if binv is None:
        raise NonInvertible("body matrix is singular")
    soul = [[v - real[r][c] for c, v in enumerate(row)] for r, row in enumerate(X.rows)]
    step = _neg_rows(_real_times_rows(binv, soul, alg))
    size = len(real)
    total = [[alg.scalar(int(r == c)) for c in range(size)] for r in range(size)]
    power = total
    for _ in range(alg.cap):
        power = _mul_rows(power, step, alg)
        if all(not v.terms for row in power for v in row):
            break
        total = _add_rows(total, power)
    rows = _mul_rows(total, [[alg.scalar(v) for v in row] for row in binv], alg)
    return GMatrix(alg, X.row_shape, X.col_shape, X.degree, rows, check=False)


def gl0_dimension(row_shape, col_shape) -> GradedShape:
    """Graded dimension of the degree-0 matrices of the given shapes.

    ``u_m = sum over gamma_i + gamma_j = gamma_m of s_i * q_j``.
    """
    row_shape, col_shape = as_shape(row_shape), as_shape(col_shape)
    if row_shape.n != col_shape.n:
        raise ShapeMismatch("shapes over different Z_2^n")
    out = [0] * len(row_shape)
    for i, s in enumerate(row_shape):
        for j, q in enumerate(col_shape):
            out[i ^ j] += s * q
    return GradedShape(out)


def gl0_coordinates(shape) -> list[list[tuple[int, int]]]:
    """Matrix positions ``(row, col)`` of each degree's coordinates on gl_0(p|q).

    Positions of degree ``gamma_m`` are listed column-major: the column index
    (the output slot of the canonical action) varies slowest.
    """
    shape = as_shape(shape)
    sdeg = shape.slot_degrees()
    out: list[list[tuple[int, int]]] = [[] for _ in shape]
    for col, dc in enumerate(sdeg):
        for row, dr in enumerate(sdeg):
            out[dr ^ dc].append((row, col))
    return out


def real_matrix_is_identity(m: RatMatrix) -> bool:
    return all(v == (1 if r == c else 0) for r, row in enumerate(m) for c, v in enumerate(row))


__all__ = [
    "GMatrix",
    "make_matrix",
    "identity",
    "zero_matrix",
    "from_real",
    "mat_mul",
    "scalar_mul",
    "epsilon_tilde",
    "is_invertible",
    "invertibility_criteria",
    "invert",
    "invert_neumann",
    "gl0_dimension",
    "gl0_coordinates",
    "rat_matmul",
]
