"""Seeded random generators for property checks.

Everything takes a ``random.Random`` so that results are reproducible from
a seed.  Coefficients are small integers and halves to keep exact
arithmetic cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .degree import Degree
from .gmatrix import GMatrix
from .grassmann import AlgebraMorphism, AlgebraSpec, GElement, _make
from .linspace import BlockDiagMap
from .points import LambdaPoint, Morphism
from .ratmat import rat_det
from .shape import GradedShape, as_shape

_COEFFS = [Fraction(k, d) for k in range(-3, 4) if k for d in (1, 2)]


def rational(rng: random.Random) -> Fraction:
    return rng.choice(_COEFFS)


@lru_cache(maxsize=256)
def monomials_by_degree(algebra: AlgebraSpec, max_base: int = 2) -> dict[int, list[tuple]]:
    """All monomials up to the cap (base exponents up to ``max_base``), grouped by degree index."""
    ranges = []
    for g in range(algebra.ngens):
        if not algebra.formal[g]:
            ranges.append(range(max_base + 1))
        elif algebra.odd[g]:
            ranges.append(range(2))
        else:
            ranges.append(range(algebra.cap + 1))
    out: dict[int, list[tuple]] = {}
    for mono in product(*ranges):
        if algebra.formal_degree(mono) <= algebra.cap:
            out.setdefault(algebra.monomial_degree(mono), []).append(mono)
    return out


def random_homogeneous(rng: random.Random, algebra: AlgebraSpec, degree: int, terms: int = 3, body=None) -> GElement:
    """Homogeneous element of the given degree index.  ``body`` forces the constant term."""
    pool = monomials_by_degree(algebra).get(degree, [])
    unit = algebra.unit_monomial
    out = {}
    if pool:
        for mono in rng.sample(pool, min(terms, len(pool))):
            out[mono] = rational(rng)
    if degree == 0 and body is not None:
        out[unit] = Fraction(body)
        if not body:
            out.pop(unit)
    return _make(algebra, {m: c for m, c in out.items() if c})


def random_soul(rng: random.Random, algebra: AlgebraSpec, degree: int, terms: int = 3) -> GElement:
    return random_homogeneous(rng, algebra, degree, terms, body=0)


def random_element(rng: random.Random, algebra: AlgebraSpec, terms: int = 4) -> GElement:
    """Inhomogeneous element: a sum of random homogeneous parts."""
    total = algebra.zero()
    for d in monomials_by_degree(algebra):
        if rng.random() < 0.7:
            total = total + random_homogeneous(rng, algebra, d, rng.randint(1, terms))
    return total


def random_algebra(rng: random.Random, max_n: int = 3, max_cap: int = 4, max_gens: int = 5) -> AlgebraSpec:
    n = rng.randint(1, max_n)
    N = 2**n - 1
    counts = [0] * N
    for _ in range(rng.randint(1, max_gens)):
        counts[rng.randrange(N)] += 1
    return AlgebraSpec(n, counts, rng.randint(1, max_cap))


def random_shape(rng: random.Random, n: int, max_total: int = 6, min_total: int = 1) -> GradedShape:
    size = 2**n
    total = rng.randint(min_total, max_total)
    counts = [0] * size
    for _ in range(total):
        counts[rng.randrange(size)] += 1
    return GradedShape(counts)


def random_matrix(rng, algebra: AlgebraSpec, row_shape, col_shape, degree: Degree | None = None, terms: int = 2) -> GMatrix:
    row_shape, col_shape = as_shape(row_shape), as_shape(col_shape)
    degree = Degree.zero(algebra.n) if degree is None else degree
    x = degree.index
    rows = [
        [random_homogeneous(rng, algebra, i ^ j ^ x, terms) for j in col_shape.slot_degrees()]
        for i in row_shape.slot_degrees()
    ]
    return GMatrix(algebra, row_shape, col_shape, degree, rows, check=False)


def _random_real_block(rng, size: int, invertible: bool | None):
    while True:
        blk = [[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)]
        if invertible is None:
            return blk
        if (rat_det(tuple(map(tuple, blk))) != 0) == invertible:
            return blk


def random_degree0(rng, algebra: AlgebraSpec, shape, invertible: bool | None = True, terms: int = 2) -> GMatrix:
    """Degree-0 square matrix whose diagonal-block bodies are (non)singular as requested.

    With ``invertible=None`` the bodies are unconstrained small integers.
    """
    shape = as_shape(shape)
    X = random_matrix(rng, algebra, shape, shape, None, terms)
    rows = [list(r) for r in X.rows]
    for i, q in enumerate(shape):
        if not q:
            continue
        want = invertible
        if invertible is False and i != next(k for k, c in enumerate(shape) if c):
            want = None
        blk = _random_real_block(rng, q, want)
        o = shape.offsets[i]
        for r in range(q):
            for c in range(q):
                v = rows[o + r][o + c]
                rows[o + r][o + c] = v.soul() + blk[r][c]
    return GMatrix(algebra, shape, shape, X.degree, rows, check=False)


def random_point(rng, algebra: AlgebraSpec, shape, terms: int = 2) -> LambdaPoint:
    shape = as_shape(shape)
    comps = [random_homogeneous(rng, algebra, d, terms) for d in shape.slot_degrees()]
    return LambdaPoint(algebra, shape, comps)


def random_scalar0(rng, algebra: AlgebraSpec, terms: int = 2) -> GElement:
    return random_homogeneous(rng, algebra, 0, terms)


def random_block_diag(rng, source_shape, target_shape) -> BlockDiagMap:
    source_shape, target_shape = as_shape(source_shape), as_shape(target_shape)
    blocks = [
        [[rational(rng) if rng.random() < 0.7 else 0 for _ in range(q)] for _ in range(s)]
        for q, s in zip(source_shape, target_shape)
    ]
    return BlockDiagMap(source_shape, target_shape, blocks)


def random_algebra_morphism(rng, source: AlgebraSpec, target: AlgebraSpec, terms: int = 2) -> AlgebraMorphism:
    images = [random_soul(rng, target, d, terms) for d in source.gen_degrees]
    return AlgebraMorphism(source, target, images)


def random_morphism(rng, source_shape, target_shape, cap: int, terms: int = 3) -> Morphism:
    """Random polynomial-coefficient morphism obeying the degree law."""
    ring = AlgebraSpec.coordinate_ring(as_shape(source_shape), cap)
    pbs = [random_homogeneous(rng, ring, d, terms) for d in as_shape(target_shape).slot_degrees()]
    return Morphism(source_shape, target_shape, cap, pbs)
