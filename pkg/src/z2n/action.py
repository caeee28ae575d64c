"""Lambda_0-module structure on Lambda-points and the canonical linear action
of GL(p|q) on R^{p|q}.

The action multiplies the point (a row) by the matrix, point factor first:
``out_a = sum_b x_b X[b][a]``.  With this order the law is exact by
associativity of matrix multiplication:

    canonical_action(Y, canonical_action(X, v)) == canonical_action(X @ Y, v)

i.e. a right action.  ``left_action`` is the same map read as a left action
with the opposite composition ``mu(X, Y) = Y @ X``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import AlgebraMismatch, DegreeViolation, NonInvertible, ShapeMismatch
from .gmatrix import GMatrix, gl0_coordinates, gl0_dimension, identity, is_invertible, mat_mul
from .grassmann import AlgebraSpec, GElement, gmul
from .points import LambdaPoint, Morphism, concat_points
from .shape import GradedShape, as_shape


def module_action(a: GElement, x: LambdaPoint) -> LambdaPoint:
    if a.algebra != x.algebra:
        raise AlgebraMismatch("scalar and point over different algebras")
    if not a.is_homogeneous(0):
        raise DegreeViolation(f"scalar {a} is not of degree 0")
    return LambdaPoint(x.algebra, x.shape, [gmul(a, c) for c in x.components])


def _check_action_inputs(X: GMatrix, x: LambdaPoint):
    if X.algebra != x.algebra:
        raise AlgebraMismatch("matrix and point over different algebras")
    if X.row_shape != x.shape:
        raise ShapeMismatch(f"matrix of shape {X.row_shape} cannot act on R^{x.shape}")


def apply_matrix(X: GMatrix, x: LambdaPoint) -> LambdaPoint:
    """Row vector times degree-0 matrix, without the invertibility check."""
    _check_action_inputs(X, x)
    alg = x.algebra
    out = []
    for a in range(X.col_shape.total):
        acc = alg.zero()
        for b, xb in enumerate(x.components):
            entry = X.rows[b][a]
            if xb.terms and entry.terms:
                acc = acc + gmul(xb, entry)
        out.append(acc)
    return LambdaPoint(alg, X.col_shape, out)


def canonical_action(X: GMatrix, x: LambdaPoint) -> LambdaPoint:
    _check_action_inputs(X, x)
    if not is_invertible(X):
        raise NonInvertible("matrix is not in GL(p|q)")
    return apply_matrix(X, x)


def left_action(X: GMatrix, x: LambdaPoint) -> LambdaPoint:
    """The canonical action under the left-action reading (compose with ``Y @ X``)."""
    return canonical_action(X, x)


def matrix_as_point(X: GMatrix) -> LambdaPoint:
    """Coordinates of a degree-0 matrix as a point of gl_0(p|q) = R^{t|u}."""
    shape = X.row_shape
    dim = gl0_dimension(shape, shape)
    comps = [X.rows[r][c] for positions in gl0_coordinates(shape) for r, c in positions]
    return LambdaPoint(X.algebra, dim, comps)


def action_source_point(X: GMatrix, x: LambdaPoint) -> LambdaPoint:
    return concat_points(matrix_as_point(X), x)


def action_as_morphism(shape, cap: int = 4) -> Morphism:
    """The action GL(p|q) x R^{p|q} -> R^{p|q} as coordinate pullbacks.

    Source coordinates: per degree, first the gl_0 coordinates (ordered as in
    ``gl0_coordinates``), then the point coordinates.  The pullback of output
    coordinate ``a`` is ``sum_b x^b X^a_b`` with ``X^a_b`` the entry at row
    ``b``, column ``a``.
    """
    shape = as_shape(shape)
    gl = gl0_dimension(shape, shape)
    src = gl + shape
    ring = AlgebraSpec.coordinate_ring(src, cap)
    gens = ring.generators()
    coord_of = {}
    for d, positions in enumerate(gl0_coordinates(shape)):
        for m, pos in enumerate(positions):
            coord_of[pos] = src.offsets[d] + m
    point_coord = [src.offsets[d] + gl[d] + k for d, k in shape.slots()]
    pbs = []
    for a in range(shape.total):
        acc = ring.zero()
        for b in range(shape.total):
            acc = acc + gmul(gens[point_coord[b]], gens[coord_of[(b, a)]])
        pbs.append(acc)
    return Morphism(src, shape, cap, pbs)


@dataclass
class ActionReport:
    identity_ok: bool = True
    compatibility_ok: bool = True
    additivity_ok: bool = True
    scaling_ok: bool = True
    samples: int = 0
    witnesses: dict = field(default_factory=dict)

    @property
    def counterexample(self) -> dict | None:
        """First recorded failure, if any."""
        return next(iter(self.witnesses.values()), None)

    @property
    def all_ok(self) -> bool:
        return self.identity_ok and self.compatibility_ok and self.additivity_ok and self.scaling_ok

    def lines(self) -> list[str]:
        return [
            f"{name} {'ok' if flag else 'FAIL'}"
            for name, flag in (
                ("identity", self.identity_ok),
                ("compatibility", self.compatibility_ok),
                ("additivity", self.additivity_ok),
                ("scaling", self.scaling_ok),
            )
        ]


Sigma = Callable[[GMatrix, LambdaPoint], LambdaPoint]


def check_action_axioms(
    algebra: AlgebraSpec,
    shape,
    samples: int = 100,
    seed: int = 0,
    sigma: Sigma = canonical_action,
    convention: str = "right",
) -> ActionReport:
    """Sample the identity, compatibility and Lambda_0-linearity axioms.

    ``convention="right"`` checks ``sigma(Y, sigma(X, v)) == sigma(X @ Y, v)``;
    ``"left"`` checks ``sigma(X, sigma(Y, v)) == sigma(Y @ X, v)``.  Only the
    first failure of each axiom is kept as its witness.
    """
    from .sampling import random_degree0, random_point, random_scalar0

    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    shape = as_shape(shape)
    rng = random.Random(seed)
    report = ActionReport()
    one = identity(algebra, shape)

    def fail(flag: str, axiom: str, inputs: dict, lhs, rhs):
        setattr(report, flag, False)
        if axiom not in report.witnesses:
            report.witnesses[axiom] = {
                "axiom": axiom,
                "inputs": {k: str(v) for k, v in inputs.items()},
                "lhs": str(lhs),
                "rhs": str(rhs),
            }

    for _ in range(samples):
        X = random_degree0(rng, algebra, shape)
        Y = random_degree0(rng, algebra, shape)
        v = random_point(rng, algebra, shape)
        w = random_point(rng, algebra, shape)
        a = random_scalar0(rng, algebra)
        report.samples += 1

        lhs, rhs = sigma(one, v), v
        if lhs != rhs:
            fail("identity_ok", "identity", {"v": v}, lhs, rhs)

        if convention == "right":
            lhs, rhs = sigma(Y, sigma(X, v)), sigma(mat_mul(X, Y), v)
        else:
            lhs, rhs = sigma(X, sigma(Y, v)), sigma(mat_mul(Y, X), v)
        if lhs != rhs:
            fail("compatibility_ok", "compatibility", {"X": X, "Y": Y, "v": v}, lhs, rhs)

        lhs, rhs = sigma(X, v + w), sigma(X, v) + sigma(X, w)
        if lhs != rhs:
            fail("additivity_ok", "additivity", {"X": X, "v": v, "w": w}, lhs, rhs)

        lhs, rhs = sigma(X, module_action(a, v)), module_action(a, sigma(X, v))
        if lhs != rhs:
            fail("scaling_ok", "scaling", {"X": X, "a": a, "v": v}, lhs, rhs)
    return report


def squaring_sigma(X: GMatrix, x: LambdaPoint) -> LambdaPoint:
    """A deliberately broken action: the canonical one with the first base slot squared."""
    out = canonical_action(X, x)
    if not out.shape.p:
        return out
    comps = list(out.components)
    comps[0] = gmul(comps[0], comps[0])
    return LambdaPoint(out.algebra, out.shape, comps)


__all__ = [
    "module_action",
    "canonical_action",
    "left_action",
    "apply_matrix",
    "matrix_as_point",
    "action_source_point",
    "action_as_morphism",
    "ActionReport",
    "check_action_axioms",
    "squaring_sigma",
    "GradedShape",
]
