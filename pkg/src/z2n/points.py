"""Lambda-points of Cartesian domains R^{p|q} and morphisms between them.

A Lambda-point of R^{p|q} is a tuple of elements of Lambda: degree-0
components for the base coordinates and degree-gamma_j components for the
formal coordinates of degree gamma_j.  A morphism R^{p|q} -> R^{r|s} is given
by the pullbacks of the target coordinates, elements of the coordinate ring
(polynomials in x, truncated series in the formal coordinates).  Evaluating
a morphism at a point substitutes the point's components into the pullbacks.

Vectors of the zero-degree-rules functor V(Lambda) = (Lambda (x) V)_0 use the
same tuple representation, so a degree-0 linear map acts on them blockwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Mapping, Sequence

from .errors import (
    AlgebraMismatch,
    CapTooSmall,
    DegreeViolation,
    NotNatural,
    ShapeMismatch,
    WrongDegreeComponent,
    Z2nError,
)
from .grassmann import AlgebraMorphism, AlgebraSpec, GElement, apply_morphism, gmul, lambda_one, substitute
from .shape import GradedShape, as_shape


class LambdaPoint:
    __slots__ = ("algebra", "shape", "components")

    def __init__(self, algebra: AlgebraSpec, shape: GradedShape, components: Sequence[GElement]):
        self.algebra = algebra
        self.shape = shape
        self.components = tuple(components)

    def component(self, i: int, k: int) -> GElement:
        return self.components[self.shape.offsets[i] + k]

    def __add__(self, other: "LambdaPoint") -> "LambdaPoint":
        _same(self, other)
        return LambdaPoint(self.algebra, self.shape, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "LambdaPoint") -> "LambdaPoint":
        _same(self, other)
        return LambdaPoint(self.algebra, self.shape, [a - b for a, b in zip(self.components, other.components)])

    def __eq__(self, other):
        if not isinstance(other, LambdaPoint):
            return NotImplemented
        return (self.algebra, self.shape, self.components) == (other.algebra, other.shape, other.components)

    def __hash__(self):
        return hash((self.algebra, self.shape, self.components))

    def truncate(self, cap: int) -> "LambdaPoint":
        return LambdaPoint(self.algebra.with_cap(cap), self.shape, [c.truncate(cap) for c in self.components])

    def __str__(self):
        from .textio import format_point

        return format_point(self)

    def __repr__(self):
        return "LambdaPoint(" + ", ".join(str(c) for c in self.components) + ")"


def _same(a: LambdaPoint, b: LambdaPoint):
    if a.algebra != b.algebra:
        raise AlgebraMismatch("points over different algebras")
    if a.shape != b.shape:
        raise ShapeMismatch(f"points of shapes {a.shape} and {b.shape}")


def make_point(algebra: AlgebraSpec, shape, components: Sequence[GElement] | Mapping) -> LambdaPoint:
    """Validated Lambda-point; components are listed in coordinate order or keyed by ``(i, k)``."""
    shape = as_shape(shape)
    if shape.n != algebra.n:
        raise ShapeMismatch(f"shape {shape} is not over Z_2^{algebra.n}")
    if isinstance(components, Mapping):
        comps = [algebra.zero()] * shape.total
        for (i, k), v in components.items():
            comps[shape.offsets[i] + k] = v
    else:
        comps = [v if isinstance(v, GElement) else algebra.scalar(v) for v in components]
    if len(comps) != shape.total:
        raise ShapeMismatch(f"shape {shape} needs {shape.total} components, got {len(comps)}")
    for slot, (deg, v) in enumerate(zip(shape.slot_degrees(), comps)):
        if v.algebra != algebra:
            raise AlgebraMismatch(f"component {slot} is over a different algebra")
        if not v.is_homogeneous(deg):
            raise WrongDegreeComponent(
                f"component {slot} = {v} should be homogeneous of degree {shape.degree(deg)}"
            )
    return LambdaPoint(algebra, shape, comps)


def zero_point(algebra: AlgebraSpec, shape) -> LambdaPoint:
    shape = as_shape(shape)
    return LambdaPoint(algebra, shape, [algebra.zero()] * shape.total)


class Morphism:
    """A morphism of Cartesian domains given by coordinate pullbacks.

    ``pullbacks[c]`` is the pullback of target coordinate ``c`` (canonical
    order), an element of ``AlgebraSpec.coordinate_ring(source_shape, cap)``
    homogeneous of that coordinate's degree.
    """

    __slots__ = ("source_shape", "target_shape", "cap", "pullbacks", "ring")

    def __init__(self, source_shape, target_shape, cap: int, pullbacks: Sequence[GElement]):
        self.source_shape = as_shape(source_shape)
        self.target_shape = as_shape(target_shape)
        if self.source_shape.n != self.target_shape.n:
            raise ShapeMismatch("source and target over different Z_2^n")
        self.cap = int(cap)
        self.ring = AlgebraSpec.coordinate_ring(self.source_shape, self.cap)
        pbs = tuple(pullbacks)
        if len(pbs) != self.target_shape.total:
            raise ShapeMismatch(f"need {self.target_shape.total} pullbacks, got {len(pbs)}")
        for c, (deg, pb) in enumerate(zip(self.target_shape.slot_degrees(), pbs)):
            if pb.algebra != self.ring:
                raise AlgebraMismatch(f"pullback {c} is not in the source coordinate ring")
            if not pb.is_homogeneous(deg):
                raise DegreeViolation(
                    f"pullback of target coordinate {c} must have degree {self.target_shape.degree(deg)}"
                )
        self.pullbacks = pbs

    @classmethod
    def identity(cls, shape, cap: int) -> "Morphism":
        shape = as_shape(shape)
        ring = AlgebraSpec.coordinate_ring(shape, cap)
        return cls(shape, shape, cap, ring.generators())

    @classmethod
    def constant(cls, source_shape, target_shape, cap: int, values: Sequence) -> "Morphism":
        """Base coordinates pulled back to constants, formal ones to 0."""
        source_shape, target_shape = as_shape(source_shape), as_shape(target_shape)
        ring = AlgebraSpec.coordinate_ring(source_shape, cap)
        pbs = [ring.scalar(values[k]) for k in range(target_shape.p)]
        pbs += [ring.zero()] * (target_shape.total - target_shape.p)
        return cls(source_shape, target_shape, cap, pbs)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source_shape, self.target_shape, self.cap, self.pullbacks) == (
            other.source_shape,
            other.target_shape,
            other.cap,
            other.pullbacks,
        )

    def __hash__(self):
        return hash((self.source_shape, self.target_shape, self.cap, self.pullbacks))

    def __str__(self):
        from .textio import format_morphism

        return format_morphism(self)

    __repr__ = __str__


def _check_evaluable(phi: Morphism, x: LambdaPoint):
    if phi.source_shape != x.shape:
        raise ShapeMismatch(f"morphism source {phi.source_shape} vs point shape {x.shape}")
    if phi.cap < x.algebra.cap:
        raise CapTooSmall(f"morphism cap {phi.cap} is below the algebra cap {x.algebra.cap}")


def evaluate(phi: Morphism, x: LambdaPoint) -> LambdaPoint:
    """Image of a Lambda-point: substitute its components into the pullbacks."""
    _check_evaluable(phi, x)
    comps = [substitute(pb, x.components, x.algebra) for pb in phi.pullbacks]
    return LambdaPoint(x.algebra, phi.target_shape, comps)


def evaluate_taylor(phi: Morphism, x: LambdaPoint) -> LambdaPoint:
    """Same image computed by expanding every coefficient function around the body.

    ``y = sum_alpha sum_beta (1/beta!) (d^beta f_alpha)(x_body) * soul(x)^beta * xi^alpha``.
    """
    _check_evaluable(phi, x)
    alg = x.algebra
    p = phi.source_shape.p
    base_vals = [c.body() for c in x.components[:p]]
    souls = [c.soul() for c in x.components[:p]]
    formal = x.components[p:]

    soul_powers: dict = {}

    def soul_power(beta):
        if beta not in soul_powers:
            acc = alg.one()
            for a, b in enumerate(beta):
                for _ in range(b):
                    acc = gmul(acc, souls[a])
            soul_powers[beta] = acc
        return soul_powers[beta]

    comps = []
    for pb in phi.pullbacks:
        by_alpha: dict = {}
        for mono, coef in pb.terms.items():
            by_alpha.setdefault(mono[p:], {})[mono[:p]] = coef
        total = alg.zero()
        for alpha, poly in by_alpha.items():
            xi_alpha = alg.one()
            for g, e in enumerate(alpha):
                for _ in range(e):
                    xi_alpha = gmul(xi_alpha, formal[g])
            if xi_alpha.is_zero():
                continue
            top = [max(e[a] for e in poly) for a in range(p)]
            for beta in product(*(range(min(t, alg.cap) + 1) for t in top)):
                if sum(beta) > alg.cap:
                    continue
                deriv = Fraction(0)
                for e, c in poly.items():
                    if any(b > ea for b, ea in zip(beta, e)):
                        continue
                    term = Fraction(c)
                    for a in range(p):
                        term *= Fraction(factorial(e[a]), factorial(e[a] - beta[a])) * base_vals[a] ** (e[a] - beta[a])
                    deriv += term
                if not deriv:
                    continue
                weight = deriv
                for b in beta:
                    weight /= factorial(b)
                total = total + gmul(soul_power(beta), xi_alpha).scale(weight)
        comps.append(total)
    return LambdaPoint(alg, phi.target_shape, comps)


def compose(psi: Morphism, phi: Morphism) -> Morphism:
    """``psi o phi``: substitute phi's pullbacks into psi's."""
    if phi.target_shape != psi.source_shape:
        raise ShapeMismatch(f"cannot compose: {phi.target_shape} vs {psi.source_shape}")
    if phi.cap != psi.cap:
        raise CapTooSmall(f"morphism caps differ ({psi.cap} vs {phi.cap})")
    pbs = [substitute(pb, phi.pullbacks, phi.ring) for pb in psi.pullbacks]
    return Morphism(phi.source_shape, psi.target_shape, phi.cap, pbs)


def point_map(phi: AlgebraMorphism, x: LambdaPoint) -> LambdaPoint:
    """Push a Lambda-point along an algebra morphism Lambda -> Lambda'."""
    if x.algebra != phi.source:
        raise AlgebraMismatch("point is not over the morphism's source algebra")
    return LambdaPoint(phi.target, x.shape, [apply_morphism(phi, c) for c in x.components])


def zdr_apply(L, v: LambdaPoint) -> LambdaPoint:
    """Component at Lambda of the zero-degree-rules functor applied to ``L``.

    ``L`` is a block-diagonal map (``linspace.BlockDiagMap``); block ``j``
    acts on the degree-``gamma_j`` components with real coefficients.
    """
    if v.shape != L.source_shape:
        raise ShapeMismatch(f"map source {L.source_shape} vs vector shape {v.shape}")
    alg = v.algebra
    out = []
    for j, blk in enumerate(L.blocks):
        src = v.components[v.shape.offsets[j] : v.shape.offsets[j] + v.shape[j]]
        for row in blk:
            acc = alg.zero()
            for coef, comp in zip(row, src):
                if coef:
                    acc = acc + comp.scale(coef)
            out.append(acc)
    return LambdaPoint(alg, L.target_shape, out)


def reconstruct_linear_map(
    component: Callable[[LambdaPoint], LambdaPoint],
    source_shape,
    target_shape,
    cap: int = 2,
):
    """Recover the degree-0 linear map behind a natural transformation from its
    component at the algebra with one generator per nonzero degree.

    The base block is read from the constant terms of the images of ``1 (x) b``;
    block ``j`` from the ``t_j`` coefficients of the images of ``t_j (x) b``.
    Any other monomial in a probe image, or a failed linearity check on the
    probes, raises NotNatural.
    """
    from .linspace import BlockDiagMap

    source_shape, target_shape = as_shape(source_shape), as_shape(target_shape)
    n = source_shape.n
    if target_shape.n != n:
        raise ShapeMismatch("source and target over different Z_2^n")
    lam1 = lambda_one(n, max(cap, 2))
    unit = lam1.unit_monomial

    def run(point):
        out = component(point)
        if not isinstance(out, LambdaPoint) or out.shape != target_shape or out.algebra != lam1:
            raise NotNatural("component does not return a point of the target over the probe algebra")
        return out

    probes = []
    blocks = [[[Fraction(0)] * source_shape[j] for _ in range(target_shape[j])] for j in range(2**n)]
    for j, k in source_shape.slots():
        if j == 0:
            probe_val = lam1.one()
            allowed = unit
        else:
            probe_val = lam1.generator(j - 1)
            allowed = tuple(int(g == j - 1) for g in range(lam1.ngens))
        comps = [lam1.zero()] * source_shape.total
        comps[source_shape.offsets[j] + k] = probe_val
        probe = LambdaPoint(lam1, source_shape, comps)
        image = run(probe)
        for slot, (deg, val) in enumerate(zip(target_shape.slot_degrees(), image.components)):
            for mono, coef in val.terms.items():
                if mono != allowed or deg != j:
                    raise NotNatural(
                        f"probe ({j},{k}) produced the extraneous term {coef} * {mono} in output slot {slot}"
                    )
                blocks[deg][slot - target_shape.offsets[deg]][k] = coef
        probes.append((probe, image))

    # linearity in the probed directions
    scale = Fraction(3, 2)
    for probe, image in probes:
        scaled = LambdaPoint(lam1, source_shape, [c.scale(scale) for c in probe.components])
        if run(scaled) != LambdaPoint(lam1, target_shape, [c.scale(scale) for c in image.components]):
            raise NotNatural("component is not homogeneous under real rescaling")
    if probes:
        total_in = probes[0][0]
        total_out = probes[0][1]
        for probe, image in probes[1:]:
            total_in = total_in + probe
            total_out = total_out + image
        if run(total_in) != total_out:
            raise NotNatural("component is not additive on the probes")
    return BlockDiagMap(source_shape, target_shape, blocks)


def concat_points(*points: LambdaPoint) -> LambdaPoint:
    """Point of the product domain: per degree, the coordinates of each factor in turn."""
    alg = points[0].algebra
    shape = points[0].shape
    for pt in points[1:]:
        if pt.algebra != alg:
            raise AlgebraMismatch("points over different algebras")
        shape = shape + pt.shape
    comps = []
    for i in range(len(shape)):
        for pt in points:
            o = pt.shape.offsets[i]
            comps.extend(pt.components[o : o + pt.shape[i]])
    return LambdaPoint(alg, shape, comps)


def morphism_from_exprs(source_shape, target_shape, cap, exprs: Sequence[str]) -> Morphism:
    """Convenience: pullbacks given as expression strings in the source coordinates."""
    from .textio import parse_element

    ring = AlgebraSpec.coordinate_ring(as_shape(source_shape), cap)
    return Morphism(source_shape, target_shape, cap, [parse_element(e, ring) for e in exprs])


__all__ = [
    "LambdaPoint",
    "Morphism",
    "make_point",
    "zero_point",
    "evaluate",
    "evaluate_taylor",
    "compose",
    "point_map",
    "zdr_apply",
    "reconstruct_linear_map",
    "concat_points",
    "morphism_from_exprs",
    "Z2nError",
]
