import random

import pytest
from hypothesis import given, strategies as st

from z2n import (
    AlgebraMorphism,
    AlgebraSpec,
    BlockDiagMap,
    CapTooSmall,
    Morphism,
    NotNatural,
    ShapeMismatch,
    WrongDegreeComponent,
    compose,
    evaluate,
    evaluate_taylor,
    make_point,
    manifoldify,
    point_map,
    reconstruct_linear_map,
    zdr_apply,
)
from z2n.grassmann import lambda_one
from z2n.points import LambdaPoint, morphism_from_exprs, zero_point
from z2n.sampling import (
    random_algebra,
    random_algebra_morphism,
    random_block_diag,
    random_morphism,
    random_point,
    random_shape,
)
from z2n.textio import parse_element

SUPER = AlgebraSpec(1, [2], 2)


def E(text, alg=SUPER):
    return parse_element(text, alg)


def test_make_point_examples():
    zero_point(SUPER, "1|1")
    make_point(SUPER, "1|1", [E("1 + 11 12"), E("11")])
    with pytest.raises(WrongDegreeComponent):
        make_point(SUPER, "1|1", [E("1"), E("2")])


def test_evaluate_super_example():
    phi = morphism_from_exprs("1|1", "1|1", 2, ["x1^2", "x1 11"])
    x = make_point(SUPER, "1|1", [E("1 + 11 12"), E("11")])
    want = make_point(SUPER, "1|1", [E("1 + 2 11 12"), E("11")])
    assert evaluate(phi, x) == want == evaluate_taylor(phi, x)


def test_identity_and_constant_morphisms():
    x = make_point(SUPER, "1|1", [E("-2 + 11 12"), E("11 - 12")])
    assert evaluate(Morphism.identity("1|1", 2), x) == x
    c = Morphism.constant("1|1", "1|1", 2, [5, 0])
    assert evaluate(c, x) == make_point(SUPER, "1|1", [E("5"), E("0")])


def test_cap_too_small():
    phi = Morphism.identity("1|1", 1)
    with pytest.raises(CapTooSmall):
        evaluate(phi, zero_point(SUPER, "1|1"))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        evaluate(Morphism.identity("2|1", 2), zero_point(SUPER, "1|1"))


def test_compose_identity_and_linear():
    phi = morphism_from_exprs("1|1", "1|1", 2, ["x1^2 + x1", "x1 11"])
    assert compose(Morphism.identity("1|1", 2), phi) == phi
    assert compose(phi, Morphism.identity("1|1", 2)) == phi
    L = BlockDiagMap("1|2", "1|2", [[[2]], [[0, 1], [1, 0]]])
    M = BlockDiagMap("1|2", "1|2", [[[3]], [[1, 1], [0, 1]]])
    assert compose(manifoldify(M), manifoldify(L)) == manifoldify(M @ L)


def test_point_map_examples():
    x = make_point(SUPER, "1|1", [E("2 + 11 12"), E("11")])
    assert point_map(AlgebraMorphism.identity(SUPER), x) == x
    assert point_map(AlgebraMorphism.to_body(SUPER), x) == make_point(SUPER, "1|1", [E("2"), E("0")])


def test_zdr_apply_examples():
    alg = AlgebraSpec(2, [1, 1, 1], 3)
    v = make_point(alg, "1|1,1,1", [parse_element(t, alg) for t in ["1 + 111^2", "011", "101 + 011 111", "111"]])
    assert zdr_apply(BlockDiagMap.identity("1|1,1,1"), v) == v
    D = BlockDiagMap("1|1,1,1", "1|1,1,1", [[[2]], [[3]], [[5]], [[7]]])
    want = make_point(alg, "1|1,1,1", [c.scale(k) for c, k in zip(v.components, (2, 3, 5, 7))])
    assert zdr_apply(D, v) == want


def test_reconstruct_diag():
    D = BlockDiagMap("1|1,1,1", "1|1,1,1", [[[2]], [[3]], [[5]], [[7]]])
    assert reconstruct_linear_map(lambda v: zdr_apply(D, v), "1|1,1,1", "1|1,1,1") == D


def test_reconstruct_rejects_squares():
    def bad(v):
        out = zdr_apply(BlockDiagMap.identity("0|1,0,1"), v)
        comps = list(out.components)
        comps[-1] = comps[-1] + comps[-1] * comps[-1]
        return LambdaPoint(v.algebra, v.shape, comps)

    with pytest.raises(NotNatural):
        reconstruct_linear_map(bad, "0|1,0,1", "0|1,0,1")


seeds = st.integers(0, 2**32 - 1)


def _setup(seed, max_total=3):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    alg = random_algebra(rng, max_n=n, max_cap=3)
    n = alg.n
    shapes = [random_shape(rng, n, max_total=max_total) for _ in range(3)]
    return rng, alg, shapes


@given(seeds)
def test_substitution_matches_taylor(seed):
    rng, alg, (a, b, _) = _setup(seed)
    phi = random_morphism(rng, a, b, alg.cap)
    x = random_point(rng, alg, a)
    assert evaluate(phi, x) == evaluate_taylor(phi, x)


@given(seeds)
def test_evaluate_functorial(seed):
    rng, alg, (a, b, c) = _setup(seed)
    phi = random_morphism(rng, a, b, alg.cap)
    psi = random_morphism(rng, b, c, alg.cap)
    x = random_point(rng, alg, a)
    assert evaluate(compose(psi, phi), x) == evaluate(psi, evaluate(phi, x))


@given(seeds)
def test_compose_associative(seed):
    rng, alg, (a, b, c) = _setup(seed, max_total=2)
    T = alg.cap
    f = random_morphism(rng, a, b, T)
    g = random_morphism(rng, b, c, T)
    h = random_morphism(rng, c, a, T)
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(seeds)
def test_evaluation_natural_in_lambda(seed):
    rng, alg, (a, b, _) = _setup(seed)
    tgt = AlgebraSpec(alg.n, [rng.randint(0, 2) for _ in range(2**alg.n - 1)], alg.cap)
    phi_alg = random_algebra_morphism(rng, alg, tgt)
    Phi = random_morphism(rng, a, b, alg.cap)
    x = random_point(rng, alg, a)
    assert point_map(phi_alg, evaluate(Phi, x)) == evaluate(Phi, point_map(phi_alg, x))


@given(seeds)
def test_zdr_functorial_and_natural(seed):
    rng, alg, (a, b, c) = _setup(seed)
    L, Lp = random_block_diag(rng, a, b), random_block_diag(rng, b, c)
    v = random_point(rng, alg, a)
    assert zdr_apply(Lp @ L, v) == zdr_apply(Lp, zdr_apply(L, v))
    assert zdr_apply(BlockDiagMap.identity(a), v) == v
    phi = random_algebra_morphism(rng, alg, alg)
    assert point_map(phi, zdr_apply(L, v)) == zdr_apply(L, point_map(phi, v))


@given(seeds)
def test_reconstruct_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    a, b = random_shape(rng, n), random_shape(rng, n)
    L = random_block_diag(rng, a, b)
    assert reconstruct_linear_map(lambda v: zdr_apply(L, v), a, b) == L


def test_lambda_one_layout():
    alg = lambda_one(3)
    assert alg.ngens == 7 and all(m == 1 for m in alg.gen_counts.values())
