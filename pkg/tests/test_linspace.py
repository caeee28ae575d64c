import random

import pytest
from hypothesis import given, strategies as st

from z2n import (
    BlockDiagMap,
    Morphism,
    NotLinear,
    SymAlgebra,
    compose,
    flat_iso,
    flat_iso_inverse,
    is_linear_morphism,
    manifoldify,
    sym_basis,
    sym_mul,
    vectorify,
)
from z2n.linspace import SymElement, format_word
from z2n.points import morphism_from_exprs
from z2n.sampling import random_block_diag, random_shape

from oracles import pairing


def test_basis_super_two_odd():
    assert sym_basis("0|2", 2) == [(0, 1)]


def test_basis_even_pairing_powers():
    assert sym_basis("0|0,0,1", 3) == [(0, 0, 0)]


def test_basis_worked_product_shape():
    # dims 2,1,3,1: a product of two degree-00 vectors, one 01, three 10 and one 11
    shape = "2|1,3,1"
    degs = [0, 0, 1, 2, 2, 2, 3]
    words = sym_basis(shape, 7)
    wanted = [w for w in words if [degs[g] for g in w] == [0, 0, 1, 2, 2, 2, 3]]
    assert wanted == [(0, 0, 2, 3, 4, 5, 6), (0, 1, 2, 3, 4, 5, 6), (1, 1, 2, 3, 4, 5, 6)]


def _count_oracle(shape, k):
    """Count words of length k by brute force over all sequences."""
    from itertools import product

    n = len(shape).bit_length() - 1
    degs = [i for i, c in enumerate(shape) for _ in range(c)]
    seen = set()
    for seq in product(range(len(degs)), repeat=k):
        w = tuple(sorted(seq))
        if any(a == b and pairing(degs[a], degs[a], n) for a, b in zip(w, w[1:])):
            continue
        seen.add(w)
    return len(seen)


@pytest.mark.parametrize("shape,k", [("1|2", 3), ("0|1,1,1", 3), ("1|1,0,2", 2), ("0|2,1,0,1,0,0,1", 2)])
def test_basis_counts(shape, k):
    from z2n import GradedShape

    assert len(sym_basis(shape, k)) == _count_oracle(GradedShape.parse(shape), k)


def test_sym_signs():
    S = SymAlgebra("0|2", 3)
    b1, b2 = S.word(0), S.word(1)
    assert sym_mul(b2, b1) == -sym_mul(b1, b2)
    Z = SymAlgebra("0|0,0,1", 3)
    z = Z.word(0)
    assert sym_mul(z, z).terms == {(0, 0): 1}


def test_flat_iso_examples():
    S = SymAlgebra("0|2", 2)
    assert str(flat_iso(S.one())) == "1"
    assert str(flat_iso(S.word(0, 1))) == "11 12"
    assert format_word("0|2", (0, 1)) == "b1_1*b1_2"


seeds = st.integers(0, 2**32 - 1)


def _random_sym(rng, S, terms=4):
    out = {}
    for _ in range(terms):
        k = rng.randint(0, S.cap)
        words = sym_basis(S.shape, k)
        if words:
            out[rng.choice(words)] = rng.randint(-3, 3)
    return SymElement(S, out)


def _flat_case(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    shape = random_shape(rng, n, max_total=4)
    shape = type(shape)([0] + list(shape[1:]))
    if shape.total == 0:
        shape = type(shape)([0, 1] + [0] * (2**n - 2))
    return rng, SymAlgebra(shape, rng.randint(1, 4))


@given(seeds)
def test_flat_iso_homomorphism(seed):
    rng, S = _flat_case(seed)
    u, v = _random_sym(rng, S), _random_sym(rng, S)
    assert flat_iso(sym_mul(u, v)) == flat_iso(u) * flat_iso(v)


@given(seeds)
def test_flat_round_trip(seed):
    rng, S = _flat_case(seed)
    u = _random_sym(rng, S)
    assert flat_iso_inverse(flat_iso(u), S) == u


@given(seeds)
def test_sym_associative(seed):
    rng, S = _flat_case(seed)
    u, v, w = (_random_sym(rng, S) for _ in range(3))
    assert sym_mul(sym_mul(u, v), w) == sym_mul(u, sym_mul(v, w))


def test_manifoldify_examples():
    assert manifoldify(BlockDiagMap.identity("1|2")) == Morphism.identity("1|2", 4)
    L = BlockDiagMap("1|2", "1|2", [[[2]], [[0, 1], [1, 0]]])
    phi = manifoldify(L)
    assert [str(p) for p in phi.pullbacks] == ["2 x1", "12", "11"]
    assert vectorify(phi) == L
    assert vectorify(Morphism.identity("1|2", 3)) == BlockDiagMap.identity("1|2")


def test_is_linear():
    assert is_linear_morphism(Morphism.identity("1|2", 2))
    assert not is_linear_morphism(morphism_from_exprs("1|0", "1|0", 2, ["x1^2"]))
    assert not is_linear_morphism(morphism_from_exprs("1|2", "1|0", 2, ["x1 + 11 12"]))
    with pytest.raises(NotLinear):
        vectorify(morphism_from_exprs("1|0", "1|0", 2, ["x1^2"]))


@given(seeds)
def test_manifoldify_functor(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    a, b, c = (random_shape(rng, n, max_total=4) for _ in range(3))
    L, M = random_block_diag(rng, a, b), random_block_diag(rng, b, c)
    assert vectorify(manifoldify(L)) == L
    assert manifoldify(M @ L) == compose(manifoldify(M), manifoldify(L))
    phi = manifoldify(L)
    assert manifoldify(vectorify(phi)) == phi
