import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from z2n import AlgebraMorphism, AlgebraSpec, NonInvertible, ParityViolation, Z2nError
from z2n.grassmann import apply_morphism, body, g_invert, gmul, homogeneous_part, homogeneous_parts
from z2n.sampling import random_algebra, random_algebra_morphism, random_element, random_homogeneous
from z2n.textio import parse_element

from oracles import pairing, word_product

SUPER = AlgebraSpec(1, [2], 2)
N2 = AlgebraSpec(2, [1, 1, 1], 4)
N2C3 = AlgebraSpec(2, [1, 1, 1], 3)


def E(text, alg=N2):
    return parse_element(text, alg)


def test_odd_generators_anticommute():
    t1, t2 = SUPER.generator(0), SUPER.generator(1)
    assert t2 * t1 == -(t1 * t2)
    assert str(t2 * t1) == "-11 12"


def test_disjoint_degrees_commute():
    assert E("101") * E("011") == E("011 101")


def test_even_pairing_generator_not_nilpotent():
    z = E("111")
    assert (z * z).terms and z * z == E("111^2")


def test_body():
    assert body(E("3/2 + 011 101")) == Fraction(3, 2)
    assert body(E("011")) == 0
    assert body(N2.one()) == 1


def test_homogeneous_part():
    a = E("1 + 011 + 101 111")
    assert homogeneous_part(a, 1) == E("011 + 101 111")
    assert homogeneous_part(E("011"), 0) == N2.zero()
    parts = homogeneous_parts(N2.one())
    assert parts[N2.one().degree()] == N2.one()
    assert all(not v.terms for k, v in parts.items() if not k.is_zero())


def test_invert_examples():
    assert g_invert(N2C3.scalar(2)) == N2C3.scalar(Fraction(1, 2))
    assert g_invert(E("2 + 111", N2C3)) == E("1/2 - 1/4 111 + 1/8 111^2 - 1/16 111^3", N2C3)
    with pytest.raises(NonInvertible):
        g_invert(E("011"))


def test_apply_morphism_examples():
    to_body = AlgebraMorphism.to_body(N2)
    assert apply_morphism(to_body, E("5 + 011 101")) == N2.scalar(5)
    a = E("1 - 011 + 111^2")
    assert apply_morphism(AlgebraMorphism.identity(N2), a) == a
    phi = AlgebraMorphism(SUPER, SUPER, [SUPER.generator(0) + SUPER.generator(1), SUPER.generator(1)])
    assert phi(SUPER.generator(0)) == SUPER.generator(0) + SUPER.generator(1)


def test_parity_violation_on_odd_square():
    with pytest.raises(ParityViolation):
        E("011^2")


def test_mixed_caps_rejected():
    with pytest.raises(Z2nError):
        E("1", N2) + E("1", N2C3)


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_gmul_matches_word_oracle(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng)
    a, b = random_element(rng, alg), random_element(rng, alg)
    assert gmul(a, b).terms == word_product(alg, a.terms, b.terms)


@given(seeds)
def test_graded_commutativity(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng)
    N = 2**alg.n
    i, j = rng.randrange(N), rng.randrange(N)
    a, b = random_homogeneous(rng, alg, i), random_homogeneous(rng, alg, j)
    sign = -1 if pairing(i, j, alg.n) else 1
    assert a * b == (b * a).scale(sign)


@given(seeds)
def test_associativity_distributivity(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng)
    a, b, c = (random_element(rng, alg) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(seeds)
def test_invert_round_trip(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng)
    a = random_element(rng, alg) + alg.scalar(rng.choice([1, -2, Fraction(1, 3)]))
    if a.body() == 0:
        return
    inv = g_invert(a)
    assert a * inv == alg.one() and inv * a == alg.one()


@given(seeds)
def test_truncation_functoriality(seed):
    rng = random.Random(seed)
    lo = random_algebra(rng, max_cap=3)
    hi = lo.with_cap(lo.cap + rng.randint(1, 2))
    a, b = random_element(rng, hi), random_element(rng, hi)
    T = lo.cap
    assert gmul(a, b).truncate(T) == gmul(a.truncate(T), b.truncate(T))
    c = a.soul() + hi.scalar(3)
    assert g_invert(c).truncate(T) == g_invert(c.truncate(T))
    phi_hi = random_algebra_morphism(rng, hi, hi)
    phi_lo = AlgebraMorphism(lo, lo, [img.truncate(T) for img in phi_hi.images])
    assert phi_hi(a).truncate(T) == phi_lo(a.truncate(T))


@given(seeds)
def test_morphism_is_multiplicative(seed):
    rng = random.Random(seed)
    src = random_algebra(rng, max_n=2)
    tgt = AlgebraSpec(src.n, [rng.randint(0, 2) for _ in range(2**src.n - 1)], src.cap)
    phi = random_algebra_morphism(rng, src, tgt)
    a, b = random_element(rng, src), random_element(rng, src)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(a + b) == phi(a) + phi(b)


def test_nilpotency_and_squares():
    for alg in (SUPER, N2, AlgebraSpec(3, [1] * 7, 2)):
        for g in alg.generators():
            sq = g * g
            deg = next(iter(g.degrees()))
            assert (not sq.terms) == bool(pairing(deg, deg, alg.n))
