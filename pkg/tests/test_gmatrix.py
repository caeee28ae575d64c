import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from z2n import (
    AlgebraSpec,
    Degree,
    DegreeViolation,
    GradedShape,
    NonInvertible,
    epsilon_tilde,
    gl0_dimension,
    identity,
    invert,
    invert_neumann,
    invertibility_criteria,
    is_invertible,
    make_matrix,
    mat_mul,
    parse,
    scalar_mul,
)
from z2n.gmatrix import from_real
from z2n.sampling import random_algebra, random_degree0, random_homogeneous, random_matrix, random_shape

from oracles import body_det, gl0_dim_bruteforce, pairing

SUPER = AlgebraSpec(1, [2], 2)
HEADER = "algebra n=1 gens 1*2 cap=2\n"


def M(text, header=HEADER):
    return parse(header + text)


X_SUPER = None


def x_super():
    return M("matrix deg=0 rows=1|1 cols=1|1\n1; 11\n12; 1\n")


def test_super_inverse_closed_form():
    X = x_super()
    expected = M("matrix deg=0 rows=1|1 cols=1|1\n1 + 11 12; -11\n-12; 1 - 11 12\n")
    assert invert(X) == expected
    assert invert_neumann(X) == expected
    assert mat_mul(X, expected) == identity(SUPER, "1|1")


def test_identity_cases():
    one = identity(SUPER, "1|1")
    assert invert(one) == one and invert_neumann(one) == one
    assert mat_mul(x_super(), one) == x_super()
    assert epsilon_tilde(one) == ((1, 0), (0, 1))


def test_diagonal_real_neumann():
    X = from_real(SUPER, "1|1", ((2, 0), (0, 3)))
    assert invert_neumann(X) == from_real(SUPER, "1|1", ((Fraction(1, 2), 0), (0, Fraction(1, 3))))


def test_epsilon_tilde_super():
    X = M("matrix deg=0 rows=1|1 cols=1|1\n2 + 11 12; 11\n12; 3\n")
    assert epsilon_tilde(X) == ((2, 0), (0, 3))
    soul = M("matrix deg=0 rows=1|1 cols=1|1\n11 12; 11\n12; 11 12\n")
    assert epsilon_tilde(soul) == ((0, 0), (0, 0))


def test_soul_diagonal_not_invertible():
    X = M("matrix deg=0 rows=1|1 cols=1|1\n11 12; 11\n12; 1\n")
    assert not is_invertible(X)
    assert invertibility_criteria(X) == (False, False, False)
    with pytest.raises(NonInvertible):
        invert(X)
    assert is_invertible(x_super())


def test_block_degree_law_at_degree_01():
    alg = AlgebraSpec(2, [1, 1, 1], 3)
    shape = GradedShape.parse("1|1,1,1")
    x = Degree.parse("01")
    one = [[alg.one()]]
    zero = [[alg.zero()]]
    allowed = {(0, 1), (1, 0), (2, 3), (3, 2)}
    grid = [[one if (i, j) in allowed else zero for j in range(4)] for i in range(4)]
    make_matrix(alg, shape, shape, x, grid)
    for i in range(4):
        for j in range(4):
            if (i, j) in allowed:
                continue
            bad = [row[:] for row in grid]
            bad[i][j] = one
            with pytest.raises(DegreeViolation):
                make_matrix(alg, shape, shape, x, bad)


def test_odd_entry_in_even_block_rejected():
    with pytest.raises(DegreeViolation):
        M("matrix deg=0 rows=1|1 cols=1|1\n11; 0\n0; 1\n")


def test_degree_additivity():
    rng = random.Random(4)
    alg = AlgebraSpec(2, [1, 1, 1], 3)
    shape = GradedShape.parse("1|1,1,1")
    X = random_matrix(rng, alg, shape, shape, Degree.parse("01"))
    Y = random_matrix(rng, alg, shape, shape, Degree.parse("10"))
    Z = mat_mul(X, Y)
    assert str(Z.degree) == "11"
    Z._validate()


def test_scalar_mul_signs():
    t1 = SUPER.generator(0)
    X = identity(SUPER, "1|1")
    Y = scalar_mul(t1, X)
    assert Y.rows[0][0] == t1 and Y.rows[1][1] == -t1
    two = SUPER.scalar(2)
    assert scalar_mul(two, x_super()).rows == tuple(tuple(v.scale(2) for v in r) for r in x_super().rows)


@pytest.mark.parametrize(
    "shape,expected",
    [("1|1,1,1", "4|4,4,4"), ("1|2,1,1", "7|6,6,6"), ("2|3", "13|12"), ("0|2", "4|0")],
)
def test_gl0_dimension(shape, expected):
    assert str(gl0_dimension(shape, shape)) == expected


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_gl0_dimension_bruteforce(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    r, c = random_shape(rng, n), random_shape(rng, n)
    assert list(gl0_dimension(r, c)) == gl0_dim_bruteforce(r, c)


@given(seeds)
def test_n1_dimension_formula(seed):
    rng = random.Random(seed)
    p, q = rng.randint(0, 5), rng.randint(0, 5)
    assert list(gl0_dimension((p, q), (p, q))) == [p * p + q * q, 2 * p * q]


def _case(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng, max_cap=3)
    shape = random_shape(rng, alg.n, max_total=4)
    return rng, alg, shape


@given(seeds)
def test_inverse_two_sided_and_involutive(seed):
    rng, alg, shape = _case(seed)
    X = random_degree0(rng, alg, shape)
    Xi = invert(X)
    one = identity(alg, shape)
    assert mat_mul(X, Xi) == one == mat_mul(Xi, X)
    assert invert_neumann(X) == Xi
    assert invert(Xi) == X


@given(seeds)
def test_criteria_agree_with_sympy_body(seed):
    rng, alg, shape = _case(seed)
    X = random_degree0(rng, alg, shape, invertible=rng.choice([True, False, None]))
    crit = invertibility_criteria(X)
    oracle = body_det(X.rows) != 0
    assert crit == (oracle, oracle, oracle)


@given(seeds)
def test_matrix_associativity_and_scalar_compat(seed):
    rng, alg, shape = _case(seed)
    N = 2**alg.n
    mid = random_shape(rng, alg.n, max_total=3)
    d = [Degree.from_index(rng.randrange(N), alg.n) for _ in range(3)]
    X = random_matrix(rng, alg, shape, mid, d[0])
    Y = random_matrix(rng, alg, mid, shape, d[1])
    Z = random_matrix(rng, alg, shape, mid, d[2])
    assert mat_mul(mat_mul(X, Y), Z) == mat_mul(X, mat_mul(Y, Z))
    lam = random_homogeneous(rng, alg, rng.randrange(N))
    assert mat_mul(scalar_mul(lam, X), Y) == scalar_mul(lam, mat_mul(X, Y))
