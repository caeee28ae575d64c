from hypothesis import given, strategies as st
import pytest

from z2n import Degree, DimensionError, enumerate_degrees, koszul_sign, scalar_product
from z2n.degree import pairing_parity

from oracles import bits, pairing


def test_enumerate_n2():
    assert [str(d) for d in enumerate_degrees(2)] == ["00", "01", "10", "11"]


def test_enumerate_n1_and_n3():
    assert [str(d) for d in enumerate_degrees(1)] == ["0", "1"]
    d3 = enumerate_degrees(3)
    assert len(d3) == 8 and str(d3[0]) == "000" and str(d3[-1]) == "111"


def test_enumerate_rejects_zero():
    with pytest.raises(DimensionError):
        enumerate_degrees(0)


@pytest.mark.parametrize("a,b,sp,sign", [("11", "11", 2, 1), ("01", "10", 0, 1), ("01", "01", 1, -1)])
def test_pairings(a, b, sp, sign):
    assert scalar_product(Degree.parse(a), Degree.parse(b)) == sp
    assert koszul_sign(Degree.parse(a), Degree.parse(b)) == sign


def test_zero_degree_commutes():
    z = Degree.zero(3)
    assert all(koszul_sign(z, g) == 1 for g in enumerate_degrees(3))


degrees = st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1)))


@given(degrees)
def test_index_is_lex_position(t):
    n, i, _ = t
    d = Degree.from_index(i, n)
    assert d.index == i and tuple(d) == bits(i, n)
    assert enumerate_degrees(n)[i] == d


@given(degrees)
def test_addition_and_pairing(t):
    n, i, j = t
    a, b = Degree.from_index(i, n), Degree.from_index(j, n)
    assert (a + b).index == i ^ j
    assert (a + a).is_zero()
    assert pairing_parity(i, j) == pairing(i, j, n) == scalar_product(a, b) % 2
    assert koszul_sign(a, b) == koszul_sign(b, a)
