import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecodes.gf import GF, FieldError, add, factor_prime_power, inv, mul, nonzero_elements, poly_mul_reduce

SMALL_Q = [2, 3, 4, 5, 7, 8, 9]
LAGRANGE_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_field_examples():
    F = GF(5)
    assert add(F(3), F(4)) == F(2)
    assert mul(F(3), F(4)) == F(2)
    assert inv(F(2)) == F(3)
    assert inv(F.one) == F.one
    for a in F.elements():
        assert add(a, F.zero) == a
        assert mul(a, F.one) == a


def test_gf4_examples():
    F = GF(4)
    a = F.alpha()
    assert a + a == F.zero
    assert a * a == a + F.one
    assert inv(a) == a + F.one
    assert repr(a * a) == "a+1"


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inv(GF(7).zero)


def test_nonzero_elements():
    assert [int(x) for x in nonzero_elements(GF(3))] == [1, 2]
    assert len(nonzero_elements(GF(5))) == 4
    F = GF(4)
    nz = nonzero_elements(F)
    assert len(nz) == 3 and F.alpha() in nz and F.alpha() + F.one in nz
    # powers of the generator, starting at 1
    g = nz[1]
    assert all(nz[i] == g**i for i in range(3))


@pytest.mark.parametrize("q", [1, 6, 10, 12, 15, 0, -3])
def test_rejects_non_prime_powers(q):
    with pytest.raises(FieldError):
        GF(q)


def test_factor_prime_power():
    assert factor_prime_power(27) == (3, 3)
    assert factor_prime_power(2) == (2, 1)
    assert factor_prime_power(16) == (2, 4)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_tables_match_polynomial_multiplication(q):
    F = GF(q)
    for a in range(q):
        for b in range(q):
            assert int(F.mul_table[a, b]) == poly_mul_reduce(F, a, b)


@pytest.mark.parametrize("q", LAGRANGE_Q)
def test_lagrange(q):
    F = GF(q)
    for a in nonzero_elements(F):
        assert a ** (q - 1) == F.one


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = GF(q)
    E = F.elements()
    for a, b, c in itertools.product(E, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in E:
        assert a + (-a) == F.zero
        if a:
            assert a * inv(a) == F.one


@given(st.sampled_from(SMALL_Q), st.data())
def test_field_ops_commute_and_divide(q, data):
    F = GF(q)
    a = F(data.draw(st.integers(0, q - 1)) if F.e > 1 else data.draw(st.integers(-50, 50)))
    b = F(data.draw(st.integers(1, q - 1)))
    assert a + b == b + a
    assert a * b == b * a
    assert (a / b) * b == a
    assert a - b + b == a


def test_coefficient_tuple_constructor():
    F = GF(9)
    x = F((1, 2))
    assert x.coeffs == (1, 2)
    with pytest.raises(FieldError):
        F((1, 2, 0))


def test_mixing_fields_is_an_error():
    with pytest.raises((ValueError, TypeError)):
        GF(3).one + GF(5).one
