from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsalgebra.errors import DomainError, ParameterError
from hsalgebra.sadic import (
    SAdic,
    arith,
    distance,
    from_integer,
    norm,
    norm_valuation,
    valuation,
)

bases = st.integers(2, 7)
precisions = st.integers(1, 10)
ints = st.integers(-10**9, 10**9)


def test_digits_of_twelve_base_three():
    assert from_integer(12, 3, 3).digits == (0, 1, 1)


def test_minus_one_is_all_top_digits():
    assert from_integer(-1, 2, 4).digits == (1, 1, 1, 1)
    assert from_integer(-1, 5, 3).digits == (4, 4, 4)


def test_product_with_carry():
    assert (from_integer(3, 5, 2) * from_integer(4, 5, 2)).digits == (2, 2)


def test_norm_and_valuation_of_minus_four():
    nv = norm_valuation(-4, 2)
    assert nv.norm.value == Fraction(1, 4)
    assert (nv.valuation.m, nv.valuation.unit_part) == (2, -1)
    assert not nv.is_unit


def test_zero_norms():
    assert norm_valuation(0, 3).norm.value == 0
    assert norm_valuation(0, 3).valuation is None
    z = norm(from_integer(27, 3, 3))
    assert z.value == 0 and z.below_precision


def test_valuation_of_zero_rejected():
    with pytest.raises(DomainError):
        valuation(0, 2)


@pytest.mark.parametrize("s,N", [(1, 3), (2, 0), (2.0, 3)])
def test_bad_parameters(s, N):
    with pytest.raises(ParameterError):
        from_integer(1, s, N)


def test_mixed_bases_rejected():
    with pytest.raises(ParameterError):
        from_integer(1, 2, 3) + from_integer(1, 3, 3)
    with pytest.raises(ParameterError):
        from_integer(1, 2, 3) * from_integer(1, 2, 4)


def test_digit_range_checked():
    with pytest.raises(ParameterError):
        SAdic(3, 2, (0, 3))


# oracle: python integers mod s**N


@given(bases, precisions, ints, ints)
def test_ring_ops_match_integer_residues(s, N, u, v):
    a, b = from_integer(u, s, N), from_integer(v, s, N)
    assert (a + b).to_integer() == (u + v) % s**N
    assert (a - b).to_integer() == (u - v) % s**N
    assert (a * b).to_integer() == (u * v) % s**N
    assert (-a).to_integer() == (-u) % s**N
    assert arith(a, b, "mul") == a * b


@given(bases, precisions, ints, ints, ints)
def test_ring_axioms(s, N, u, v, w):
    a, b, c = (from_integer(t, s, N) for t in (u, v, w))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == from_integer(0, s, N)


@given(bases, precisions, ints, ints, ints)
def test_ultrametric(s, N, u, v, w):
    a, b, c = (from_integer(t, s, N) for t in (u, v, w))
    assert distance(a, c).value <= max(distance(a, b).value, distance(b, c).value)


@given(bases, ints.filter(bool))
def test_valuation_recomposes(s, l):
    v = valuation(l, s)
    assert v.value == l
    assert v.unit_part % s != 0
    assert norm_valuation(l, s).norm.value == Fraction(1, s**v.m)


@given(bases, precisions, ints)
def test_norm_agrees_with_integer_valuation(s, N, u):
    x = from_integer(u, s, N)
    r = u % s**N
    if r == 0:
        assert norm(x).below_precision
    else:
        assert norm(x).value == Fraction(1, s ** valuation(r, s).m)
