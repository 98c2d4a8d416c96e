from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsalgebra.cylinder import (
    CylFn,
    alpha_endo,
    constant,
    evaluate,
    from_function,
    indicator,
    lipschitz,
    refine,
    ring_ops,
    units_indicator,
)
from hsalgebra.errors import DomainError, ParameterError, UnsupportedError
from hsalgebra.sadic import from_integer


@st.composite
def cylfns(draw, s=None, max_level=3, domain="full", rational=False):
    s = s or draw(st.integers(2, 4))
    level = draw(st.integers(0, max_level))
    elem = st.fractions(-5, 5, max_denominator=4) if rational else st.integers(-5, 5)
    vals = [draw(elem) for _ in range(s**level)]
    if domain == "units":
        vals = [0 if r % s == 0 else v for r, v in enumerate(vals)]
    return CylFn(s, level, tuple(vals), "rat" if rational else "int", domain)


def digit_distance(a, b, s, n):
    """s-adic distance of residues mod s**n read off their digit strings."""
    for k in range(n):
        if (a // s**k) % s != (b // s**k) % s:
            return Fraction(1, s**k)
    return Fraction(0)


def lipschitz_oracle(f):
    units = [r for r in range(f.modulus) if r % f.s]
    best = Fraction(0)
    for a, b in product(units, units):
        d = digit_distance(a, b, f.s, f.level)
        if d:
            best = max(best, abs(Fraction(f.values[a] - f.values[b])) / d)
    return best


def test_generator_lipschitz_data():
    L, normL, sup = lipschitz(CylFn(2, 2, (0, 0, 0, 1), domain="units"))
    assert (L, normL, sup) == (2, 3, 1)


def test_indicator_domain_tag():
    assert indicator(2, 3, 2).domain == "units"
    assert indicator(2, 2, 2).domain == "full"
    assert indicator(0, 0, 3).domain == "full"


def test_units_domain_enforced():
    with pytest.raises(DomainError):
        CylFn(2, 1, (1, 1), domain="units")


def test_wrong_table_length():
    with pytest.raises(ParameterError):
        CylFn(3, 1, (1, 2))


def test_lipschitz_needs_units_and_exact():
    with pytest.raises(DomainError):
        lipschitz(constant(1, 2))
    with pytest.raises(UnsupportedError):
        lipschitz(CylFn(2, 1, (0, 1j), "cfloat", "units"))


def test_evaluate_on_sadic():
    f = from_function(3, 2, lambda r: r)
    assert evaluate(f, from_integer(-1, 3, 4)) == 8
    with pytest.raises(ParameterError):
        evaluate(f, from_integer(5, 3, 1))


def test_alpha_of_constant_is_multiples_indicator():
    g = alpha_endo(constant(1, 3))
    assert [g(r) for r in range(6)] == [1, 0, 0, 1, 0, 0]


def test_semantic_equality_ignores_level():
    f = indicator(1, 1, 2)
    assert refine(f, 3) == f
    assert hash(refine(f, 3)) == hash(f)
    assert f != indicator(1, 0, 2)


def test_refine_down_rejected():
    with pytest.raises(ParameterError):
        refine(constant(1, 2, level=2), 1)


def test_units_indicator():
    assert units_indicator(3).values == (0, 1, 1)


@given(cylfns(), st.data())
def test_alpha_is_multiplicative(f, data):
    g = data.draw(cylfns(s=f.s))
    assert alpha_endo(f * g) == alpha_endo(f) * alpha_endo(g)
    assert alpha_endo(f + g) == alpha_endo(f) + alpha_endo(g)


@given(cylfns(), st.integers(-200, 200))
def test_alpha_pointwise(f, z):
    s = f.s
    want = f(z // s) if z % s == 0 else 0
    assert alpha_endo(f)(z) == want


@given(cylfns(), st.data(), st.integers(0, 2))
def test_ops_commute_with_refinement(f, data, extra):
    g = data.draw(cylfns(s=f.s))
    n = max(f.level, g.level) + extra
    for kind in ("add", "mul"):
        lhs = ring_ops(refine(f, n), refine(g, n), kind)
        assert lhs.values == refine(ring_ops(f, g, kind), n).values


@given(cylfns(max_level=3, domain="units", rational=True))
def test_lipschitz_matches_digit_oracle(f):
    L, normL, sup = lipschitz(f)
    assert L == lipschitz_oracle(f)
    assert normL == sup + L


@given(cylfns(max_level=3, domain="units"), st.data())
def test_lipschitz_seminorm_laws(f, data):
    g = data.draw(cylfns(s=f.s, max_level=3, domain="units"))
    c = data.draw(st.integers(-4, 4))
    assert lipschitz(f + g)[0] <= lipschitz(f)[0] + lipschitz(g)[0]
    assert lipschitz(f * c)[0] == abs(c) * lipschitz(f)[0]
    assert lipschitz(refine(f, f.level + 1))[0] == lipschitz(f)[0]
