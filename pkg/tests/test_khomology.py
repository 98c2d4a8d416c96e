import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsalgebra.cylinder import CylFn, indicator
from hsalgebra.errors import DomainError, ParameterError
from hsalgebra.khomology import (
    HomT,
    delta_decompose,
    expand,
    expand_recursive,
    gamma,
    gamma_orbit,
    generator,
    level_gamma,
    n_of,
    pair,
    reconstruct,
    special_hom,
)


@st.composite
def c1_functions(draw, s=None, max_level=4):
    s = s or draw(st.sampled_from([2, 3, 5]))
    level = draw(st.integers(0, max_level if s < 5 else 3))
    vals = [0 if r % s == 0 or r == 1 else draw(st.integers(-4, 4)) for r in range(s**level)]
    return CylFn(s, level, tuple(vals), domain="units")


@st.composite
def homs(draw, s=None):
    s = s or draw(st.sampled_from([2, 3]))
    ys = draw(st.lists(st.integers(2, 60).filter(lambda y: y % s), max_size=5, unique=True))
    return HomT(s, {y: draw(st.integers(-3, 3)) for y in ys})


def test_level_and_gamma():
    assert level_gamma(3, 2) == (2, 1)
    assert level_gamma(7, 2) == (3, 3)
    assert level_gamma(2, 3) == (1, 0)
    assert level_gamma(9, 3) == (3, 0)
    with pytest.raises(DomainError):
        n_of(1, 2)


def test_expansion_examples():
    assert expand(CylFn(2, 3, (0, 0, 0, 1, 0, 0, 0, 0), domain="units")) == {3: 1, 7: -1}
    f = CylFn(3, 2, tuple(int(r == 2) for r in range(9)), domain="units")
    assert expand(f) == expand_recursive(f) == {2: 1, 5: -1, 8: -1}


def test_gamma_orbits():
    assert gamma_orbit(7, 2) == [7, 3]
    assert gamma_orbit(5, 3) == [5, 2]
    assert gamma_orbit(6, 3) == []


def test_expand_rejects_f_at_one():
    with pytest.raises(DomainError):
        expand(CylFn(2, 1, (0, 1), domain="units"))


def test_hom_rejects_non_members():
    with pytest.raises(DomainError):
        HomT(2, {4: 1})
    with pytest.raises(DomainError):
        HomT(3, {1: 1})


def test_hom_arithmetic_drops_zeros():
    a = HomT(2, {3: 2, 5: -1})
    assert (a - a).coeffs == {}
    assert (a + a)[3] == 4
    assert a[7] == 0


def test_pair_base_mismatch():
    with pytest.raises(ParameterError):
        pair(HomT(2, {3: 1}), generator(2, 3))


@given(c1_functions())
def test_expansion_methods_agree_and_invert(f):
    c = expand(f)
    assert c == expand_recursive(f)
    assert reconstruct(c, f.s, f.level) == f
    assert all(n_of(x, f.s) <= max(f.level, 1) for x in c)


@given(st.sampled_from([2, 3, 5]), st.data())
def test_reconstruct_then_expand(s, data):
    xs = data.draw(st.lists(st.integers(2, 120).filter(lambda y: y % s), unique=True, max_size=6))
    coeffs = {x: data.draw(st.integers(-3, 3).filter(bool)) for x in xs}
    assert expand(reconstruct(coeffs, s)) == coeffs


@given(st.sampled_from([2, 3]), st.integers(2, 400), st.integers(2, 400))
def test_e_functionals_are_dual_to_generators(s, z, x):
    if z % s == 0 or x % s == 0:
        return
    assert special_hom("e", z, generator(x, s)) == int(z == x)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 400), c1_functions())
def test_delta_is_orbit_sum(s, z, f):
    if f.s != s:
        return
    assert pair(delta_decompose(z, s), f) == special_hom("delta", z, f)


@given(st.sampled_from([2, 3]), st.integers(2, 5000))
def test_gamma_strictly_decreases(s, x):
    assert gamma(x, s) < x


@given(homs(), st.data())
def test_pairing_is_bilinear(phi, data):
    f = data.draw(c1_functions(s=phi.s, max_level=3))
    g = data.draw(c1_functions(s=phi.s, max_level=3))
    psi = data.draw(homs(s=phi.s))
    assert pair(phi, f + g) == pair(phi, f) + pair(phi, g)
    assert pair(phi + psi, f) == pair(phi, f) + pair(psi, f)
    assert phi(f) == pair(phi, f)


def test_generator_is_indicator_at_its_level():
    assert generator(7, 2) == indicator(3, 7, 2)
