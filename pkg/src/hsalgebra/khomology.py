"""Free generators of C_1(Z_s^x, Z) and the homomorphisms paired with them.

``T`` is the set of integers ``x >= 2`` not divisible by ``s``.  Each ``x`` in
``T`` gives the generator ``1_(x)``, the indicator of ``x + s**n(x) Z_s``
where ``s**(n(x)-1) <= x < s**n(x)``.  ``gamma(x)`` drops the leading base-s
digit of ``x``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .cylinder import CylFn, evaluate, indicator, zero
from .errors import DomainError, ParameterError


def in_T(y: int, s: int) -> bool:
    return isinstance(y, int) and y >= 2 and y % s != 0


def check_T(y: int, s: int):
    if not in_T(y, s):
        raise DomainError(f"{y} is not in T for s={s} (need y >= 2 and s not dividing y)")


def level_gamma(x: int, s: int):
    """``(n, gamma)`` with ``s**(n-1) <= x < s**n`` and ``gamma = x mod s**(n-1)``."""
    if x < 2:
        raise DomainError(f"n(x) and gamma(x) need x >= 2, got {x}")
    n, p = 0, 1
    while p <= x:
        p *= s
        n += 1
    return n, x % (p // s)


def n_of(x: int, s: int) -> int:
    return level_gamma(x, s)[0]


def gamma(x: int, s: int) -> int:
    return level_gamma(x, s)[1]


def gamma_orbit(z: int, s: int) -> list:
    """``z, gamma(z), gamma^2(z), ...`` restricted to members of ``T``.

    Iterates of a member of ``T`` stay in ``T`` until they reach 0 or 1; for
    ``z`` divisible by ``s`` every iterate is too, so the orbit is empty.
    """
    orbit = []
    while z >= 2:
        if z % s:
            orbit.append(z)
        z = gamma(z, s)
    return orbit


def generator(x: int, s: int) -> CylFn:
    check_T(x, s)
    f = indicator(n_of(x, s), x, s)
    return CylFn(s, f.level, f.values, "int", "units")


@dataclass(frozen=True)
class HomT:
    """Finitely supported homomorphism ``sum_y phi_(y) e_(y)``."""

    s: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 2:
            raise ParameterError(f"base must be an integer >= 2, got {self.s!r}")
        clean = {}
        for y, phi in sorted(self.coeffs.items()):
            check_T(y, self.s)
            if not isinstance(phi, int):
                raise ParameterError(f"coefficient for y={y} must be an integer")
            if phi:
                clean[y] = phi
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, y):
        return self.coeffs.get(y, 0)

    @property
    def support(self):
        return tuple(self.coeffs)

    def __add__(self, other):
        if self.s != other.s:
            raise ParameterError("base mismatch")
        total = Counter(self.coeffs)
        total.update(other.coeffs)
        return HomT(self.s, dict(total))

    def __neg__(self):
        return HomT(self.s, {y: -c for y, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, f: CylFn) -> int:
        return pair(self, f)

    def __hash__(self):
        return hash((self.s, tuple(self.coeffs.items())))


def _check_c1(f: CylFn):
    if f.ring != "int":
        raise DomainError("expansion needs an integer-valued function")
    if any(f.values[r] for r in range(0, f.modulus, f.s)):
        raise DomainError("function is supported off the unit sphere")
    if evaluate(f, 1) != 0:
        raise DomainError("function does not vanish at 1")


def expand(f: CylFn) -> dict:
    """Coefficients of ``f`` in the basis ``{1_(x)}`` via ``e_(x) = delta_x - delta_gamma(x)``.

    Only ``x < s**level(f)`` can carry a coefficient: beyond that ``x`` and
    ``gamma(x)`` agree modulo ``s**level(f)``.
    """
    _check_c1(f)
    s = f.s
    out = {}
    for x in range(2, f.modulus):
        if x % s:
            c = evaluate(f, x) - evaluate(f, gamma(x, s))
            if c:
                out[x] = c
    return out


def _rewrite_cylinder(n: int, x: int, s: int, coeff: int, out: Counter):
    # 1_(n,x) = 1_(n-1,x) - sum_{l=1}^{s-1} 1_(x + l s^(n-1)) while x < s^(n-1)
    while n > n_of(x, s):
        for l in range(1, s):
            out[x + l * s ** (n - 1)] -= coeff
        n -= 1
    out[x] += coeff


def expand_recursive(f: CylFn) -> dict:
    """Same coefficients as :func:`expand`, by rewriting each level cylinder."""
    _check_c1(f)
    s = f.s
    out = Counter()
    for r, v in enumerate(f.values):
        if v and r != 1:
            _rewrite_cylinder(f.level, r, s, v, out)
    return {x: c for x, c in sorted(out.items()) if c}


def reconstruct(coeffs, s: int, level: int | None = None) -> CylFn:
    """``sum_x coeffs[x] * 1_(x)`` at the common level (or ``level`` if given)."""
    if isinstance(coeffs, HomT):
        coeffs = coeffs.coeffs
    for x in coeffs:
        check_T(x, s)
    top = max((n_of(x, s) for x in coeffs), default=0)
    if level is None:
        level = top
    elif level < top:
        raise ParameterError(f"level {level} too small for generators up to level {top}")
    modulus = s**level
    vals = [0] * modulus
    for x, c in coeffs.items():
        step = s ** n_of(x, s)
        for r in range(x, modulus, step):
            vals[r] += c
    return CylFn(s, level, tuple(vals), "int", "units") if level else zero(s)


def special_hom(kind: str, z: int, f: CylFn) -> int:
    """``delta_z(f) = f(z)`` or ``e_(z)(f) = f(z) - f(gamma(z))``."""
    if kind == "delta":
        if z < 0:
            raise DomainError("delta_z needs z >= 0")
        return evaluate(f, z)
    if kind == "e":
        return evaluate(f, z) - evaluate(f, gamma(z, f.s))
    raise ParameterError(f"unknown homomorphism kind {kind!r}")


def delta_decompose(z: int, s: int) -> HomT:
    return HomT(s, {y: 1 for y in gamma_orbit(z, s)})


def pair(phi: HomT, f: CylFn) -> int:
    if phi.s != f.s:
        raise ParameterError("base mismatch")
    return sum(c * special_hom("e", y, f) for y, c in phi.coeffs.items())
