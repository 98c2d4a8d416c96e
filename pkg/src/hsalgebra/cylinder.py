"""Locally constant functions on the s-adic integers.

A function of level ``n`` depends only on the residue of its argument modulo
``s**n`` and is stored as the table of its values on ``0, ..., s**n - 1``.
Every integer-valued continuous function on Z_s is of this form, so the table
is an exact representation, not an approximation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, ParameterError, UnsupportedError
from .sadic import SAdic, valuation

RINGS = ("int", "rat", "cfloat")
_RANK = {r: i for i, r in enumerate(RINGS)}


def coerce(value, ring):
    if ring == "int":
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ParameterError(f"non-integer value {value} in int ring")
            return value.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            if isinstance(value, float) and value.is_integer():
                return int(value)
            raise ParameterError(f"value {value!r} is not an integer")
        return value
    if ring == "rat":
        if isinstance(value, complex):
            raise ParameterError(f"complex value {value!r} in rat ring")
        return Fraction(value)
    if ring == "cfloat":
        return complex(value)
    raise ParameterError(f"unknown scalar ring {ring!r}")


def infer_ring(values) -> str:
    ring = "int"
    for v in values:
        if isinstance(v, complex):
            return "cfloat"
        if isinstance(v, (Fraction, float)) and not (
            isinstance(v, Fraction) and v.denominator == 1
        ):
            ring = "rat"
    return ring


def join_rings(a, b):
    return a if _RANK[a] >= _RANK[b] else b


@dataclass(frozen=True, eq=False)
class CylFn:
    """Value table of a level-``n`` cylinder function.

    ``domain="units"`` asserts the function vanishes off the unit sphere,
    i.e. at every residue divisible by ``s``.  Equality is semantic: two
    functions are equal when they agree as functions on Z_s, regardless of
    the level, scalar ring or domain tag they are stored with.
    """

    s: int
    level: int
    values: tuple
    ring: str = "int"
    domain: str = "full"

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 2:
            raise ParameterError(f"base must be an integer >= 2, got {self.s!r}")
        if not isinstance(self.level, int) or self.level < 0:
            raise ParameterError(f"level must be >= 0, got {self.level!r}")
        if self.ring not in RINGS:
            raise ParameterError(f"unknown scalar ring {self.ring!r}")
        if self.domain not in ("full", "units"):
            raise ParameterError(f"unknown domain {self.domain!r}")
        values = tuple(coerce(v, self.ring) for v in self.values)
        if len(values) != self.s**self.level:
            raise ParameterError(
                f"expected {self.s ** self.level} values at level {self.level}, got {len(values)}"
            )
        if self.domain == "units" and any(
            values[r] != 0 for r in range(0, len(values), self.s)
        ):
            raise DomainError("units-domain function is nonzero at a non-unit residue")
        object.__setattr__(self, "values", values)

    @property
    def modulus(self) -> int:
        return self.s**self.level

    def __call__(self, z):
        return evaluate(self, z)

    def refine(self, level: int) -> "CylFn":
        return refine(self, level)

    def canonical(self) -> "CylFn":
        """The same function stored at the smallest possible level."""
        f = self
        while f.level > 0:
            coarse = f.s ** (f.level - 1)
            v = f.values
            if any(v[r] != v[r % coarse] for r in range(coarse, len(v))):
                break
            f = CylFn(f.s, f.level - 1, v[:coarse], f.ring, f.domain)
        return f

    def __eq__(self, other):
        if not isinstance(other, CylFn):
            return NotImplemented
        if self.s != other.s:
            return False
        n = max(self.level, other.level)
        return refine(self, n).values == refine(other, n).values

    def __hash__(self):
        c = self.canonical()
        return hash((c.s, c.level, c.values))

    def __add__(self, other):
        return ring_ops(self, other, "add")

    def __sub__(self, other):
        return ring_ops(self, scale(other, -1), "add")

    def __mul__(self, other):
        if isinstance(other, CylFn):
            return ring_ops(self, other, "mul")
        return scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(self, -1)

    def __repr__(self):
        return (
            f"CylFn(s={self.s}, level={self.level}, ring={self.ring!r}, "
            f"domain={self.domain!r}, values={list(self.values)})"
        )


def from_function(s, level, fn, ring=None, domain="full") -> CylFn:
    """Tabulate ``fn`` on the residues mod ``s**level``."""
    vals = [fn(r) for r in range(s**level)]
    return CylFn(s, level, tuple(vals), ring or infer_ring(vals), domain)


def constant(c, s, level=0, ring=None) -> CylFn:
    ring = ring or infer_ring([c])
    return CylFn(s, level, (c,) * s**level, ring)


def zero(s, level=0, domain="units") -> CylFn:
    return CylFn(s, level, (0,) * s**level, "int", domain)


def units_indicator(s, level=1) -> CylFn:
    """Characteristic function of the unit sphere."""
    return from_function(s, level, lambda r: int(r % s != 0), "int", "units")


def indicator(n: int, x: int, s: int) -> CylFn:
    if not isinstance(s, int) or s < 2:
        raise ParameterError(f"base must be an integer >= 2, got {s!r}")
    if n < 0 or not (0 <= x < s**n):
        raise ParameterError(f"residue {x} out of range for level {n}")
    vals = [0] * s**n
    vals[x] = 1
    domain = "units" if (n > 0 and x % s != 0) else "full"
    return CylFn(s, n, tuple(vals), "int", domain)


def evaluate(f: CylFn, z):
    if isinstance(z, SAdic):
        if z.base != f.s:
            raise ParameterError(f"base mismatch {z.base} vs {f.s}")
        if z.precision < f.level:
            raise ParameterError(
                f"SAdic precision {z.precision} below function level {f.level}"
            )
        return f.values[z.residue(f.level)]
    return f.values[z % f.modulus]


def refine(f: CylFn, level: int) -> CylFn:
    if level < f.level:
        raise ParameterError(f"cannot refine level {f.level} down to {level}")
    if level == f.level:
        return f
    m = f.modulus
    vals = tuple(f.values[r % m] for r in range(f.s**level))
    return CylFn(f.s, level, vals, f.ring, f.domain)


def alpha_endo(f: CylFn) -> CylFn:
    """``(alpha f)(z) = f(z / s)`` on multiples of ``s`` and 0 elsewhere."""
    s, m = f.s, f.modulus
    zero_ = coerce(0, f.ring)
    vals = tuple(
        f.values[(r // s) % m] if r % s == 0 else zero_ for r in range(s ** (f.level + 1))
    )
    return CylFn(s, f.level + 1, vals, f.ring, "full")


def scale(f: CylFn, c) -> CylFn:
    ring = join_rings(f.ring, infer_ring([c]))
    return CylFn(f.s, f.level, tuple(c * v for v in f.values), ring, f.domain)


def ring_ops(f: CylFn, g, kind: str) -> CylFn:
    if kind == "scale":
        return scale(f, g)
    if not isinstance(g, CylFn):
        raise ParameterError(f"{kind} needs two CylFn operands")
    if f.s != g.s:
        raise ParameterError(f"base mismatch {f.s} vs {g.s}")
    n = max(f.level, g.level)
    a, b = refine(f, n).values, refine(g, n).values
    ring = join_rings(f.ring, g.ring)
    if kind == "add":
        vals = tuple(x + y for x, y in zip(a, b))
        domain = "units" if f.domain == g.domain == "units" else "full"
    elif kind == "mul":
        vals = tuple(x * y for x, y in zip(a, b))
        domain = "units" if "units" in (f.domain, g.domain) else "full"
    else:
        raise ParameterError(f"unknown ring operation {kind!r}")
    return CylFn(f.s, n, vals, ring, domain)


def _exact_abs(v):
    if isinstance(v, complex):
        raise UnsupportedError("Lipschitz norms are exact-only; got complex scalars")
    return abs(Fraction(v))


def lipschitz(f: CylFn):
    """Exact ``(L, ||f||_L, sup|f|)`` of a units-supported function.

    Residues ``a, b`` in the same class mod ``s**k`` but different classes mod
    ``s**(k+1)`` sit at distance ``s**-k``, so ``L`` is the largest
    ``|f(a) - f(b)| * s**k`` over such pairs.  Per class mod ``s**k`` only the
    max/min of each child class mod ``s**(k+1)`` matter.
    """
    if f.domain != "units":
        raise DomainError("Lipschitz data is defined for units-domain functions")
    if f.ring == "cfloat":
        raise UnsupportedError("Lipschitz norms are exact-only; got complex scalars")
    s, n = f.s, f.level
    units = [r for r in range(f.modulus) if r % s]
    sup = max((_exact_abs(f.values[r]) for r in units), default=Fraction(0))
    L = Fraction(0)
    for k in range(n):
        children = {}
        for r in units:
            key = r % s ** (k + 1)
            v = Fraction(f.values[r])
            lo, hi = children.get(key, (v, v))
            children[key] = (min(lo, v), max(hi, v))
        parents = {}
        for key, span in children.items():
            parents.setdefault(key % s**k, []).append(span)
        for spans in parents.values():
            for (lo1, hi1), (lo2, hi2) in combinations(spans, 2):
                L = max(L, (hi1 - lo2) * s**k, (hi2 - lo1) * s**k)
    return L, sup + L, sup


def lipschitz_bruteforce(f: CylFn) -> Fraction:
    """All-pairs Lipschitz constant; quadratic, kept as an independent check."""
    if f.domain != "units":
        raise DomainError("Lipschitz data is defined for units-domain functions")
    s = f.s
    units = [r for r in range(f.modulus) if r % s]
    L = Fraction(0)
    for a, b in combinations(units, 2):
        diff = _exact_abs(f.values[a] - f.values[b])
        if diff:
            dist = Fraction(1, s ** valuation(a - b, s).m)
            L = max(L, diff / dist)
    return L
