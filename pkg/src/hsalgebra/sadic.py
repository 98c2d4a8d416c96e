"""Fixed-precision s-adic integers.

An :class:`SAdic` stores the residue of an s-adic integer modulo ``s**N`` as
its base-``s`` digits, least significant first.  Arithmetic propagates carries
digit by digit and drops anything past digit ``N - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, ParameterError


def _check_params(s, N):
    if not isinstance(s, int) or s < 2:
        raise ParameterError(f"base must be an integer >= 2, got {s!r}")
    if not isinstance(N, int) or N < 1:
        raise ParameterError(f"precision must be an integer >= 1, got {N!r}")


@dataclass(frozen=True)
class SAdic:
    base: int
    precision: int
    digits: tuple

    def __post_init__(self):
        _check_params(self.base, self.precision)
        digits = tuple(self.digits)
        if len(digits) != self.precision:
            raise ParameterError("digit count must equal precision")
        if any(not (0 <= d < self.base) for d in digits):
            raise ParameterError(f"digits must lie in [0, {self.base - 1}]")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_integer(cls, v: int, s: int, N: int) -> "SAdic":
        _check_params(s, N)
        r = v % s**N  # python's % already gives the base complement for v < 0
        digits = []
        for _ in range(N):
            r, d = divmod(r, s)
            digits.append(d)
        return cls(s, N, tuple(digits))

    def to_integer(self) -> int:
        """Residue in ``[0, s**N)``."""
        return sum(d * self.base**j for j, d in enumerate(self.digits))

    def residue(self, n: int) -> int:
        """Residue modulo ``s**n`` for ``n <= precision``."""
        if n > self.precision:
            raise ParameterError(f"precision {self.precision} < requested level {n}")
        return sum(d * self.base**j for j, d in enumerate(self.digits[:n]))

    def _check_compatible(self, other):
        if not isinstance(other, SAdic):
            raise ParameterError(f"expected SAdic, got {type(other).__name__}")
        if (self.base, self.precision) != (other.base, other.precision):
            raise ParameterError(
                f"mismatched operands: base/precision {self.base}/{self.precision} "
                f"vs {other.base}/{other.precision}"
            )

    def __add__(self, other):
        self._check_compatible(other)
        s, out, carry = self.base, [], 0
        for a, b in zip(self.digits, other.digits):
            carry, d = divmod(a + b + carry, s)
            out.append(d)
        return SAdic(s, self.precision, tuple(out))

    def __neg__(self):
        # -x = (~x) + 1 with ~ the digitwise complement d -> s-1-d
        s = self.base
        comp = SAdic(s, self.precision, tuple(s - 1 - d for d in self.digits))
        return comp + SAdic.from_integer(1, s, self.precision)

    def __sub__(self, other):
        self._check_compatible(other)
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        s, N = self.base, self.precision
        acc = [0] * N
        for i, a in enumerate(self.digits):
            if a == 0:
                continue
            for j, b in enumerate(other.digits[: N - i]):
                acc[i + j] += a * b
        out, carry = [], 0
        for k in range(N):
            carry, d = divmod(acc[k] + carry, s)
            out.append(d)
        return SAdic(s, N, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.digits)

    def __repr__(self):
        return f"SAdic(s={self.base}, N={self.precision}, digits={list(self.digits)})"


def from_integer(v: int, s: int, N: int) -> SAdic:
    return SAdic.from_integer(v, s, N)


def arith(a: SAdic, b: SAdic, kind: str) -> SAdic:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ParameterError(f"unknown arithmetic kind {kind!r}")


class Valuation(NamedTuple):
    """``l = s**m * unit_part`` with ``s`` not dividing ``unit_part``."""

    m: int
    unit_part: int
    s: int

    @property
    def value(self) -> int:
        return self.s**self.m * self.unit_part


class Norm(NamedTuple):
    """An s-adic absolute value.

    ``below_precision`` marks a digit vector that is zero at its precision:
    the true norm is then only known to be at most ``s**-N``.
    """

    value: Fraction
    below_precision: bool = False


class NormValuation(NamedTuple):
    norm: Norm
    valuation: Valuation | None
    is_unit: bool


def valuation(l: int, s: int) -> Valuation:
    if s < 2:
        raise ParameterError(f"base must be >= 2, got {s}")
    if l == 0:
        raise DomainError("valuation of 0 is undefined")
    m = 0
    while l % s == 0:
        l //= s
        m += 1
    return Valuation(m, l, s)


def unit_part(l: int, s: int) -> int:
    return valuation(l, s).unit_part


def norm(x: SAdic) -> Norm:
    for n, d in enumerate(x.digits):
        if d:
            return Norm(Fraction(1, x.base**n))
    return Norm(Fraction(0), below_precision=True)


def norm_valuation(x, s: int | None = None) -> NormValuation:
    """Norm, valuation and unit test for an :class:`SAdic` or an integer.

    Integers need the base ``s``.  The valuation is only available for
    integer input; the integer 0 is the true zero (norm 0, no valuation).
    """
    if isinstance(x, SAdic):
        return NormValuation(norm(x), None, x.digits[0] != 0)
    if s is None:
        raise ParameterError("integer input needs the base s")
    if x == 0:
        return NormValuation(Norm(Fraction(0)), None, False)
    v = valuation(x, s)
    return NormValuation(Norm(Fraction(1, s**v.m)), v, v.m == 0)


def distance(a: SAdic, b: SAdic) -> Norm:
    return norm(a - b)
