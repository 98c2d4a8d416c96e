"""Seeded sampling with a cross-language reproducible contract.

Draws come from SplitMix64: ``state += 0x9E3779B97F4A7C15``, then the
standard xor-shift-multiply finaliser.  ``randint(lo, hi)`` is
``lo + next_u64() % (hi - lo + 1)``; every other helper is built from it in
the order written here, so a port that reproduces the 64-bit stream
reproduces every sampled case.
"""
from __future__ import annotations

from fractions import Fraction

from .cylinder import CylFn
from .khomology import HomT

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` (modulo reduction)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def sample(self, seq, k: int) -> list:
        """``k`` distinct elements by partial Fisher-Yates."""
        pool = list(seq)
        for i in range(k):
            j = self.randint(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def fraction(self, num: int = 5, den: int = 4) -> Fraction:
        return Fraction(self.randint(-num, num), self.randint(1, den))

    def spawn(self, tag: int) -> "SplitMix64":
        return SplitMix64(self.next_u64() ^ (tag * 0x9E3779B97F4A7C15 & MASK))


def int_cylfn(rng, s, level, lo=-3, hi=3, domain="full") -> CylFn:
    vals = [rng.randint(lo, hi) for _ in range(s**level)]
    if domain == "units":
        vals = [0 if r % s == 0 else v for r, v in enumerate(vals)]
    return CylFn(s, level, tuple(vals), "int", domain)


def c1_function(rng, s, level, lo=-3, hi=3) -> CylFn:
    """Integer function on the units vanishing at 1."""
    f = int_cylfn(rng, s, level, lo, hi, "units")
    vals = list(f.values)
    if level:
        vals[1] = 0
    return CylFn(s, level, tuple(vals), "int", "units")


def rat_units_fn(rng, s, level, num=4, den=3) -> CylFn:
    vals = [Fraction(0) if r % s == 0 else rng.fraction(num, den) for r in range(s**level)]
    return CylFn(s, level, tuple(vals), "rat", "units")


def units_family(rng, s, max_level=4, max_support=3, lmax=3) -> dict:
    """``{l: F(l, .)}`` with up to ``max_support`` distinct ``l`` in ``[0, lmax]``."""
    ls = rng.sample(range(lmax + 1), rng.randint(1, max_support))
    return {l: rat_units_fn(rng, s, rng.randint(0, max_level)) for l in sorted(ls)}


def T_members(s, lo=2, hi=100):
    return [y for y in range(lo, hi + 1) if y % s]


def random_phi(rng, s, hi=100, max_support=6, coef=3) -> HomT:
    ys = rng.sample(T_members(s, 2, hi), rng.randint(1, max_support))
    coeffs = {}
    for y in ys:
        c = rng.randint(1, coef)
        coeffs[y] = c if rng.randint(0, 1) else -c
    return HomT(s, coeffs)


def zero_one_units_fn(rng, s, level) -> CylFn:
    """Random clopen subset of the units avoiding 1, as a 0/1 function."""
    vals = [0 if (r % s == 0 or r == 1) else rng.randint(0, 1) for r in range(s**level)]
    return CylFn(s, level, tuple(vals), "int", "units")
