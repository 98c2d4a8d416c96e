"""Spectral triple on the Fredholm-module Hilbert space.

``D E^{odd,sign}_{(y,j,l)} = Lambda(y,l) E^{ev,sign}_{(y,j,l)}`` with
``Lambda(y,l) = c1 l + c2 s**n(y)``.  All commutators met here are weighted
label shifts, so their norms are exact maxima of entry moduli; only mixed
Toeplitz sums are estimated with floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cylinder import CylFn, evaluate, lipschitz
from .errors import ParameterError, UnsupportedError
from .fredholm import (
    IndexResult,
    ModuleTruncation,
    build_basis,
    represent_full,
    restricted_index,
)
from .khomology import HomT, gamma, n_of
from .operators import Diagonal, ToeplitzSymbol, k0_symbol
from .sparse import TruncOp, block_offdiag


@dataclass(frozen=True)
class LambdaParams:
    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        c1, c2 = Fraction(self.c1), Fraction(self.c2)
        if c1 <= 0 or c2 <= 0:
            raise ParameterError(f"c1 and c2 must be positive, got {c1}, {c2}")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    def bound_constant(self, s: int) -> Fraction:
        # s(c1 l + c2) + c1 |n| <= C (1 + l + |n|) holds termwise for this C
        return max(s * max(self.c1, self.c2), self.c1)


def lambda_val(y: int, l: int, p: LambdaParams, s: int) -> Fraction:
    if l < 0:
        raise ParameterError(f"l must be >= 0, got {l}")
    return p.c1 * l + p.c2 * s ** n_of(y, s)


def build_D(phi: HomT, p: LambdaParams, lmax: int):
    """``D: H_odd -> H_ev`` and the self-adjoint block operator ``[[0, D], [D*, 0]]``."""
    mt = build_basis(phi, lmax)
    s = phi.s
    D = TruncOp(mt.ev, mt.odd, {(u.swap(), u): lambda_val(u.y, u.l, p, s) for u in mt.odd})
    Dcal = block_offdiag(D, D.adjoint(safe_cols=mt.ev))
    return D, Dcal


def _labels(phi: HomT):
    """One ``(sign, y)`` per coefficient; copies ``j`` never change a norm."""
    return [("+" if c > 0 else "-", y) for y, c in phi.coeffs.items()]


def _values(F_l: CylFn, sign: str, y: int, s: int):
    """``(odd value, even value)`` of ``F(l, .)`` on a label of the given sign."""
    at_y, at_g = evaluate(F_l, y), evaluate(F_l, gamma(y, s))
    return (at_y, at_g) if sign == "+" else (at_g, at_y)


@dataclass
class ShiftNorm:
    exact: Fraction
    entry_scan: Fraction
    numeric: float


def comm_norm_shift(m: int, p: LambdaParams, phi: HomT, lmax: int) -> ShiftNorm:
    """``||[D, rho(V**m)]|| = c1 m``, cross-checked on the truncation (needs ``lmax >= m``)."""
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    exact = p.c1 * m if phi.coeffs else Fraction(0)
    mt = build_basis(phi, lmax)
    _, Dcal = build_D(phi, p, lmax)
    Vm = TruncOp.identity(mt.basis)
    V = represent_full("V", mt)
    for _ in range(m):
        Vm = V @ Vm
    comm = Dcal @ Vm - Vm @ Dcal
    safe = [u for u in comm.cols if u in comm.safe_cols]
    scan, _ = comm.max_abs_entry(safe)
    return ShiftNorm(exact, Fraction(scan), comm.norm_estimate(safe))


@dataclass
class MultNorm:
    exact: Fraction
    bound: Fraction
    exact_witness: tuple | None
    bound_witness: tuple | None


def _check_family(F: dict, s: int):
    for l, g in F.items():
        if l < 0:
            raise ParameterError("family index must be >= 0")
        if g.s != s:
            raise ParameterError("base mismatch")
        if g.ring == "cfloat":
            raise UnsupportedError("commutator norms are exact-only")
        if g.domain != "units":
            raise ParameterError("family members must be units-domain functions")


def comm_norm_mult(F: dict, p: LambdaParams, phi: HomT) -> MultNorm:
    """Exact ``||[D, rho(M_F)]||`` and the Lipschitz bound for it.

    ``F`` maps ``l`` to the units function ``F(l, .)``.  The entry on the
    label ``(y, l)`` is ``Lambda(y,l) (F(l,y) - F(l,gamma(y)))`` up to sign; it
    vanishes once ``n(y)`` exceeds the level of ``F(l, .)``, so the sup over
    the module is a max over ``supp(phi)`` and ``supp(F)``.
    """
    s = phi.s
    _check_family(F, s)
    exact, bound = Fraction(0), Fraction(0)
    ew = bw = None
    for l, g in sorted(F.items()):
        normL = lipschitz(g)[1]
        for sign, y in _labels(phi):
            lam = lambda_val(y, l, p, s)
            v_odd, v_ev = _values(g, sign, y, s)
            e = lam * abs(Fraction(v_odd - v_ev))
            b = lam * normL / s ** (n_of(y, s) - 1)
            if ew is None or e > exact:
                exact, ew = e, (sign, y, l)
            if bw is None or b > bound:
                bound, bw = b, (sign, y, l)
    return MultNorm(exact, bound, ew, bw)


@dataclass
class PolyElement:
    """Finite sum ``T(phi) + sum_{n>=0} V^n M_{F_n} + sum_{n<0} M_{F_n} (V*)^{-n}``.

    ``ideal[n][m]`` is the units function ``F_n(m, .)``.
    """

    s: int
    toeplitz: ToeplitzSymbol = field(default_factory=ToeplitzSymbol)
    ideal: dict = field(default_factory=dict)

    def __post_init__(self):
        for fam in self.ideal.values():
            _check_family(fam, self.s)

    def terms(self):
        for n in sorted(self.ideal):
            if self.ideal[n]:
                yield n, self.ideal[n]


def frechet_norm(a: PolyElement, N: int) -> Fraction:
    """``sum (1+|m|)^N |phi_m| + sum (1+|m|+|n|)^N ||F_n(m, .)||_L``."""
    if N < 0:
        raise ParameterError("N must be >= 0")
    total = a.toeplitz.norm(N)
    for n, fam in a.terms():
        for m, g in fam.items():
            total += (1 + abs(m) + abs(n)) ** N * lipschitz(g)[1]
    return total


def _ideal_term_norm(n: int, fam: dict, p: LambdaParams, phi: HomT) -> Fraction:
    """Exact norm of ``[D, rho(V^n M_F)]`` (``n >= 0``) or ``[D, rho(M_F V*^{-n})]``."""
    s = phi.s
    best = Fraction(0)
    for m, g in fam.items():
        l_in, l_out = (m, m + n) if n >= 0 else (m - n, m)
        for sign, y in _labels(phi):
            v_odd, v_ev = _values(g, sign, y, s)
            lam_in, lam_out = lambda_val(y, l_in, p, s), lambda_val(y, l_out, p, s)
            upper = lam_out * v_odd - lam_in * v_ev
            lower = lam_out * v_ev - lam_in * v_odd
            best = max(best, abs(Fraction(upper)), abs(Fraction(lower)))
    return best


@dataclass
class BoundReport:
    lhs: Fraction
    rhs: Fraction
    C: Fraction
    norm1: Fraction
    terms: list

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


def comm_bound_check(a: PolyElement, p: LambdaParams, phi: HomT) -> BoundReport:
    """Check ``||[D, rho(a)]|| <= C ||a||_1``.

    The left side is the triangle-inequality sum of the exact norms of the
    individual terms' commutators.
    """
    if a.s != phi.s:
        raise ParameterError("base mismatch")
    s = phi.s
    terms = []
    for m, c in a.toeplitz.coeffs.items():
        if isinstance(c, complex):
            raise UnsupportedError("exact bound check needs rational Toeplitz coefficients")
        norm = p.c1 * abs(m) * abs(Fraction(c)) if phi.coeffs else Fraction(0)
        terms.append((("T", m), norm))
    for n, fam in a.terms():
        terms.append((("I", n), _ideal_term_norm(n, fam, p, phi)))
    C = p.bound_constant(s)
    n1 = frechet_norm(a, 1)
    return BoundReport(sum((t for _, t in terms), Fraction(0)), C * n1, C, n1, terms)


def rho_poly(a: PolyElement, mt: ModuleTruncation) -> TruncOp:
    """``rho_ev(a) + rho_odd(a)`` on the truncation."""
    V, Vs = represent_full("V", mt), represent_full("V*", mt)
    ident = TruncOp.identity(mt.basis)

    def power(op, k):
        out = ident
        for _ in range(k):
            out = op @ out
        return out

    out = TruncOp.zeros(mt.basis, mt.basis)
    for m, c in a.toeplitz.coeffs.items():
        out = out + power(V if m >= 0 else Vs, abs(m)).scale(c)
    for n, fam in a.terms():
        M = represent_full(Diagonal.family(fam, a.s), mt)
        out = out + (power(V, n) @ M if n >= 0 else M @ power(Vs, -n))
    return out


def assembled_commutator(a: PolyElement, p: LambdaParams, phi: HomT, lmax: int) -> TruncOp:
    """``[D, rho(a)]`` on the truncation; faithful on its safe columns."""
    mt = build_basis(phi, lmax)
    _, Dcal = build_D(phi, p, lmax)
    r = rho_poly(a, mt)
    return Dcal @ r - r @ Dcal


@dataclass
class ToeplitzBound:
    triangle: Fraction
    rhs: Fraction
    numeric: float

    @property
    def ok(self) -> bool:
        return self.triangle <= self.rhs


def toeplitz_bound(phi_sym: ToeplitzSymbol, p: LambdaParams, phi: HomT, lmax: int) -> ToeplitzBound:
    """``||[D, rho(T(phi))]|| <= c1 sum |m||phi_m| <= c1 ||phi||_1``.

    ``numeric`` is the float norm of the assembled commutator on its safe
    columns, a lower estimate of the true norm.
    """
    tri = p.c1 * sum((abs(m) * abs(Fraction(c)) for m, c in phi_sym.coeffs.items()), Fraction(0))
    if not phi.coeffs:
        tri = Fraction(0)
    comm = assembled_commutator(PolyElement(phi.s, phi_sym), p, phi, lmax)
    safe = [u for u in comm.cols if u in comm.safe_cols]
    return ToeplitzBound(tri, p.c1 * phi_sym.norm(1), comm.norm_estimate(safe))


def resolvent_count(phi: HomT, p: LambdaParams, R) -> int:
    """Per-parity number of basis vectors with ``Lambda(y, l) <= R``."""
    R = Fraction(R)
    s = phi.s
    total = 0
    for y, c in phi.coeffs.items():
        head = R - p.c2 * s ** n_of(y, s)
        if head >= 0:
            total += abs(c) * (math.floor(head / p.c1) + 1)
    return total


def triple_index(phi: HomT, p: LambdaParams, X: CylFn, lmax: int = 0) -> IndexResult:
    """Index of ``rho_ev(P_X) D rho_odd(P_X)`` between the projection ranges."""
    if X.s != phi.s:
        raise ParameterError("base mismatch")
    mt = build_basis(phi, lmax)
    D, _ = build_D(phi, p, lmax)
    return restricted_index(mt, k0_symbol(X), D)
