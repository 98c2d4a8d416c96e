"""Truncated operators on l^2(Z) generating the crossed product C(Z_s) x_alpha N.

The window ``{-M, ..., M}`` carries the basis ``E_l``.  ``V E_l = E_{s l}``
and ``V* E_l = E_{l/s}`` (zero when ``s`` does not divide ``l``); multiplication
operators are diagonal.  Every operator records its faithful columns.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .cylinder import CylFn, alpha_endo, evaluate
from .errors import DomainError, ParameterError
from .sadic import valuation
from .sparse import TruncOp


@dataclass(frozen=True)
class Window:
    M: int

    def __post_init__(self):
        if not isinstance(self.M, int) or self.M < 1:
            raise ParameterError(f"window size must be >= 1, got {self.M!r}")

    @property
    def basis(self):
        return tuple(range(-self.M, self.M + 1))

    def __contains__(self, l):
        return -self.M <= l <= self.M


class Diagonal:
    """A diagonal operator on l^2(Z), given by its entry at each ``E_l``.

    Products of diagonals are pointwise.  The same symbol drives both the
    window truncation and the Fredholm-module representation, which
    evaluates it at ``s**l * y`` and ``s**l * gamma(y)``.
    """

    def __init__(self, fn, name="diag"):
        self._fn = fn
        self.name = name

    def __call__(self, l: int):
        return self._fn(l)

    def __mul__(self, other):
        if isinstance(other, Diagonal):
            return Diagonal(lambda l: self(l) * other(l), f"{self.name}*{other.name}")
        return Diagonal(lambda l: other * self(l), f"{other}*{self.name}")

    __rmul__ = __mul__

    def __add__(self, other):
        return Diagonal(lambda l: self(l) + other(l), f"{self.name}+{other.name}")

    def __repr__(self):
        return f"Diagonal({self.name})"

    @classmethod
    def mult(cls, f: CylFn):
        """``M_f E_l = f(l) E_l``."""
        return cls(lambda l: evaluate(f, l), "M_f")

    @classmethod
    def m_lambda(cls, lam: CylFn):
        """``m_lambda E_l = lambda(l') E_l`` with ``l = s**m l'``; zero at ``l = 0``."""
        if lam.domain != "units":
            raise DomainError("m_lambda needs a units-domain function")
        s = lam.s
        return cls(lambda l: evaluate(lam, valuation(l, s).unit_part) if l else 0, "m_lambda")

    @classmethod
    def mu_chi(cls, chi: "ChiSeq", s: int):
        """``mu_chi E_l = chi(m) E_l`` with ``l = s**m l'``; zero at ``l = 0``."""
        return cls(lambda l: chi(valuation(l, s).m) if l else 0, "mu_chi")

    @classmethod
    def family(cls, F: dict, s: int):
        """Diagonal ``M_f`` with ``f(s**m x) = F[m](x)`` for units ``x``, ``f(0) = 0``."""
        def fn(l):
            if l == 0:
                return 0
            v = valuation(l, s)
            g = F.get(v.m)
            return evaluate(g, v.unit_part) if g is not None else 0
        return cls(fn, "M_F")


@dataclass(frozen=True)
class ChiSeq:
    """Finitely supported sequence on ``Z_{>=0}``."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(m < 0 for m in self.values):
            raise ParameterError("sequence indices must be >= 0")
        object.__setattr__(self, "values", {m: v for m, v in self.values.items() if v})

    @classmethod
    def delta(cls, p: int):
        """``chi_p(m) = 1 if m == p else 0``."""
        return cls({p: 1})

    def __call__(self, m):
        return self.values.get(m, 0)


@dataclass(frozen=True)
class ToeplitzSymbol:
    """Finitely many Fourier coefficients ``phi_m`` of a symbol on the circle."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {m: c for m, c in sorted(self.coeffs.items()) if c})

    def conj_reflect(self):
        """Symbol of the adjoint: ``m -> conj(phi_{-m})``."""
        return ToeplitzSymbol({-m: _conj(c) for m, c in self.coeffs.items()})

    def norm(self, N: int):
        """``sum_m (1 + |m|)**N |phi_m|``; exact for rational coefficients."""
        return sum(((1 + abs(m)) ** N * _abs(c) for m, c in self.coeffs.items()), Fraction(0))


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def _abs(c):
    return abs(c) if isinstance(c, complex) else abs(Fraction(c))


def build_diag(d: Diagonal, w: Window) -> TruncOp:
    return TruncOp.diagonal(w.basis, d)


def build_shift(w: Window, s: int):
    """Truncated ``V`` and ``V*``."""
    if s < 2:
        raise ParameterError(f"base must be >= 2, got {s}")
    basis = w.basis
    V = TruncOp(
        basis,
        basis,
        {(s * l, l): 1 for l in basis if s * l in w},
        [l for l in basis if s * l in w],
    )
    Vstar = TruncOp(basis, basis, {(l // s, l): 1 for l in basis if l % s == 0})
    return V, Vstar


def build_mult(f: CylFn, w: Window) -> TruncOp:
    return build_diag(Diagonal.mult(f), w)


def build_m_lambda(lam: CylFn, w: Window) -> TruncOp:
    return build_diag(Diagonal.m_lambda(lam), w)


def build_mu_chi(chi: ChiSeq, w: Window, s: int) -> TruncOp:
    return build_diag(Diagonal.mu_chi(chi, s), w)


def shift_power(w: Window, s: int, m: int) -> TruncOp:
    """``V**m`` for ``m >= 0`` and ``(V*)**(-m)`` for ``m < 0``, composed from truncations."""
    V, Vstar = build_shift(w, s)
    base = V if m >= 0 else Vstar
    out = TruncOp.identity(w.basis)
    for _ in range(abs(m)):
        out = base @ out
    return out


def build_toeplitz(phi: ToeplitzSymbol, w: Window, s: int) -> TruncOp:
    out = TruncOp.zeros(w.basis, w.basis)
    for m, c in phi.coeffs.items():
        out = out + shift_power(w, s, m).scale(c)
    return out


def gauge_generator(s: int):
    """Diagonal ``P``: ``P E_{s**m l'} = m E_{s**m l'}`` and ``P E_0 = 0``."""
    return Diagonal(lambda l: valuation(l, s).m if l else 0, "P")


def build_gauge(w: Window, s: int):
    """Truncated ``P`` and the conjugation ``a -> exp(2 pi i theta P) a exp(-2 pi i theta P)``."""
    Pd = gauge_generator(s)
    P = build_diag(Pd, w)

    def conj(theta, a: TruncOp) -> TruncOp:
        theta = Fraction(theta)
        phase = {l: cmath.exp(2j * cmath.pi * float(theta) * Pd(l)) for l in w.basis}
        entries = {(r, c): v * phase[r] / phase[c] for (r, c), v in a.entries()}
        return TruncOp(a.rows, a.cols, entries, a.safe_cols)

    return P, conj


@dataclass
class RelationCheck:
    name: str
    checked_columns: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


@dataclass
class StaceyReport:
    s: int
    M: int
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name):
        return next(c for c in self.checks if c.name == name)


def verify_stacey(f: CylFn, w: Window) -> StaceyReport:
    """Check ``V*V = I`` and ``V M_f V* = M_{alpha f}`` on faithful columns."""
    s = f.s
    V, Vstar = build_shift(w, s)
    ident = TruncOp.identity(w.basis)
    vv = Vstar @ V
    cols = sorted(vv.safe_cols)
    c1 = RelationCheck("V*V=I", len(cols), vv.mismatched_columns(ident, cols))
    lhs = V @ build_mult(f, w) @ Vstar
    rhs = build_mult(alpha_endo(f), w)
    cols = sorted(lhs.safe_cols)
    c2 = RelationCheck("VM_fV*=M_alpha(f)", len(cols), lhs.mismatched_columns(rhs, cols))
    return StaceyReport(s, w.M, [c1, c2])


def verify_chi_zero(w: Window, s: int) -> RelationCheck:
    """``mu_{chi_0} = I - V V*`` on every column of the window."""
    V, Vstar = build_shift(w, s)
    lhs = build_mu_chi(ChiSeq.delta(0), w, s)
    rhs = TruncOp.identity(w.basis) - V @ Vstar
    cols = list(w.basis)
    return RelationCheck("mu_chi0=I-VV*", len(cols), lhs.mismatched_columns(rhs, cols))


def verify_gauge(theta, w: Window, s: int, f: CylFn | None = None, tol=1e-12):
    """Gauge identities on the window.

    Returns ``(mult_check, shift_check, zero_column)``: ``rho_theta(M_f) = M_f``
    on all columns, ``rho_theta(V) = e^{2 pi i theta} V`` on safe columns
    ``l != 0``, and the pair (actual, predicted) at the column ``l = 0``, where
    ``V E_0 = E_0`` and ``P E_0 = 0`` leave ``E_0`` fixed.
    """
    _, conj = build_gauge(w, s)
    V, _ = build_shift(w, s)
    phase = cmath.exp(2j * cmath.pi * float(Fraction(theta)))
    mult = None
    if f is not None:
        Mf = build_mult(f, w)
        mult = RelationCheck(
            "rho(M_f)=M_f", len(w.basis), conj(theta, Mf).mismatched_columns(Mf, w.basis, tol)
        )
    rv = conj(theta, V)
    cols = [l for l in sorted(V.safe_cols) if l != 0]
    shift = RelationCheck(
        "rho(V)=e(theta)V", len(cols), rv.mismatched_columns(V.scale(phase), cols, tol)
    )
    return mult, shift, (rv[0, 0], phase)


def k0_projection(X: CylFn, w: Window) -> TruncOp:
    """``m_{1_X} (I - V V*)`` for a clopen ``X`` in the units not containing 1."""
    X = check_k0_indicator(X)
    return build_m_lambda(X, w) @ build_mu_chi(ChiSeq.delta(0), w, X.s)


def check_k0_indicator(X: CylFn):
    if X.ring == "cfloat" or any(v not in (0, 1) for v in X.values):
        raise DomainError("K0 generator needs a 0/1-valued function")
    if any(X.values[r] for r in range(0, X.modulus, X.s)):
        raise DomainError("K0 generator set must lie in the units")
    if evaluate(X, 1) != 0:
        raise DomainError("K0 generator set must not contain 1")
    if X.domain != "units":
        X = CylFn(X.s, X.level, X.values, X.ring, "units")
    return X


def k0_symbol(X: CylFn) -> Diagonal:
    """Diagonal symbol of ``m_{1_X} mu_{chi_0}``."""
    X = check_k0_indicator(X)
    return Diagonal.m_lambda(X) * Diagonal.mu_chi(ChiSeq.delta(0), X.s)
