"""Even Fredholm modules over HS(s) realising a finitely supported homomorphism.

For ``Phi = sum_y phi_(y) e_(y)`` the Hilbert space has basis vectors
``E^{parity,sign}_{(y,j,l)}``: sign ``+`` for ``phi_(y) > 0``, sign ``-`` for
``phi_(y) < 0``, copy index ``1 <= j <= |phi_(y)|`` and ``l >= 0``.  ``V``
shifts ``l``; a diagonal operator with symbol ``f`` acts by

=========  ==================  ==================
parity     sign +              sign -
=========  ==================  ==================
ev         ``f(s^l gamma(y))``  ``f(s^l y)``
odd        ``f(s^l y)``         ``f(s^l gamma(y))``
=========  ==================  ==================

Truncation keeps ``0 <= l <= lmax``.  Index computations only see the
``l = 0`` slice, so they are exact at any ``lmax``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .cylinder import CylFn, alpha_endo
from .errors import ParameterError
from .khomology import HomT, gamma, generator
from .operators import ChiSeq, Diagonal, RelationCheck, k0_symbol
from .sparse import TruncOp, block_diag, block_offdiag


class GradedBasisIndex(NamedTuple):
    parity: str  # "ev" | "odd"
    sign: str  # "+" | "-"
    y: int
    j: int
    l: int

    def swap(self):
        return self._replace(parity="odd" if self.parity == "ev" else "ev")

    def shift(self, k):
        return self._replace(l=self.l + k)

    def __str__(self):
        return f"E^{{{self.parity},{self.sign}}}_({self.y},{self.j},{self.l})"


@dataclass(frozen=True)
class ModuleTruncation:
    phi: HomT
    lmax: int
    ev: tuple = field(init=False)
    odd: tuple = field(init=False)

    def __post_init__(self):
        if self.lmax < 0:
            raise ParameterError(f"lmax must be >= 0, got {self.lmax}")
        object.__setattr__(self, "ev", self._labels("ev"))
        object.__setattr__(self, "odd", self._labels("odd"))

    def _labels(self, parity):
        out = []
        for sign in ("+", "-"):
            for y, c in self.phi.coeffs.items():
                if (c > 0) != (sign == "+"):
                    continue
                for j in range(1, abs(c) + 1):
                    for l in range(self.lmax + 1):
                        out.append(GradedBasisIndex(parity, sign, y, j, l))
        return tuple(out)

    @property
    def s(self):
        return self.phi.s

    @property
    def basis(self):
        return self.ev + self.odd

    def labels(self, parity):
        return self.ev if parity == "ev" else self.odd

    def point(self, u: GradedBasisIndex) -> int:
        """The integer at which a diagonal symbol is evaluated on ``u``."""
        uses_y = (u.parity == "odd") == (u.sign == "+")
        base = u.y if uses_y else gamma(u.y, self.s)
        return self.s**u.l * base


def build_basis(phi: HomT, lmax: int) -> ModuleTruncation:
    return ModuleTruncation(phi, lmax)


def _as_symbol(gen, s):
    if isinstance(gen, Diagonal):
        return gen
    if isinstance(gen, CylFn):
        if gen.s != s:
            raise ParameterError("base mismatch")
        return Diagonal.mult(gen)
    raise ParameterError(f"cannot represent {gen!r}")


def represent(gen, mt: ModuleTruncation, parity: str) -> TruncOp:
    """``rho_parity(gen)`` on the truncation; ``gen`` is "V", "V*", a CylFn or a Diagonal."""
    basis = mt.labels(parity)
    if gen == "V":
        entries = {(u.shift(1), u): 1 for u in basis if u.l < mt.lmax}
        return TruncOp(basis, basis, entries, [u for u in basis if u.l < mt.lmax])
    if gen == "V*":
        return TruncOp(basis, basis, {(u.shift(-1), u): 1 for u in basis if u.l > 0})
    d = _as_symbol(gen, mt.s)
    return TruncOp.diagonal(basis, lambda u: d(mt.point(u)))


def represent_full(gen, mt: ModuleTruncation) -> TruncOp:
    return block_diag(represent(gen, mt, "ev"), represent(gen, mt, "odd"))


def build_F_Gamma(mt: ModuleTruncation):
    """``G: H_odd -> H_ev``, ``F = [[0, G], [G*, 0]]`` and ``Gamma = diag(+1, -1)``."""
    G = TruncOp(mt.ev, mt.odd, {(u.swap(), u): 1 for u in mt.odd})
    F = block_offdiag(G, G.adjoint(safe_cols=mt.ev))
    Gamma = TruncOp.diagonal(mt.basis, lambda u: 1 if u.parity == "ev" else -1)
    return G, F, Gamma


def mult_ideal_generator(x: int, p: int, s: int) -> Diagonal:
    """Symbol of ``m_{1_(x)} mu_{chi_p}``."""
    return Diagonal.m_lambda(generator(x, s)) * Diagonal.mu_chi(ChiSeq.delta(p), s)


def commutator_F(gen, mt: ModuleTruncation) -> TruncOp:
    """``[F, rho(gen)]`` on the truncation."""
    _, F, _ = build_F_Gamma(mt)
    rho = represent_full(gen, mt)
    return F @ rho - rho @ F


def predicted_commutator(x: int, p: int, mt: ModuleTruncation) -> TruncOp:
    """Closed form of ``[F, rho(m_{1_(x)} mu_{chi_p})]``.

    The upper block sends ``E^{odd,+}_{(x,j,p)}`` to ``E^{ev,+}_{(x,j,p)}`` and
    ``E^{odd,-}_{(x,k,p)}`` to ``-E^{ev,-}_{(x,k,p)}``; the lower block is its
    negative transpose.  Everything else vanishes.
    """
    entries = {}
    for u in mt.odd:
        if u.y == x and u.l == p:
            sgn = 1 if u.sign == "+" else -1
            entries[(u.swap(), u)] = sgn
            entries[(u, u.swap())] = -sgn
    return TruncOp(mt.basis, mt.basis, entries)


@dataclass
class IndexResult:
    index: int
    kernel_dim: int
    cokernel_dim: int
    domain_dim: int
    codomain_dim: int
    kernel_witnesses: list
    cokernel_witnesses: list

    def to_dict(self):
        return {
            "index": self.index,
            "kernel_dim": self.kernel_dim,
            "cokernel_dim": self.cokernel_dim,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "kernel_witnesses": [list(u) for u in self.kernel_witnesses],
            "cokernel_witnesses": [list(u) for u in self.cokernel_witnesses],
        }


def _projection_range(P: TruncOp):
    if not P.is_diagonal():
        raise ParameterError("projection is expected to be diagonal in the module basis")
    diag = P.diagonal_entries()
    if any(v != 1 for v in diag.values()):
        raise ParameterError("diagonal projection must have 0/1 entries")
    return [u for u in P.cols if u in diag]


def restricted_index(mt: ModuleTruncation, projection, middle: TruncOp) -> IndexResult:
    """Index of ``rho_ev(P) middle rho_odd(P): Ran rho_odd(P) -> Ran rho_ev(P)``.

    ``projection`` is a diagonal symbol or ``None`` for the identity.
    """
    if projection is None:
        P_ev, P_odd = TruncOp.identity(mt.ev), TruncOp.identity(mt.odd)
    else:
        P_ev, P_odd = represent(projection, mt, "ev"), represent(projection, mt, "odd")
    dom, cod = _projection_range(P_odd), _projection_range(P_ev)
    B = (P_ev @ middle @ P_odd).restrict(cod, dom)
    r = B.rank()
    return IndexResult(
        index=(len(dom) - r) - (len(cod) - r),
        kernel_dim=len(dom) - r,
        cokernel_dim=len(cod) - r,
        domain_dim=len(dom),
        codomain_dim=len(cod),
        kernel_witnesses=B.zero_columns(),
        cokernel_witnesses=B.zero_rows(),
    )


def index_pairing(phi: HomT, X: CylFn, lmax: int = 0) -> IndexResult:
    """Pairing of the module for ``phi`` with the class of ``m_{1_X}(I - V V*)``."""
    if X.s != phi.s:
        raise ParameterError("base mismatch")
    P = k0_symbol(X)
    mt = build_basis(phi, lmax)
    G, _, _ = build_F_Gamma(mt)
    return restricted_index(mt, P, G)


def pairing_identity(phi: HomT, lmax: int = 0) -> IndexResult:
    """Pairing with the class of the identity: the index of ``G`` itself."""
    mt = build_basis(phi, lmax)
    G, _, _ = build_F_Gamma(mt)
    return restricted_index(mt, None, G)


def eta_pairing(cls) -> int:
    """Pairing of the one-dimensional module with ``V -> 1``, ``M_f -> f(0)``.

    ``cls`` is ``"identity"``, ``"I-VV*"`` or a 0/1 function ``X`` standing for
    ``m_{1_X}(I - V V*)``.  The even space is zero, so the index is the
    dimension of the range of the odd representation of the projection.
    """
    if isinstance(cls, CylFn):
        # ideal elements are diagonals vanishing at E_0, i.e. f(0) = 0
        value = k0_symbol(cls)(0)
    elif cls == "identity":
        value = 1
    elif cls == "I-VV*":
        v = 1  # rho(V)
        value = 1 - v * v
    else:
        raise ParameterError(f"unknown K0 class {cls!r}")
    dom = [0] if value else []
    B = TruncOp((), dom)  # G = 0 into the zero even space
    return len(dom) - B.rank()


def verify_module_axioms(mt: ModuleTruncation, gens=()) -> list:
    """Exact checks of the even Fredholm module identities on the truncation."""
    G, F, Gamma = build_F_Gamma(mt)
    basis = mt.basis
    I = TruncOp.identity(basis)
    checks = [
        ("F^2=I", F @ F, I),
        ("F=F*", F, F.adjoint()),
        ("Gamma F=-F Gamma", Gamma @ F, -(F @ Gamma)),
        ("Gamma^2=I", Gamma @ Gamma, I),
        ("G*G=I_odd", G.adjoint() @ G, TruncOp.identity(mt.odd)),
        ("GG*=I_ev", G @ G.adjoint(), TruncOp.identity(mt.ev)),
    ]
    for gen in ("V", "V*") + tuple(gens):
        rho = represent_full(gen, mt)
        checks.append((f"Gamma rho({_name(gen)})=rho Gamma", Gamma @ rho, rho @ Gamma))
    return [
        RelationCheck(name, len(lhs.cols), lhs.mismatched_columns(rhs, list(lhs.cols)))
        for name, lhs, rhs in checks
    ]


def _name(gen):
    return gen if isinstance(gen, str) else getattr(gen, "name", type(gen).__name__)


def verify_representation(mt: ModuleTruncation, f: CylFn) -> list:
    """Crossed-product relations for ``rho_ev + rho_odd`` on faithful columns.

    Labels whose evaluation point is ``gamma(y) = 0`` (``2 <= y < s``) see
    ``rho(M_f) = f(0)`` for every ``l`` while ``rho(V)`` is a unilateral
    shift, so ``V M_f V* = M_{alpha f}`` fails at ``l = 0`` there whenever
    ``f(0) != 0``.  Those columns are reported, not hidden.
    """
    V, Vs = represent_full("V", mt), represent_full("V*", mt)
    vv = Vs @ V
    cols = [u for u in mt.basis if u in vv.safe_cols]
    c1 = RelationCheck("rho(V)*rho(V)=I", len(cols), vv.mismatched_columns(TruncOp.identity(mt.basis), cols))
    lhs = V @ represent_full(f, mt) @ Vs
    rhs = represent_full(alpha_endo(f), mt)
    cols = [u for u in mt.basis if u in lhs.safe_cols]
    c2 = RelationCheck("rho(VM_fV*)=rho(M_alpha(f))", len(cols), lhs.mismatched_columns(rhs, cols))
    return [c1, c2]


def degenerate_labels(mt: ModuleTruncation) -> list:
    """Labels at ``l = 0`` whose evaluation point is 0."""
    return [u for u in mt.basis if u.l == 0 and mt.point(u) == 0]
