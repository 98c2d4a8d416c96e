"""Acceptance gate: one test per criterion, each with its runtime budget.

Every test appends a PASS/FAIL line to ``RESULTS``; ``conftest.py`` prints
them at the end of the session.  Running this file directly prints the same
lines without pytest.
"""
import time
from fractions import Fraction

import pytest

from hsalgebra.rng import SplitMix64
from hsalgebra.spectral import LambdaParams
from hsalgebra.suites import (
    Report,
    check_basis_theorem,
    check_delta_e,
    check_eta,
    check_index_theorem,
    check_lipschitz_oracle,
    check_module_axioms,
    check_resolvent,
    check_spectral_norms,
    check_stacey,
)

SEED = 20240601
RESULTS = []
PARAMS = [LambdaParams(1, 1), LambdaParams(Fraction(3, 2), Fraction(1, 3))]


def _gate(number, title, budget, runs):
    t0 = time.perf_counter()
    total = Report(f"criterion {number}")
    for rep in runs():
        total.merge(rep)
    elapsed = time.perf_counter() - t0
    ok = total.status == "pass" and (budget is None or elapsed <= budget)
    limit = f"<= {budget:.0f} s" if budget else "no limit"
    line = (f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}; {total.cases} cases, "
            f"{len(total.failures)} failures, {elapsed:.2f} s ({limit})")
    RESULTS.append(line)
    print(line)
    return ok, total, elapsed


def _rng(k):
    return SplitMix64(SEED).spawn(k)


def test_criterion_1_basis_theorem():
    ok, rep, _ = _gate(1, "expand/reconstruct and direct=recursive, s in {2,3,5}", 10,
                       lambda: (check_basis_theorem(s, _rng(s), 200, 4) for s in (2, 3, 5)))
    assert ok, rep.failures[:3]


def test_criterion_2_delta_e():
    ok, rep, _ = _gate(2, "delta/e conversion on T in [2,200], s in {2,3,5}", 5,
                       lambda: (check_delta_e(s, 200) for s in (2, 3, 5)))
    assert ok, rep.failures[:3]


def test_criterion_3_relations():
    ok, rep, _ = _gate(3, "V*V=I, VM_fV*=M_alpha(f), mu_chi0=I-VV* on M=1000, s in {2,3}", 10,
                       lambda: (check_stacey(s, 1000, _rng(10 + s), 50) for s in (2, 3)))
    assert ok, rep.failures[:3]


def test_criterion_4_index_theorem():
    ok, rep, _ = _gate(4, "index pairing = phi_x, identity pairs to 0, triple index agrees", 30,
                       lambda: (check_index_theorem(s, _rng(20 + s), PARAMS[s % 2], 50, 20) for s in (2, 3)))
    assert ok, rep.failures[:3]


def test_criterion_5_eta():
    ok, rep, _ = _gate(5, "eta(identity)=1, eta(K0 generators)=0", None,
                       lambda: (check_eta(s, _rng(30 + s), 50) for s in (2, 3, 5)))
    assert ok, rep.failures[:3]


def test_criterion_6_module_axioms():
    ok, rep, _ = _gate(6, "module axioms, [F,rho(V)]=0, commutator formula and rank, lmax in {0,1,4}", None,
                       lambda: (check_module_axioms(s, _rng(40 + s), (0, 1, 4), 5) for s in (2, 3)))
    assert ok, rep.failures[:3]


def test_criterion_7_spectral_norms():
    def runs():
        for s in (2, 3):
            for k, p in enumerate(PARAMS):
                yield check_spectral_norms(s, _rng(50 + 2 * s + k), p, 100, 100, 50)
    ok, rep, _ = _gate(7, "||[D,V]||=c1, family bound, C||a||_1 bound, Toeplitz bound", 30, runs)
    assert ok, rep.failures[:3]


def test_criterion_8_compactness():
    def runs():
        for s in (2, 3):
            for k, p in enumerate(PARAMS):
                yield check_resolvent(s, _rng(60 + 2 * s + k), p, 20)
            yield check_lipschitz_oracle(s, _rng(70 + s), 200, 4)
    ok, rep, _ = _gate(8, "resolvent count finite/monotone/>=1000, level-pair Lipschitz = all-pairs", None, runs)
    assert ok, rep.failures[:3]
    assert rep.details["resolvent_max_count"] >= 1000


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
