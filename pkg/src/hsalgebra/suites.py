"""Seeded verification suites and their machine-readable reports.

Each ``check_*`` function runs one family of exact checks and returns a
:class:`Report`.  :func:`run_suite` maps suite names onto those checks.
Every suite draws from its own SplitMix64 stream ``SplitMix64(seed).spawn(k)``
with ``k`` the suite's position in :data:`SUITES`, so selecting a subset of
suites does not change the cases any one of them sees.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import rng as sampling
from .cylinder import (
    alpha_endo,
    constant,
    evaluate,
    lipschitz,
    lipschitz_bruteforce,
    refine,
    ring_ops,
)
from .errors import ParameterError
from .fredholm import (
    build_basis,
    commutator_F,
    eta_pairing,
    index_pairing,
    mult_ideal_generator,
    pairing_identity,
    predicted_commutator,
    verify_module_axioms,
)
from .khomology import (
    delta_decompose,
    expand,
    expand_recursive,
    gamma,
    generator,
    n_of,
    pair,
    reconstruct,
    special_hom,
)
from .operators import ToeplitzSymbol, Window, verify_chi_zero, verify_stacey
from .rng import SplitMix64
from .sadic import distance, from_integer, valuation
from .spectral import (
    LambdaParams,
    PolyElement,
    assembled_commutator,
    comm_bound_check,
    comm_norm_mult,
    comm_norm_shift,
    frechet_norm,
    resolvent_count,
    toeplitz_bound,
    triple_index,
)

SUITES = ("sadic", "cylinder", "khom", "stacey", "fredholm", "spectral")


def _str(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_str(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _str(x) for k, x in v.items()}
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


@dataclass
class Failure:
    check: str
    inputs: dict
    expected: object
    actual: object
    witness: object = None


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    timing: float | None = None

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def expect(self, check, ok, inputs=None, expected=None, actual=None, witness=None):
        self.cases += 1
        if not ok:
            self.failures.append(
                Failure(check, _str(inputs or {}), _str(expected), _str(actual), _str(witness))
            )
        return ok

    def merge(self, other: "Report"):
        self.cases += other.cases
        self.failures.extend(other.failures)
        for k, v in other.details.items():
            self.details[k] = v

    def to_dict(self, timing=False) -> dict:
        out = {
            "suite": self.suite,
            "status": self.status,
            "cases": self.cases,
            "failures": [asdict(f) for f in self.failures],
            "details": self.details,
        }
        if timing and self.timing is not None:
            out["timing"] = round(self.timing, 6)
        return out

    @classmethod
    def from_dict(cls, obj) -> "Report":
        r = cls(obj["suite"], obj["cases"], [Failure(**f) for f in obj["failures"]],
                obj.get("details", {}), obj.get("timing"))
        if r.status != obj["status"]:
            raise ParameterError("status field inconsistent with failure list")
        return r


# --- sadic / cylinder --------------------------------------------------------


def check_sadic(s: int, rng: SplitMix64, cases: int = 300) -> Report:
    rep = Report("sadic")
    for _ in range(cases):
        N = rng.randint(1, 8)
        u, v = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        a, b = from_integer(u, s, N), from_integer(v, s, N)
        inp = {"s": s, "N": N, "u": u, "v": v}
        rep.expect("add-hom", from_integer(u + v, s, N) == a + b, inp)
        rep.expect("mul-hom", from_integer(u * v, s, N) == a * b, inp)
        c = from_integer(rng.randint(-1000, 1000), s, N)
        dab, dbc, dac = distance(a, b).value, distance(b, c).value, distance(a, c).value
        rep.expect("ultrametric", dac <= max(dab, dbc), inp, max(dab, dbc), dac)
        l = rng.randint(-10**6, 10**6) or 1
        val = valuation(l, s)
        rep.expect("valuation", val.value == l and val.unit_part % s != 0, {"l": l}, l, val.value)
    return rep


def check_cylinder(s: int, rng: SplitMix64, cases: int = 50) -> Report:
    rep = Report("cylinder")
    for _ in range(cases):
        f = sampling.int_cylfn(rng, s, rng.randint(0, 3))
        g = sampling.int_cylfn(rng, s, rng.randint(0, 3))
        inp = {"s": s, "f": list(f.values), "g": list(g.values)}
        rep.expect("alpha-mul", alpha_endo(f * g) == alpha_endo(f) * alpha_endo(g), inp)
        one = constant(1, s)
        rep.expect("alpha-range", alpha_endo(f) * alpha_endo(one) == alpha_endo(f), inp)
        n = max(f.level, g.level) + rng.randint(0, 2)
        lhs = ring_ops(refine(f, n), refine(g, n), "add")
        rep.expect("refine-add", lhs.values == refine(f + g, n).values, inp)
        rep.expect("refine-alpha", refine(alpha_endo(f), n + 1).values == alpha_endo(refine(f, n)).values, inp)
    rep.merge(check_lipschitz_oracle(s, rng, cases))
    return rep


def check_lipschitz_oracle(s: int, rng: SplitMix64, cases: int = 50, max_level: int = 4) -> Report:
    """Level-pair Lipschitz constant against the all-pairs oracle; sup is attained."""
    rep = Report("lipschitz")
    for _ in range(cases):
        level = rng.randint(0, max_level)
        f = sampling.rat_units_fn(rng, s, level) if rng.randint(0, 1) else sampling.int_cylfn(
            rng, s, level, domain="units"
        )
        L, normL, sup = lipschitz(f)
        oracle = lipschitz_bruteforce(f)
        inp = {"s": s, "level": level, "values": list(f.values)}
        rep.expect("lipschitz=oracle", L == oracle, inp, oracle, L)
        rep.expect("norm_L=sup+L", normL == sup + L, inp, sup + L, normL)
        units = [r for r in range(f.modulus) if r % s]
        attained = L == 0
        for a in units:
            for b in units:
                if a < b:
                    d = Fraction(1, s ** valuation(a - b, s).m)
                    gap = abs(Fraction(f.values[a] - f.values[b]))
                    if gap > L * d:
                        rep.expect("lipschitz-bound", False, inp, L, gap / d, [a, b])
                    attained = attained or gap == L * d
        rep.expect("lipschitz-attained", attained, inp)
    return rep


# --- khomology ---------------------------------------------------------------


def check_basis_theorem(s: int, rng: SplitMix64, cases: int = 200, max_level: int = 4) -> Report:
    rep = Report("basis")
    for _ in range(cases):
        level = rng.randint(0, max_level)
        f = sampling.c1_function(rng, s, level)
        direct, recursive = expand(f), expand_recursive(f)
        inp = {"s": s, "level": level, "values": list(f.values)}
        rep.expect("direct=recursive", direct == recursive, inp, direct, recursive)
        back = reconstruct(direct, s, level)
        rep.expect("reconstruct(expand(f))=f", back.values == f.values, inp, list(f.values), list(back.values))
        # uniqueness: random coefficient maps survive the opposite round trip
        coeffs = {x: rng.randint(-3, 3) for x in sampling.T_members(s, 2, s**level - 1)}
        coeffs = {x: c for x, c in coeffs.items() if c and rng.randint(0, 2) == 0}
        again = expand(reconstruct(coeffs, s, level))
        rep.expect("expand(reconstruct(c))=c", again == coeffs, {"s": s, "coeffs": coeffs}, coeffs, again)
    return rep


def check_delta_e(s: int, limit: int = 200) -> Report:
    rep = Report("delta_e")
    members = sampling.T_members(s, 2, limit)
    gens = {x: generator(x, s) for x in members}
    for z in members:
        dz = delta_decompose(z, s)
        for x in members:
            g = gens[x]
            delta = special_hom("delta", z, g)
            inp = {"s": s, "z": z, "x": x}
            rep.expect("delta=orbit sum", pair(dz, g) == delta, inp, delta, pair(dz, g))
            e = special_hom("e", z, g)
            conv = delta - special_hom("delta", gamma(z, s), g)
            rep.expect("e=delta-delta_gamma", e == conv, inp, conv, e)
            if z % s:
                rep.expect("e dual", e == int(z == x), inp, int(z == x), e)
    return rep


# --- operators ---------------------------------------------------------------


def check_stacey(s: int, M: int, rng: SplitMix64, cases: int = 50) -> Report:
    rep = Report("stacey")
    w = Window(M)
    counts = {}
    for _ in range(cases):
        f = sampling.int_cylfn(rng, s, rng.randint(0, 3))
        r = verify_stacey(f, w)
        for c in r.checks:
            counts[c.name] = c.checked_columns
            rep.expect(c.name, c.ok, {"s": s, "M": M, "f": list(f.values)}, [], c.mismatches[:5],
                       c.mismatches[0] if c.mismatches else None)
    chi = verify_chi_zero(w, s)
    counts[chi.name] = chi.checked_columns
    rep.expect(chi.name, chi.ok, {"s": s, "M": M}, [], chi.mismatches[:5])
    rep.details[f"checked_columns[s={s},M={M}]"] = counts
    return rep


# --- fredholm ----------------------------------------------------------------


def check_index_theorem(s: int, rng: SplitMix64, p: LambdaParams, cases: int = 50,
                        outside: int = 20, lmax: int = 0) -> Report:
    rep = Report("index")
    members = sampling.T_members(s, 2, 100)
    for _ in range(cases):
        phi = sampling.random_phi(rng, s)
        inp = {"s": s, "phi": phi.coeffs}
        ident = pairing_identity(phi, lmax).index
        rep.expect("identity pairs to 0", ident == 0, inp, 0, ident)
        rest = [x for x in members if x not in phi.coeffs]
        # every support point, then sampled points outside the support
        for x in list(phi.coeffs) + rng.sample(rest, outside):
            X = generator(x, s)
            res = index_pairing(phi, X, lmax)
            want = phi[x]
            rep.expect("index=phi_x", res.index == want == pair(phi, X), {**inp, "x": x}, want, res.index,
                       [str(u) for u in res.kernel_witnesses + res.cokernel_witnesses][:3])
            tri = triple_index(phi, p, X, lmax).index
            rep.expect("triple=fredholm", tri == res.index, {**inp, "x": x}, res.index, tri)
        # clopen sets that are unions of generators
        X = sampling.zero_one_units_fn(rng, s, rng.randint(1, 3))
        res = index_pairing(phi, X, lmax)
        via = pair(phi, reconstruct(expand(X), s))
        rep.expect("index linear", res.index == via, {**inp, "X": list(X.values)}, via, res.index)
    return rep


def check_eta(s: int, rng: SplitMix64, cases: int = 20) -> Report:
    rep = Report("eta")
    rep.expect("eta(I)=1", eta_pairing("identity") == 1, {}, 1, eta_pairing("identity"))
    rep.expect("eta(I-VV*)=0", eta_pairing("I-VV*") == 0, {}, 0, eta_pairing("I-VV*"))
    for y in sampling.T_members(s, 2, 30):
        v = eta_pairing(generator(y, s))
        rep.expect("eta(generator)=0", v == 0, {"s": s, "x": y}, 0, v)
    for _ in range(cases):
        X = sampling.zero_one_units_fn(rng, s, rng.randint(0, 3))
        v = eta_pairing(X)
        rep.expect("eta(k0)=0", v == 0, {"s": s, "X": list(X.values)}, 0, v)
    return rep


def check_module_axioms(s: int, rng: SplitMix64, lmaxes=(0, 1, 4), cases: int = 5) -> Report:
    rep = Report("module")
    for _ in range(cases):
        phi = sampling.random_phi(rng, s, hi=40, max_support=4)
        f = sampling.int_cylfn(rng, s, rng.randint(0, 3))
        ranks = {}
        for lmax in lmaxes:
            mt = build_basis(phi, lmax)
            inp = {"s": s, "phi": phi.coeffs, "lmax": lmax}
            for c in verify_module_axioms(mt, [f]):
                rep.expect(c.name, c.ok, inp, [], [str(u) for u in c.mismatches[:3]])
            comm = commutator_F("V", mt)
            rep.expect("[F,rho(V)]=0", comm.is_zero(), inp, 0, comm.nnz)
            outside = [y for y in sampling.T_members(s, 2, 40) if y not in phi.coeffs]
            for x in list(phi.coeffs)[:2] + [outside[0]]:
                for q in range(3):
                    c = commutator_F(mult_ideal_generator(x, q, s), mt)
                    pred = predicted_commutator(x, q, mt)
                    rep.expect("commutator formula", c.equals(pred, list(c.cols)), {**inp, "x": x, "p": q})
                    ranks.setdefault((x, q), {})[lmax] = c.rank()
        for (x, q), by_lmax in ranks.items():
            # upper and lower blocks each contribute |phi_x|
            stable = {r for lm, r in by_lmax.items() if lm >= q}
            want = 2 * abs(phi[x])
            rep.expect("rank stabilises", stable <= {want}, {"s": s, "phi": phi.coeffs, "x": x, "p": q},
                       want, by_lmax)
    return rep


# --- spectral ----------------------------------------------------------------


def _random_poly(rng, s, budget=100) -> PolyElement:
    while True:
        sym = {m: rng.fraction(3, 3) for m in rng.sample(range(-3, 4), rng.randint(0, 3))}
        ideal = {}
        for n in rng.sample(range(-2, 3), rng.randint(0, 2)):
            ideal[n] = sampling.units_family(rng, s, max_level=3, max_support=2, lmax=2)
        a = PolyElement(s, ToeplitzSymbol(sym), ideal)
        if frechet_norm(a, 1) <= budget:
            return a


def check_spectral_norms(s: int, rng: SplitMix64, p: LambdaParams, families: int = 100,
                         polys: int = 100, symbols: int = 50) -> Report:
    rep = Report("spectral_norms")
    for lmax in (1, 3):
        phi = sampling.random_phi(rng, s, hi=60, max_support=3)
        sn = comm_norm_shift(1, p, phi, lmax)
        inp = {"s": s, "phi": phi.coeffs, "c1": p.c1, "lmax": lmax}
        rep.expect("||[D,V]||=c1", sn.exact == sn.entry_scan == p.c1, inp, p.c1, sn.entry_scan)
        rep.expect("||[D,V]|| numeric", abs(sn.numeric - float(p.c1)) <= 1e-9, inp, p.c1, sn.numeric)
    for _ in range(families):
        phi = sampling.random_phi(rng, s, hi=60, max_support=3)
        F = sampling.units_family(rng, s)
        mn = comm_norm_mult(F, p, phi)
        inp = {"s": s, "phi": phi.coeffs, "F": {l: list(g.values) for l, g in F.items()}}
        rep.expect("exact<=bound", mn.exact <= mn.bound, inp, mn.bound, mn.exact, mn.exact_witness)
        comm = assembled_commutator(PolyElement(s, ideal={0: F}), p, phi, max(F))
        scan, _ = comm.max_abs_entry()
        rep.expect("exact=entry scan", Fraction(scan) == mn.exact, inp, mn.exact, scan)
        for l, g in F.items():
            for y in phi.coeffs:
                if n_of(y, s) > g.level:
                    v = evaluate(g, y) - evaluate(g, gamma(y, s))
                    rep.expect("vanishing lemma", v == 0, {**inp, "y": y, "l": l}, 0, v)
    for _ in range(polys):
        phi = sampling.random_phi(rng, s, hi=60, max_support=3)
        a = _random_poly(rng, s)
        br = comm_bound_check(a, p, phi)
        inp = {"s": s, "phi": phi.coeffs, "toeplitz": a.toeplitz.coeffs}
        rep.expect("||[D,a]||<=C||a||_1", br.ok, inp, br.rhs, br.lhs)
        comm = assembled_commutator(a, p, phi, 5)
        safe = [u for u in comm.cols if u in comm.safe_cols]
        est = comm.norm_estimate(safe)
        rep.expect("assembled<=triangle", est <= float(br.lhs) + 1e-9, inp, br.lhs, est)
    for _ in range(symbols):
        phi = sampling.random_phi(rng, s, hi=60, max_support=3)
        sym = ToeplitzSymbol({m: rng.fraction(4, 3) for m in rng.sample(range(-4, 5), rng.randint(1, 4))})
        tb = toeplitz_bound(sym, p, phi, 8)
        inp = {"s": s, "phi": phi.coeffs, "symbol": sym.coeffs}
        rep.expect("||[D,T]||<=c1||phi||_1", tb.ok, inp, tb.rhs, tb.triangle)
        rep.expect("toeplitz numeric", tb.numeric <= float(tb.triangle) + 1e-9, inp, tb.triangle, tb.numeric)
    return rep


def check_resolvent(s: int, rng: SplitMix64, p: LambdaParams, cases: int = 10) -> Report:
    rep = Report("resolvent")
    for _ in range(cases):
        phi = sampling.random_phi(rng, s, hi=60, max_support=3)
        inp = {"s": s, "phi": phi.coeffs, "c1": p.c1, "c2": p.c2}
        prev, R = 0, Fraction(0)
        while prev < 1000:
            R += 1 + R / 4
            cnt = resolvent_count(phi, p, R)
            rep.expect("monotone", cnt >= prev, {**inp, "R": R}, prev, cnt)
            prev = cnt
        lam_min = min(p.c2 * s ** n_of(y, s) for y in phi.coeffs)
        rep.expect("below min Lambda", resolvent_count(phi, p, lam_min - Fraction(1, 2)) == 0, inp)
        lcap = int(50 / p.c1) + 2
        brute = sum(abs(c) for y, c in phi.coeffs.items() for l in range(lcap)
                    if p.c1 * l + p.c2 * s ** n_of(y, s) <= 50)
        rep.expect("count=enumeration", resolvent_count(phi, p, 50) == brute, inp, brute)
        rep.details.setdefault("resolvent_max_count", 0)
        rep.details["resolvent_max_count"] = max(rep.details["resolvent_max_count"], prev)
    return rep


# --- orchestration -----------------------------------------------------------


@dataclass
class SuiteConfig:
    s: int = 2
    window: int = 1000
    lmax: int = 4
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)
    seed: int = 0
    suites: tuple = SUITES
    output: str | None = None

    def __post_init__(self):
        self.c1, self.c2 = Fraction(self.c1), Fraction(self.c2)
        if not isinstance(self.s, int) or self.s < 2:
            raise ParameterError(f"s must be >= 2, got {self.s}")
        if self.window < 1 or self.lmax < 1:
            raise ParameterError("window and lmax must be >= 1")
        if self.c1 <= 0 or self.c2 <= 0:
            raise ParameterError("c1 and c2 must be positive")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ParameterError(f"unknown suites {sorted(unknown)}")

    @property
    def params(self):
        return LambdaParams(self.c1, self.c2)


def _run_one(name, cfg: SuiteConfig, rng: SplitMix64) -> Report:
    s, p = cfg.s, cfg.params
    if name == "sadic":
        return check_sadic(s, rng)
    if name == "cylinder":
        return check_cylinder(s, rng)
    if name == "khom":
        rep = check_basis_theorem(s, rng)
        rep.merge(check_delta_e(s))
        return rep
    if name == "stacey":
        return check_stacey(s, cfg.window, rng)
    if name == "fredholm":
        rep = check_index_theorem(s, rng, p)
        rep.merge(check_eta(s, rng))
        rep.merge(check_module_axioms(s, rng, lmaxes=sorted({0, 1, cfg.lmax})))
        return rep
    if name == "spectral":
        rep = check_spectral_norms(s, rng, p)
        rep.merge(check_resolvent(s, rng, p))
        return rep
    raise ParameterError(f"unknown suite {name!r}")


def run_suite(cfg: SuiteConfig) -> list:
    root = SplitMix64(cfg.seed)
    streams = {name: root.spawn(k) for k, name in enumerate(SUITES)}
    reports = []
    for name in SUITES:
        if name not in cfg.suites:
            continue
        t0 = time.perf_counter()
        rep = _run_one(name, cfg, streams[name])
        rep.suite = name
        rep.timing = time.perf_counter() - t0
        reports.append(rep)
    return reports


def overall_status(reports) -> str:
    return "pass" if all(r.status == "pass" for r in reports) else "fail"


def report_emit(reports, fmt: str = "json", cfg: SuiteConfig | None = None, timing=False) -> bytes:
    """Deterministic serialisation; timings only appear when asked for."""
    if isinstance(reports, Report):
        reports = [reports]
    if fmt == "json":
        doc = {"status": overall_status(reports), "reports": [r.to_dict(timing) for r in reports]}
        if cfg is not None:
            doc["config"] = _str({k: v for k, v in asdict(cfg).items() if k != "output"})
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "text":
        lines = [f"{'suite':<10} {'status':<6} {'cases':>8} {'failures':>8}" + ("   time[s]" if timing else "")]
        for r in reports:
            row = f"{r.suite:<10} {r.status:<6} {r.cases:>8} {len(r.failures):>8}"
            if timing and r.timing is not None:
                row += f"   {r.timing:7.2f}"
            lines.append(row)
            if r.failures:
                f = r.failures[0]
                lines.append(f"  first failure: {f.check} inputs={json.dumps(f.inputs)} witness={f.witness}")
        lines.append(f"overall: {overall_status(reports)}")
        return ("\n".join(lines) + "\n").encode()
    raise ParameterError(f"unknown report format {fmt!r}")


def reports_from_json(data) -> list:
    doc = json.loads(data)
    return [Report.from_dict(r) for r in doc["reports"]]
