"""The acceptance battery: ten exact checks, each a pure function returning a report."""

from __future__ import annotations

import time
from typing import Callable

from . import reference as ref
from .ncalg import NCPolynomial, Presentation, centrality_residual, confluence_check, hilbert_dims, overlap_dimension
from .orbits import Spectrum, compare_dims_variants, power_sum, quantum_dims, regularity, orbit_ideal
from .poisson import (
    PoissonBracket,
    SuperPoly,
    center_residual,
    check_compatibility,
    check_jacobi,
    check_parity_axioms,
    compare_brackets,
    linear_bracket,
    pencil,
    quadratic_gl_bracket,
    quadratic_sl2_bracket,
    semiclassical_bracket_from_algebra,
    sl2_bracket,
    so3_bracket,
)
from .rea import (
    build_rea,
    cas_q,
    ch_factorized_check_11,
    ch_residual,
    deformed_sl2,
    quant_presentation,
    r_trace_power,
)
from .report import VerificationReport
from .scalar import Scalar, q
from .tensor import (
    SuperDim,
    bc_operators,
    check_bc_relation,
    check_hecke_condition,
    check_yang_baxter,
    hecke_symmetry,
    skew_inverse,
    trace_convention_report,
)

__all__ = ["CRITERIA", "run_criterion", "run_all", "broken_bracket", "parity_violating_bracket", "all_dims"]


def all_dims(max_total: int = 4) -> list[SuperDim]:
    return [SuperDim(m, t - m) for t in range(1, max_total + 1) for m in range(t, -1, -1)]


class _Checks:
    """Collects named sub-checks into one report."""

    def __init__(self):
        self.items: list[dict] = []

    def add(self, name: str, ok: bool, **info):
        entry = {"check": name, "ok": bool(ok)}
        entry.update({k: v for k, v in info.items()})
        self.items.append(entry)

    def report(self, name: str) -> VerificationReport:
        failed = [c["check"] for c in self.items if not c["ok"]]
        return VerificationReport(name, not failed, {"checks": self.items, "failed": failed})


def _matrix_equal(op, rows) -> tuple[bool, list]:
    N = op.dim.N
    got = [[str(op[i, j]) for j in range(N)] for i in range(N)]
    ok = all(op[i, j] == Scalar.parse(rows[i][j]) for i in range(N) for j in range(N))
    return ok, got


def criterion_1() -> VerificationReport:
    ch = _Checks()
    for d in all_dims():
        R = hecke_symmetry(d)
        ch.add(f"yang_baxter {d}", check_yang_baxter(R).passed)
        ch.add(f"hecke {d}", check_hecke_condition(R).passed)
    return ch.report("1 yang-baxter and hecke")


def criterion_2() -> VerificationReport:
    ch = _Checks()
    for d, Bref, Cref in ((SuperDim(2, 0), ref.B_20, ref.C_20), (SuperDim(1, 1), ref.B_11, ref.C_11)):
        B, C = bc_operators(skew_inverse(hecke_symmetry(d)))
        okb, gotb = _matrix_equal(B, Bref)
        okc, gotc = _matrix_equal(C, Cref)
        ch.add(f"B {d}", okb, got=gotb)
        ch.add(f"C {d}", okc, got=gotc)
    for d in all_dims():
        B, C = bc_operators(skew_inverse(hecke_symmetry(d)))
        ch.add(f"BC {d}", check_bc_relation(B, C, d).passed)
    return ch.report("2 skew-inverse B, C")


def _relation_match(d: SuperDim, printed) -> tuple[bool, dict]:
    A = build_rea(d, confluence_degree=0)
    gens = A.pres.generators
    refp = Presentation.from_relations(gens, [NCPolynomial.parse(r, A.names) for r in printed])
    mism = []
    for lead in sorted(set(A.pres.rules) | set(refp.rules)):
        mine = A.pres.rules.get(lead)
        theirs = refp.rules.get(lead)
        if mine is None or theirs is None or not (mine - theirs).is_zero():
            mism.append(
                {
                    "lead": A.pres._wname(lead),
                    "derived": A.render(mine) if mine is not None else None,
                    "reference": refp.render(theirs) if theirs is not None else None,
                }
            )
    at0 = lambda P: P.map_coeffs(lambda c: c.subs({"hbar": 0}))
    a0, r0 = at0(A.pres), at0(refp)
    agree0 = a0.rules.keys() == r0.rules.keys() and all((a0.rules[k] - r0.rules[k]).is_zero() for k in a0.rules)
    return not mism, {"mismatches": mism, "agree_at_hbar_0": agree0, "rules": len(A.pres.rules)}


def criterion_3() -> VerificationReport:
    ch = _Checks()
    for d, printed in ((SuperDim(2, 0), ref.RELATIONS_20), (SuperDim(1, 1), ref.RELATIONS_11)):
        ok, info = _relation_match(d, printed)
        ch.add(f"relations {d}", ok, **info)
    A = build_rea(SuperDim(1, 1), confluence_degree=0)
    nilp = all(A.nf(A.parse(w)).is_zero() for w in ("b*b", "c*c"))
    ch.add("b^2 = c^2 = 0 (1|1)", nilp)
    return ch.report("3 REA relation lists")


def criterion_4() -> VerificationReport:
    ch = _Checks()
    for d, want in ((SuperDim(2, 0), [1, 4, 10, 20]), (SuperDim(1, 1), [1, 4, 8, 12])):
        A = build_rea(d, confluence_degree=4)
        got = hilbert_dims(A.pres, 3)
        ch.add(f"hilbert {d}", got == want, got=got, expected=want)
        ch.add(f"confluence {d} to degree 4", A.confluence.passed, **A.confluence.details)
    return ch.report("4 hilbert dimensions and confluence")


def criterion_5() -> VerificationReport:
    ch = _Checks()
    for d in (SuperDim(1, 0), SuperDim(2, 0), SuperDim(1, 1), SuperDim(2, 1)):
        A = build_rea(d, confluence_degree=0)
        for k in range(1, d.N + 1):
            res = [(g, A.render(r)) for g, r in centrality_residual(r_trace_power(A, k), A.pres) if not r.is_zero()]
            ch.add(f"Tr_R L^{k} central {d}", not res, residuals=res[:4])
    P = deformed_sl2()
    res = [(g, P.render(r)) for g, r in centrality_residual(cas_q(), P) if not r.is_zero()]
    ch.add("Cas_q central in the deformed sl(2)", not res, residuals=res)
    return ch.report("5 centrality")


def criterion_6() -> VerificationReport:
    ch = _Checks()
    for d, coeffs in ((SuperDim(2, 0), ref.CH_20), (SuperDim(1, 1), ref.CH_11)):
        A = build_rea(d, 0, confluence_degree=0)
        res = ch_residual(A, [A.parse(c) for c in coeffs])
        ch.add(f"CH identity {d}", res.is_zero(), residual=res.render(A.names))
    A = build_rea(SuperDim(1, 1), 0, confluence_degree=0)
    rep = ch_factorized_check_11(A)
    ch.add("factorized CH (1|1)", rep.passed, **rep.details)
    return ch.report("6 cayley-hamilton")


def criterion_7() -> VerificationReport:
    ch = _Checks()
    alpha = Scalar.symbol("alpha")
    eq = overlap_dimension(quant_presentation(alpha, 2 - alpha, 2 - alpha, alpha))
    ch.add("overlap dimension a=d, b=c", eq == 1, value=eq)
    ne = overlap_dimension(quant_presentation(1, 1, 2, 0))
    ch.add("overlap dimension a != d", ne == 0, value=ne)
    good = confluence_check(deformed_sl2())
    ch.add("A = B = C = 2_q hbar confluent", good.passed)
    bad = confluence_check(deformed_sl2(1, 0, 1))
    ch.add("A != B not confluent", not bad.passed, failures=bad.details["failures"])
    return ch.report("7 jacobi criterion dichotomy")


def broken_bracket(names=("x", "y", "z")) -> PoissonBracket:
    """{g0,g1} = g1^2, {g0,g2} = g1, {g1,g2} = g0 on three even generators: not Poisson."""
    par = (0, 0, 0)
    g = [SuperPoly.gen(par, i) for i in range(3)]
    return PoissonBracket([(n, 0) for n in names], {(0, 1): g[1] * g[1], (0, 2): g[1], (1, 2): g[0]})


def parity_violating_bracket() -> PoissonBracket:
    """{a,b} = 1 with b odd."""
    gens = [("a", 0), ("b", 1)]
    return PoissonBracket(gens, {(0, 1): SuperPoly.const((0, 1), 1)})


def _poisson_checks(ch: _Checks, label: str, B: PoissonBracket, centers=()):
    ch.add(f"jacobi {label}", check_jacobi(B).passed)
    ch.add(f"parity {label}", check_parity_axioms(B).passed)
    for z in centers:
        res = [(g, B.render(r)) for g, r in center_residual(B, B.parse(z)) if not r.is_zero()]
        ch.add(f"center {z} under {label}", not res, residuals=res)


def _generic_p(max_degree: int = 2) -> SuperPoly:
    par = (0, 0, 0)
    x, y, z = (SuperPoly.gen(par, i) for i in range(3))
    monos = [SuperPoly.const(par, 1)]
    for deg in range(1, max_degree + 1):
        for i in range(3):
            for j in range(i, 3) if deg == 2 else [i]:
                monos.append((x, y, z)[i] if deg == 1 else (x, y, z)[i] * (x, y, z)[j])
    p = SuperPoly(par)
    for k, mono in enumerate(monos):
        p = p + mono * Scalar.symbol(f"p{k}")
    return p


def criterion_8() -> VerificationReport:
    ch = _Checks()
    alpha, beta = Scalar.symbol("alpha"), Scalar.symbol("beta")
    s1, s2 = sl2_bracket(), quadratic_sl2_bracket()
    _poisson_checks(ch, "sl(2) pencil", pencil(s1, s2, alpha, beta), ["2*x*y + h^2/2"])
    ch.add("compatibility sl(2) linear/quadratic", check_compatibility(s1, s2).passed)
    for d, centers in (
        (SuperDim(1, 1), ["a - d", "a*a + b*c - c*b - d*d"]),
        (SuperDim(2, 0), ["a + d", "a*a + b*c + c*b + d*d"]),
    ):
        lb, qb = linear_bracket(d), quadratic_gl_bracket(d)
        _poisson_checks(ch, f"gl{d} pencil", pencil(lb, qb, alpha, beta), centers)
        ch.add(f"compatibility gl{d}", check_compatibility(lb, qb).passed)
    lin3 = so3_bracket(1)
    for label, p in (("generic p, degree <= 2", _generic_p(2)), ("p = z", "z")):
        B = so3_bracket(p)
        _poisson_checks(ch, f"so(3) {label}", B, ["x^2 + y^2 + z^2"])
        ch.add(f"compatibility so(3) {label}", check_compatibility(lin3, B).passed)
    ch.add("broken bracket fails jacobi", not check_jacobi(broken_bracket()).passed)
    ch.add("broken bracket incompatible with sl(2)", not check_compatibility(s1, broken_bracket(("x", "h", "y"))).passed)
    ch.add("parity-violating table fails", not check_parity_axioms(parity_violating_bracket()).passed)
    return ch.report("8 poisson suite")


def criterion_9() -> VerificationReport:
    ch = _Checks()
    for d in (SuperDim(1, 1), SuperDim(2, 0)):
        A = build_rea(d, 0, confluence_degree=0)
        rep = compare_brackets(semiclassical_bracket_from_algebra(A.pres), quadratic_gl_bracket(d))
        ch.add(f"semiclassical {d}", rep.passed, **rep.details)
    return ch.report("9 semiclassical limit")


def _same(x: Scalar, text: str) -> bool:
    return x == Scalar.parse(text)


def criterion_10() -> VerificationReport:
    ch = _Checks()
    mu1, mu2, mu, nu, hb = (Scalar.symbol(n) for n in ("mu1", "mu2", "mu", "nu", "hbar"))
    s20, s11 = Spectrum([mu1, mu2]), Spectrum([mu], [nu])
    for s, table, label in ((s20, ref.POWER_SUMS_20, "(2|0)"), (s11, ref.POWER_SUMS_11, "(1|1)")):
        for (h, k), text in table.items():
            dims = quantum_dims(s, 0 if h == 0 else hb)
            got = power_sum(s, dims, k)
            ch.add(f"power sum {label} hbar={h} k={k}", _same(got, text), got=str(got))
    hyper = Spectrum([mu1, -mu1])
    d0 = quantum_dims(hyper, 0)
    ch.add("hyperboloid trace", power_sum(hyper, d0, 1).is_zero() and _same(power_sum(hyper, d0, 2), ref.HYPERBOLOID))
    A = build_rea(SuperDim(2, 0), 0, confluence_degree=0)
    ideal = orbit_ideal(A, hyper)
    ch.add("hyperboloid ideal", ideal[0] == A.nf(A.parse(ref.TRACES_20[1])) and ideal[1] == A.nf(A.parse(ref.TRACES_20[2] + " - " + ref.HYPERBOLOID)))
    for d, s in ((SuperDim(1, 0), Spectrum([mu1])), (SuperDim(2, 0), s20), (SuperDim(1, 1), s11)):
        trc = bc_operators(skew_inverse(hecke_symmetry(d)))[1].trace()
        for h in (0, hb):
            ch.add(f"power_sum(0) = Tr C {d} hbar={h}", power_sum(s, quantum_dims(s, h), 0) == trc)
    for s in (Spectrum([mu1, mu2], [nu]), Spectrum([mu1], [mu2, nu])):
        dims = quantum_dims(s, 0)
        ok = all(x.subs({"q": 1}) == 1 for x in dims.d) and all(x.subs({"q": 1}) == -1 for x in dims.d_prime)
        ch.add(f"q -> 1 quantum dims ({s.m}|{s.n})", ok)
    ch.add("(2|0) mu = (1, -1) regular", regularity(Spectrum([1, -1]), 0).passed)
    ch.add("(2|0) hyperboloid mu1 != 0 regular", regularity(hyper, 0).passed)
    qq = q()
    ch.add("(1|1) Tr_R L = 0 locus not regular", not regularity(Spectrum([qq * qq * nu], [nu]), 0).passed)
    ch.add("(1|1) generic regular", regularity(s11, 0).passed and regularity(s11, hb).passed)
    ch.add("(1|1) mu = q^2 nu - q hbar not regular", not regularity(Spectrum([qq * qq * nu - qq * hb], [nu]), hb).passed)
    ch.add("(2|0) mu1 = q^-2 mu2 + q^-1 hbar not regular", not regularity(Spectrum([mu2 / (qq * qq) + hb / qq, mu2]), hb).passed)
    for d, s in ((SuperDim(2, 0), s20), (SuperDim(1, 1), s11), (SuperDim(2, 1), Spectrum([mu1, mu2], [nu]))):
        trc = bc_operators(skew_inverse(hecke_symmetry(d)))[1].trace()
        rep = compare_dims_variants(s, hb, trc)
        ch.add(f"prefactor convention pinned to q^-1 {d}", rep.passed and rep.details["passing"] == ["corrected"], passing=rep.details["passing"])
    for d in (SuperDim(2, 0), SuperDim(1, 1), SuperDim(2, 1)):
        rep = trace_convention_report(d)
        ch.add(f"Tr C exponent convention {d}", rep.passed, **rep.details)
    return ch.report("10 orbits")


CRITERIA: dict[str, Callable[[], VerificationReport]] = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
    "9": criterion_9,
    "10": criterion_10,
}


def run_criterion(key: str) -> tuple[VerificationReport, float]:
    t = time.perf_counter()
    rep = CRITERIA[key]()
    return rep, (time.perf_counter() - t) * 1000


def run_all(jobs: int = 1) -> list[tuple[str, VerificationReport, float]]:
    keys = list(CRITERIA)
    if jobs <= 1:
        results = [run_criterion(k) for k in keys]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_criterion, keys))
    return [(k, rep, ms) for k, (rep, ms) in zip(keys, results)]
