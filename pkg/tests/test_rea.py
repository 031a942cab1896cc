import pytest

from braidlab import reference as ref
from braidlab.errors import EqualSuperDims
from braidlab.linalg import determinant, same_span
from braidlab.ncalg import NCPolynomial, Presentation, centrality_residual, confluence_check, hilbert_dims
from braidlab.rea import (
    build_rea,
    cas_q,
    casimir_factor,
    casimir_gram_factor,
    ch_factorized_check_11,
    ch_residual,
    ch_solve,
    deformed_sl2,
    gram_matrix,
    numerical_r_trace,
    pairing,
    r_trace_power,
    representation_check,
    shift_check,
    sl_quotient,
)
from braidlab.scalar import Scalar, q_int
from braidlab.tensor import SuperDim

D20, D11 = SuperDim(2, 0), SuperDim(1, 1)


@pytest.fixture(scope="module")
def A20():
    return build_rea(D20)


@pytest.fixture(scope="module")
def A11():
    return build_rea(D11)


def rel_rows(polys):
    return [dict(p.terms) for p in polys]


def printed(A, texts):
    return Presentation.from_relations(A.pres.generators, [A.parse(t) for t in texts])


def test_relations_2_0_match_worked_list(A20):
    assert len(A20.pres.rules) == 6
    assert same_span(rel_rows(A20.pres.relations()), rel_rows(A20.parse(t) for t in ref.RELATIONS_20))


def test_relations_1_1_nilpotent_odd_generators(A11):
    assert A11.nf(A11.parse("b*b")).is_zero()
    assert A11.nf(A11.parse("c*c")).is_zero()


def test_relations_1_1_printed_list_differs_by_hbar_sign(A11):
    # the printed list agrees at hbar = 0 and flips the sign of every hbar term
    # in the three relations involving d
    P = printed(A11, ref.RELATIONS_11)
    assert not same_span(rel_rows(A11.pres.relations()), rel_rows(P.relations()))
    at0 = lambda pres: pres.map_coeffs(lambda c: c.subs({"hbar": 0}))
    assert same_span(rel_rows(at0(A11.pres).relations()), rel_rows(at0(P).relations()))
    flipped = list(ref.RELATIONS_11)
    flipped[5] = flipped[5].replace("- hbar*(a - d)", "+ hbar*(a - d)")
    flipped[6] = flipped[6].replace("- q*hbar*b", "+ q*hbar*b")
    flipped[7] = flipped[7].replace("+ q*hbar*c", "- q*hbar*c")
    assert same_span(rel_rows(A11.pres.relations()), rel_rows(printed(A11, flipped).relations()))


def test_printed_1_1_list_lacks_good_deformation(A11):
    assert confluence_check(A11.pres).passed
    assert not confluence_check(printed(A11, ref.RELATIONS_11)).passed


def test_derived_1_1_limit_is_gl11(A11):
    P = A11.pres.map_coeffs(lambda c: c.subs({"q": 1}))
    nf = lambda s: P.normal_form(P.parse(s))
    assert nf("a*b - b*a") == P.parse("hbar*b")
    assert nf("d*b - b*d") == P.parse("hbar*b")
    assert nf("b*c + c*b") == P.parse("hbar*(d - a)")
    assert nf("a*d - d*a").is_zero()


def test_classical_limit_2_0_is_commutative():
    A = build_rea(D20, 0, confluence_degree=0)
    P = A.pres.map_coeffs(lambda c: c.subs({"q": 1}))
    for u in "abcd":
        for v in "abcd":
            assert P.normal_form(P.parse(f"{u}*{v} - {v}*{u}")).is_zero()


def test_hilbert_dims_small_cases():
    assert hilbert_dims(build_rea(SuperDim(1, 0), confluence_degree=0).pres, 4) == [1, 1, 1, 1, 1]
    assert hilbert_dims(build_rea(SuperDim(2, 1), confluence_degree=0).pres, 3) == [1, 9, 41, 129]


def test_r_traces_worked_examples():
    for d, table in ((D20, ref.TRACES_20), (D11, ref.TRACES_11)):
        A = build_rea(d, 0, confluence_degree=0)
        for k, text in table.items():
            assert r_trace_power(A, k) == A.nf(A.parse(text))
    A = build_rea(D11, confluence_degree=0)
    assert r_trace_power(A, 1) == A.parse(ref.TRACES_11[1])


@pytest.mark.parametrize("dim", [SuperDim(1, 0), D20, D11, SuperDim(2, 1)], ids=str)
def test_r_traces_central(dim):
    A = build_rea(dim, confluence_degree=0)
    for k in range(1, dim.N + 1):
        assert all(r.is_zero() for _, r in centrality_residual(r_trace_power(A, k), A.pres))


def test_numerical_r_trace(A20, A11):
    for name, val in ref.NUMERICAL_TRACE_20.items():
        assert numerical_r_trace(A20.parse(name), D20) == Scalar.parse(val)
    assert numerical_r_trace(A20.parse("a - d"), D20) == 0
    assert numerical_r_trace(NCPolynomial(), D20) == 0
    assert numerical_r_trace(A11.parse("a - d"), D11) == 0


def test_pairing_equals_worked_values_times_q_minus_2(A20):
    f = Scalar.parse("q^-2")
    for (u, v), val in ref.PAIRING_20.items():
        assert pairing(A20, A20.parse(u), A20.parse(v)) == Scalar.parse(val) * f
    assert pairing(A20, A20.parse("b"), A20.parse("b")) == 0
    h = A20.parse("a - d")
    assert pairing(A20, h, h) == q_int(2) * f
    assert pairing(A20, A20.parse("b"), A20.parse("c")) == Scalar.parse(ref.PAIRING_SL2[("b", "c")]) * f


def test_gram_invertible_also_on_traceless_part(A20):
    assert not determinant(gram_matrix(A20)).is_zero()
    traceless = [A20.parse(s) for s in ("b", "c", "a - d")]
    assert all(numerical_r_trace(t, D20).is_zero() for t in traceless)
    G = [[pairing(A20, u, v) for v in traceless] for u in traceless]
    assert not determinant(G).is_zero()


@pytest.mark.parametrize("dim,factor", [(D20, "q^-4"), (D11, "1"), (SuperDim(2, 1), "q^-2")], ids=str)
def test_casimir_matrix_is_inverse_to_gram(dim, factor):
    rep = casimir_gram_factor(build_rea(dim, confluence_degree=0))
    assert rep.passed
    assert Scalar.parse(rep.details["factors"]["Q*G"]) == Scalar.parse(factor)


def test_sl_quotient_reproduces_motiv(A20):
    P = sl_quotient(A20)
    assert [n for n, _ in P.generators] == ["b", "h", "c"]
    want = [P.parse(t) for t in ref.MOTIV]
    assert same_span(rel_rows(P.relations()), rel_rows(want))
    assert hilbert_dims(P, 4) == [1, 3, 6, 10, 15]


def test_sl_quotient_refuses_equal_dims(A11):
    with pytest.raises(EqualSuperDims):
        sl_quotient(A11)


def test_cas_q_relation_to_r_trace():
    assert all(r.is_zero() for _, r in centrality_residual(cas_q(), deformed_sl2()))
    rep = casimir_factor()
    assert rep.passed and rep.details["factor"] == "q^-2"


def test_ch_2_0():
    A = build_rea(D20, 0, confluence_degree=0)
    assert ch_residual(A, [A.parse(c) for c in ref.CH_20]).is_zero()
    sols = ch_solve(A, 2)
    assert len(sols) == 1
    assert all(x == A.nf(A.parse(c)) for x, c in zip(sols[0], ref.CH_20))
    assert not ch_residual(A, [NCPolynomial(), NCPolynomial(), NCPolynomial.const(1)]).is_zero()


def test_ch_1_1_printed_constant_term_has_wrong_sign():
    A = build_rea(D11, 0, confluence_degree=0)
    b0, b1, b2 = (A.parse(c) for c in ref.CH_11)
    res = ch_residual(A, [b0, b1, b2])
    assert not res.is_zero()
    twice = A.nf(b0 * 2)
    assert res[0, 0] == twice and res[1, 1] == twice
    assert res[0, 1].is_zero() and res[1, 0].is_zero()
    assert ch_residual(A, [b0 * -1, b1, b2]).is_zero()
    sols = ch_solve(A, 3)
    assert len(sols) == 1
    s0, s1, s2 = sols[0]
    assert s2 == A.nf(b2) * -1
    assert s1 == A.nf(b1) * -1
    assert s0 == A.nf(b0)


def test_ch_1_1_factorized():
    A = build_rea(D11, 0, confluence_degree=0)
    rep = ch_factorized_check_11(A)
    assert rep.passed and rep.details["S_central"] and rep.details["A_central"]
    dropped = ch_factorized_check_11(A, drop_s_a=True)
    assert not dropped.passed
    ell = r_trace_power(A, 1)
    L2 = A.power(2)
    for i in range(2):
        for j in range(2):
            assert dropped.details["residual"][i][j] == A.render(A.nf(ell * ell * L2[i, j]))


@pytest.mark.parametrize("dim", [D20, D11, SuperDim(2, 1)], ids=str)
def test_representation(dim):
    assert representation_check(dim, 1).passed
    assert not representation_check(dim, 0).passed


@pytest.mark.parametrize("dim", [D20, D11, SuperDim(2, 1), SuperDim(1, 2)], ids=str)
def test_hbar_shift(dim):
    assert shift_check(dim).passed


def test_build_records_confluence(A20):
    assert A20.confluence.passed
    assert A20.pres.max_verified_degree >= 4 or A20.confluence.details["verified_degree"] == 4
