import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from braidlab.errors import DegreeOverflow, ParseError, PresentationError
from braidlab.ncalg import (
    NCPolynomial,
    Presentation,
    centrality_residual,
    confluence_check,
    hilbert_dims,
    normal_word_counts,
    overlap_dimension,
    strategy_agreement,
    supercommutative_presentation,
    supersymmetric_dims,
)
from braidlab.rea import build_rea, cas_q, deformed_sl2, quant_presentation, r_trace_power
from braidlab.scalar import Scalar
from braidlab.tensor import SuperDim


@pytest.fixture(scope="module")
def rea11():
    return build_rea(SuperDim(1, 1), confluence_degree=0)


@pytest.fixture(scope="module")
def rea20():
    return build_rea(SuperDim(2, 0), confluence_degree=0)


def test_parse_and_render():
    names = ["x", "h", "y"]
    p = NCPolynomial.parse("q^-1*x*y + q*y*x + h*h/2_q - 3", names)
    assert p.degree() == 2
    assert NCPolynomial.parse(p.render(names), names) == p
    with pytest.raises(ParseError):
        NCPolynomial.parse("x**y", names)


def test_word_order_is_deglex():
    P = deformed_sl2()
    x, h, y = P.gens()
    # rules are led by the greater word: h*x > x*h, y*h > h*y, y*x > x*y
    leads = {P._wname(w) for w in P.rules}
    assert leads == {"h*x", "y*h", "y*x"}


def test_normal_form_quant2_example():
    P = deformed_sl2()
    got = P.normal_form(P.parse("h*x"))
    assert got == P.parse("q^-2*x*h + q^-2*2_q*hbar*x")


def test_reduced_word_is_fixed():
    P = deformed_sl2()
    assert P.normal_form(P.parse("x*x")) == P.parse("x*x")


def test_sl11_anticommutator():
    gens = [("h", 0), ("b", 1), ("c", 1)]
    names = [g for g, _ in gens]
    rels = [NCPolynomial.parse(s, names) for s in ("b*c + c*b + h", "h*b - b*h", "h*c - c*h", "b*b", "c*c")]
    P = Presentation.from_relations(gens, rels)
    assert P.normal_form(P.parse("c*b")) == P.parse("-b*c - h")


def test_factorization_with_central_symbol():
    P = supercommutative_presentation([("h", 0), ("b", 1), ("c", 1)])
    e = P.parse("(h - (r - b*c/(2*r))) * (h + (r - b*c/(2*r))) - (h*h + b*c - r^2)")
    assert P.normal_form(e).is_zero()


def test_hilbert_dims_oracles():
    assert hilbert_dims(Presentation([("x", 0), ("y", 0), ("z", 0)], {}), 2) == [1, 3, 9]
    for even, odd in ((3, 0), (2, 2), (1, 3), (0, 2)):
        gens = [(f"e{i}", 0) for i in range(even)] + [(f"o{i}", 1) for i in range(odd)]
        assert hilbert_dims(supercommutative_presentation(gens), 4) == supersymmetric_dims(even, odd, 4)


def test_supersymmetric_dims_formula():
    assert supersymmetric_dims(4, 0, 3) == [comb(k + 3, k) for k in range(4)]
    assert supersymmetric_dims(2, 2, 3) == [1, 4, 8, 12]


def test_rea_hilbert_and_word_counts(rea20, rea11):
    assert hilbert_dims(rea20.pres, 4) == [1, 4, 10, 20, 35]
    assert hilbert_dims(rea11.pres, 4) == [1, 4, 8, 12, 16]
    assert normal_word_counts(rea20.pres, 4) == [1, 4, 10, 20, 35]
    assert normal_word_counts(rea11.pres, 4) == [1, 4, 8, 12, 16]


def test_overlap_dimension_examples():
    alpha = Scalar.symbol("alpha")
    assert overlap_dimension(quant_presentation(alpha, 2 - alpha, 2 - alpha, alpha)) == 1
    assert overlap_dimension(quant_presentation(1, 1, 2, 0)) == 0
    gens = [("x", 0), ("y", 0), ("z", 0)]
    assert overlap_dimension(supercommutative_presentation(gens)) == 1


def test_centrality_examples(rea20):
    P = deformed_sl2()
    assert all(r.is_zero() for _, r in centrality_residual(cas_q(), P))
    res = dict(centrality_residual(P.parse("x"), P))
    assert not res["h"].is_zero()
    assert all(r.is_zero() for _, r in centrality_residual(r_trace_power(rea20, 1), rea20.pres))


def test_confluence_examples():
    assert confluence_check(deformed_sl2()).passed
    bad = confluence_check(deformed_sl2(1, 0, 1))
    assert not bad.passed and bad.details["failure_count"] > 0
    one = Presentation([("x", 0), ("y", 0)], {(1, 0): NCPolynomial.word((0, 1))})
    rep = confluence_check(one)
    assert rep.passed and rep.details["critical_pairs"] == 0


@pytest.mark.parametrize("dim", [SuperDim(2, 0), SuperDim(1, 1), SuperDim(1, 0)], ids=str)
def test_strategy_agreement(dim):
    A = build_rea(dim, confluence_degree=0)
    assert strategy_agreement(A.pres, 3).passed
    assert strategy_agreement(deformed_sl2(), 3).passed


def _poly(draw, ngens, maxdeg):
    terms = draw(st.lists(st.tuples(st.lists(st.integers(0, ngens - 1), max_size=maxdeg), st.integers(-3, 3)), max_size=5))
    p = NCPolynomial()
    for w, c in terms:
        p = p + NCPolynomial.word(tuple(w), c)
    return p


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_normal_form_idempotent_and_linear(rea11, data):
    P = rea11.pres
    f = _poly(data.draw, 4, 3)
    g = _poly(data.draw, 4, 3)
    c = Scalar.parse(data.draw(st.sampled_from(["q", "2", "hbar - 1", "q^-2"])))
    nf = P.normal_form(f)
    assert P.normal_form(nf) == nf
    assert all(P.is_normal(w) for w in nf.terms)
    assert P.normal_form(f + g * c) == nf + P.normal_form(g) * c


def test_json_roundtrip(rea11):
    text = json.dumps(rea11.pres.to_json())
    back = Presentation.from_json(text)
    assert back.rules.keys() == rea11.pres.rules.keys()
    assert all(back.rules[k] == v for k, v in rea11.pres.rules.items())
    assert json.dumps(back.to_json()) == text


def test_load_rejects_bad_rules():
    gens = [{"name": "x", "parity": 0}, {"name": "y", "parity": 1}]
    cubic = {"generators": gens, "rules": [{"lead": ["y", "x", "x"], "tail": []}]}
    upward = {"generators": gens, "rules": [{"lead": ["y", "x"], "tail": [{"word": ["y", "y"], "coeff": "1"}]}]}
    mixed = {"generators": gens, "rules": [{"lead": ["y", "x"], "tail": [{"word": ["x", "x"], "coeff": "1"}]}]}
    for bad in (cubic, upward, mixed):
        with pytest.raises(PresentationError):
            Presentation.from_json(bad)


def test_from_relations_needs_quadratic_leads():
    with pytest.raises(PresentationError):
        Presentation.from_relations([("x", 0), ("y", 0)], [NCPolynomial.parse("x*y*x - y", ["x", "y"])])


def test_degree_cap():
    P = Presentation([("x", 0), ("y", 0)], {(1, 0): NCPolynomial.word((0, 1))}, max_degree=4)
    with pytest.raises(DegreeOverflow) as err:
        P.normal_form(NCPolynomial.word((1,) * 5 + (0,)))
    assert err.value.cap == 4
