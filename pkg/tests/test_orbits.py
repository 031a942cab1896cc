import json

import pytest

from braidlab import reference as ref
from braidlab.errors import DegenerateSpectrum, SizeMismatch
from braidlab.ncalg import NCPolynomial
from braidlab.orbits import (
    Spectrum,
    classical_power_sum,
    compare_dims_variants,
    orbit_ideal,
    power_sum,
    quantum_dims,
    regularity,
)
from braidlab.rea import build_rea, r_trace_power
from braidlab.scalar import Scalar, q
from braidlab.tensor import SuperDim, bc_operators, hecke_symmetry, skew_inverse

mu1, mu2, mu, nu, hb = (Scalar.symbol(n) for n in ("mu1", "mu2", "mu", "nu", "hbar"))
S20, S11 = Spectrum([mu1, mu2]), Spectrum([mu], [nu])


def tr_c(dim):
    return bc_operators(skew_inverse(hecke_symmetry(dim)))[1].trace()


def test_dims_examples():
    assert quantum_dims(Spectrum([mu1])).d == (Scalar.parse("q^-1"),)
    assert quantum_dims(S20).d[0] == Scalar.parse("q^-1*(mu1 - q^-2*mu2)/(mu1 - mu2)")
    with pytest.raises(DegenerateSpectrum):
        quantum_dims(Spectrum([mu1, mu1]))


def test_classical_power_sums():
    assert classical_power_sum(S11, 1) == mu - nu
    assert classical_power_sum(Spectrum([mu1, mu2], [nu]), 0) == 1
    assert classical_power_sum(Spectrum([3, 5]), 2) == 34


@pytest.mark.parametrize("s,table", [(S20, ref.POWER_SUMS_20), (S11, ref.POWER_SUMS_11)], ids=["2|0", "1|1"])
def test_power_sums_worked_examples(s, table):
    for (h, k), text in table.items():
        assert power_sum(s, quantum_dims(s, 0 if h == 0 else hb), k) == Scalar.parse(text)


def test_power_sum_zero_is_trace_c():
    cases = [(SuperDim(1, 0), Spectrum([mu1])), (SuperDim(2, 0), S20), (SuperDim(1, 1), S11), (SuperDim(2, 1), Spectrum([mu1, mu2], [nu]))]
    for dim, s in cases:
        for h in (0, hb):
            assert power_sum(s, quantum_dims(s, h), 0) == tr_c(dim)
    assert power_sum(S20, quantum_dims(S20), 0) == Scalar.parse("q^-1 + q^-3")


@pytest.mark.parametrize("s", [Spectrum([mu1, mu2], [nu]), Spectrum([mu1], [mu2, nu]), S20], ids=str)
def test_classical_limit(s):
    dims = quantum_dims(s)
    assert all(x.subs({"q": 1}) == 1 for x in dims.d)
    assert all(x.subs({"q": 1}) == -1 for x in dims.d_prime)
    for k in range(4):
        assert power_sum(s, dims, k).subs({"q": 1}) == classical_power_sum(s, k)


@pytest.mark.parametrize("dim,s", [(SuperDim(2, 0), S20), (SuperDim(1, 1), S11), (SuperDim(2, 1), Spectrum([mu1, mu2], [nu]))], ids=str)
def test_prefactor_convention(dim, s):
    rep = compare_dims_variants(s, hb, tr_c(dim))
    assert rep.details["passing"] == ["corrected"]
    # both variants coincide at hbar = 0
    assert quantum_dims(s, 0, "printed") == quantum_dims(s, 0, "corrected")


def test_hyperboloid():
    s = Spectrum([mu1, -mu1])
    d = quantum_dims(s)
    assert power_sum(s, d, 1).is_zero()
    assert power_sum(s, d, 2) == Scalar.parse(ref.HYPERBOLOID)
    A = build_rea(SuperDim(2, 0), 0, confluence_degree=0)
    ideal = orbit_ideal(A, s)
    assert ideal[0] == A.nf(A.parse(ref.TRACES_20[1]))
    assert ideal[1] == A.nf(A.parse(f"{ref.TRACES_20[2]} - {ref.HYPERBOLOID}"))


def test_orbit_ideal_1_1():
    A0 = build_rea(SuperDim(1, 1), 0, confluence_degree=0)
    ideal = orbit_ideal(A0, S11)
    assert ideal[0] == A0.parse("q*(a - d) - (q^-1*mu - q*nu)")
    assert ideal[1] == A0.nf(A0.parse("q*(a*a + b*c - c*b - d*d) - (mu + nu)*(q^-1*mu - q*nu)"))
    A = build_rea(SuperDim(1, 1), confluence_degree=0)
    assert orbit_ideal(A, S11)[0] == A.parse("q*(a - d) - (q^-1*mu - q*nu + hbar)")
    with pytest.raises(SizeMismatch):
        orbit_ideal(A, S20)


def test_eigenvalue_substitution_2_0():
    # mu1 + mu2 = q^-2 a + d and mu1 mu2 = q^-2 ad - cb turn power sums into R-traces
    A = build_rea(SuperDim(2, 0), 0, confluence_degree=0)
    e1, e2 = A.parse("q^-2*a + d"), A.parse("q^-2*a*d - c*b")
    d = quantum_dims(S20)
    p1 = power_sum(S20, d, 1)
    p2 = power_sum(S20, d, 2)
    # p1 = q^-1 e1, p2 = q^-1 e1^2 - (q^-1 + q^-3) e2
    assert p1 == Scalar.parse("q^-1*(mu1 + mu2)")
    assert p2 == Scalar.parse("q^-1*(mu1 + mu2)^2 - (q^-1 + q^-3)*mu1*mu2")
    assert A.nf(e1 * Scalar.parse("q^-1")) == r_trace_power(A, 1)
    assert A.nf(e1 * e1 * Scalar.parse("q^-1") - e2 * Scalar.parse("q^-1 + q^-3")) == r_trace_power(A, 2)


def test_eigenvalue_relation_1_1():
    # q^-1 mu - q nu = ell after clearing denominators, with mu, nu the roots of the CH identity
    A = build_rea(SuperDim(1, 1), 0, confluence_degree=0)
    ell = r_trace_power(A, 1)
    assert power_sum(S11, quantum_dims(S11), 1) == Scalar.parse("q^-1*mu - q*nu")
    assert ell == A.parse("q*(a - d)")


def test_regularity_verdicts():
    Q = q()
    assert regularity(Spectrum([1, -1])).passed
    assert regularity(Spectrum([mu1, -mu1])).passed
    assert not regularity(Spectrum([Q * Q * nu], [nu])).passed
    assert regularity(S11).passed and regularity(S11, hb).passed
    assert not regularity(Spectrum([Q * Q * nu - Q * hb], [nu]), hb).passed
    rep = regularity(Spectrum([mu2 / (Q * Q) + hb / Q, mu2]), hb)
    assert not rep.passed and rep.details["braided_violations"]
    assert not regularity(Spectrum([1, 1])).passed


def test_regularity_at_a_point():
    s = Spectrum([4, 1])
    assert not regularity(s, 0, {"q": 2}).passed
    assert regularity(s, 0, {"q": 3}).passed


def test_spectrum_json():
    s, point = Spectrum.from_json(json.dumps({"mu": ["1", "-1"], "nu": [], "q": "symbolic", "hbar": "0"}))
    assert s == Spectrum([1, -1]) and point == {}
    s, point = Spectrum.from_json({"mu": ["mu"], "nu": ["nu"], "q": "3/2"})
    assert point["q"] == Scalar.parse("3/2").to_fraction()
    assert Spectrum.from_json(s.to_json())[0] == s
