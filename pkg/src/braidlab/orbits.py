"""Spectra, quantum dimensions, power sums and regularity of braided orbits."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateSpectrum, ParseError, SizeMismatch
from .ncalg import NCPolynomial
from .report import VerificationReport
from .scalar import Scalar, q

__all__ = [
    "Spectrum",
    "QuantumDims",
    "quantum_dims",
    "compare_dims_variants",
    "power_sum",
    "classical_power_sum",
    "regularity",
    "orbit_ideal",
    "PREFACTORS",
]

# prefactor of d_i in the hbar-deformed formula: "corrected" is q^-1 (the hbar = 0 value,
# forced by the shift L = M + hbar/lambda), "printed" is q
PREFACTORS = ("corrected", "printed")


@dataclass(frozen=True)
class Spectrum:
    mu: tuple
    nu: tuple

    def __init__(self, mu: Sequence = (), nu: Sequence = ()):
        object.__setattr__(self, "mu", tuple(Scalar.coerce(x) for x in mu))
        object.__setattr__(self, "nu", tuple(Scalar.coerce(x) for x in nu))

    @property
    def m(self) -> int:
        return len(self.mu)

    @property
    def n(self) -> int:
        return len(self.nu)

    def check_dim(self, dim) -> None:
        if (self.m, self.n) != (dim.m, dim.n):
            raise SizeMismatch(f"spectrum has {self.m} even and {self.n} odd eigenvalues, algebra is {dim}")

    def subs(self, mapping) -> "Spectrum":
        return Spectrum([x.subs(mapping) for x in self.mu], [x.subs(mapping) for x in self.nu])

    @classmethod
    def from_json(cls, data) -> tuple["Spectrum", dict]:
        """Returns the spectrum and a substitution dict for q (empty when symbolic)."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            s = cls([Scalar.parse(str(x)) for x in data.get("mu", [])], [Scalar.parse(str(x)) for x in data.get("nu", [])])
        except (TypeError, AttributeError) as exc:
            raise ParseError(f"malformed spectrum: {exc}") from None
        point = {}
        qv = data.get("q", "symbolic")
        if qv != "symbolic":
            point["q"] = Scalar.parse(str(qv)).to_fraction()
        return s, point

    def to_json(self) -> dict:
        return {"mu": [str(x) for x in self.mu], "nu": [str(x) for x in self.nu]}


@dataclass(frozen=True)
class QuantumDims:
    d: tuple
    d_prime: tuple
    hbar: Scalar

    def to_json(self) -> dict:
        return {"d": [str(x) for x in self.d], "d_prime": [str(x) for x in self.d_prime], "hbar": str(self.hbar)}


def _nonzero(diff: Scalar, first: str, second: str) -> Scalar:
    if diff.is_zero():
        raise DegenerateSpectrum(first, second)
    return diff


def quantum_dims(s: Spectrum, hbar=0, variant: str = "corrected") -> QuantumDims:
    """Quantum dimensions d_i, d'_j.

    For hbar = 0 this is the product formula with prefactors q^-1 and -q.  For
    hbar != 0 the numerators gain -q^-1 hbar (even/even, odd/even) and +q hbar
    (even/odd, odd/odd); ``variant`` selects the prefactor of d_i.
    """
    if variant not in PREFACTORS:
        raise ValueError(f"variant must be one of {PREFACTORS}")
    qq = q()
    qi = qq.invert()
    hb = Scalar.coerce(hbar)
    lead = qi if hb.is_zero() or variant == "corrected" else qq
    mu, nu = s.mu, s.nu
    d = []
    for i, mi in enumerate(mu):
        v = lead
        for p, mp in enumerate(mu):
            if p != i:
                den = _nonzero(mi - mp, f"mu{i + 1}", f"mu{p + 1}")
                v = v * (mi - qi * qi * mp - qi * hb) / den
        for j, nj in enumerate(nu):
            den = _nonzero(mi - nj, f"mu{i + 1}", f"nu{j + 1}")
            v = v * (mi - qq * qq * nj + qq * hb) / den
        d.append(v)
    dp = []
    for j, nj in enumerate(nu):
        v = -qq
        for i, mi in enumerate(mu):
            den = _nonzero(nj - mi, f"nu{j + 1}", f"mu{i + 1}")
            v = v * (nj - qi * qi * mi - qi * hb) / den
        for p, np_ in enumerate(nu):
            if p != j:
                den = _nonzero(nj - np_, f"nu{j + 1}", f"nu{p + 1}")
                v = v * (nj - qq * qq * np_ + qq * hb) / den
        dp.append(v)
    return QuantumDims(tuple(d), tuple(dp), hb)


def power_sum(s: Spectrum, dims: QuantumDims, k: int) -> Scalar:
    out = Scalar(0)
    for d, m in zip(dims.d, s.mu):
        out = out + d * m**k
    for d, n in zip(dims.d_prime, s.nu):
        out = out + d * n**k
    return out


def classical_power_sum(s: Spectrum, k: int) -> Scalar:
    out = Scalar(0)
    for m in s.mu:
        out = out + m**k
    for n in s.nu:
        out = out - n**k
    return out


def compare_dims_variants(s: Spectrum, hbar, trace_c: Scalar) -> VerificationReport:
    """Test both prefactor variants against power_sum(k=0) = Tr C."""
    verdict = {}
    for variant in PREFACTORS:
        p0 = power_sum(s, quantum_dims(s, hbar, variant), 0)
        verdict[variant] = {"power_sum_0": str(p0), "matches_trace_C": p0 == trace_c}
    passing = [v for v in PREFACTORS if verdict[v]["matches_trace_C"]]
    return VerificationReport(
        "dims_prefactor", "corrected" in passing, {"trace_C": str(trace_c), "variants": verdict, "passing": passing}
    )


def regularity(s: Spectrum, hbar=0, point: dict | None = None) -> VerificationReport:
    """Classical distinctness plus the braided conditions for the given hbar.

    A condition over symbolic entries holds when its expression is not
    identically zero (generic values).
    """
    qq = q()
    qi = qq.invert()
    hb = Scalar.coerce(hbar)
    point = point or {}
    mu = [x.subs(point) if point else x for x in s.mu]
    nu = [x.subs(point) if point else x for x in s.nu]

    def ev(x: Scalar) -> Scalar:
        return x.subs(point) if point else x

    classical, braided = [], []
    for i in range(len(mu)):
        for j in range(len(mu)):
            if i < j and ev(mu[i] - mu[j]).is_zero():
                classical.append(f"mu{i + 1} = mu{j + 1}")
            if i != j:
                if hb.is_zero():
                    if ev(mu[i] - qq * qq * mu[j]).is_zero():
                        braided.append(f"mu{i + 1} = q^2*mu{j + 1}")
                elif ev(mu[i] - qi * qi * mu[j] - qi * hb).is_zero():
                    braided.append(f"mu{i + 1} - q^-2*mu{j + 1} - q^-1*hbar = 0")
    for i in range(len(nu)):
        for j in range(len(nu)):
            if i < j and ev(nu[i] - nu[j]).is_zero():
                classical.append(f"nu{i + 1} = nu{j + 1}")
            if i != j:
                if hb.is_zero():
                    if ev(nu[i] - qq * qq * nu[j]).is_zero():
                        braided.append(f"nu{i + 1} = q^2*nu{j + 1}")
                elif ev(nu[i] - qq * qq * nu[j] + qq * hb).is_zero():
                    braided.append(f"nu{i + 1} - q^2*nu{j + 1} + q*hbar = 0")
    for i in range(len(mu)):
        for j in range(len(nu)):
            if ev(mu[i] - nu[j]).is_zero():
                classical.append(f"mu{i + 1} = nu{j + 1}")
            if hb.is_zero():
                if ev(mu[i] - qq * qq * nu[j]).is_zero():
                    braided.append(f"mu{i + 1} = q^2*nu{j + 1}")
            elif ev(mu[i] - qq * qq * nu[j] + qq * hb).is_zero():
                braided.append(f"mu{i + 1} - q^2*nu{j + 1} + q*hbar = 0")
    return VerificationReport(
        "regularity",
        not classical and not braided,
        {"hbar": str(hb), "classical_violations": classical, "braided_violations": braided},
    )


def orbit_ideal(A, s: Spectrum, variant: str = "corrected") -> list[NCPolynomial]:
    """Tr_R L^k - power_sum(k) for k = 1..m+n, in normal form."""
    from .rea import r_trace_power

    s.check_dim(A.dim)
    dims = quantum_dims(s, A.hbar, variant)
    out = []
    for k in range(1, A.dim.N + 1):
        out.append(A.nf(r_trace_power(A, k) - NCPolynomial.const(power_sum(s, dims, k))))
    return out
