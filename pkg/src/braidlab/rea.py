"""Reflection equation algebras built from the standard Hecke symmetry.

The defining relations are the entries of

    R L1 R L1 - L1 R L1 R - hbar (R L1 - L1 R),   L1 = L (x) I,

expanded over words in the generators l_i^j (ordered row-major) and
oriented into rewrite rules.  ``hbar = 0`` gives the plain REA.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegreeTooHigh, EqualSuperDims, NonOrientable, PresentationError
from .linalg import nullspace
from .ncalg import NCPolynomial, Presentation, centrality_residual, confluence_check, word_key
from .report import VerificationReport, nonzero_entries
from .scalar import Scalar, hbar as hbar_symbol, q, q_int
from .tensor import SuperDim, TensorOperator, bc_operators, hecke_symmetry, skew_inverse

__all__ = [
    "GeneratingMatrix",
    "REAlgebra",
    "generator_names",
    "build_rea",
    "re_components",
    "r_trace_power",
    "numerical_r_trace",
    "pairing",
    "gram_matrix",
    "casimir_coefficients",
    "casimir_gram_factor",
    "sl_quotient",
    "ch_residual",
    "ch_solve",
    "ch_factorized_check_11",
    "representation_check",
    "shift_check",
    "quant_presentation",
    "deformed_sl2",
    "cas_q",
    "casimir_factor",
]


def generator_names(dim: SuperDim) -> list[str]:
    N = dim.N
    if N == 2:
        return ["a", "b", "c", "d"]
    return [f"l{i + 1}{j + 1}" for i in range(N) for j in range(N)]


def generator_parities(dim: SuperDim) -> list[int]:
    N = dim.N
    return [(dim.parity(i) + dim.parity(j)) % 2 for i in range(N) for j in range(N)]


class GeneratingMatrix:
    """Square matrix of NCPolynomials; products are reduced through ``pres``."""

    def __init__(self, dim: SuperDim, entries: Sequence[Sequence[NCPolynomial]]):
        self.dim = dim
        self.entries = [list(row) for row in entries]

    @classmethod
    def generic(cls, dim: SuperDim) -> "GeneratingMatrix":
        N = dim.N
        return cls(dim, [[NCPolynomial.gen(i * N + j) for j in range(N)] for i in range(N)])

    @classmethod
    def scalar(cls, dim: SuperDim, c) -> "GeneratingMatrix":
        N = dim.N
        c = NCPolynomial.const(c) if not isinstance(c, NCPolynomial) else c
        return cls(dim, [[c if i == j else NCPolynomial() for j in range(N)] for i in range(N)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def mul(self, other: "GeneratingMatrix", pres: Presentation | None = None) -> "GeneratingMatrix":
        N = self.dim.N
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                s = NCPolynomial()
                for k in range(N):
                    s = s + self.entries[i][k] * other.entries[k][j]
                row.append(pres.normal_form(s) if pres is not None else s)
            out.append(row)
        return GeneratingMatrix(self.dim, out)

    def __add__(self, other: "GeneratingMatrix") -> "GeneratingMatrix":
        N = self.dim.N
        return GeneratingMatrix(
            self.dim, [[self.entries[i][j] + other.entries[i][j] for j in range(N)] for i in range(N)]
        )

    def __sub__(self, other: "GeneratingMatrix") -> "GeneratingMatrix":
        N = self.dim.N
        return GeneratingMatrix(
            self.dim, [[self.entries[i][j] - other.entries[i][j] for j in range(N)] for i in range(N)]
        )

    def left_scale(self, p) -> "GeneratingMatrix":
        """Multiply every entry on the left by ``p``."""
        p = p if isinstance(p, NCPolynomial) else NCPolynomial.const(p)
        return GeneratingMatrix(self.dim, [[p * e for e in row] for row in self.entries])

    def reduce(self, pres: Presentation) -> "GeneratingMatrix":
        return GeneratingMatrix(self.dim, [[pres.normal_form(e) for e in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def render(self, names: Sequence[str]) -> list[list[str]]:
        return [[e.render(names) for e in row] for row in self.entries]


@dataclass
class REAlgebra:
    dim: SuperDim
    pres: Presentation
    R: TensorOperator
    B: TensorOperator
    C: TensorOperator
    hbar: Scalar
    L: GeneratingMatrix
    confluence: VerificationReport | None = field(default=None, compare=False)
    _powers: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def names(self) -> tuple[str, ...]:
        return self.pres.names

    def gen(self, i: int, j: int) -> NCPolynomial:
        return NCPolynomial.gen(i * self.dim.N + j)

    def parse(self, text: str) -> NCPolynomial:
        return self.pres.parse(text)

    def render(self, p: NCPolynomial) -> str:
        return self.pres.render(p)

    def nf(self, p: NCPolynomial) -> NCPolynomial:
        return self.pres.normal_form(p)

    def power(self, k: int) -> GeneratingMatrix:
        """L^k with entries in normal form."""
        if k in self._powers:
            return self._powers[k]
        if k == 0:
            res = GeneratingMatrix.scalar(self.dim, 1)
        else:
            res = self.power(k - 1).mul(self.L, self.pres)
        self._powers[k] = res
        return res


def _op_to_poly_matrix(R: TensorOperator) -> dict:
    N = R.dim.N
    out = {}
    for (r, c), v in R.entries.items():
        out[((r // N, r % N), (c // N, c % N))] = NCPolynomial.const(v)
    return out


def _pmul(X: dict, Y: dict) -> dict:
    by_row: dict = {}
    for (b, c), y in Y.items():
        by_row.setdefault(b, []).append((c, y))
    out: dict = {}
    for (a, b), x in X.items():
        for c, y in by_row.get(b, ()):
            out[(a, c)] = out.get((a, c), NCPolynomial()) + x * y
    return out


def _psub(X: dict, Y: dict, scale=None) -> dict:
    out = dict(X)
    for k, v in Y.items():
        out[k] = out.get(k, NCPolynomial()) - (v * scale if scale is not None else v)
    return out


def re_components(dim: SuperDim, hbar=None, R: TensorOperator | None = None) -> list[NCPolynomial]:
    """Nonzero entries of the reflection equation, in row-major component order."""
    N = dim.N
    hb = hbar_symbol() if hbar is None else Scalar.coerce(hbar)
    R = hecke_symmetry(dim) if R is None else R
    Rm = _op_to_poly_matrix(R)
    L1 = {
        ((i1, i2), (j1, i2)): NCPolynomial.gen(i1 * N + j1)
        for i1, i2, j1 in itertools.product(range(N), repeat=3)
    }
    lhs = _psub(_pmul(_pmul(_pmul(Rm, L1), Rm), L1), _pmul(_pmul(_pmul(L1, Rm), L1), Rm))
    rhs = _psub(_pmul(Rm, L1), _pmul(L1, Rm))
    full = _psub(lhs, rhs, hb) if not hb.is_zero() else lhs
    return [full[k] for k in sorted(full) if not full[k].is_zero()]


def build_rea(dim: SuperDim, hbar=None, max_degree: int | None = None, confluence_degree: int = 4) -> REAlgebra:
    """Construct the (modified) REA; ``hbar=None`` means the symbol hbar."""
    hb = hbar_symbol() if hbar is None else Scalar.coerce(hbar)
    R = hecke_symmetry(dim)
    B, C = bc_operators(skew_inverse(R))
    gens = list(zip(generator_names(dim), generator_parities(dim)))
    try:
        pres = Presentation.from_relations(gens, re_components(dim, hb, R), max_degree)
    except PresentationError as exc:
        raise NonOrientable(str(exc)) from None
    A = REAlgebra(dim, pres, R, B, C, hb, GeneratingMatrix.generic(dim))
    A.confluence = confluence_check(pres, confluence_degree)
    return A


def r_trace_power(A: REAlgebra, k: int) -> NCPolynomial:
    """Tr(L^k C) in normal form."""
    Lk = A.power(k)
    N = A.dim.N
    s = NCPolynomial()
    for i in range(N):
        for j in range(N):
            c = A.C[j, i]
            if not c.is_zero():
                s = s + Lk[i, j] * c
    return A.nf(s)


def numerical_r_trace(p: NCPolynomial, dim: SuperDim, unit_trace=1) -> Scalar:
    """tr_R(l_i^j) = delta_i^j extended linearly; a constant c maps to c * unit_trace."""
    N = dim.N
    out = Scalar(0)
    for w, c in p.terms.items():
        if len(w) >= 2:
            raise DegreeTooHigh(f"numerical R-trace is defined on degree <= 1, got a degree-{len(w)} term")
        if not w:
            out = out + c * Scalar.coerce(unit_trace)
        else:
            i, j = divmod(w[0], N)
            if i == j:
                out = out + c
    return out


def _linear_coeffs(p: NCPolynomial) -> dict:
    out = {}
    for w, c in p.terms.items():
        if len(w) != 1:
            raise DegreeTooHigh("pairing arguments must be linear combinations of generators")
        out[w[0]] = c
    return out


def gram_matrix(A: REAlgebra) -> list[list[Scalar]]:
    """G[(i,j),(k,m)] = <l_i^j, l_k^m> = B_k^j delta_i^m, generators row-major."""
    N = A.dim.N
    G = []
    for i, j in itertools.product(range(N), repeat=2):
        row = []
        for k, m in itertools.product(range(N), repeat=2):
            row.append(A.B[k, j] if i == m else Scalar(0))
        G.append(row)
    return G


def pairing(A: REAlgebra, u: NCPolynomial, v: NCPolynomial) -> Scalar:
    G = gram_matrix(A)
    cu, cv = _linear_coeffs(u), _linear_coeffs(v)
    out = Scalar(0)
    for g, a in cu.items():
        for h, b in cv.items():
            if not G[g][h].is_zero():
                out = out + a * b * G[g][h]
    return out


def casimir_coefficients(A: REAlgebra) -> list[list[Scalar]]:
    """Q with Tr(L^2 C) = sum Q[g][h] g*h before reduction."""
    N = A.dim.N
    M = N * N
    Q = [[Scalar(0)] * M for _ in range(M)]
    for i, k, j in itertools.product(range(N), repeat=3):
        c = A.C[j, i]
        if not c.is_zero():
            g, h = i * N + k, k * N + j
            Q[g][h] = Q[g][h] + c
    return Q


def _matmul(X, Y):
    n, m, p = len(X), len(Y), len(Y[0])
    return [[sum((X[i][k] * Y[k][j] for k in range(m)), Scalar(0)) for j in range(p)] for i in range(n)]


def casimir_gram_factor(A: REAlgebra) -> VerificationReport:
    """Find c with Q G^T = c I (Q: Casimir coefficients, G: pairing Gram matrix)."""
    Q = casimir_coefficients(A)
    G = gram_matrix(A)
    found = {}
    for label, prod in (
        ("Q*G", _matmul(Q, G)),
        ("Q*G^T", _matmul(Q, [list(r) for r in zip(*G)])),
        ("G*Q", _matmul(G, Q)),
    ):
        c = prod[0][0]
        ok = not c.is_zero() and all(
            prod[i][j] == (c if i == j else 0) for i in range(len(prod)) for j in range(len(prod))
        )
        if ok:
            found[label] = str(c)
    return VerificationReport("casimir_gram_inverse", bool(found), {"factors": found})


def _traceless_basis(dim: SuperDim):
    """(names, images) for the traceless generators plus the diagonal solve at ell = 0."""
    N = dim.N
    if N == 2:
        off = [("b", 0, 1), ("c", 1, 0)]
    else:
        off = [(f"l{i + 1}{j + 1}", i, j) for i in range(N) for j in range(N) if i != j]
    hs = [("h" if N == 2 else f"h{i + 1}", i) for i in range(N - 1)]
    return off, hs


def sl_quotient(A: REAlgebra) -> Presentation:
    """Rewrite relations in traceless generators and ell = Tr(LC), then set ell = 0."""
    dim = A.dim
    if dim.m == dim.n:
        raise EqualSuperDims(f"{dim}: ell is not a complement of the traceless part when m = n")
    N = dim.N
    off, hs = _traceless_basis(dim)
    if N == 2:
        names = ["b", "h", "c"]
        parities = [generator_parities(dim)[1], 0, generator_parities(dim)[2]]
    else:
        names = [n for n, _, _ in off] + [n for n, _ in hs]
        par = generator_parities(dim)
        parities = [par[i * N + j] for _, i, j in off] + [0] * len(hs)
    idx = {n: k for k, n in enumerate(names)}
    gens = list(zip(names, parities))
    Cd = [A.C[i, i] for i in range(N)]
    trc = sum(Cd, Scalar(0))
    # l_i = l_N + sum_{k >= i} h_k and sum_i C_i l_i = 0 at ell = 0
    H = [NCPolynomial.gen(idx[n]) for n, _ in hs]
    lN = NCPolynomial()
    for k in range(N - 1):
        lN = lN - H[k] * (sum(Cd[: k + 1], Scalar(0)) / trc)
    diag = []
    for i in range(N):
        v = lN
        for k in range(i, N - 1):
            v = v + H[k]
        diag.append(v)
    images = []
    for i in range(N):
        for j in range(N):
            if i == j:
                images.append(diag[i])
            else:
                name = next(n for n, a, b in off if a == i and b == j)
                images.append(NCPolynomial.gen(idx[name]))
    rels = [rel.substitute(images) for rel in A.pres.relations()]
    return Presentation.from_relations(gens, rels, A.pres.max_degree)


def ch_residual(A: REAlgebra, coeffs: Sequence[NCPolynomial]) -> GeneratingMatrix:
    """Entrywise normal form of sum_i b_i L^i (coefficients multiply on the left)."""
    if len(coeffs) != A.dim.N + 1:
        raise ValueError(f"expected {A.dim.N + 1} coefficients, got {len(coeffs)}")
    total = GeneratingMatrix.scalar(A.dim, 0)
    for i, b in enumerate(coeffs):
        b = b if isinstance(b, NCPolynomial) else NCPolynomial.const(b)
        if b.is_zero():
            continue
        total = total + A.power(i).left_scale(b)
    return total.reduce(A.pres)


def _normal_words(pres: Presentation, k: int):
    level = [()]
    for _ in range(k):
        level = [w + (x,) for w in level for x in range(pres.ngens) if not w or (w[-1], x) not in pres.rules]
    return level


def ch_solve(A: REAlgebra, degree: int | None = None) -> list[list[NCPolynomial]]:
    """Homogeneous ansatz deg b_i = D - i over even normal words; returns a basis of solutions.

    Only meaningful for hbar = 0, where the identity is homogeneous.  Each
    solution is scaled so the greatest word of its top coefficient has
    coefficient 1.
    """
    N = A.dim.N
    D = N if degree is None else degree
    unknowns = []
    for i in range(N + 1):
        if D - i < 0:
            continue
        for w in _normal_words(A.pres, D - i):
            if A.pres.parity(w) == 0:
                unknowns.append((i, w))
    rows: dict = {}
    for u, (i, w) in enumerate(unknowns):
        Li = A.power(i)
        for r in range(N):
            for c in range(N):
                for word, coef in A.nf(NCPolynomial.word(w) * Li[r, c]).terms.items():
                    rows.setdefault((r, c, word), {})[u] = coef
    basis = nullspace(list(rows.values()), list(range(len(unknowns))))
    out = []
    for vec in basis:
        coeffs = [NCPolynomial() for _ in range(N + 1)]
        for u, c in vec.items():
            i, w = unknowns[u]
            coeffs[i] = coeffs[i] + NCPolynomial.word(w, c)
        top = next(b for b in reversed(coeffs) if not b.is_zero())
        lead = top.terms[max(top.terms, key=word_key)]
        out.append([b / lead for b in coeffs])
    return out


def ch_factorized_check_11(A: REAlgebra, drop_s_a: bool = False) -> VerificationReport:
    """(ell L - q S)(ell L + q^-1 A) = 0 with S, A built from the first two R-traces."""
    if (A.dim.m, A.dim.n) != (1, 1):
        raise ValueError("the factorized identity is stated for super-dimension (1|1)")
    qq = q()
    ell = r_trace_power(A, 1)
    t2 = r_trace_power(A, 2)
    ell2 = A.nf(ell * ell)
    S = (ell2 * qq.invert() + t2) / q_int(2)
    Aa = (ell2 * qq - t2) / q_int(2)
    details: dict = {"S": A.render(A.nf(S)), "A": A.render(A.nf(Aa))}
    central = True
    for label, z in (("S", S), ("A", Aa)):
        res = [(g, r) for g, r in centrality_residual(A.nf(z), A.pres) if not r.is_zero()]
        details[f"{label}_central"] = not res
        central = central and not res
    if drop_s_a:
        S, Aa = NCPolynomial(), NCPolynomial()
    left = A.L.left_scale(ell) - GeneratingMatrix.scalar(A.dim, S * qq)
    right = A.L.left_scale(ell) + GeneratingMatrix.scalar(A.dim, Aa * qq.invert())
    prod = left.mul(right, A.pres)
    details["residual"] = prod.render(A.names)
    return VerificationReport("ch_factorized_11", central and prod.is_zero(), details)


def representation_matrices(dim: SuperDim, B: TensorOperator | None = None) -> list[list[list[Scalar]]]:
    """pi(l_i^j) x_k = B_k^j x_i, as matrices indexed row-major by generator."""
    N = dim.N
    if B is None:
        B, _ = bc_operators(skew_inverse(hecke_symmetry(dim)))
    mats = []
    for i in range(N):
        for j in range(N):
            M = [[Scalar(0)] * N for _ in range(N)]
            for k in range(N):
                M[i][k] = B[k, j]
            mats.append(M)
    return mats


def _eval_matrix(p: NCPolynomial, mats, N: int):
    out = [[Scalar(0)] * N for _ in range(N)]
    for w, c in p.terms.items():
        M = [[Scalar(1) if a == b else Scalar(0) for b in range(N)] for a in range(N)]
        for g in w:
            M = _matmul(M, mats[g])
        for a in range(N):
            for b in range(N):
                if not M[a][b].is_zero():
                    out[a][b] = out[a][b] + c * M[a][b]
    return out


def representation_check(dim: SuperDim, hbar=1) -> VerificationReport:
    """Substitute pi into every defining relation of the algebra at the given hbar."""
    N = dim.N
    mats = representation_matrices(dim)
    bad = {}
    rels = re_components(dim, hbar)
    for r_index, rel in enumerate(rels):
        M = _eval_matrix(rel, mats, N)
        for a in range(N):
            for b in range(N):
                if not M[a][b].is_zero():
                    bad[f"component {r_index} [{a},{b}]"] = str(M[a][b])
    return VerificationReport(
        "representation",
        not bad,
        {"dim": str(dim), "hbar": str(Scalar.coerce(hbar)), "relations": len(rels), "residuals": nonzero_entries(bad)},
    )


def shift_check(dim: SuperDim) -> VerificationReport:
    """L = M + (hbar/lambda) I carries every mREA relation into the REA ideal.

    Uses R^2 = I + lambda R; this is what ties the hbar-deformed spectral
    formulas to the hbar = 0 ones by the eigenvalue shift mu -> mu - hbar/lambda.
    """
    from .scalar import lam

    N = dim.N
    A0 = build_rea(dim, 0, confluence_degree=0)
    c = hbar_symbol() / lam()
    images = [NCPolynomial.gen(g) + (NCPolynomial.const(c) if g // N == g % N else NCPolynomial()) for g in range(N * N)]
    bad = []
    for rel in re_components(dim, None):
        r = A0.nf(rel.substitute(images))
        if not r.is_zero():
            bad.append(A0.render(r))
    return VerificationReport("hbar_shift", not bad, {"dim": str(dim), "shift": str(c), "residuals": bad[:8]})


SL2_NAMES = ("x", "h", "y")


def quant_presentation(a, b, c, d, nu=None) -> Presentation:
    """hx - xh = nu(a hx + b xh), hy - yh = -nu(c hy + d yh), xy - yx = nu h^2 on (x, h, y)."""
    from .scalar import nu_param

    nu = nu_param() if nu is None else Scalar.coerce(nu)
    gens = [(n, 0) for n in SL2_NAMES]
    P = lambda s: NCPolynomial.parse(s, SL2_NAMES)
    a, b, c, d = (Scalar.coerce(v) for v in (a, b, c, d))
    hx, xh, hy, yh = P("h*x"), P("x*h"), P("h*y"), P("y*h")
    rels = [
        hx - xh - (hx * a + xh * b) * nu,
        hy - yh + (hy * c + yh * d) * nu,
        P("x*y - y*x") - P("h*h") * nu,
    ]
    return Presentation.from_relations(gens, rels)


def deformed_sl2(A=None, B=None, C=None) -> Presentation:
    """q^2 hx - xh = A x, q^2 yh - hy = B y, (q^2+1)(xy - yx) + (q^2-1) h^2 = C h.

    Defaults A = B = C = 2_q hbar.
    """
    default = q_int(2) * hbar_symbol()
    A, B, C = (default if v is None else Scalar.coerce(v) for v in (A, B, C))
    gens = [(n, 0) for n in SL2_NAMES]
    P = lambda s: NCPolynomial.parse(s, SL2_NAMES)
    q2 = q() * q()
    rels = [
        P("h*x") * q2 - P("x*h") - P("x") * A,
        P("y*h") * q2 - P("h*y") - P("y") * B,
        P("x*y - y*x") * (q2 + 1) + P("h*h") * (q2 - 1) - P("h") * C,
    ]
    return Presentation.from_relations(gens, rels)


def cas_q() -> NCPolynomial:
    """q^-1 xy + q yx + h^2/2_q."""
    return NCPolynomial.parse("q^-1*x*y + q*y*x + h*h/2_q", SL2_NAMES)


def casimir_factor() -> VerificationReport:
    """Factor f with Tr_R L^2 = f * Cas_q after passing from (2|0) to the deformed sl(2).

    The quotient by ell sends a, d to q^2 h/(q^2+1), -h/(q^2+1) and b, c to x, y.
    """
    A = build_rea(SuperDim(2, 0), confluence_degree=0)
    P = deformed_sl2()
    x, h, y = (NCPolynomial.gen(i) for i in range(3))
    q2 = q() * q()
    images = [h * (q2 / (q2 + 1)), x, y, h * (Scalar(-1) / (q2 + 1))]
    tr = P.normal_form(r_trace_power(A, 2).substitute(images))
    cas = P.normal_form(cas_q())
    w = max(cas.terms, key=word_key)
    f = tr.terms.get(w, Scalar(0)) / cas.terms[w]
    ok = (tr - cas * f).is_zero()
    return VerificationReport(
        "casimir_factor", ok, {"trace_image": P.render(tr), "cas_q": P.render(cas), "factor": str(f) if ok else None}
    )
