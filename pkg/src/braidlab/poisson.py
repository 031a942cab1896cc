"""Super-Poisson brackets on super-commutative polynomial algebras.

A bracket is stored as a table of values on generator pairs (i <= j) and
extended to all polynomials as a biderivation with Koszul signs.
"""

from __future__ import annotations

import itertools
import json
from typing import Mapping, Sequence

from .errors import GeneratorMismatch, ParseError
from .ncalg import NCPolynomial, Presentation
from .report import VerificationReport
from .scalar import Scalar
from .tensor import SuperDim, TensorOperator, hecke_symmetry, super_flip

__all__ = [
    "SuperPoly",
    "PoissonBracket",
    "ClassicalRMatrix",
    "bracket_eval",
    "check_jacobi",
    "check_compatibility",
    "center_residual",
    "check_parity_axioms",
    "sl2_bracket",
    "quadratic_sl2_bracket",
    "linear_bracket",
    "pencil",
    "semiclassical_r",
    "printed_r_pattern",
    "compare_r_pattern",
    "quadratic_gl_bracket",
    "so3_bracket",
    "semiclassical_bracket_from_algebra",
    "compare_brackets",
    "antisymmetry_report",
]


class SuperPoly:
    """Polynomial in super-commuting generators; odd exponents are 0 or 1.

    Monomials are exponent tuples, read in increasing generator order.
    """

    __slots__ = ("parities", "terms")

    def __init__(self, parities: Sequence[int], terms: Mapping[tuple, Scalar] | None = None):
        self.parities = tuple(parities)
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                self.terms[tuple(e)] = c

    @classmethod
    def _wrap(cls, parities, terms):
        p = object.__new__(cls)
        p.parities = parities
        p.terms = terms
        return p

    @classmethod
    def gen(cls, parities: Sequence[int], i: int) -> "SuperPoly":
        e = [0] * len(parities)
        e[i] = 1
        return cls._wrap(tuple(parities), {tuple(e): Scalar(1)})

    @classmethod
    def const(cls, parities: Sequence[int], c) -> "SuperPoly":
        return cls(parities, {(0,) * len(parities): c})

    def zero(self) -> "SuperPoly":
        return SuperPoly._wrap(self.parities, {})

    def _lift(self, other) -> "SuperPoly":
        if isinstance(other, SuperPoly):
            return other
        return SuperPoly.const(self.parities, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return SuperPoly._wrap(self.parities, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._wrap(self.parities, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _mono_mul(self, a: tuple, b: tuple):
        par = self.parities
        sign = 0
        for j, bj in enumerate(b):
            if bj and par[j]:
                if a[j]:
                    return None, 0
                sign += sum(1 for i in range(j + 1, len(a)) if a[i] and par[i])
        return tuple(x + y for x, y in zip(a, b)), -1 if sign % 2 else 1

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            try:
                c = Scalar.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
            return SuperPoly(self.parities, {e: v * c for e, v in self.terms.items()})
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                e, s = self._mono_mul(a, b)
                if e is None:
                    continue
                v = ca * cb if s == 1 else -(ca * cb)
                t = out.get(e)
                t = v if t is None else t + v
                if t.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = t
        return SuperPoly._wrap(self.parities, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        return self * Scalar.coerce(other).invert()

    def __pow__(self, k: int):
        out = SuperPoly.const(self.parities, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def parity_set(self) -> set[int]:
        return {sum(x for x, p in zip(e, self.parities) if p) % 2 for e in self.terms}

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def map_coeffs(self, fn) -> "SuperPoly":
        return SuperPoly(self.parities, {e: fn(c) for e, c in self.terms.items()})

    def subs(self, mapping) -> "SuperPoly":
        return self.map_coeffs(lambda c: c.subs(mapping))

    def diff_left(self, i: int) -> "SuperPoly":
        par = self.parities
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            f = list(e)
            f[i] -= 1
            if par[i]:
                sign = sum(1 for j in range(i) if e[j] and par[j]) % 2
                v = -c if sign else c
            else:
                v = c * k
            out[tuple(f)] = out.get(tuple(f), Scalar(0)) + v
        return SuperPoly(par, out)

    def diff_right(self, i: int) -> "SuperPoly":
        par = self.parities
        if not par[i]:
            return self.diff_left(i)
        out: dict = {}
        for e, c in self.terms.items():
            if not e[i]:
                continue
            f = list(e)
            f[i] = 0
            sign = sum(1 for j in range(i + 1, len(e)) if e[j] and par[j]) % 2
            out[tuple(f)] = out.get(tuple(f), Scalar(0)) + (-c if sign else c)
        return SuperPoly(par, out)

    def render(self, names: Sequence[str]) -> str:
        words = {}
        for e, c in self.terms.items():
            w = tuple(i for i, k in enumerate(e) for _ in range(k))
            words[w] = c
        return NCPolynomial(words).render(names)

    @classmethod
    def from_nc(cls, parities: Sequence[int], p: NCPolynomial) -> "SuperPoly":
        """Image of a word polynomial in the super-commutative quotient."""
        out = SuperPoly(parities)
        gens = [SuperPoly.gen(parities, i) for i in range(len(parities))]
        for w, c in p.terms.items():
            term = SuperPoly.const(parities, c)
            for i in w:
                term = term * gens[i]
            out = out + term
        return out


class PoissonBracket:
    """Bracket table on generators, stored for ordered pairs i <= j."""

    def __init__(self, generators: Sequence[tuple[str, int]], table: Mapping[tuple[int, int], SuperPoly]):
        self.generators = tuple((str(n), int(p)) for n, p in generators)
        self.names = tuple(n for n, _ in self.generators)
        self.parities = tuple(p for _, p in self.generators)
        self.table: dict = {}
        for (i, j), v in table.items():
            if i > j:
                raise ValueError("bracket tables store pairs with i <= j")
            v = v if isinstance(v, SuperPoly) else SuperPoly.const(self.parities, v)
            if not v.is_zero():
                self.table[(i, j)] = v

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def zero(self) -> SuperPoly:
        return SuperPoly(self.parities)

    def gen(self, name_or_index) -> SuperPoly:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return SuperPoly.gen(self.parities, i)

    def parse(self, text: str) -> SuperPoly:
        return SuperPoly.from_nc(self.parities, NCPolynomial.parse(text, self.names))

    def render(self, p: SuperPoly) -> str:
        return p.render(self.names)

    def on_generators(self, i: int, j: int) -> SuperPoly:
        if i <= j:
            return self.table.get((i, j), self.zero())
        v = self.table.get((j, i))
        if v is None:
            return self.zero()
        return v if self.parities[i] and self.parities[j] else -v

    def same_generators(self, other: "PoissonBracket") -> bool:
        return self.generators == other.generators

    def to_json(self) -> dict:
        return {
            "bracket": True,
            "generators": [{"name": n, "parity": p} for n, p in self.generators],
            "rules": [
                {
                    "lead": [self.names[i], self.names[j]],
                    "tail": [
                        {"word": [self.names[k] for k, e in enumerate(mono) for _ in range(e)], "coeff": str(c)}
                        for mono, c in sorted(v.terms.items(), reverse=True)
                    ],
                }
                for (i, j), v in sorted(self.table.items())
            ],
        }

    @classmethod
    def from_json(cls, data) -> "PoissonBracket":
        if isinstance(data, str):
            data = json.loads(data)
        if not data.get("bracket"):
            raise ParseError("not a bracket table (missing \"bracket\": true)")
        gens = [(g["name"], int(g.get("parity", 0))) for g in data["generators"]]
        index = {n: k for k, (n, _) in enumerate(gens)}
        par = [p for _, p in gens]
        table = {}
        try:
            for rule in data["rules"]:
                i, j = (index[n] for n in rule["lead"])
                val = SuperPoly(par)
                for t in rule["tail"]:
                    w = NCPolynomial.word([index[n] for n in t["word"]], Scalar.parse(str(t["coeff"])))
                    val = val + SuperPoly.from_nc(par, w)
                if i > j:
                    i, j = j, i
                    val = val if par[i] and par[j] else -val
                if (i, j) in table:
                    raise ParseError(f"duplicate bracket entry {rule['lead']}")
                table[(i, j)] = val
        except KeyError as exc:
            raise ParseError(f"unknown generator or missing field {exc}") from None
        return cls(gens, table)

    def __repr__(self):
        return f"PoissonBracket(generators={list(self.names)}, entries={len(self.table)})"


def bracket_eval(Bk: PoissonBracket, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """{f, g} = sum_{i,j} (f d<-_i) {x_i, x_j} (d->_j g)."""
    out = Bk.zero()
    N = Bk.ngens
    right = [f.diff_right(i) for i in range(N)]
    left = [g.diff_left(j) for j in range(N)]
    for i in range(N):
        if right[i].is_zero():
            continue
        for j in range(N):
            if left[j].is_zero():
                continue
            v = Bk.on_generators(i, j)
            if not v.is_zero():
                out = out + right[i] * v * left[j]
    return out


def _jacobi_sum(Bk: PoissonBracket, i: int, j: int, k: int) -> SuperPoly:
    p = Bk.parities
    x, y, z = Bk.gen(i), Bk.gen(j), Bk.gen(k)

    def sgn(a, b):
        return -1 if p[a] and p[b] else 1

    return (
        bracket_eval(Bk, x, bracket_eval(Bk, y, z)) * sgn(i, k)
        + bracket_eval(Bk, y, bracket_eval(Bk, z, x)) * sgn(j, i)
        + bracket_eval(Bk, z, bracket_eval(Bk, x, y)) * sgn(k, j)
    )


def check_jacobi(Bk: PoissonBracket) -> VerificationReport:
    bad = {}
    count = 0
    for i, j, k in itertools.combinations_with_replacement(range(Bk.ngens), 3):
        count += 1
        r = _jacobi_sum(Bk, i, j, k)
        if not r.is_zero():
            bad[f"{Bk.names[i]},{Bk.names[j]},{Bk.names[k]}"] = Bk.render(r)
    items = sorted(bad.items())[:8]
    return VerificationReport("jacobi", not bad, {"triples": count, "violations": [f"{a}: {b}" for a, b in items]})


def _combine(B1: PoissonBracket, B2: PoissonBracket, a, b) -> PoissonBracket:
    if not B1.same_generators(B2):
        raise GeneratorMismatch("brackets are defined on different generator lists")
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    keys = set(B1.table) | set(B2.table)
    table = {k: B1.table.get(k, B1.zero()) * a + B2.table.get(k, B2.zero()) * b for k in keys}
    return PoissonBracket(B1.generators, table)


def pencil(B1: PoissonBracket, B2: PoissonBracket, a, b) -> PoissonBracket:
    """a*B1 + b*B2."""
    return _combine(B1, B2, a, b)


def check_compatibility(B1: PoissonBracket, B2: PoissonBracket) -> VerificationReport:
    rep = check_jacobi(_combine(B1, B2, 1, 1))
    return VerificationReport("compatibility", rep.passed, rep.details)


def center_residual(Bk: PoissonBracket, z: SuperPoly) -> list[tuple[str, SuperPoly]]:
    return [(name, bracket_eval(Bk, z, Bk.gen(i))) for i, name in enumerate(Bk.names)]


def check_parity_axioms(Bk: PoissonBracket) -> VerificationReport:
    """Parity of {x_i, x_j} is p_i + p_j, and {x, x} = 0 for even x."""
    bad = []
    for (i, j), v in sorted(Bk.table.items()):
        expected = (Bk.parities[i] + Bk.parities[j]) % 2
        if v.parity_set() - {expected}:
            bad.append(f"{{{Bk.names[i]},{Bk.names[j]}}} has parity {sorted(v.parity_set())}, expected {expected}")
        if i == j and not Bk.parities[i]:
            bad.append(f"{{{Bk.names[i]},{Bk.names[i]}}} must vanish for an even generator")
    return VerificationReport("parity", not bad, {"violations": bad[:8]})


def _table_from_strings(gens, entries: Mapping[tuple[str, str], str]) -> PoissonBracket:
    names = [n for n, _ in gens]
    par = [p for _, p in gens]
    table = {}
    for (u, v), text in entries.items():
        i, j = names.index(u), names.index(v)
        val = SuperPoly.from_nc(par, NCPolynomial.parse(text, names))
        if i > j:
            i, j = j, i
            val = val if par[i] and par[j] else -val
        table[(i, j)] = table.get((i, j), SuperPoly(par)) + val
    return PoissonBracket(gens, table)


SL2_GENERATORS = (("x", 0), ("h", 0), ("y", 0))


def sl2_bracket() -> PoissonBracket:
    """{x,y} = h, {h,x} = 2x, {h,y} = -2y."""
    return _table_from_strings(SL2_GENERATORS, {("x", "y"): "h", ("h", "x"): "2*x", ("h", "y"): "-2*y"})


def quadratic_sl2_bracket() -> PoissonBracket:
    """{x,y} = h^2, {h,x} = 2xh, {h,y} = -2yh."""
    return _table_from_strings(SL2_GENERATORS, {("x", "y"): "h^2", ("h", "x"): "2*x*h", ("h", "y"): "-2*y*h"})


def _gl_generators(dim: SuperDim):
    from .rea import generator_names, generator_parities

    return list(zip(generator_names(dim), generator_parities(dim)))


def linear_bracket(dim: SuperDim) -> PoissonBracket:
    """gl(m|n) Lie-Poisson bracket in the basis l_i^j = (-1)^{p(j)} E_ij.

    [l_i^j, l_k^m] = delta_jk (-1)^{p(j)} l_i^m - (-1)^{(p(i)+p(j))(p(k)+p(m))} delta_mi (-1)^{p(m)} l_k^j.
    """
    N = dim.N
    gens = _gl_generators(dim)
    par = [p for _, p in gens]
    P = dim.parity
    table = {}
    for g, h in itertools.combinations_with_replacement(range(N * N), 2):
        i, j = divmod(g, N)
        k, m = divmod(h, N)
        val = SuperPoly(par)
        if j == k:
            val = val + SuperPoly.gen(par, i * N + m) * (-1 if P(j) else 1)
        if m == i:
            s = -1 if ((P(i) + P(j)) * (P(k) + P(m))) % 2 else 1
            s = -s * (-1 if P(m) else 1)
            val = val + SuperPoly.gen(par, k * N + j) * s
        table[(g, h)] = val
    return PoissonBracket(gens, table)


class ClassicalRMatrix:
    def __init__(self, dim: SuperDim, r: TensorOperator):
        self.dim = dim
        self.r = r

    def __repr__(self):
        return f"ClassicalRMatrix({self.dim}, {self.r!r})"


def semiclassical_r(dim: SuperDim) -> ClassicalRMatrix:
    """Coefficient of nu in sigma*R at q = 1 + nu (d/dq at q = 1)."""
    hat = super_flip(dim) @ hecke_symmetry(dim)
    r = hat.map(lambda s: s.diff("q").subs({"q": 1}))
    return ClassicalRMatrix(dim, r)


def printed_r_pattern(dim: SuperDim) -> TensorOperator:
    """sum_i (-1)^i (1 - 2i) e_i^i (x) e_i^i + 2 sum_{j>i} e_j^i (x) e_i^j, parities in the exponents."""
    N = dim.N
    ent = {}
    for i in range(N):
        p = dim.parity(i)
        ent[(i * N + i, i * N + i)] = Scalar((-1) ** p * (1 - 2 * p))
    for i in range(N):
        for j in range(i + 1, N):
            # e_j^i (x) e_i^j sends e_i (x) e_j to e_j (x) e_i
            ent[(j * N + i, i * N + j)] = Scalar(2)
    return TensorOperator(dim, 2, ent)


def compare_r_pattern(dim: SuperDim) -> VerificationReport:
    r = semiclassical_r(dim).r
    pat = printed_r_pattern(dim)
    diff = r - pat
    N = dim.N
    entries = []
    for (row, col), v in sorted(diff.entries.items()):
        entries.append(
            f"({row // N + 1},{row % N + 1}),({col // N + 1},{col % N + 1}): computed {r[row, col]}, printed {pat[row, col]}"
        )
    return VerificationReport("r_pattern", diff.is_zero(), {"dim": str(dim), "discrepancies": entries})


def _pm(X: dict, Y: dict) -> dict:
    by_row: dict = {}
    for (b, c), y in Y.items():
        by_row.setdefault(b, []).append((c, y))
    out: dict = {}
    for (a, b), x in X.items():
        for c, y in by_row.get(b, ()):
            v = x * y
            out[(a, c)] = out[(a, c)] + v if (a, c) in out else v
    return out


def _padd(*mats) -> dict:
    out: dict = {}
    for M in mats:
        for k, v in M.items():
            out[k] = out[k] + v if k in out else v
    return out


def _op_matrix(op: TensorOperator, par) -> dict:
    return {(r, c): SuperPoly.const(par, v) for (r, c), v in op.entries.items()}


def quadratic_gl_bracket(dim: SuperDim) -> PoissonBracket:
    """Bracket read off -r L1 L2 - L1 r21 L2 + L2 L1 r21 + L2 r L1, with L2 = sigma L1 sigma.

    Entry ((i1,i2),(j1,j2)) of L1 L2 is (-1)^{p(j1) p(l_{i2}^{j2})} l_{i1}^{j1} l_{i2}^{j2}, and the
    same sign relates the matrix above to {l_{i1}^{j1}, l_{i2}^{j2}}.
    """
    N = dim.N
    gens = _gl_generators(dim)
    par = [p for _, p in gens]
    sig = super_flip(dim)
    r = semiclassical_r(dim).r
    r21 = sig @ r @ sig
    L1 = {}
    for i1, i2, j1 in itertools.product(range(N), repeat=3):
        L1[(i1 * N + i2, j1 * N + i2)] = SuperPoly.gen(par, i1 * N + j1)
    S = _op_matrix(sig, par)
    L2 = _pm(_pm(S, L1), S)
    rm, r21m = _op_matrix(r, par), _op_matrix(r21, par)
    L1L2 = _pm(L1, L2)
    M = _padd(
        {k: -v for k, v in _pm(rm, L1L2).items()},
        {k: -v for k, v in _pm(_pm(L1, r21m), L2).items()},
        _pm(_pm(L2, L1), r21m),
        _pm(_pm(L2, rm), L1),
    )
    table = {}
    for i1, i2, j1, j2 in itertools.product(range(N), repeat=4):
        g, h = i1 * N + j1, i2 * N + j2
        if g > h:
            continue
        v = M.get((i1 * N + i2, j1 * N + j2))
        if v is None or v.is_zero():
            continue
        sign = -1 if dim.parity(j1) and par[h] else 1
        table[(g, h)] = v * sign
    return PoissonBracket(gens, table)


def antisymmetry_report(dim: SuperDim) -> VerificationReport:
    """Check that the lower-triangle entries of (bra) agree with super-antisymmetry."""
    N = dim.N
    Bk = quadratic_gl_bracket(dim)
    # recompute the full matrix, including g > h
    gens = _gl_generators(dim)
    par = [p for _, p in gens]
    sig = super_flip(dim)
    r = semiclassical_r(dim).r
    r21 = sig @ r @ sig
    L1 = {}
    for i1, i2, j1 in itertools.product(range(N), repeat=3):
        L1[(i1 * N + i2, j1 * N + i2)] = SuperPoly.gen(par, i1 * N + j1)
    S = _op_matrix(sig, par)
    L2 = _pm(_pm(S, L1), S)
    rm, r21m = _op_matrix(r, par), _op_matrix(r21, par)
    M = _padd(
        {k: -v for k, v in _pm(rm, _pm(L1, L2)).items()},
        {k: -v for k, v in _pm(_pm(L1, r21m), L2).items()},
        _pm(_pm(L2, L1), r21m),
        _pm(_pm(L2, rm), L1),
    )
    bad = []
    for i1, i2, j1, j2 in itertools.product(range(N), repeat=4):
        g, h = i1 * N + j1, i2 * N + j2
        v = M.get((i1 * N + i2, j1 * N + j2), SuperPoly(par))
        sign = -1 if dim.parity(j1) and par[h] else 1
        if not (v * sign - Bk.on_generators(g, h)).is_zero():
            bad.append(f"{{{Bk.names[g]},{Bk.names[h]}}}")
    return VerificationReport("bracket_antisymmetry", not bad, {"mismatches": bad[:8]})


def so3_bracket(p) -> PoissonBracket:
    """{x,y} = z p, {y,z} = x p, {z,x} = y p on three even generators."""
    gens = (("x", 0), ("y", 0), ("z", 0))
    par = (0, 0, 0)
    if isinstance(p, str):
        p = SuperPoly.from_nc(par, NCPolynomial.parse(p, ["x", "y", "z"]))
    elif not isinstance(p, SuperPoly):
        p = SuperPoly.const(par, p)
    x, y, z = (SuperPoly.gen(par, i) for i in range(3))
    return PoissonBracket(gens, {(0, 1): z * p, (1, 2): x * p, (0, 2): -(y * p)})


def semiclassical_bracket_from_algebra(pres: Presentation, at: Mapping[str, int] | None = None) -> PoissonBracket:
    """First-order term of a q-deformed super-commutative algebra.

    For generators g_a, g_b: nf(g_a g_b) - (-1)^{p_a p_b} nf(g_b g_a) vanishes at q = 1; its
    q-derivative at q = 1 (read in the super-commutative quotient) is {g_a, g_b}.
    """
    par = [p for _, p in pres.generators]
    point = {"q": 1, **(at or {})}
    table = {}
    for a, b in itertools.combinations_with_replacement(range(pres.ngens), 2):
        sign = -1 if par[a] and par[b] else 1
        e = pres.normal_form(NCPolynomial.word((a, b))) - pres.normal_form(NCPolynomial.word((b, a))) * sign
        zeroth = e.map_coeffs(lambda c: c.subs(point))
        if not zeroth.is_zero():
            raise ValueError("the algebra is not super-commutative at q = 1")
        first = e.map_coeffs(lambda c: c.diff("q").subs(point))
        table[(a, b)] = SuperPoly.from_nc(par, first)
    return PoissonBracket(pres.generators, table)


def compare_brackets(B1: PoissonBracket, B2: PoissonBracket, name: str = "bracket_match") -> VerificationReport:
    if not B1.same_generators(B2):
        raise GeneratorMismatch("brackets are defined on different generator lists")
    bad = []
    for a, b in itertools.combinations_with_replacement(range(B1.ngens), 2):
        u, v = B1.on_generators(a, b), B2.on_generators(a, b)
        if not (u - v).is_zero():
            bad.append(f"{{{B1.names[a]},{B1.names[b]}}}: {B1.render(u)} vs {B2.render(v)}")
    return VerificationReport(name, not bad, {"pairs": B1.ngens * (B1.ngens + 1) // 2, "mismatches": bad[:8]})
