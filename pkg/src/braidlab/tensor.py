"""Super-spaces, operators on tensor powers, and the Hecke symmetry of type (m|n).

Basis vectors of V are indexed ``0..m+n-1`` internally (the first ``m`` are
even).  A basis vector ``e_{i1} x ... x e_{ik}`` of V^{xk} has the row-major
index ``sum i_t * N**(k-t)``.  Operators store their nonzero entries in a
dict keyed by ``(row, col)``; the row is the output index.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NotSkewInvertible, SizeMismatch
from .linalg import SingularMatrix, inverse
from .report import VerificationReport, nonzero_entries
from .scalar import Scalar, q, q_int

__all__ = [
    "SuperDim",
    "TensorOperator",
    "super_flip",
    "hecke_symmetry",
    "check_yang_baxter",
    "check_hecke_condition",
    "skew_inverse",
    "check_skew_inverse",
    "bc_operators",
    "check_bc_relation",
    "c_closed_form",
    "compare_c_closed_form",
    "trace_convention_report",
    "trace_with_weight",
    "diagonal_operator",
]


@dataclass(frozen=True)
class SuperDim:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError(f"invalid super-dimension ({self.m}|{self.n})")

    @property
    def N(self) -> int:
        return self.m + self.n

    def parity(self, i: int) -> int:
        """Parity of the 0-based basis index ``i``."""
        return 0 if i < self.m else 1

    def __str__(self):
        return f"({self.m}|{self.n})"


def _decode(idx: int, N: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, N)
        out.append(r)
    return tuple(reversed(out))


def _encode(indices: Sequence[int], N: int) -> int:
    idx = 0
    for i in indices:
        idx = idx * N + i
    return idx


class TensorOperator:
    """Immutable sparse operator on V^{x arity}."""

    __slots__ = ("dim", "arity", "entries")

    def __init__(self, dim: SuperDim, arity: int, entries: Mapping[tuple[int, int], Scalar] | None = None):
        self.dim = dim
        self.arity = arity
        clean = {}
        for key, v in (entries or {}).items():
            v = Scalar.coerce(v)
            if not v.is_zero():
                clean[key] = v
        self.entries = clean

    @property
    def side(self) -> int:
        return self.dim.N**self.arity

    @classmethod
    def identity(cls, dim: SuperDim, arity: int = 1) -> "TensorOperator":
        one = Scalar(1)
        return cls(dim, arity, {(i, i): one for i in range(dim.N**arity)})

    @classmethod
    def from_dense(cls, dim: SuperDim, arity: int, rows: Sequence[Sequence]) -> "TensorOperator":
        side = dim.N**arity
        if len(rows) != side or any(len(r) != side for r in rows):
            raise SizeMismatch(f"expected a {side}x{side} matrix")
        return cls(dim, arity, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        return self.entries.get(key, Scalar(0))

    def get(self, rows: Sequence[int], cols: Sequence[int]) -> Scalar:
        """Entry addressed by multi-indices (0-based basis labels)."""
        N = self.dim.N
        return self[_encode(rows, N), _encode(cols, N)]

    def dense(self) -> list[list[Scalar]]:
        zero = Scalar(0)
        return [[self.entries.get((i, j), zero) for j in range(self.side)] for i in range(self.side)]

    def _check(self, other: "TensorOperator"):
        if self.dim != other.dim or self.arity != other.arity:
            raise SizeMismatch("operators act on different spaces")

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return TensorOperator(self.dim, self.arity, out)

    def __neg__(self):
        return TensorOperator(self.dim, self.arity, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorOperator":
        c = Scalar.coerce(c)
        return TensorOperator(self.dim, self.arity, {k: c * v for k, v in self.entries.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        by_row: dict[int, list] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        out: dict[tuple[int, int], Scalar] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                out[key] = out[key] + a * b if key in out else a * b
        return TensorOperator(self.dim, self.arity, out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return self.dim == other.dim and self.arity == other.arity and (self - other).is_zero()

    __hash__ = None

    def map(self, fn) -> "TensorOperator":
        return TensorOperator(self.dim, self.arity, {k: fn(v) for k, v in self.entries.items()})

    def subs(self, mapping) -> "TensorOperator":
        return self.map(lambda v: v.subs(mapping))

    def embed(self, positions: Sequence[int], arity: int) -> "TensorOperator":
        """Act on the (0-based) tensor factors ``positions`` of V^{x arity}."""
        if len(positions) != self.arity or len(set(positions)) != len(positions) or max(positions) >= arity:
            raise SizeMismatch("bad factor positions")
        N = self.dim.N
        k = self.arity
        others = [p for p in range(arity) if p not in positions]
        out = {}
        for (r, c), v in self.entries.items():
            rs, cs = _decode(r, N, k), _decode(c, N, k)
            for rest in itertools.product(range(N), repeat=len(others)):
                row = [0] * arity
                col = [0] * arity
                for p, a, b in zip(positions, rs, cs):
                    row[p], col[p] = a, b
                for p, a in zip(others, rest):
                    row[p] = col[p] = a
                out[_encode(row, N), _encode(col, N)] = v
        return TensorOperator(self.dim, arity, out)

    def partial_trace(self, position: int) -> "TensorOperator":
        """Ordinary trace over the (0-based) factor ``position``."""
        N = self.dim.N
        k = self.arity
        out: dict[tuple[int, int], Scalar] = {}
        for (r, c), v in self.entries.items():
            rs, cs = _decode(r, N, k), _decode(c, N, k)
            if rs[position] != cs[position]:
                continue
            key = (
                _encode(rs[:position] + rs[position + 1 :], N),
                _encode(cs[:position] + cs[position + 1 :], N),
            )
            out[key] = out[key] + v if key in out else v
        return TensorOperator(self.dim, k - 1, out)

    def trace(self) -> Scalar:
        total = Scalar(0)
        for (r, c), v in self.entries.items():
            if r == c:
                total = total + v
        return total

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": [self.dim.m, self.dim.n],
            "arity": self.arity,
            "entries": [[str(v) for v in row] for row in self.dense()],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "TensorOperator":
        if isinstance(data, str):
            data = json.loads(data)
        dim = SuperDim(*data["dim"])
        return cls.from_dense(dim, int(data["arity"]), [[Scalar.parse(s) for s in row] for row in data["entries"]])

    def __repr__(self):
        return f"TensorOperator(dim={self.dim}, arity={self.arity}, nnz={len(self.entries)})"


def diagonal_operator(dim: SuperDim, values: Sequence) -> TensorOperator:
    return TensorOperator(dim, 1, {(i, i): Scalar.coerce(v) for i, v in enumerate(values)})


def super_flip(dim: SuperDim) -> TensorOperator:
    """sigma(e_i x e_j) = (-1)^{p(i)p(j)} e_j x e_i."""
    N = dim.N
    out = {}
    for i in range(N):
        for j in range(N):
            sign = -1 if dim.parity(i) and dim.parity(j) else 1
            out[_encode((j, i), N), _encode((i, j), N)] = Scalar(sign)
    return TensorOperator(dim, 2, out)


def hecke_symmetry(dim: SuperDim) -> TensorOperator:
    """The standard Hecke symmetry deforming the super-flip of type (m|n)."""
    N = dim.N
    Q = q()
    lam = Q - Q ** (-1)
    out = {}
    for i in range(N):
        d = Q if dim.parity(i) == 0 else -(Q ** (-1))
        out[_encode((i, i), N), _encode((i, i), N)] = d
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            sign = -1 if dim.parity(i) and dim.parity(j) else 1
            out[_encode((i, j), N), _encode((j, i), N)] = Scalar(sign)
            if i < j:
                out[_encode((i, j), N), _encode((i, j), N)] = lam
    return TensorOperator(dim, 2, out)


def check_yang_baxter(R: TensorOperator) -> VerificationReport:
    """R12 R23 R12 - R23 R12 R23 on V^{x3}; passes iff identically zero."""
    if R.arity != 2:
        raise SizeMismatch("Yang-Baxter check needs an arity-2 operator")
    R12 = R.embed((0, 1), 3)
    R23 = R.embed((1, 2), 3)
    residual = R12 @ R23 @ R12 - R23 @ R12 @ R23
    return VerificationReport(
        "yang_baxter",
        residual.is_zero(),
        {"dim": str(R.dim), "nonzero_entries": len(residual.entries), "residual": nonzero_entries(residual.entries)},
    )


def check_hecke_condition(R: TensorOperator, q_value=None) -> VerificationReport:
    """(qI - R)(q^-1 I + R) = 0, with q symbolic unless ``q_value`` is given."""
    if R.arity != 2:
        raise SizeMismatch("Hecke check needs an arity-2 operator")
    Q = q() if q_value is None else Scalar.coerce(q_value)
    I = TensorOperator.identity(R.dim, 2)
    residual = (I.scale(Q) - R) @ (I.scale(Q.invert()) + R)
    return VerificationReport(
        "hecke_condition",
        residual.is_zero(),
        {"dim": str(R.dim), "q": str(Q), "residual": nonzero_entries(residual.entries)},
    )


def skew_inverse(R: TensorOperator) -> TensorOperator:
    """The operator Psi with Tr_2 R_12 Psi_23 = P_13 (P the plain flip).

    Writing T = Tr_2 R_12 Psi_23 in components,
    T[(a1,a3),(b1,b3)] = sum_{a2,c} R[(a1,a2),(b1,c)] Psi[(c,a3),(a2,b3)],
    so for each (a3,b3) the unknowns Psi[(c,a3),(a2,b3)] solve the same
    N^2 x N^2 system with matrix M[(a1,b1),(c,a2)] = R[(a1,a2),(b1,c)].
    """
    if R.arity != 2:
        raise SizeMismatch("skew inverse needs an arity-2 operator")
    N = R.dim.N
    M = [[Scalar(0)] * (N * N) for _ in range(N * N)]
    for (r, c), v in R.entries.items():
        a1, a2 = _decode(r, N, 2)
        b1, cc = _decode(c, N, 2)
        M[a1 * N + b1][cc * N + a2] = v
    try:
        Minv = inverse(M)
    except SingularMatrix as exc:
        raise NotSkewInvertible(str(exc)) from None
    out = {}
    for c, a3, a2, b3 in itertools.product(range(N), repeat=4):
        v = Minv[c * N + a2][b3 * N + a3]
        if not v.is_zero():
            out[_encode((c, a3), N), _encode((a2, b3), N)] = v
    return TensorOperator(R.dim, 2, out)


def _plain_flip13(dim: SuperDim) -> TensorOperator:
    N = dim.N
    return TensorOperator(
        dim, 2, {(_encode((b3, b1), N), _encode((b1, b3), N)): Scalar(1) for b1 in range(N) for b3 in range(N)}
    )


def check_skew_inverse(R: TensorOperator, Psi: TensorOperator) -> VerificationReport:
    """Both Tr_2 R_12 Psi_23 and Tr_2 Psi_12 R_23 against the plain outer flip."""
    target = _plain_flip13(R.dim)
    left = (R.embed((0, 1), 3) @ Psi.embed((1, 2), 3)).partial_trace(1)
    right = (Psi.embed((0, 1), 3) @ R.embed((1, 2), 3)).partial_trace(1)
    ok_left = left == target
    ok_right = right == target
    return VerificationReport(
        "skew_inverse",
        ok_left,
        {
            "dim": str(R.dim),
            "defining_side": "pass" if ok_left else "fail",
            "other_side": "pass" if ok_right else "fail",
        },
    )


def bc_operators(Psi: TensorOperator) -> tuple[TensorOperator, TensorOperator]:
    """B = Tr_1 Psi and C = Tr_2 Psi."""
    return Psi.partial_trace(0), Psi.partial_trace(1)


def check_bc_relation(B: TensorOperator, C: TensorOperator, dim: SuperDim | None = None) -> VerificationReport:
    """B C = q^{2(n-m)} I."""
    dim = dim or B.dim
    factor = q() ** (2 * (dim.n - dim.m))
    BC = B @ C
    residual = BC - TensorOperator.identity(dim, 1).scale(factor)
    return VerificationReport(
        "bc_relation",
        residual.is_zero(),
        {
            "dim": str(dim),
            "BC_diagonal": [str(BC[i, i]) for i in range(dim.N)],
            "expected": str(factor),
            "residual": nonzero_entries(residual.entries),
        },
    )


def c_closed_form(dim: SuperDim) -> TensorOperator:
    """C_i^i = (-1)^{p(i)} q^{2n + (-1)^{p(i)} (2i - 2m - 1)} (1-based i)."""
    Q = q()
    vals = []
    for i0 in range(dim.N):
        i = i0 + 1
        p = dim.parity(i0)
        sgn = -1 if p else 1
        vals.append(Q ** (2 * dim.n + sgn * (2 * i - 2 * dim.m - 1)) * sgn)
    return diagonal_operator(dim, vals)


def _power_of_q(s: Scalar):
    """Return k if s == q**k, else None."""
    if s.is_zero() or s.variables() - {"q"}:
        return None
    nt, dt = list(s.num.terms()), list(s.den.terms())
    if len(nt) != 1 or len(dt) != 1:
        return None
    k = int(nt[0][0][0]) - int(dt[0][0][0])
    return k if s == q() ** k else None


def compare_c_closed_form(C: TensorOperator) -> VerificationReport:
    """Compare a computed C with the closed form; report any global q-power offset."""
    closed = c_closed_form(C.dim)
    if closed == C:
        return VerificationReport("c_closed_form", True, {"dim": str(C.dim), "agreement": "exact", "offset": "1"})
    ratios = set()
    for i in range(C.dim.N):
        a, b = C[i, i], closed[i, i]
        ratios.add(str(a / b) if not b.is_zero() else "undefined")
    offdiag = any(r != c for (r, c) in C.entries)
    details = {"dim": str(C.dim), "computed": [str(C[i, i]) for i in range(C.dim.N)],
               "closed_form": [str(closed[i, i]) for i in range(C.dim.N)]}
    if len(ratios) == 1 and not offdiag:
        ratio = Scalar.parse(next(iter(ratios)))
        k = _power_of_q(ratio)
        details["agreement"] = "up to q-power" if k is not None else "up to scalar"
        details["offset"] = str(ratio)
    else:
        details["agreement"] = "none"
        details["offset"] = sorted(ratios)
    return VerificationReport("c_closed_form", False, details)


def trace_convention_report(dim: SuperDim, C: TensorOperator | None = None) -> VerificationReport:
    """Which of q^{m-n}(m-n)_q and q^{n-m}(m-n)_q equals Tr C for the computed C."""
    if C is None:
        C = bc_operators(skew_inverse(hecke_symmetry(dim)))[1]
    tr = C.trace()
    Q = q()
    qi = q_int(dim.m - dim.n)
    stated = Q ** (dim.m - dim.n) * qi
    mirrored = Q ** (dim.n - dim.m) * qi
    holds = []
    if tr == stated:
        holds.append("q^(m-n)*(m-n)_q")
    if tr == mirrored:
        holds.append("q^(n-m)*(m-n)_q")
    return VerificationReport(
        "trace_convention",
        bool(holds),
        {"dim": str(dim), "TrC": str(tr), "holds": holds},
    )


def trace_with_weight(M: Sequence[Sequence], W: TensorOperator):
    """Tr(M W) = sum_{i,j} M[i][j] W[j][i]; M holds Scalars or NCPolynomials."""
    N = len(M)
    if W.arity != 1 or W.dim.N != N or any(len(row) != N for row in M):
        raise SizeMismatch("weight and matrix sizes differ")
    total = None
    for (j, i), w in W.entries.items():
        term = M[i][j] * w
        total = term if total is None else total + term
    if total is None:
        return M[0][0] * Scalar(0)
    return total
