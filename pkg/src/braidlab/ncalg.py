"""Finitely presented associative algebras over Scalars.

Words are tuples of generator indices, ordered degree-lexicographically
(longer words are greater; equal lengths compare lexicographically).  A
:class:`Presentation` is a set of rewrite rules ``lead -> tail`` with
quadratic leads and tails strictly below the lead, so rewriting terminates.
"""

from __future__ import annotations

import ast
import itertools
import json
import math
import os
import sys
from typing import Iterable, Mapping, Sequence

from .errors import DegreeOverflow, ParseError, PresentationError
from .linalg import Echelon
from .report import VerificationReport
from .scalar import Scalar

__all__ = [
    "NCPolynomial",
    "Presentation",
    "word_key",
    "normal_form",
    "hilbert_dims",
    "normal_word_counts",
    "overlap_dimension",
    "centrality_residual",
    "confluence_check",
    "strategy_agreement",
    "supercommutative_presentation",
    "default_max_degree",
    "supersymmetric_dims",
]

Word = tuple


def word_key(w: Word):
    return (len(w), w)


def default_max_degree() -> int:
    return int(os.environ.get("BRAIDLAB_MAX_DEGREE", "12"))


def _acc(out: dict, word, c):
    s = out.get(word)
    s = c if s is None else s + c
    if s.is_zero():
        out.pop(word, None)
    else:
        out[word] = s


class NCPolynomial:
    """Scalar-linear combination of words; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> "NCPolynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def gen(cls, i: int) -> "NCPolynomial":
        return cls._wrap({(i,): Scalar(1)})

    @classmethod
    def const(cls, c) -> "NCPolynomial":
        c = Scalar.coerce(c)
        return cls._wrap({} if c.is_zero() else {(): c})

    @classmethod
    def word(cls, w: Sequence[int], c=1) -> "NCPolynomial":
        return cls({tuple(w): c})

    @staticmethod
    def _as_poly(other):
        if isinstance(other, NCPolynomial):
            return other
        return NCPolynomial.const(other)

    def __add__(self, other):
        other = self._as_poly(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return NCPolynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            try:
                c = Scalar.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
            if c.is_zero():
                return NCPolynomial()
            return NCPolynomial._wrap({w: v * c for w, v in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, w1 + w2, c1 * c2)
        return NCPolynomial._wrap(out)

    def __rmul__(self, other):
        try:
            c = Scalar.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if c.is_zero():
            return NCPolynomial()
        return NCPolynomial._wrap({w: c * v for w, v in self.terms.items()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).invert()

    def __pow__(self, k: int):
        out = NCPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = self._as_poly(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, k: int) -> "NCPolynomial":
        return NCPolynomial._wrap({w: c for w, c in self.terms.items() if len(w) == k})

    def coeff(self, w: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(w), Scalar(0))

    def map_coeffs(self, fn) -> "NCPolynomial":
        return NCPolynomial({w: fn(c) for w, c in self.terms.items()})

    def subs(self, mapping) -> "NCPolynomial":
        return self.map_coeffs(lambda c: c.subs(mapping))

    def substitute(self, images: Sequence["NCPolynomial"]) -> "NCPolynomial":
        """Algebra map sending generator i to ``images[i]``."""
        out = NCPolynomial()
        for w, c in self.terms.items():
            term = NCPolynomial.const(c)
            for i in w:
                term = term * images[i]
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(names[i] for i in w)
            cs = str(c)
            if not mono:
                body, neg = (cs[1:], True) if cs.startswith("-") and " " not in cs else (cs, False)
                if " " in cs:
                    body = f"({cs})"
            elif cs == "1":
                body, neg = mono, False
            elif cs == "-1":
                body, neg = mono, True
            elif " " not in cs and "/(" not in cs:
                neg = cs.startswith("-")
                body = f"{cs[1:] if neg else cs}*{mono}"
            else:
                body, neg = f"({cs})*{mono}", False
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        names = [f"g{i}" for i in range(1 + max((max(w) for w in self.terms if w), default=0))]
        return f"NCPolynomial({self.render(names)!r})"

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "NCPolynomial":
        """Parse e.g. ``"q*a*b - q^-1*b*a - hbar*b"``; unknown identifiers are scalar symbols."""
        import re

        src = text.replace("ħ", "hbar").replace("^", "**").replace("−", "-")
        src = re.sub(r"(?<![A-Za-z0-9_.])(\d+)_q\b", r"qint(\1)", src)
        try:
            tree = ast.parse(src.strip(), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
        index = {n: i for i, n in enumerate(names)}
        return cls._as_poly(_eval_nc(tree.body, index, text))


def _eval_nc(node, index, text):
    from .scalar import q_int

    if isinstance(node, ast.BinOp):
        left = _eval_nc(node.left, index, text)
        if isinstance(node.op, ast.Pow):
            right = _eval_nc(node.right, index, text)
            if not isinstance(right, Scalar) or not right.is_constant():
                raise ParseError(f"bad exponent in {text!r}")
            k = int(right.to_fraction())
            if isinstance(left, Scalar):
                return left**k
            if k < 0:
                raise ParseError(f"negative power of a generator in {text!r}")
            return left**k
        right = _eval_nc(node.right, index, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            if isinstance(left, Scalar) and isinstance(right, NCPolynomial):
                return right.__rmul__(left)
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, NCPolynomial):
                raise ParseError(f"division by an algebra element in {text!r}")
            return left / right
        raise ParseError(f"unsupported operator in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_nc(node.operand, index, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Scalar(node.value)
    if isinstance(node, ast.Name):
        if node.id in index:
            return NCPolynomial.gen(index[node.id])
        return Scalar.symbol(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("qint", "q_int"):
        k = _eval_nc(node.args[0], index, text)
        return q_int(int(k.to_fraction()))
    raise ParseError(f"unsupported syntax in {text!r}")


class Presentation:
    """Generators with parities plus quadratic-leading rewrite rules."""

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        rules: Mapping[Word, NCPolynomial],
        max_degree: int | None = None,
    ):
        self.generators = tuple((str(n), int(p)) for n, p in generators)
        self.names = tuple(n for n, _ in self.generators)
        if len(set(self.names)) != len(self.names):
            raise PresentationError("generator names must be distinct")
        self.rules = {tuple(k): v for k, v in rules.items()}
        self.max_degree = default_max_degree() if max_degree is None else max_degree
        self.max_verified_degree = 0
        self._cache: dict[Word, dict] = {}
        self._validate()

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def parity(self, w: Word) -> int:
        return sum(self.generators[i][1] for i in w) % 2

    def gen(self, name: str) -> NCPolynomial:
        return NCPolynomial.gen(self.names.index(name))

    def gens(self) -> list[NCPolynomial]:
        return [NCPolynomial.gen(i) for i in range(self.ngens)]

    def _validate(self):
        for lead, tail in self.rules.items():
            if len(lead) != 2 or any(not 0 <= i < self.ngens for i in lead):
                raise PresentationError(f"rule lead {lead} is not a quadratic word in the generators")
            for w, c in tail.terms.items():
                if any(not 0 <= i < self.ngens for i in w):
                    raise PresentationError(f"unknown generator in tail of {self._wname(lead)}")
                if len(w) > 2 or word_key(w) >= word_key(lead):
                    raise PresentationError(
                        f"tail word {self._wname(w)} does not precede lead {self._wname(lead)}"
                    )
                if self.parity(w) != self.parity(lead):
                    raise PresentationError(f"rule {self._wname(lead)} is not parity-homogeneous")

    def _wname(self, w: Word) -> str:
        return "*".join(self.names[i] for i in w) or "1"

    def parse(self, text: str) -> NCPolynomial:
        return NCPolynomial.parse(text, self.names)

    def render(self, p: NCPolynomial) -> str:
        return p.render(self.names)

    def relations(self) -> list[NCPolynomial]:
        """The rules as relations ``lead - tail``."""
        return [NCPolynomial.word(lead) - tail for lead, tail in sorted(self.rules.items(), key=lambda t: word_key(t[0]), reverse=True)]

    def with_rules(self, rules: Mapping[Word, NCPolynomial]) -> "Presentation":
        return Presentation(self.generators, rules, self.max_degree)

    def quadratic_part(self) -> "Presentation":
        return self.with_rules({lead: tail.homogeneous_part(2) for lead, tail in self.rules.items()})

    def map_coeffs(self, fn) -> "Presentation":
        return self.with_rules({lead: tail.map_coeffs(fn) for lead, tail in self.rules.items()})

    @classmethod
    def from_relations(
        cls,
        generators: Sequence[tuple[str, int]],
        relations: Iterable[NCPolynomial],
        max_degree: int | None = None,
    ) -> "Presentation":
        """Orient relations (each = 0) by reduced echelon form on the word order."""
        ech = Echelon(key=word_key)
        for rel in relations:
            ech.add(rel.terms)
        rules = {}
        for row in ech.reduced_rows():
            lead = max(row, key=word_key)
            if len(lead) != 2:
                raise PresentationError(f"relation with leading word of degree {len(lead)} cannot be a quadratic rule")
            rules[lead] = NCPolynomial({w: -c for w, c in row.items() if w != lead})
        return cls(generators, rules, max_degree)

    # normal forms ---------------------------------------------------------

    def _nf_word(self, w: Word) -> dict:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        if len(w) <= 1:
            res = {w: Scalar(1)}
            self._cache[w] = res
            return res
        suffix = w[1:]
        s = self._nf_word(suffix)
        x = w[0]
        out: dict = {}
        if len(s) == 1 and suffix in s and s[suffix] == 1:
            tail = self.rules.get((x, suffix[0]))
            if tail is None:
                out = {w: Scalar(1)}
            else:
                rest = suffix[1:]
                for t, c in tail.terms.items():
                    for u, d in self._nf_word(t + rest).items():
                        _acc(out, u, c * d)
        else:
            for u, c in s.items():
                for v, d in self._nf_word((x,) + u).items():
                    _acc(out, v, c * d)
        self._cache[w] = out
        return out

    def normal_form(self, p: NCPolynomial) -> NCPolynomial:
        out: dict = {}
        limit = sys.getrecursionlimit()
        if limit < 20000:
            sys.setrecursionlimit(20000)
        for w, c in p.terms.items():
            if len(w) > self.max_degree:
                raise DegreeOverflow(len(w), self.max_degree)
            for u, d in self._nf_word(w).items():
                _acc(out, u, c * d)
        return NCPolynomial._wrap(out)

    def is_normal(self, w: Word) -> bool:
        return all((w[i], w[i + 1]) not in self.rules for i in range(len(w) - 1))

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": [{"name": n, "parity": p} for n, p in self.generators],
            "rules": [
                {
                    "lead": [self.names[i] for i in lead],
                    "tail": [
                        {"word": [self.names[i] for i in w], "coeff": str(c)} for w, c in tail.sorted_terms()
                    ],
                }
                for lead, tail in sorted(self.rules.items(), key=lambda t: word_key(t[0]), reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data, max_degree: int | None = None) -> "Presentation":
        if isinstance(data, str):
            data = json.loads(data)
        gens = [(g["name"], int(g.get("parity", 0))) for g in data["generators"]]
        index = {n: i for i, (n, _) in enumerate(gens)}
        rules = {}
        try:
            for rule in data["rules"]:
                lead = tuple(index[n] for n in rule["lead"])
                if lead in rules:
                    raise PresentationError(f"duplicate rule lead {rule['lead']}")
                rules[lead] = NCPolynomial(
                    {tuple(index[n] for n in t["word"]): Scalar.parse(str(t["coeff"])) for t in rule["tail"]}
                )
        except KeyError as exc:
            raise PresentationError(f"unknown generator or missing field {exc}") from None
        return cls(gens, rules, max_degree)

    def __repr__(self):
        return f"Presentation(generators={list(self.names)}, rules={len(self.rules)})"


def normal_form(p: NCPolynomial, pres: Presentation) -> NCPolynomial:
    return pres.normal_form(p)


def _words(n: int, k: int):
    return itertools.product(range(n), repeat=k)


def _quadratic_relation_rows(pres: Presentation) -> list[dict]:
    rows = []
    for lead, tail in pres.rules.items():
        row = {lead: Scalar(1)}
        for w, c in tail.terms.items():
            if len(w) == 2:
                row[w] = -c
        rows.append(row)
    return rows


def _shift(row: dict, left: Word, right: Word) -> dict:
    return {left + w + right: c for w, c in row.items()}


def hilbert_dims(pres: Presentation, D: int) -> list[int]:
    """Graded dimensions 0..D of the quadratic algebra (tails truncated to degree 2).

    Degree k: N^k minus the rank of {u r v : r a quadratic relation, |u| + |v| = k - 2}.
    """
    if D > pres.max_degree:
        raise DegreeOverflow(D, pres.max_degree)
    N = pres.ngens
    rels = _quadratic_relation_rows(pres)
    dims = []
    for k in range(D + 1):
        if k < 2:
            dims.append(N**k)
            continue
        ech = Echelon()
        for i in range(k - 1):
            for left in _words(N, i):
                for right in _words(N, k - 2 - i):
                    for r in rels:
                        ech.add(_shift(r, left, right))
        dims.append(N**k - ech.rank)
    return dims


def normal_word_counts(pres: Presentation, D: int) -> list[int]:
    """Number of words avoiding every rule lead, per degree (PBW-style count)."""
    counts = [1]
    level = [()]
    for _ in range(D):
        nxt = []
        for w in level:
            for x in range(pres.ngens):
                if not w or (w[-1], x) not in pres.rules:
                    nxt.append(w + (x,))
        counts.append(len(nxt))
        level = nxt
    return counts


def overlap_dimension(pres: Presentation) -> int:
    """dim(I (x) A_1  intersect  A_1 (x) I) inside the degree-3 words."""
    N = pres.ngens
    rels = _quadratic_relation_rows(pres)
    left_rows = [_shift(r, (), (x,)) for r in rels for x in range(N)]
    right_rows = [_shift(r, (x,), ()) for r in rels for x in range(N)]
    ech_l, ech_r, ech_sum = Echelon(), Echelon(), Echelon()
    for r in left_rows:
        ech_l.add(r)
        ech_sum.add(r)
    for r in right_rows:
        ech_r.add(r)
        ech_sum.add(r)
    return ech_l.rank + ech_r.rank - ech_sum.rank


def centrality_residual(z: NCPolynomial, pres: Presentation) -> list[tuple[str, NCPolynomial]]:
    out = []
    for i, name in enumerate(pres.names):
        g = NCPolynomial.gen(i)
        out.append((name, pres.normal_form(z * g - g * z)))
    return out


def critical_pairs(pres: Presentation) -> list[Word]:
    out = []
    for (a, b) in pres.rules:
        for (b2, c) in pres.rules:
            if b2 == b:
                out.append((a, b, c))
    return sorted(out)


def confluence_check(pres: Presentation, D: int = 4) -> VerificationReport:
    """Resolve every overlap ambiguity x*y*z where xy and yz are both rule leads.

    With quadratic leads the only ambiguities are these degree-3 overlaps, so
    resolving all of them certifies confluence in every degree; the report
    records ``D`` as the verified degree.
    """
    failures = []
    pairs = critical_pairs(pres) if D >= 3 else []
    for a, b, c in pairs:
        one_step_left = pres.rules[(a, b)] * NCPolynomial.gen(c)
        one_step_right = NCPolynomial.gen(a) * pres.rules[(b, c)]
        diff = pres.normal_form(one_step_left - one_step_right)
        if not diff.is_zero():
            failures.append({"overlap": pres._wname((a, b, c)), "difference": pres.render(diff)})
    passed = not failures
    if passed:
        pres.max_verified_degree = max(pres.max_verified_degree, D)
    return VerificationReport(
        "confluence",
        passed,
        {
            "critical_pairs": len(pairs),
            "failures": failures[:8],
            "failure_count": len(failures),
            "verified_degree": D if passed else 0,
        },
    )


def _rightmost_nf(pres: Presentation, w: Word, memo: dict) -> dict:
    """Independent reduction strategy: rewrite the rightmost reducible pair first."""
    if w in memo:
        return memo[w]
    pos = None
    for i in range(len(w) - 2, -1, -1):
        if (w[i], w[i + 1]) in pres.rules:
            pos = i
            break
    if pos is None:
        res = {w: Scalar(1)}
    else:
        res = {}
        for t, c in pres.rules[(w[pos], w[pos + 1])].terms.items():
            for u, d in _rightmost_nf(pres, w[:pos] + t + w[pos + 2 :], memo).items():
                _acc(res, u, c * d)
    memo[w] = res
    return res


def strategy_agreement(pres: Presentation, D: int) -> VerificationReport:
    """Brute force: leftmost-first and rightmost-first reductions agree on all words of degree <= D."""
    memo: dict = {}
    bad = []
    count = 0
    for k in range(D + 1):
        for w in _words(pres.ngens, k):
            count += 1
            a = pres.normal_form(NCPolynomial.word(w))
            b = NCPolynomial(_rightmost_nf(pres, w, memo))
            if not (a - b).is_zero():
                bad.append(pres._wname(w))
    return VerificationReport("strategy_agreement", not bad, {"words": count, "disagreements": bad[:8]})


def supercommutative_presentation(generators: Sequence[tuple[str, int]], max_degree: int | None = None) -> Presentation:
    """x_j x_i -> (-1)^{p_i p_j} x_i x_j for j > i, and x_i x_i -> 0 for odd x_i."""
    rules = {}
    for i, (_, pi) in enumerate(generators):
        for j, (_, pj) in enumerate(generators):
            if j > i:
                rules[(j, i)] = NCPolynomial.word((i, j), -1 if pi and pj else 1)
        if pi:
            rules[(i, i)] = NCPolynomial()
    return Presentation(generators, rules, max_degree)


def supersymmetric_dims(even: int, odd: int, D: int) -> list[int]:
    """Graded dimensions of the free supercommutative algebra: (1+t)^odd / (1-t)^even."""
    out = []
    for k in range(D + 1):
        out.append(sum(math.comb(even + i - 1, i) * math.comb(odd, k - i) for i in range(k + 1)) if even else math.comb(odd, k))
    return out
