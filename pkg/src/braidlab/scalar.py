"""Exact coefficients: rational functions in q, hbar and declared symbols.

A :class:`Scalar` is a reduced fraction ``num/den`` of integer polynomials
(python-flint ``fmpz_mpoly``).  Canonical form: ``gcd(num, den) = 1`` over
``Z[vars]`` and the leading coefficient of ``den`` (degree-lexicographic
order) is positive, so equal values have identical representations.

Variables live in one global, append-only list ``q, hbar, <declared...>``.
A Scalar only references a prefix of that list; mixing Scalars created at
different times lifts the shorter one by padding exponent vectors, which
leaves the canonical form untouched.
"""

from __future__ import annotations

import ast
import re
import threading
from fractions import Fraction
from typing import Mapping, Union

import flint

from .errors import DenominatorVanishes, DivisionByZero, NonGenericParameter, ParseError, UnboundVariable

__all__ = [
    "Scalar",
    "declare",
    "var",
    "q",
    "hbar",
    "q_int",
    "lam",
    "nu_param",
    "evaluate",
    "require_generic_q",
    "variable_names",
]

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_lock = threading.Lock()
_names: list[str] = ["q", "hbar"]
_contexts: dict[int, flint.fmpz_mpoly_ctx] = {}


def _ctx(n: int) -> flint.fmpz_mpoly_ctx:
    ctx = _contexts.get(n)
    if ctx is None:
        ctx = flint.fmpz_mpoly_ctx.get(tuple(_names[:n]), "deglex")
        _contexts[n] = ctx
    return ctx


def declare(*names: str) -> list[int]:
    """Declare symbolic parameters (idempotent); return their variable indices."""
    out = []
    with _lock:
        for name in names:
            if not _NAME_RE.match(name) or name in ("qint", "q_int"):
                raise ParseError(f"invalid symbol name {name!r}")
            if name not in _names:
                _names.append(name)
            out.append(_names.index(name))
    return out


def variable_names() -> tuple[str, ...]:
    return tuple(_names)


def _lift(p, n_from: int, n_to: int):
    if n_from == n_to:
        return p
    pad = (0,) * (n_to - n_from)
    return _ctx(n_to).from_dict({m + pad: c for m, c in p.to_dict().items()})


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Immutable exact element of Q(q, hbar, declared symbols)."""

    __slots__ = ("num", "den", "n", "_hash")

    def __init__(self, value: Number | str = 0):
        if isinstance(value, Scalar):
            self.num, self.den, self.n = value.num, value.den, value.n
        elif isinstance(value, str):
            s = Scalar.parse(value)
            self.num, self.den, self.n = s.num, s.den, s.n
        else:
            if isinstance(value, float):
                raise TypeError("floating-point values are not accepted; use Fraction or a string")
            fr = Fraction(value)
            ctx = _ctx(1)
            self.num = ctx.constant(fr.numerator)
            self.den = ctx.constant(fr.denominator)
            self.n = 1
        self._hash = None

    @classmethod
    def _raw(cls, num, den, n: int, reduce: bool = True) -> "Scalar":
        if reduce:
            if num.is_zero():
                den = _ctx(n).constant(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num = -num
                    den = -den
        s = object.__new__(cls)
        s.num, s.den, s.n, s._hash = num, den, n, None
        return s

    # construction helpers -------------------------------------------------

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        (idx,) = declare(name)
        n = idx + 1
        ctx = _ctx(n)
        return cls._raw(ctx.gens()[idx], ctx.constant(1), n, reduce=False)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the rendering syntax, e.g. ``"q^-2 + 2_q*hbar"`` or ``"(1 - q^2)/(1 + q^2)"``."""
        if not isinstance(text, str):
            return cls(text)
        src = text.replace("ħ", "hbar").replace("^", "**").replace("−", "-")
        src = re.sub(r"(?<![A-Za-z0-9_.])(\d+)_q\b", r"qint(\1)", src)
        try:
            tree = ast.parse(src.strip(), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse scalar {text!r}: {exc.msg}") from None
        return _eval_ast(tree.body, text)

    # coercion -------------------------------------------------------------

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return Scalar.parse(value)
        return Scalar(value)

    def _pair(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        n = max(self.n, other.n)
        a = (_lift(self.num, self.n, n), _lift(self.den, self.n, n))
        b = (_lift(other.num, other.n, n), _lift(other.den, other.n, n))
        return a, b, n

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            (n1, d1), (n2, d2), n = self._pair(other)
        except (TypeError, ValueError):
            return NotImplemented
        if d1 == d2:
            if d1.is_one():
                return Scalar._raw(n1 + n2, d1, n, reduce=False)
            return Scalar._raw(n1 + n2, d1, n)
        return Scalar._raw(n1 * d2 + n2 * d1, d1 * d2, n)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den, self.n, reduce=False)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            (n1, d1), (n2, d2), n = self._pair(other)
        except (TypeError, ValueError):
            return NotImplemented
        if d1 == d2:
            if d1.is_one():
                return Scalar._raw(n1 - n2, d1, n, reduce=False)
            return Scalar._raw(n1 - n2, d1, n)
        return Scalar._raw(n1 * d2 - n2 * d1, d1 * d2, n)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            (n1, d1), (n2, d2), n = self._pair(other)
        except (TypeError, ValueError):
            return NotImplemented
        if n1.is_zero() or n2.is_zero():
            return Scalar._raw(_ctx(n).constant(0), _ctx(n).constant(1), n, reduce=False)
        if d1.is_one() and d2.is_one():
            return Scalar._raw(n1 * n2, d1, n, reduce=False)
        # cross-cancellation keeps the operands small
        g1 = n1.gcd(d2)
        g2 = n2.gcd(d1)
        if not g1.is_one():
            n1, d2 = n1 / g1, d2 / g1
        if not g2.is_one():
            n2, d1 = n2 / g2, d1 / g2
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den, n, reduce=False)

    __rmul__ = __mul__

    def invert(self) -> "Scalar":
        if self.num.is_zero():
            raise DivisionByZero("cannot invert the zero scalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den, self.n, reduce=False)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        return self * other.invert()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return Scalar(1)
        return Scalar._raw(self.num**k, self.den**k, self.n, reduce=False)

    # predicates / comparison ---------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if not self.is_constant():
                    return False
                return self.to_fraction() == other
            if isinstance(other, str):
                other = Scalar.parse(other)
            else:
                return NotImplemented
        (n1, d1), (n2, d2), _ = self._pair(other)
        return n1 == n2 and d1 == d2

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(str(self))
        return self._hash

    # conversions ----------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise UnboundVariable(sorted(self.variables())[0])
        return Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                        int(self.den.leading_coefficient()))

    def variables(self) -> set[str]:
        out = set()
        for poly in (self.num, self.den):
            for i, d in enumerate(poly.degrees()):
                if d:
                    out.add(_names[i])
        return out

    def numerator(self) -> "Scalar":
        return Scalar._raw(self.num, _ctx(self.n).constant(1), self.n, reduce=False)

    def denominator(self) -> "Scalar":
        return Scalar._raw(self.den, _ctx(self.n).constant(1), self.n, reduce=False)

    def eval(self, point: Mapping[str, Number]) -> Fraction:
        return evaluate(self, point)

    def subs(self, mapping: Mapping[str, Number]) -> "Scalar":
        """Substitute Scalars (or rationals) for variables; other variables stay symbolic."""
        if not mapping:
            return self
        images = []
        for i in range(self.n):
            name = _names[i]
            images.append(Scalar.coerce(mapping[name]) if name in mapping else None)

        def image(poly):
            total = Scalar(0)
            for mono, c in poly.to_dict().items():
                term_num = _ctx(self.n).constant(int(c))
                term = Scalar._raw(term_num, _ctx(self.n).constant(1), self.n, reduce=False)
                for i, e in enumerate(mono):
                    if not e:
                        continue
                    if images[i] is None:
                        term = term * Scalar.symbol(_names[i]) ** int(e)
                    else:
                        term = term * images[i] ** int(e)
                total = total + term
            return total

        den = image(self.den)
        if den.is_zero():
            raise DenominatorVanishes({k: str(v) for k, v in mapping.items()})
        return image(self.num) / den

    def diff(self, name: str) -> "Scalar":
        """Partial derivative with respect to the variable ``name``."""
        if name not in _names or _names.index(name) >= self.n:
            return Scalar(0)
        i = _names.index(name)
        dn = self.num.derivative(i)
        dd = self.den.derivative(i)
        return Scalar._raw(dn * self.den - self.num * dd, self.den * self.den, self.n)

    # rendering ------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _monomial_str(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        parts.append(_names[i] if e == 1 else f"{_names[i]}^{e}")
    return "*".join(parts)


def _poly_terms(items) -> str:
    """Render ``[(exponents, Fraction)]`` as a signed sum."""
    if not items:
        return "0"
    out = []
    for k, (exps, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _monomial_str(exps)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def render(s: Scalar) -> str:
    """Deterministic text form; Laurent-monomial denominators are distributed."""
    num_terms = list(s.num.terms())
    den_terms = list(s.den.terms())
    if len(den_terms) == 1:
        dexp, dc = den_terms[0]
        items = [
            (tuple(a - b for a, b in zip(e, dexp)), Fraction(int(c), int(dc)))
            for e, c in num_terms
        ]
        return _poly_terms(items)
    num = _poly_terms([(e, Fraction(int(c))) for e, c in num_terms])
    den = _poly_terms([(e, Fraction(int(c))) for e, c in den_terms])
    return f"({num})/({den})"


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _eval_ast(node, text):
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_ast(node.left, text)
            exp = _eval_ast(node.right, text)
            if not exp.is_constant() or exp.to_fraction().denominator != 1:
                raise ParseError(f"non-integer exponent in {text!r}")
            return base ** int(exp.to_fraction())
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ParseError(f"unsupported operator in {text!r}")
        return op(_eval_ast(node.left, text), _eval_ast(node.right, text))
    if isinstance(node, ast.UnaryOp):
        val = _eval_ast(node.operand, text)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ParseError(f"unsupported unary operator in {text!r}")
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Scalar(node.value)
    if isinstance(node, ast.Name):
        return Scalar.symbol(node.id)
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in ("qint", "q_int")
        and len(node.args) == 1
        and not node.keywords
    ):
        k = _eval_ast(node.args[0], text)
        return q_int(int(k.to_fraction()))
    raise ParseError(f"unsupported syntax in {text!r}")


def var(name: str) -> Scalar:
    return Scalar.symbol(name)


def q() -> Scalar:
    return Scalar.symbol("q")


def hbar() -> Scalar:
    return Scalar.symbol("hbar")


def q_int(k: int) -> Scalar:
    """The q-number (q^k - q^-k)/(q - q^-1)."""
    Q = q()
    return (Q**k - Q ** (-k)) / (Q - Q ** (-1))


def lam() -> Scalar:
    """q - q^-1, the coefficient in the Hecke condition."""
    Q = q()
    return Q - Q ** (-1)


def nu_param() -> Scalar:
    """(1 - q^2)/(1 + q^2), the deformation parameter of the sl(2) example."""
    Q = q()
    return (1 - Q**2) / (1 + Q**2)


def _eval_poly(poly, values):
    total = Fraction(0)
    for mono, c in poly.to_dict().items():
        term = Fraction(int(c))
        for i, e in enumerate(mono):
            if e:
                term *= values[i] ** int(e)
        total += term
    return total


def evaluate(s: Scalar, point: Mapping[str, Number]) -> Fraction:
    """Exact rational value of ``s`` at ``point`` (variable name -> rational)."""
    s = Scalar.coerce(s)
    values = []
    used = s.variables()
    for i in range(s.n):
        name = _names[i]
        if name in used:
            if name not in point:
                raise UnboundVariable(name)
            v = point[name]
            if isinstance(v, Scalar):
                v = v.to_fraction()
            values.append(Fraction(v))
        else:
            values.append(Fraction(0))
    den = _eval_poly(s.den, values)
    if den == 0:
        raise DenominatorVanishes({k: str(v) for k, v in point.items() if k in used})
    return _eval_poly(s.num, values) / den


def require_generic_q(value: Number) -> Fraction:
    """Reject q-values that break genericity.

    A rational root of unity is +-1, so together with 0 these are the only
    rational values excluded by the "q^n != 1 for n = 2..8" requirement.
    """
    v = Fraction(value.to_fraction() if isinstance(value, Scalar) else value)
    if v in (0, 1, -1):
        raise NonGenericParameter(f"q = {v} is not generic")
    return v
