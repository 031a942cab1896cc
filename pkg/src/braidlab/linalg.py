"""Sparse exact Gaussian elimination over Scalars.

Vectors are ``dict[column, Scalar]`` with no stored zeros.  Columns are any
hashable labels; ``key`` maps a column to a sort key and the pivot of a row
is its *greatest* column under that key (for word columns this is the
leading word of a relation).
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

from .errors import BraidlabError
from .scalar import Scalar

Vector = dict


class SingularMatrix(BraidlabError, ArithmeticError):
    pass


def _identity_key(c):
    return c


def axpy(y: Vector, a: Scalar, x: Vector) -> Vector:
    """Return y + a*x as a new vector."""
    out = dict(y)
    for col, v in x.items():
        s = out.get(col)
        s = a * v if s is None else s + a * v
        if s.is_zero():
            out.pop(col, None)
        else:
            out[col] = s
    return out


class Echelon:
    """Incrementally maintained row-echelon basis with unit pivots."""

    def __init__(self, key: Callable = _identity_key):
        self.key = key
        self.pivots: dict[Hashable, Vector] = {}

    def lead(self, row: Vector):
        return max(row, key=self.key)

    def reduce(self, row: Vector) -> Vector:
        """Reduce the leading terms of ``row`` until its lead is not a pivot."""
        row = {c: Scalar.coerce(v) for c, v in row.items() if not Scalar.coerce(v).is_zero()}
        while row:
            lead = self.lead(row)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            row = axpy(row, -row[lead], piv)
        return row

    def add(self, row: Vector) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = self.lead(row)
        inv = row[lead].invert()
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row: Vector) -> bool:
        return not self.full_reduce(row)

    def full_reduce(self, row: Vector) -> Vector:
        """Eliminate every pivot column from ``row``."""
        row = {c: Scalar.coerce(v) for c, v in row.items() if not Scalar.coerce(v).is_zero()}
        for col in sorted(self.pivots, key=self.key, reverse=True):
            a = row.get(col)
            if a is not None:
                row = axpy(row, -a, self.pivots[col])
        return row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced_rows(self) -> list[Vector]:
        """Fully reduced basis, sorted by pivot descending."""
        order = sorted(self.pivots, key=self.key)
        done: dict[Hashable, Vector] = {}
        for col in order:
            row = self.pivots[col]
            for lower in done:
                a = row.get(lower)
                if a is not None:
                    row = axpy(row, -a, done[lower])
            done[col] = row
        self.pivots = done
        return [done[c] for c in sorted(done, key=self.key, reverse=True)]


def rank(rows: Iterable[Vector], key: Callable = _identity_key) -> int:
    ech = Echelon(key)
    for r in rows:
        ech.add(r)
    return ech.rank


def reduced_basis(rows: Iterable[Vector], key: Callable = _identity_key) -> list[Vector]:
    ech = Echelon(key)
    for r in rows:
        ech.add(r)
    return ech.reduced_rows()


def same_span(rows_a: Iterable[Vector], rows_b: Iterable[Vector], key: Callable = _identity_key) -> bool:
    a = reduced_basis(rows_a, key)
    b = reduced_basis(rows_b, key)
    if len(a) != len(b):
        return False
    return all(ra.keys() == rb.keys() and all(ra[c] == rb[c] for c in ra) for ra, rb in zip(a, b))


def nullspace(rows: Iterable[Vector], columns: Sequence[Hashable]) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}, x indexed by ``columns``."""
    pos = {c: i for i, c in enumerate(columns)}
    ech = Echelon(key=lambda c: pos[c])
    for r in rows:
        ech.add(r)
    basis = ech.reduced_rows()
    pivots = {max(r, key=lambda c: pos[c]): r for r in basis}
    out = []
    for free in columns:
        if free in pivots:
            continue
        vec = {free: Scalar(1)}
        for p, r in pivots.items():
            a = r.get(free)
            if a is not None:
                vec[p] = -a
        out.append(vec)
    return out


def dense_rows(matrix: Sequence[Sequence]) -> list[Vector]:
    return [{j: Scalar.coerce(v) for j, v in enumerate(row) if not Scalar.coerce(v).is_zero()} for row in matrix]


def determinant(matrix: Sequence[Sequence]) -> Scalar:
    n = len(matrix)
    rows = [[Scalar.coerce(v) for v in row] for row in matrix]
    det = Scalar(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return Scalar(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        p = rows[col][col]
        det = det * p
        inv = p.invert()
        for r in range(col + 1, n):
            f = rows[r][col]
            if f.is_zero():
                continue
            f = f * inv
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def inverse(matrix: Sequence[Sequence]) -> list[list[Scalar]]:
    """Gauss-Jordan inverse; raises :class:`SingularMatrix`."""
    n = len(matrix)
    aug = [
        {**{j: Scalar.coerce(v) for j, v in enumerate(row) if not Scalar.coerce(v).is_zero()}, n + i: Scalar(1)}
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if col in aug[r]), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].invert()
        aug[col] = {c: v * inv for c, v in aug[col].items()}
        for r in range(n):
            if r != col and col in aug[r]:
                aug[r] = axpy(aug[r], -aug[r][col], aug[col])
    return [[aug[i].get(n + j, Scalar(0)) for j in range(n)] for i in range(n)]
