from fractions import Fraction

import pytest

from braidlab.linalg import SingularMatrix, determinant, inverse, nullspace, rank, same_span
from braidlab.scalar import Scalar


def M(rows):
    return [[Scalar.parse(str(x)) for x in r] for r in rows]


def test_determinant_matches_hand_expansion():
    assert determinant(M([[1, 2], [3, 4]])) == -2
    assert determinant(M([[2, 0, 1], [1, 3, 2], [1, 1, 1]])) == 2 * (3 - 2) - 0 + 1 * (1 - 3)
    assert determinant(M([["q", 1], [1, "q^-1"]])) == 0


def test_inverse():
    A = M([["q", 1], [0, "q^-1"]])
    Ai = inverse(A)
    prod = [[sum((A[i][k] * Ai[k][j] for k in range(2)), Scalar(0)) for j in range(2)] for i in range(2)]
    assert prod == M([[1, 0], [0, 1]])
    with pytest.raises(SingularMatrix):
        inverse(M([[1, 2], [2, 4]]))


def test_rank_and_span():
    rows = [{0: Scalar(1), 1: Scalar(2)}, {0: Scalar(2), 1: Scalar(4)}, {2: Scalar.parse("q")}]
    assert rank(rows) == 2
    assert same_span(rows, [{0: Scalar(3), 1: Scalar(6)}, {2: Scalar(1)}])
    assert not same_span(rows, [{0: Scalar(1)}, {2: Scalar(1)}])


def test_nullspace():
    rows = [{0: Scalar(1), 1: Scalar(1)}, {1: Scalar(1), 2: Scalar(-1)}]
    basis = nullspace(rows, [0, 1, 2])
    assert len(basis) == 1
    v = basis[0]
    for r in rows:
        assert sum((c * v.get(k, Scalar(0)) for k, c in r.items()), Scalar(0)) == 0
