from rbhom import linalg as la
from rbhom.errors import RankDeficiencyError
from rbhom.scalars import LAMBDA, Scalar

import pytest

L = LAMBDA


def M(rows):
    return tuple(tuple(Scalar(x) if not isinstance(x, Scalar) else x for x in r) for r in rows)


def test_inverse_with_lambda():
    A = M([[1, L], [0, 2]])
    assert la.mat_mul(A, la.inverse(A)) == la.identity(2)


def test_singular_inverse():
    with pytest.raises(RankDeficiencyError):
        la.inverse(M([[1, 2], [2, 4]]))


def test_rank_and_kernel():
    A = M([[1, 2, 3], [2, 4, 6]])
    assert la.rank(A) == 1
    ker = la.kernel(A, 3)
    assert len(ker) == 2
    for v in ker:
        assert la.is_zero_vec(la.mat_vec(A, v))


def test_solve_and_coordinates():
    A = M([[2, 1], [1, L]])
    b = (Scalar(3), L + 1)
    x = la.solve(A, b)
    assert la.mat_vec(A, x) == b
    assert la.coordinates([(Scalar(1), Scalar(0))], (Scalar(0), Scalar(1))) is None


def test_same_rowspace():
    U = [M([[1, 1]])[0]]
    W = [M([[3, 3]])[0]]
    assert la.same_rowspace(U, W)
    assert not la.same_rowspace(U, [M([[1, 0]])[0]])
