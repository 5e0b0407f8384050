import random

import pytest

from helpers import TABLE3_POINTS, table3_pair, v_algebras
from rbhom import linalg as la
from rbhom.algebra import FiniteSemigroup, HomAlgebra, check_algebra, direct_product
from rbhom.catalog import S2, idempotent_line, rb_idempotent_line, twisted_plane
from rbhom.errors import InvalidPairError, NotADirectSumError, SemigroupMismatchError
from rbhom.extending import check_extending_structure
from rbhom.matched import MatchedPair, build_bicrossed, check_factorization, check_matched_pair, to_datum
from rbhom.scalars import LAMBDA, Scalar

L = LAMBDA


def test_zero_actions_pass_and_give_direct_product():
    R, V = idempotent_line(), rb_idempotent_line("e2")
    mp = MatchedPair.trivial(R, V)
    assert check_matched_pair(mp).ok
    assert build_bicrossed(mp) == direct_product(R, V)


@pytest.mark.parametrize("point", TABLE3_POINTS)
def test_table3_rows_are_matched_pairs(point):
    assert check_matched_pair(table3_pair(*point)).ok


def test_point_outside_table_fails():
    rep = check_matched_pair(table3_pair(1, 1, 1, 1))
    assert not rep.ok
    assert all(lab.split("/")[0] in {f"M{k}" for k in range(1, 9)} for lab in rep.labels())


def test_bicrossed_0011_structure():
    E = build_bicrossed(table3_pair(0, 0, 1, 1))
    one, zero = Scalar(1), Scalar(0)
    assert E.mu[0][1] == (one, zero)
    assert E.mu[1][0] == (one, zero)
    assert E.mu[1][1] == (zero, one)
    assert la.column(E.P[0], 1) == (zero, -L)
    assert check_algebra(E).ok


def test_invalid_pair_rejected():
    with pytest.raises(InvalidPairError):
        build_bicrossed(table3_pair(1, 1, 1, 1))


def test_semigroup_and_weight_mismatch():
    W = HomAlgebra.build(FiniteSemigroup.trivial(), ["x"], mul={(0, 0): [1]})
    with pytest.raises(SemigroupMismatchError):
        MatchedPair.trivial(idempotent_line(), W)
    W2 = HomAlgebra.build(S2, ["x"], mul={(0, 0): [1]}, weight=2)
    with pytest.raises(SemigroupMismatchError):
        MatchedPair(idempotent_line(), W2, [[(0,)]], [[(0,)]], [[(0,)]], [[(0,)]])


def test_pair_agrees_with_zero_extended_datum():
    rng = random.Random(3)
    vals = (0, 0, 1, -1, 2)
    agree = 0
    for _ in range(60):
        mp = table3_pair(*[rng.choice(vals) for _ in range(4)])
        a = check_matched_pair(mp).ok
        assert a == check_extending_structure(to_datum(mp)).ok
        agree += a
    assert agree > 0


@pytest.mark.parametrize("point", TABLE3_POINTS)
def test_factorization_round_trip(point):
    mp = table3_pair(*point)
    E = build_bicrossed(mp)
    rep = check_factorization(E, [(1, 0)], [(0, 1)])
    assert rep.ok
    assert rep.pair == mp


def test_direct_product_factorizes_with_zero_actions():
    R, V = twisted_plane(), v_algebras()[3]
    E = direct_product(R, V)
    rep = check_factorization(E, [la.unit(4, 0), la.unit(4, 1)], [la.unit(4, 2), la.unit(4, 3)])
    assert rep.ok
    assert rep.pair == MatchedPair.trivial(R, V)


def test_twisted_plane_does_not_factor():
    rep = check_factorization(twisted_plane(), [(1, 0)], [(0, 1)])
    assert not rep.ok
    assert rep.pair is None
    assert any(lab.startswith("V-block/") for lab in rep.labels())


def test_not_a_direct_sum():
    with pytest.raises(NotADirectSumError):
        check_factorization(twisted_plane(), [(1, 0)], [(2, 0)])
