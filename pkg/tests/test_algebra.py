import random

import pytest

from rbhom import linalg as la
from rbhom.algebra import (
    Bimodule,
    FiniteSemigroup,
    HomAlgebra,
    LinearMap,
    check_algebra,
    check_bimodule,
    check_morphism,
    check_subalgebra,
    direct_product,
    restrict,
    semigroup_validate,
)
from rbhom.catalog import S2, idempotent_line, rb_idempotent_line, twisted_plane
from rbhom.errors import NotSubalgebraError, SemigroupMismatchError, ShapeError
from rbhom.scalars import LAMBDA, Scalar

L = LAMBDA


def test_z2_and_trivial_semigroups_valid():
    assert semigroup_validate(FiniteSemigroup.z2()).ok
    assert semigroup_validate(FiniteSemigroup.trivial()).ok


def test_non_associative_table():
    S = FiniteSemigroup.from_products(["a", "b"], {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"})
    rep = semigroup_validate(S)
    assert not rep.ok
    first = rep.violations[0]
    assert first.label == "assoc"
    assert first.indices == ("a", "a", "a")


def test_missing_product_reported():
    S = FiniteSemigroup.from_products(["a"], {})
    assert "closure" in semigroup_validate(S).labels()


@pytest.mark.parametrize("make", [idempotent_line, rb_idempotent_line, twisted_plane])
def test_catalog_algebras_pass(make):
    assert check_algebra(make()).ok


def test_hom_assoc_failure_location():
    A = HomAlgebra.build(S2, ["e1", "e2"], mul={(0, 0): [0, 1], (0, 1): [1, 0]})
    rep = check_algebra(A)
    assert "hom-assoc" in rep.labels()
    first = [v for v in rep if v.label == "hom-assoc"][0]
    assert first.indices == ("e1", "e1", "e1")


def test_theta_P_commutation_failure():
    A = HomAlgebra.build(S2, ["e1", "e2"], theta={0: [0, 1], 1: [1, 0]},
                         P={"e": {0: [1, 0]}, "s": {0: [1, 0]}})
    assert "theta-P" in check_algebra(A).labels()


def test_random_dense_algebra_fails():
    rng = random.Random(7)
    vals = [-2, -1, 1, 2, 3]
    n = 2
    mul = {(i, j): [rng.choice(vals) for _ in range(n)] for i in range(n) for j in range(n)}
    P = {w: {j: [rng.choice(vals) for _ in range(n)] for j in range(n)} for w in ("e", "s")}
    A = HomAlgebra.build(S2, ["e1", "e2"], mul=mul, P=P)
    assert not check_algebra(A).ok


def test_report_is_sorted_and_printable():
    A = HomAlgebra.build(S2, ["e1", "e2"], mul={(0, 0): [0, 1], (0, 1): [1, 0]})
    rep = check_algebra(A)
    keys = [v.sort_key() for v in rep if v.label == "hom-assoc"]
    assert keys == sorted(keys)
    assert all(isinstance(s, str) and s for s in rep.lines())


def test_identity_morphism_and_doubling():
    R = idempotent_line()
    assert check_morphism(LinearMap.identity(1), R, R).ok
    rep = check_morphism(LinearMap(1, 1, ((Scalar(2),),)), R, R)
    assert "morph-mul" in rep.labels()


def test_morphism_shape_and_context_errors():
    R = idempotent_line()
    with pytest.raises(ShapeError):
        check_morphism(LinearMap.identity(2), R, R)
    R3 = HomAlgebra.build(FiniteSemigroup.trivial(), ["e1"], mul={(0, 0): [1]})
    with pytest.raises(SemigroupMismatchError):
        check_morphism(LinearMap.identity(1), R, R3)


def test_regular_bimodule():
    for A in (idempotent_line(), twisted_plane()):
        assert check_bimodule(Bimodule.regular(A)).ok


def test_broken_left_action():
    R = idempotent_line()
    M = Bimodule(R, ("x",), ((Scalar(1),),), tuple(((Scalar(0),),) for _ in S2.elements),
                 [[(Scalar(2),)]], [[(Scalar(0),)]])
    rep = check_bimodule(M)
    assert any(lab.startswith("left-module") for lab in rep.labels())


def test_subalgebras_of_twisted_plane():
    E = twisted_plane()
    assert check_subalgebra(E, [(1, 0)]).ok
    assert not check_subalgebra(E, [(0, 1)]).ok
    with pytest.raises(NotSubalgebraError):
        restrict(E, [(0, 1)])


def test_restrict_recovers_line():
    E = twisted_plane()
    sub = restrict(E, [(1, 0)], ["e1"])
    assert sub == idempotent_line()


def test_direct_product_passes():
    P = direct_product(twisted_plane(), rb_idempotent_line("x1"))
    assert check_algebra(P).ok
    assert P.dim == 3


def test_shape_validation():
    with pytest.raises(ShapeError):
        HomAlgebra(S2, ("e1",), (((Scalar(1), Scalar(0)),),), la.identity(1), (la.zeros(1, 1),) * 2)
    with pytest.raises(ShapeError):
        HomAlgebra(S2, ("e1", "e1"), [[[0, 0]] * 2] * 2, la.identity(2), (la.zeros(2, 2),) * 2)
