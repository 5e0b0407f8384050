import random
from fractions import Fraction

import pytest

from helpers import FIXTURES, random_datum, random_witness, transport, valid_datum
from rbhom import linalg as la
from rbhom.algebra import LinearMap, check_algebra, direct_product
from rbhom.catalog import idempotent_line, rb_idempotent_line, twisted_plane
from rbhom.errors import (
    BaseMismatchError,
    InvalidBaseError,
    InvalidDatumError,
    NotARetractionError,
    NotSubalgebraError,
    ShapeError,
)
from rbhom.extending import (
    EquivWitness,
    ExtendingDatum,
    build_unified_product,
    canonical_retraction,
    check_datum_equivalence,
    check_extending_structure,
    datum_to_extension,
    extension_to_datum,
)
from rbhom.fileformat import load, resolve
from rbhom.flag import flag_to_datum, instantiate_row, table2_row
from rbhom.matched import MatchedPair, to_datum
from rbhom.scalars import LAMBDA, Scalar

L = LAMBDA
HALF = Scalar(Fraction(1, 2))


def row_datum(row, **inst):
    flag, pairs = instantiate_row(table2_row(row), {k: Scalar(v) for k, v in inst.items()}, idempotent_line())
    return flag_to_datum(flag, "e2"), pairs


def direct_sum_datum():
    return to_datum(MatchedPair.trivial(idempotent_line(), rb_idempotent_line("e2")))


def test_direct_sum_datum_gives_direct_product():
    d = direct_sum_datum()
    assert check_extending_structure(d).ok
    assert datum_to_extension(d) == direct_product(idempotent_line(), rb_idempotent_line("e2"))


def test_row10_unified_product_entries():
    d, _ = row_datum("10", tr=3, k2=HALF)
    E = build_unified_product(d).algebra
    t, k2 = Scalar(3), HALF
    assert E.mu[1][0] == (t, Scalar(0))
    assert E.mu[0][1] == ((1 - k2) * t, k2)
    assert la.column(E.theta, 1) == ((1 - k2) * t, k2)
    assert check_algebra(E).ok


def test_empty_v_block_returns_base():
    R = twisted_plane()
    d = ExtendingDatum.zero(R, [])
    assert build_unified_product(d).algebra == R
    assert check_extending_structure(d).ok


@pytest.mark.parametrize("row", ["1", "2", "10", "14", "18"])
def test_table2_rows_pass(row):
    spec = table2_row(row)
    flag, _ = instantiate_row(spec, spec.random_instance(random.Random(row)), idempotent_line())
    assert check_extending_structure(flag_to_datum(flag, "e2")).ok


def test_perturbing_cocycle_hits_expected_labels():
    allowed = {"R5", "R7", "R9", "R11", "R12", "R15"}
    rng = random.Random(11)
    seen = 0
    for _ in range(40):
        d, _, _ = valid_datum(rng)
        p, q, i = rng.randrange(d.m), rng.randrange(d.m), rng.randrange(d.n)
        f = [[list(v) for v in row] for row in d.f]
        f[p][q][i] = f[p][q][i] + 1
        bad = d.replace(f=f)
        rep = check_extending_structure(bad)
        oracle = check_algebra(build_unified_product(bad).algebra)
        assert rep.ok == oracle.ok
        top = {lab.split("/")[0] for lab in rep.labels()}
        assert top <= allowed, top
        seen += not rep.ok
    assert seen > 0


def test_invalid_base_rejected():
    bad = idempotent_line().__class__.build(idempotent_line().semigroup, ["e1", "e2"],
                                            mul={(0, 0): [0, 1], (0, 1): [1, 0]})
    with pytest.raises(InvalidBaseError):
        check_extending_structure(ExtendingDatum.zero(bad, ["x"]))


def test_datum_shape_errors():
    R = idempotent_line()
    z = ExtendingDatum.zero(R, ["x"])
    with pytest.raises(ShapeError):
        z.replace(f=[[[1, 2]]])
    with pytest.raises(ShapeError):
        ExtendingDatum.zero(R, ["e1"])


def test_extension_to_datum_golden():
    E = twisted_plane()
    rho = LinearMap(2, 1, ((Scalar(1), Scalar(-3)),))
    d = extension_to_datum(E, rho, v_names=["v1"])
    golden = resolve(load(FIXTURES / "twisted_datum.dat"))["twisted"]
    assert d == golden


def test_direct_product_projection_has_zero_cross_maps():
    E = direct_product(idempotent_line(), rb_idempotent_line("e2"))
    d = extension_to_datum(E, canonical_retraction(2, 1))
    assert d == direct_sum_datum()


def test_flag_extension_recovers_flag_datum():
    d, _ = row_datum("1", tr=5, ke=2, ks=3, k2=7)
    E = datum_to_extension(d)
    assert extension_to_datum(E, canonical_retraction(2, 1)) == d


def test_extension_preconditions():
    E = twisted_plane()
    with pytest.raises(NotARetractionError):
        extension_to_datum(E, LinearMap(2, 1, ((Scalar(2), Scalar(0)),)))
    with pytest.raises(NotSubalgebraError):
        extension_to_datum(E, LinearMap(2, 1, ((Scalar(0), Scalar(1)),)), r_span=[(0, 1)])


def test_invalid_datum_has_no_extension():
    d, _ = row_datum("10", tr=3, k2=HALF)
    with pytest.raises(InvalidDatumError):
        datum_to_extension(d.replace(eta=((Scalar(0),),)))


def test_zero_product_datum_round_trip():
    d = ExtendingDatum.zero(idempotent_line(), ["e2"]).replace(
        P_V=(((-L,),), ((-L,),)), theta_V=((Scalar(1),),))
    assert check_extending_structure(d).ok
    E = datum_to_extension(d)
    assert extension_to_datum(E, canonical_retraction(2, 1)) == d


def test_reflexive_equivalence_is_cohomologous():
    d, _ = row_datum("10", tr=3, k2=HALF)
    rep = check_datum_equivalence(d, d, EquivWitness.identity(1, 1))
    assert rep.ok and "cohomologous" in rep.notes


def test_row2_witness_and_perturbation():
    tr, k1, k2 = Scalar(2), Scalar(3), Scalar(5)
    d, pairs = row_datum("2", tr=tr, k1=k1, k2=k2)
    w, cls = pairs[0]
    assert w == EquivWitness(((-tr / k1,),), ((1 / k1,),))
    d_cls = flag_to_datum(cls, "e2")
    rep = check_datum_equivalence(d_cls, d, w)
    assert rep.ok and "cohomologous" not in rep.notes
    bad = EquivWitness(((w.g[0][0] + 1,),), w.h)
    rep = check_datum_equivalence(d_cls, d, bad)
    assert rep.labels() & {"E2", "E4"}


def test_equivalence_preconditions():
    d, _ = row_datum("10", tr=3, k2=HALF)
    other = ExtendingDatum.zero(twisted_plane(), ["x"])
    with pytest.raises(BaseMismatchError):
        check_datum_equivalence(d, other, EquivWitness.identity(1, 1))
    with pytest.raises(ShapeError):
        check_datum_equivalence(d, d, EquivWitness.identity(1, 2))


def test_witness_composition():
    rng = random.Random(5)
    for _ in range(15):
        d, d1, w1 = valid_datum(rng)
        w2 = random_witness(rng, d.n, d.m)
        d2 = transport(d1, w2)
        # d2 -> d1 -> d
        assert check_datum_equivalence(d2, d, w2.then(w1)).ok
        assert check_datum_equivalence(d, d2, w2.then(w1).inverse()).ok


def test_oracle_agreement_sample():
    rng = random.Random(2024)
    for _ in range(60):
        d = random_datum(rng)
        assert check_extending_structure(d).ok == check_algebra(build_unified_product(d).algebra).ok
