from fractions import Fraction

import pytest

from helpers import table3_pair
from rbhom.algebra import HomAlgebra, check_algebra
from rbhom.catalog import S2, idempotent_line, twisted_plane
from rbhom.deformation import (
    Complement,
    DeformationMap,
    DeformEquivWitness,
    are_equivalent_1dim,
    build_deformed,
    check_deformation,
    check_deformation_equiv,
    complement_to_deformation,
    count_index_1dim,
    deformation_to_complement,
    deformed_constant,
    solve_deformation_1dim,
)
from rbhom.errors import (
    BaseMismatchError,
    InvalidComplementError,
    InvalidDatumError,
    InvalidDeformationError,
    RankDeficiencyError,
    ShapeError,
    UnsupportedError,
)
from rbhom.extending import ExtendingDatum, build_unified_product
from rbhom.flag import flag_to_datum, instantiate_row, table2_row
from rbhom.matched import MatchedPair, to_datum
from rbhom.scalars import Scalar

HALF = Scalar(Fraction(1, 2))


def row10(k2, tr=3):
    F, _ = instantiate_row(table2_row("10"), {"tr": Scalar(tr), "k2": Scalar(k2)}, idempotent_line())
    return flag_to_datum(F, "e2")


def dmap(datum, value):
    return DeformationMap(datum, ((Scalar(value),),))


def zero_pair_datum():
    return to_datum(MatchedPair.trivial(idempotent_line(), HomAlgebra.build(S2, ["e2"])))


def test_zero_map_on_matched_pair_datum():
    d = to_datum(table3_pair(1, 1, 0, 0))
    dm = DeformationMap.zero(d)
    assert check_deformation(dm).ok
    assert build_deformed(dm) == table3_pair(1, 1, 0, 0).V


def test_row10_half_minus_three_passes_zero_fails():
    d = row10(HALF)
    assert check_deformation(dmap(d, -3)).ok
    labels = check_deformation(dmap(d, 0)).labels()
    assert "deform(1)" in labels


def test_row10_k2_one_every_rational_passes():
    d = row10(1)
    for v in range(-5, 6):
        assert check_deformation(dmap(d, v)).ok
    assert check_deformation(dmap(d, Fraction(7, 3))).ok


def test_deformed_product_row10():
    d = row10(HALF)
    A = build_deformed(dmap(d, -3))
    # x._d x = k1 + d (l + r) with k1 = k2 tr, l = k2, r = 0
    assert A.mu[0][0] == (Scalar(Fraction(3, 2)) + Scalar(-3) * HALF,)
    assert check_algebra(A).ok


def test_invalid_deformation_rejected():
    with pytest.raises(InvalidDeformationError):
        build_deformed(dmap(row10(HALF), 0))
    with pytest.raises(InvalidDeformationError):
        deformation_to_complement(dmap(row10(HALF), 0))


def test_invalid_datum_rejected():
    d = row10(HALF)
    with pytest.raises(InvalidDatumError):
        check_deformation(dmap(d.replace(eta=((Scalar(5),),)), 0))


def test_map_shape():
    with pytest.raises(ShapeError):
        DeformationMap(row10(HALF), ((1, 2),))


def test_complement_correspondence_row10():
    d = row10(HALF)
    host = build_unified_product(d)
    dm = complement_to_deformation(host, [(-3, 1)])
    assert dm.d == ((Scalar(-3),),)
    assert deformation_to_complement(dm).span == ((Scalar(-3), Scalar(1)),)


def test_v_block_complement_gives_zero():
    d = to_datum(table3_pair(0, 1, 0, 1))
    host = build_unified_product(d)
    assert complement_to_deformation(host, Complement(host, [(0, 1)])) == DeformationMap.zero(d)
    assert deformation_to_complement(DeformationMap.zero(d)).span == ((Scalar(0), Scalar(1)),)


def test_bad_complements():
    host = build_unified_product(row10(HALF))
    with pytest.raises(InvalidComplementError):
        complement_to_deformation(host, [(1, 0)])
    with pytest.raises(InvalidComplementError):
        complement_to_deformation(host, [(0, 1)])
    with pytest.raises(InvalidComplementError):
        complement_to_deformation(host, [(0, 1), (1, 0)])


def test_equivalence_identity_and_table_witness():
    d = row10(1)
    assert check_deformation_equiv(dmap(d, 2), dmap(d, 2), DeformEquivWitness.identity(1)).ok
    assert check_deformation_equiv(dmap(d, 2), dmap(d, -2), DeformEquivWitness(((5,),))).ok
    assert not check_deformation_equiv(dmap(d, 2), dmap(d, -2), DeformEquivWitness(((4,),))).ok


def test_minus_tr_not_equivalent_to_zero():
    d = row10(1)
    for delta in [v for v in range(-6, 7) if v]:
        assert not check_deformation_equiv(dmap(d, -3), dmap(d, 0), DeformEquivWitness(((delta,),))).ok
    assert are_equivalent_1dim(d, -3, 0) is None


def test_witness_algebra():
    w = DeformEquivWitness(((5,),))
    assert w.then(w.inverse()) == DeformEquivWitness.identity(1)
    with pytest.raises(RankDeficiencyError):
        DeformEquivWitness(((0,),))


def test_equivalence_preconditions():
    a, b = row10(1), row10(HALF)
    with pytest.raises(BaseMismatchError):
        check_deformation_equiv(dmap(a, 0), dmap(b, -3), DeformEquivWitness.identity(1))
    with pytest.raises(ShapeError):
        check_deformation_equiv(dmap(a, 0), dmap(a, 1), DeformEquivWitness.identity(2))


def test_solution_sets():
    sol = solve_deformation_1dim(row10(HALF))
    assert sol.kind == "finite" and sol.values == (Scalar(-3),)
    assert str(sol) == "{-3}"
    assert str(solve_deformation_1dim(row10(1))) == "ALL"


def test_index_half():
    rep = count_index_1dim(row10(HALF))
    assert rep.count == 1
    assert rep.representatives == (Scalar(-3),)
    assert rep.lines()[-1] == "index = 1"


def test_index_k2_one():
    d = row10(1)
    rep = count_index_1dim(d)
    assert rep.count == 2
    assert rep.representatives == (Scalar(-3), Scalar(-2))
    assert str(deformed_constant(d).to_str("d")) == "d+3"
    assert rep.lines()[-1] == "index = 2"


def test_matched_pair_datum_index():
    d = zero_pair_datum()
    sol = solve_deformation_1dim(d)
    assert sol.kind == "finite" and sol.values == (Scalar(0),)
    assert count_index_1dim(d).count == 1


def test_solver_dimension_limit():
    d = to_datum(MatchedPair.trivial(twisted_plane(), HomAlgebra.build(S2, ["x"])))
    with pytest.raises(UnsupportedError):
        solve_deformation_1dim(d)
    with pytest.raises(UnsupportedError):
        count_index_1dim(ExtendingDatum.zero(idempotent_line(), ["x", "y"]))
