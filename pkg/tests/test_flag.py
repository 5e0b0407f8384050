import random
from fractions import Fraction

import pytest

from helpers import L
from rbhom.catalog import idempotent_line, twisted_plane
from rbhom.errors import ConstraintError, GridTooLargeError, ShapeError, UnsupportedError
from rbhom.extending import (
    EquivWitness,
    ExtendingDatum,
    build_unified_product,
    check_datum_equivalence,
    check_extending_structure,
)
from rbhom.flag import (
    FlagDatum,
    check_flag,
    datum_to_flag,
    enumerate_flags,
    flag_to_datum,
    instantiate_row,
    table2_row,
    table2_rows,
    verify_table2_row,
)
from rbhom.scalars import Scalar

R = idempotent_line()

F_TO_R = {"F1": "R1/left-module(1)", "F2": "R1/right-module(1)", "F3": "R1/bimodule(compat)",
          "F4": "R1/left-module(2)", "F5": "R1/right-module(2)"}
F_TO_R.update({f"F{k}": f"R{k - 4}" for k in range(6, 22)})


def flag(*args):
    l, r, t_r, t_l, a1, k1, b, k, a2, k2 = args
    return FlagDatum.scalars(R, l, r, t_r, t_l, a1, k1, b, k, a2, k2)


def inst(**kw):
    return {k: Scalar(v) for k, v in kw.items()}


def test_row1_instance_passes():
    F = flag(0, 0, 5, 5, 25, 0, (-10, -10), (2, 2), -30, 7)
    assert check_flag(F).ok


def test_row1_table_instance_and_class():
    spec = table2_row("1")
    F, pairs = instantiate_row(spec, inst(tr=5, ke=2, ks=3, k2=7), R)
    assert check_flag(F).ok
    (w, cls), = pairs
    assert cls.as_tuple() == (0, 0, 0, 0, 0, 0, (0, 0), (2, 3), 0, 7)
    assert w == EquivWitness(((-5,),), ((1,),))
    assert verify_table2_row(spec, inst(tr=5, ke=2, ks=3, k2=7)).ok


def test_row14_flag_and_witness():
    spec = table2_row("14")
    F, pairs = instantiate_row(spec, inst(k1=4), R)
    assert F.as_tuple() == (1, 1, 0, 0, -4, 4, (0, 0), (0, 0), 0, 1)
    assert check_flag(F).ok
    (w, cls), = pairs
    assert w == EquivWitness(((-2,),), ((1,),))
    assert cls.as_tuple() == (1, 1, 0, 0, 0, 0, (0, 0), (0, 0), 0, 1)
    assert check_datum_equivalence(flag_to_datum(cls, "e2"), flag_to_datum(F, "e2"), w).ok


def test_row15_square_root_witness():
    spec = table2_row("15")
    F, pairs = instantiate_row(spec, inst(q=3, k1=2), R)
    w, cls = pairs[0]
    assert F.a1 == (Scalar(9) - 1,)
    assert w == EquivWitness(((Scalar(Fraction(-1, 3)),),), ((Scalar(Fraction(1, 3)),),))
    assert cls.as_tuple() == (1, 1, 0, 0, 1, 0, (0, 0), (0, 0), 0, 1)
    assert verify_table2_row(spec, inst(q=3, k1=2)).ok


def test_row2_broken_a1():
    F, _ = instantiate_row(table2_row("2"), inst(tr=2, k1=3, k2=5), R)
    bad = FlagDatum(F.base, F.l, F.r, F.t_r, F.t_l, (F.a1[0] + 1,), F.k1, F.b, F.kfam, F.a2, F.k2)
    assert check_flag(bad).labels() & {"F9", "F11"}


def test_zero_flag_passes():
    assert check_flag(flag(0, 0, 0, 0, 0, 0, (0, 0), (0, 0), 0, 0)).ok


def test_zero_flag_gives_zero_cross_maps():
    d = flag_to_datum(flag(0, 0, 0, 0, 0, 0, (0, 0), (0, 0), 0, 0))
    assert all(not x for t in (d.tri_l, d.tri_r, d.harp_r, d.harp_l, d.f) for a in t for v in a for x in v)


def test_row10_flag_extension_entry():
    F, _ = instantiate_row(table2_row("10"), inst(tr=3, k2=Fraction(1, 2)), R)
    E = build_unified_product(flag_to_datum(F, "e2")).algebra
    assert E.mu[0][1] == (Scalar(Fraction(3, 2)), Scalar(Fraction(1, 2)))


@pytest.mark.parametrize("spec", table2_rows(), ids=lambda s: s.row_id)
def test_every_row_verifies(spec):
    rep = verify_table2_row(spec, spec.random_instance(random.Random(f"unit:{spec.row_id}")))
    assert rep.ok, rep.lines()[:5]


def test_row18_note_recorded():
    rep = verify_table2_row(table2_row("18"), inst(a2=2, a0=3))
    assert rep.ok
    assert any("a0" in n for n in rep.notes)


def test_constraint_violation_rejected():
    with pytest.raises(ConstraintError):
        verify_table2_row(table2_row("2"), inst(tr=1, k1=0, k2=1))
    with pytest.raises(ConstraintError):
        verify_table2_row(table2_row("2"), inst(tr=1))


def test_unknown_row():
    with pytest.raises(KeyError):
        table2_row("99")


def test_grid_examples():
    assert enumerate_flags(R, {"l": []}) == []
    pts = enumerate_flags(R, {"k2": [0, 1]})
    assert [F.k2 for F in pts] == [0, 1]


def test_grid_errors():
    with pytest.raises(ShapeError):
        enumerate_flags(R, {"nope": [0]})
    with pytest.raises(GridTooLargeError):
        enumerate_flags(R, {f: range(8) for f in ("l", "r", "t_r", "t_l", "a1", "k1", "a2")})
    with pytest.raises(UnsupportedError):
        enumerate_flags(twisted_plane(), {})


def test_phi_round_trip_and_label_correspondence():
    rng = random.Random(99)
    vals = (0, 0, 0, 1, -1, 2, L, -L)
    passing = 0
    for k in range(200):
        if k % 2:
            F = flag(*[rng.choice(vals) for _ in range(6)], [rng.choice(vals) for _ in range(2)],
                     [rng.choice(vals) for _ in range(2)], rng.choice(vals), rng.choice(vals))
        else:
            spec = rng.choice(table2_rows())
            F, _ = instantiate_row(spec, spec.random_instance(rng), R)
            if k % 4:
                t = list(F.as_tuple())
                j = rng.choice((0, 1, 2, 3, 4, 5, 8, 9))
                t[j] = t[j] + rng.choice(vals[3:])
                F = flag(*t)
        d = flag_to_datum(F)
        assert datum_to_flag(d) == F
        fl, rl = check_flag(F).labels(), check_extending_structure(d).labels()
        assert {F_TO_R[x] for x in fl} == rl
        passing += not fl
    assert 40 <= passing < 200


def test_datum_to_flag_needs_one_dim():
    with pytest.raises(ShapeError):
        datum_to_flag(ExtendingDatum.zero(R, ["x", "y"]))


def test_flag_str():
    assert str(flag(0, 0, 0, 0, 0, 1, (0, 0), (0, 0), 0, 1)) == "(0,0,0,0,0,1,(0,0),(0,0),0,1)"
