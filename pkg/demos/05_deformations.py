"""Deformation maps and the index of a one-dimensional extension."""

from fractions import Fraction

from rbhom import DeformationMap, Scalar, build_deformed, count_index_1dim, deformation_to_complement
from rbhom.catalog import idempotent_line
from rbhom.flag import flag_to_datum, instantiate_row, table2_row
from rbhom.linalg import vec_str


def datum(k2, tr=3):
    F, _ = instantiate_row(table2_row("10"), {"tr": Scalar(tr), "k2": Scalar(k2)}, idempotent_line())
    return flag_to_datum(F, "e2")


for k2 in (Fraction(1, 2), 1):
    d = datum(k2)
    rep = count_index_1dim(d)
    print(f"k2 = {k2}")
    for line in rep.lines():
        print("  ", line)

d = datum(Fraction(1, 2))
dm = DeformationMap(d, ((Scalar(-3),),))
print("\ncomplement for d = -3: span", vec_str(deformation_to_complement(dm).span[0]))
print("deformed product e2 *_d e2 =", vec_str(build_deformed(dm).mu[0][0]))
