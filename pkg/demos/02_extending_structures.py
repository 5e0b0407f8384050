"""From an extension to its datum and back, plus an equivalence witness."""

from rbhom import (
    EquivWitness,
    LinearMap,
    Scalar,
    build_unified_product,
    check_datum_equivalence,
    check_extending_structure,
    extension_to_datum,
)
from rbhom.catalog import twisted_plane
from rbhom.linalg import vec_str

E = twisted_plane()
rho = LinearMap(2, 1, ((Scalar(1), Scalar(-3)),))  # retraction with kernel spanned by 3 e1 + e2
d = extension_to_datum(E, rho, v_names=["v1"])
print("e1 > v1 =", vec_str(d.tri_l[0][0]), " theta_V(v1) =", vec_str(d.theta_V[0]))
print("datum conditions:", "ok" if check_extending_structure(d).ok else "violated")

P = build_unified_product(d).algebra
print("unified product basis:", P.basis)
print("v1 * v1 =", vec_str(P.mu[1][1]))

# the same extension seen through the plain basis {e1, e2}
d2 = extension_to_datum(E, LinearMap(2, 1, ((Scalar(1), Scalar(0)),)), v_names=["v1"])
w = EquivWitness(((Scalar(3),),), ((Scalar(1),),))
rep = check_datum_equivalence(d, d2, w)
print("witness g=3, h=1 identifies the two datums:", rep.ok, rep.notes)
