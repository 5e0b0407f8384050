"""Deformation maps of an extending datum, complements, and 1-dimensional index counts.

A deformation map is a linear ``d: V -> R`` (an ``n x m`` matrix).  It deforms
the product of ``V`` to ``x .d y = x . y + d(x) |> y + x <| d(y)`` and
corresponds to the complement ``{x + d(x)}`` of ``R`` inside the unified
product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .algebra import (
    HomAlgebra,
    LinearMap,
    Report,
    _Collector,
    _as_matrix,
    add,
    check_morphism,
    check_subalgebra,
    restrict,
    sub,
)
from .errors import (
    BaseMismatchError,
    InternalConsistencyError,
    InvalidComplementError,
    InvalidDatumError,
    InvalidDeformationError,
    RankDeficiencyError,
    ShapeError,
    UnsupportedError,
)
from .extending import ExtendingDatum, UnifiedProduct, build_unified_product, check_extending_structure
from .polysolve import DPoly, Roots, common_roots, roots_upto2
from .scalars import ONE, ZERO, Scalar, to_scalar


@dataclass(frozen=True)
class DeformationMap:
    datum: ExtendingDatum
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "d", _as_matrix(self.d, self.datum.n, self.datum.m, "deformation map"))

    @classmethod
    def zero(cls, datum: ExtendingDatum) -> "DeformationMap":
        return cls(datum, la.zeros(datum.n, datum.m))

    def __call__(self, x):
        return la.mat_vec(self.d, x)


@dataclass(frozen=True)
class Complement:
    """A subspace of the host given by ``m`` coordinate vectors."""

    host: UnifiedProduct
    span: tuple

    def __post_init__(self):
        N = self.host.algebra.dim
        span = tuple(tuple(to_scalar(x) for x in v) for v in self.span)
        if any(len(v) != N for v in span):
            raise ShapeError(f"complement vectors must have length {N}")
        object.__setattr__(self, "span", span)


@dataclass(frozen=True)
class DeformEquivWitness:
    delta: tuple

    def __post_init__(self):
        D = tuple(tuple(to_scalar(x) for x in r) for r in self.delta)
        m = len(D)
        if any(len(r) != m for r in D):
            raise ShapeError("delta must be square")
        if not la.is_invertible(D):
            raise RankDeficiencyError("delta is not invertible")
        object.__setattr__(self, "delta", D)

    @classmethod
    def identity(cls, m: int) -> "DeformEquivWitness":
        return cls(la.identity(m))

    def inverse(self) -> "DeformEquivWitness":
        return DeformEquivWitness(la.inverse(self.delta))

    def then(self, other: "DeformEquivWitness") -> "DeformEquivWitness":
        return DeformEquivWitness(la.mat_mul(other.delta, self.delta))


# ---------------------------------------------------------------------------
# conditions (generic in the entry type so the solver can feed polynomials)


def _deformation_sides(dat: ExtendingDatum, dm):
    R, m = dat.base, dat.m
    D = lambda x: la.mat_vec(dm, x)
    X = [la.unit(m, p) for p in range(m)]
    dX = [D(x) for x in X]
    vb, sn = dat.vbasis, R.semigroup.elements
    for p in range(m):
        for q in range(m):
            lhs = sub(R.mul(dX[p], dX[q]), D(dat.mul_V[p][q]))
            inner = add(dat.lt(dX[p], X[q]), dat.rt(X[p], dX[q]))
            rhs = sub(sub(sub(D(inner), dat.hl(dX[p], X[q])), dat.hr(X[p], dX[q])), dat.f[p][q])
            yield "deform(1)", (vb[p], vb[q]), (p, q), lhs, rhs
    for w in range(len(sn)):
        for p in range(m):
            lhs = D(dat.pv(w, X[p]))
            rhs = add(dat.q(w, X[p]), R.Pw(w, dX[p]))
            yield "deform(2)", (sn[w], vb[p]), (w, p), lhs, rhs
    for p in range(m):
        yield "deform(3)", (vb[p],), (p,), D(dat.thv(X[p])), add(dat.et(X[p]), R.th(dX[p]))


def _require_datum(dat: ExtendingDatum):
    rep = check_extending_structure(dat)
    if not rep.ok:
        raise InvalidDatumError(f"datum violates {rep.violations[0]}")


def check_deformation(dm: DeformationMap) -> Report:
    _require_datum(dm.datum)
    col = _Collector()
    for label, names, order, lhs, rhs in _deformation_sides(dm.datum, dm.d):
        col.compare(label, names, order, lhs, rhs)
    return col.report()


def _deformed_mu(dat: ExtendingDatum, dm):
    m = dat.m
    X = [la.unit(m, p) for p in range(m)]
    dX = [la.mat_vec(dm, x) for x in X]
    return [[add(dat.mul_V[p][q], dat.lt(dX[p], X[q]), dat.rt(X[p], dX[q])) for q in range(m)]
            for p in range(m)]


def build_deformed(dm: DeformationMap) -> HomAlgebra:
    rep = check_deformation(dm)
    if not rep.ok:
        raise InvalidDeformationError(f"not a deformation map: {rep.violations[0]}")
    dat = dm.datum
    return HomAlgebra(dat.base.semigroup, dat.vbasis, _deformed_mu(dat, dm.d), dat.theta_V, dat.P_V,
                      dat.base.weight)


# ---------------------------------------------------------------------------
# complements


def _host_datum(host: UnifiedProduct) -> ExtendingDatum:
    if host.datum is not None:
        return host.datum
    from .extending import canonical_retraction, extension_to_datum
    return extension_to_datum(host.algebra, canonical_retraction(host.algebra.dim, host.split))


def complement_isomorphism(B: Complement, dm: DeformationMap) -> tuple[LinearMap, HomAlgebra]:
    """``x -> x + d(x)`` written in the coordinates of ``B.span``, with the restricted algebra."""
    E = B.host.algebra
    m = dm.datum.m
    target = restrict(E, B.span)
    cols = []
    for p in range(m):
        img = dm(la.unit(m, p)) + la.unit(m, p)
        c = la.coordinates(B.span, img)
        if c is None:
            raise InternalConsistencyError("x + d(x) does not lie in the complement")
        cols.append(c)
    return LinearMap(m, m, la.from_columns(cols, m)), target


def _validate_complement(B: Complement):
    host, span = B.host, list(B.span)
    E, n = host.algebra, host.split
    if len(span) != E.dim - n:
        raise InvalidComplementError(f"complement needs {E.dim - n} vectors, got {len(span)}")
    cols = host.r_span + span
    if la.rank(tuple(cols)) != E.dim:
        raise InvalidComplementError("span does not complement the R-block")
    rep = check_subalgebra(E, span)
    if not rep.ok:
        raise InvalidComplementError(f"span is not a subalgebra: {rep.violations[0]}")
    return cols


def complement_to_deformation(host: UnifiedProduct, B: Complement | tuple | list) -> DeformationMap:
    if not isinstance(B, Complement):
        B = Complement(host, B)
    elif B.host is not host and B.host != host:
        raise InvalidComplementError("complement belongs to a different host")
    cols = _validate_complement(B)
    dat = _host_datum(host)
    n, N = host.split, host.algebra.dim
    # coordinates in the adapted basis R + B; the R-part of x in V is the retraction along B
    Cinv = la.inverse(la.from_columns(cols, N))
    d = tuple(tuple(-Cinv[i][n + p] for p in range(N - n)) for i in range(n))
    dm = DeformationMap(dat, d)
    if not check_deformation(dm).ok:
        raise InternalConsistencyError("retraction along a complement produced an invalid deformation map")
    phi, target = complement_isomorphism(B, dm)
    if not check_morphism(phi, build_deformed(dm), target).ok or not la.is_invertible(phi.matrix):
        raise InternalConsistencyError("x -> x + d(x) is not an isomorphism onto the complement")
    return dm


def deformation_to_complement(dm: DeformationMap) -> Complement:
    rep = check_deformation(dm)
    if not rep.ok:
        raise InvalidDeformationError(f"not a deformation map: {rep.violations[0]}")
    host = build_unified_product(dm.datum)
    m = dm.datum.m
    span = tuple(dm(la.unit(m, p)) + la.unit(m, p) for p in range(m))
    B = Complement(host, span)
    _validate_complement(B)
    return B


# ---------------------------------------------------------------------------
# equivalence


def _equiv_sides(dat: ExtendingDatum, d1, d2, delta):
    m = dat.m
    R = dat.base
    Dl = lambda x: la.mat_vec(delta, x)
    X = [la.unit(m, p) for p in range(m)]
    dX = [Dl(x) for x in X]
    d1X = [la.mat_vec(d1, x) for x in X]
    D2 = lambda x: la.mat_vec(d2, x)
    vb, sn = dat.vbasis, R.semigroup.elements
    for p in range(m):
        for q in range(m):
            lhs = sub(Dl(dat.mul_V[p][q]), dat.vv(dX[p], dX[q]))
            rhs = add(dat.lt(D2(dX[p]), dX[q]), dat.rt(dX[p], D2(dX[q])))
            rhs = sub(sub(rhs, Dl(dat.lt(d1X[p], X[q]))), Dl(dat.rt(X[p], d1X[q])))
            yield "equiv(1)", (vb[p], vb[q]), (p, q), lhs, rhs
    for w in range(len(sn)):
        for p in range(m):
            yield "equiv(2)", (sn[w], vb[p]), (w, p), Dl(dat.pv(w, X[p])), dat.pv(w, dX[p])
    for p in range(m):
        yield "equiv(3)", (vb[p],), (p,), Dl(dat.thv(X[p])), dat.thv(dX[p])


def check_deformation_equiv(d1: DeformationMap, d2: DeformationMap, w: DeformEquivWitness) -> Report:
    """Conditions for ``delta`` to identify the deformations by ``d1`` and ``d2``.

    The result is cross-checked against ``delta`` being an algebra isomorphism
    between the two deformed algebras.
    """
    if d1.datum != d2.datum:
        raise BaseMismatchError("deformation maps live on different datums")
    if len(w.delta) != d1.datum.m:
        raise ShapeError(f"delta must be {d1.datum.m}x{d1.datum.m}")
    col = _Collector()
    for label, names, order, lhs, rhs in _equiv_sides(d1.datum, d1.d, d2.d, w.delta):
        col.compare(label, names, order, lhs, rhs)
    rep = col.report()
    m = d1.datum.m
    iso = check_morphism(LinearMap(m, m, w.delta), build_deformed(d1), build_deformed(d2))
    if iso.ok != rep.ok:
        raise InternalConsistencyError(
            f"equivalence conditions ({'pass' if rep.ok else 'fail'}) disagree with the "
            f"isomorphism test ({'pass' if iso.ok else 'fail'})")
    return rep


# ---------------------------------------------------------------------------
# one-dimensional solving


@dataclass(frozen=True)
class SolutionSet:
    """``kind`` is one of ``empty``, ``finite``, ``all`` or ``irrational``."""

    kind: str
    values: tuple = ()
    constraints: tuple = ()
    note: str = ""

    def __str__(self):
        if self.kind == "all":
            return "ALL"
        if self.kind == "irrational":
            return "irrational root, not representable"
        return "{" + ", ".join(str(v) for v in self.values) + "}"


@dataclass(frozen=True)
class IndexReport:
    count: int
    representatives: tuple
    classes: tuple
    solutions: SolutionSet
    notes: tuple = field(default=())

    def lines(self) -> list[str]:
        out = [f"solutions = {self.solutions}"]
        out += [f"class {k + 1}: {c}" for k, c in enumerate(self.classes)]
        out += list(self.notes)
        out.append(f"index = {self.count}")
        return out


def _one_dim(datum: ExtendingDatum):
    if datum.m != 1:
        raise UnsupportedError("deformation solving needs dim V = 1")
    if datum.n != 1:
        raise UnsupportedError("deformation solving is implemented for a 1-dimensional base")


def _constraints(sides) -> list[DPoly]:
    out = []
    for _label, _names, _order, lhs, rhs in sides:
        for a, b in zip(lhs, rhs):
            diff = DPoly._lift(a) - DPoly._lift(b)
            if diff:
                out.append(diff)
    return out


def deformation_constraints(datum: ExtendingDatum) -> list[DPoly]:
    """Nonzero polynomials in the unknown ``d`` whose common roots are the deformation maps."""
    _one_dim(datum)
    return _constraints(_deformation_sides(datum, ((DPoly.var(),),)))


def _to_solution(roots: Roots, constraints) -> SolutionSet:
    cs = tuple(constraints)
    if roots.kind == "all":
        return SolutionSet("all", (), cs)
    if roots.kind == "irrational":
        return SolutionSet("irrational", (), cs, roots.note)
    if not roots.values:
        return SolutionSet("empty", (), cs)
    return SolutionSet("finite", roots.values, cs)


def solve_deformation_1dim(datum: ExtendingDatum) -> SolutionSet:
    _require_datum(datum)
    cs = deformation_constraints(datum)
    return _to_solution(common_roots(cs), cs)


def equivalence_deltas(datum: ExtendingDatum, d1, d2) -> Roots:
    """Nonzero ``delta`` solving the witness equation from ``d1`` to ``d2`` (1-dim case).

    ``kind == "all"`` means every nonzero ``delta`` works.
    """
    _one_dim(datum)
    cs = _constraints(_equiv_sides(datum, ((to_scalar(d1),),), ((to_scalar(d2),),), ((DPoly.var(),),)))
    r = common_roots(cs)
    if r.kind == "finite":
        return Roots("finite", tuple(v for v in r.values if v))
    return r


def are_equivalent_1dim(datum: ExtendingDatum, d1, d2) -> Scalar | None:
    """A witness ``delta`` for ``d1 ~ d2``, or None."""
    r = equivalence_deltas(datum, d1, d2)
    if r.kind == "all":
        return ONE
    if r.kind == "finite" and r.values:
        return r.values[0]
    if r.kind == "irrational":
        raise UnsupportedError(f"witness equation has irrational roots: {r.note}")
    return None


def deformed_constant(datum: ExtendingDatum) -> DPoly:
    """Structure constant of the deformed 1-dim product as a polynomial in ``d``."""
    _one_dim(datum)
    return _deformed_mu(datum, ((DPoly.var(),),))[0][0][0]


def count_index_1dim(datum: ExtendingDatum) -> IndexReport:
    sol = solve_deformation_1dim(datum)
    if sol.kind == "irrational":
        raise UnsupportedError("index computation with irrational deformation maps is not supported")
    if sol.kind == "empty":
        return IndexReport(0, (), (), sol)
    if sol.kind == "finite":
        reps: list[Scalar] = []
        members: list[list[Scalar]] = []
        for v in sol.values:
            for k, r in enumerate(reps):
                if are_equivalent_1dim(datum, v, r) is not None:
                    members[k].append(v)
                    break
            else:
                reps.append(v)
                members.append([v])
        classes = tuple("{" + ", ".join(str(x) for x in ms) + "}" for ms in members)
        return IndexReport(len(reps), tuple(reps), classes, sol)
    return _index_all(datum, sol)


def _index_all(datum: ExtendingDatum, sol: SolutionSet) -> IndexReport:
    # every d is a deformation map; classes are cut out by vanishing of the deformed constant
    c = deformed_constant(datum)
    notes = [f"deformed product constant c(d) = {c.to_str('d')}"]
    if not c or c.degree == 0:
        rep = ZERO
        classes = ("K",)
        reps = (rep,)
    else:
        special = roots_upto2(c)
        generic = roots_upto2(c - ONE)
        if special.kind != "finite" or generic.kind != "finite" or not generic.values:
            raise UnsupportedError("cannot pick exact class representatives")
        zs = special.values
        reps = tuple(zs) + (generic.values[0],)
        zl = ", ".join(str(z) for z in zs)
        classes = tuple("{" + str(z) + "}" for z in zs) if c.degree == 1 else ("{" + zl + "}",)
        classes += ("K \\ {" + zl + "}",)
        if c.degree > 1:
            reps = (zs[0], generic.values[0])
        D = generic.values[0]
        notes.append(f"d ~ {D} via delta = c(d)/c({D}) = {(c * c(D).inverse('class ratio')).to_str('d')}")
    # the representatives must be pairwise inequivalent
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if are_equivalent_1dim(datum, reps[i], reps[j]) is not None:
                raise InternalConsistencyError(f"representatives {reps[i]} and {reps[j]} are equivalent")
    return IndexReport(len(reps), tuple(reps), tuple(classes), sol, tuple(notes))


__all__ = [
    "Complement", "DeformEquivWitness", "DeformationMap", "IndexReport", "SolutionSet",
    "are_equivalent_1dim", "build_deformed", "check_deformation", "check_deformation_equiv",
    "complement_isomorphism", "complement_to_deformation", "count_index_1dim", "deformation_constraints",
    "deformation_to_complement", "deformed_constant", "equivalence_deltas", "solve_deformation_1dim",
]
