"""Extending datums, unified products and equivalence witnesses.

Tensor layouts (``n = dim R``, ``m = dim V``; every entry is a coordinate
vector in the target space)::

    tri_l[i][p]   a_i |> v_p          in V
    tri_r[p][i]   v_p <| a_i          in V
    harp_r[p][i]  v_p -> a_i          in R   (right harpoon)
    harp_l[i][p]  a_i <- v_p          in R   (left harpoon)
    f[p][q]       cocycle f(v_p, v_q) in R
    mul_V[p][q]   v_p . v_q           in V

``Q[w]`` and ``eta`` are ``n x m`` matrices, ``P_V[w]`` and ``theta_V`` are
``m x m``.  The unified product lives on ``R + V`` with the R-basis first.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import (
    Bimodule,
    HomAlgebra,
    LinearMap,
    Report,
    Violation,
    _Collector,
    _as_matrix,
    _as_tensor,
    _pairs,
    add,
    bilinear,
    change_basis,
    check_algebra,
    check_bimodule,
    check_morphism,
    check_subalgebra,
    scale,
    zero_tensor,
)
from .errors import (
    BaseMismatchError,
    InternalConsistencyError,
    InvalidBaseError,
    InvalidDatumError,
    NotARetractionError,
    NotADirectSumError,
    NotSubalgebraError,
    ShapeError,
)
from .scalars import ONE, ZERO, to_scalar

DATUM_FIELDS = ("tri_l", "tri_r", "harp_r", "harp_l", "f", "mul_V", "Q", "P_V", "eta", "theta_V")


@dataclass(frozen=True)
class ExtendingDatum:
    base: HomAlgebra
    vbasis: tuple
    tri_l: tuple
    tri_r: tuple
    harp_r: tuple
    harp_l: tuple
    f: tuple
    mul_V: tuple
    Q: tuple
    P_V: tuple
    eta: tuple
    theta_V: tuple

    def __post_init__(self):
        n, m = self.base.dim, len(self.vbasis)
        k = len(self.base.semigroup)
        set_ = lambda name, v: object.__setattr__(self, name, v)
        set_("vbasis", tuple(self.vbasis))
        if len(set(self.vbasis)) != m:
            raise ShapeError("V basis names must be distinct")
        if set(self.vbasis) & set(self.base.basis):
            raise ShapeError("V basis names clash with the base basis")
        set_("tri_l", _as_tensor(self.tri_l, n, m, m, "tri_l"))
        set_("tri_r", _as_tensor(self.tri_r, m, n, m, "tri_r"))
        set_("harp_r", _as_tensor(self.harp_r, m, n, n, "harp_r"))
        set_("harp_l", _as_tensor(self.harp_l, n, m, n, "harp_l"))
        set_("f", _as_tensor(self.f, m, m, n, "f"))
        set_("mul_V", _as_tensor(self.mul_V, m, m, m, "mul_V"))
        if len(self.Q) != k or len(self.P_V) != k:
            raise ShapeError("Q and P_V must be given for every semigroup element")
        set_("Q", tuple(_as_matrix(M, n, m, "Q") for M in self.Q))
        set_("P_V", tuple(_as_matrix(M, m, m, "P_V") for M in self.P_V))
        set_("eta", _as_matrix(self.eta, n, m, "eta"))
        set_("theta_V", _as_matrix(self.theta_V, m, m, "theta_V"))

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def m(self) -> int:
        return len(self.vbasis)

    @classmethod
    def zero(cls, base: HomAlgebra, vbasis: Sequence[str]) -> "ExtendingDatum":
        """All ten maps zero."""
        n, m = base.dim, len(vbasis)
        k = len(base.semigroup)
        return cls(base, tuple(vbasis),
                   zero_tensor(n, m, m), zero_tensor(m, n, m), zero_tensor(m, n, n),
                   zero_tensor(n, m, n), zero_tensor(m, m, n), zero_tensor(m, m, m),
                   tuple(la.zeros(n, m) for _ in range(k)), tuple(la.zeros(m, m) for _ in range(k)),
                   la.zeros(n, m), la.zeros(m, m))

    def replace(self, **changes) -> "ExtendingDatum":
        return dataclasses.replace(self, **changes)

    def bimodule(self) -> Bimodule:
        return Bimodule(self.base, self.vbasis, self.theta_V, self.P_V, self.tri_l, self.tri_r)

    # -- evaluation on arbitrary coordinate vectors ----------------------

    def lt(self, a, x):
        return bilinear(self.tri_l, a, x, self.m)

    def rt(self, x, a):
        return bilinear(self.tri_r, x, a, self.m)

    def hr(self, x, a):
        return bilinear(self.harp_r, x, a, self.n)

    def hl(self, a, x):
        return bilinear(self.harp_l, a, x, self.n)

    def ff(self, x, y):
        return bilinear(self.f, x, y, self.n)

    def vv(self, x, y):
        return bilinear(self.mul_V, x, y, self.m)

    def q(self, w, x):
        return la.mat_vec(self.Q[w], x)

    def pv(self, w, x):
        return la.mat_vec(self.P_V[w], x)

    def et(self, x):
        return la.mat_vec(self.eta, x)

    def thv(self, x):
        return la.mat_vec(self.theta_V, x)


@dataclass(frozen=True)
class UnifiedProduct:
    algebra: HomAlgebra
    split: int
    datum: ExtendingDatum | None = None

    @property
    def r_span(self):
        return [la.unit(self.algebra.dim, i) for i in range(self.split)]

    @property
    def v_span(self):
        return [la.unit(self.algebra.dim, i) for i in range(self.split, self.algebra.dim)]


@dataclass(frozen=True)
class EquivWitness:
    """``phi(a, x) = (a + g(x), h(x))``; ``g`` is ``n x m``, ``h`` is ``m x m``."""

    g: tuple
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(tuple(to_scalar(x) for x in r) for r in self.g))
        object.__setattr__(self, "h", tuple(tuple(to_scalar(x) for x in r) for r in self.h))

    @classmethod
    def identity(cls, n: int, m: int) -> "EquivWitness":
        return cls(la.zeros(n, m), la.identity(m))

    def then(self, other: "EquivWitness") -> "EquivWitness":
        """Witness for the composite ``other . self``."""
        g = la.mat_add(self.g, la.mat_mul(other.g, self.h))
        return EquivWitness(g, la.mat_mul(other.h, self.h))

    def inverse(self) -> "EquivWitness":
        hi = la.inverse(self.h)
        g = tuple(tuple(-x for x in r) for r in la.mat_mul(self.g, hi))
        return EquivWitness(g, hi)

    def as_map(self, n: int) -> LinearMap:
        m = len(self.h)
        rows = [tuple(ONE if i == j else ZERO for j in range(n)) + self.g[i] for i in range(n)]
        rows += [(ZERO,) * n + self.h[p] for p in range(m)]
        return LinearMap(n + m, n + m, tuple(rows))


# ---------------------------------------------------------------------------


def build_unified_product(d: ExtendingDatum) -> UnifiedProduct:
    R, n, m = d.base, d.n, d.m
    N = n + m
    zR, zV = (ZERO,) * n, (ZERO,) * m
    mu = [[None] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mu[i][j] = R.mu[i][j] + zV
        for q in range(m):
            mu[i][n + q] = d.harp_l[i][q] + d.tri_l[i][q]
    for p in range(m):
        for j in range(n):
            mu[n + p][j] = d.harp_r[p][j] + d.tri_r[p][j]
        for q in range(m):
            mu[n + p][n + q] = d.f[p][q] + d.mul_V[p][q]

    def block(A, B, C):
        # [[A, B], [0, C]] with A: n x n, B: n x m, C: m x m
        return tuple(tuple(A[i]) + tuple(B[i]) for i in range(n)) + tuple(zR + tuple(C[p]) for p in range(m))

    theta = block(R.theta, d.eta, d.theta_V)
    P = tuple(block(R.P[w], d.Q[w], d.P_V[w]) for w in range(len(R.semigroup)))
    A = HomAlgebra(R.semigroup, R.basis + d.vbasis, mu, theta, P, R.weight)
    return UnifiedProduct(A, n, d)


def _base_ok(R: HomAlgebra):
    rep = check_algebra(R)
    if not rep.ok:
        raise InvalidBaseError(f"base algebra fails its axioms: {rep.violations[0]}")


def check_extending_structure(d: ExtendingDatum) -> Report:
    """Evaluate the seventeen compatibility conditions on basis tuples."""
    R, n, m = d.base, d.n, d.m
    _base_ok(R)
    S, lam = R.semigroup, R.weight
    col = _Collector()
    for v in check_bimodule(d.bimodule()):
        col.add(dataclasses.replace(v, label="R1/" + v.label))

    rb, vb, sn = R.basis, d.vbasis, S.elements
    A = [R.e(i) for i in range(n)]
    X = [la.unit(m, p) for p in range(m)]
    thA = [R.th(a) for a in A]
    thX = [d.thv(x) for x in X]
    etX = [d.et(x) for x in X]
    rm = R.mul
    c = col.compare

    for i in range(n):
        for j in range(n):
            ab = R.mu[i][j]
            for p in range(m):
                x = X[p]
                # (a, b, x)
                lhs = add(rm(ab, etX[p]), d.hl(ab, thX[p]))
                rhs = add(rm(thA[i], d.harp_l[j][p]), d.hl(thA[i], d.tri_l[j][p]))
                c("R2", (rb[i], rb[j], vb[p]), (i, j, p), lhs, rhs)
                # (x, a, b)
                lhs = add(rm(d.harp_r[p][i], thA[j]), d.hr(d.tri_r[p][i], thA[j]))
                rhs = add(rm(etX[p], ab), d.hr(thX[p], ab))
                c("R3", (vb[p], rb[i], rb[j]), (p, i, j), lhs, rhs)
                # (a, x, b)
                lhs = add(rm(d.harp_l[i][p], thA[j]), d.hr(d.tri_l[i][p], thA[j]))
                rhs = add(rm(thA[i], d.harp_r[p][j]), d.hl(thA[i], d.tri_r[p][j]))
                c("R4", (rb[i], vb[p], rb[j]), (i, p, j), lhs, rhs)

    for p in range(m):
        for q in range(m):
            xy_R, xy_V = d.f[p][q], d.mul_V[p][q]
            for i in range(n):
                a = A[i]
                # (x, y, a)
                ya_R, ya_V = d.harp_r[q][i], d.tri_r[q][i]
                lhs = add(rm(etX[p], ya_R), d.hl(etX[p], ya_V), d.hr(thX[p], ya_R), d.ff(thX[p], ya_V))
                rhs = add(rm(xy_R, thA[i]), d.hr(xy_V, thA[i]))
                c("R5", (vb[p], vb[q], rb[i]), (p, q, i), lhs, rhs)
                lhs = d.rt(xy_V, thA[i])
                rhs = add(d.lt(etX[p], ya_V), d.rt(thX[p], ya_R), d.vv(thX[p], ya_V))
                c("R6", (vb[p], vb[q], rb[i]), (p, q, i), lhs, rhs)
                # (a, x, y)
                ax_R, ax_V = d.harp_l[i][p], d.tri_l[i][p]
                lhs = add(rm(ax_R, etX[q]), d.hl(ax_R, thX[q]), d.hr(ax_V, etX[q]), d.ff(ax_V, thX[q]))
                rhs = add(rm(thA[i], xy_R), d.hl(thA[i], xy_V))
                c("R7", (rb[i], vb[p], vb[q]), (i, p, q), lhs, rhs)
                lhs = add(d.lt(ax_R, thX[q]), d.rt(ax_V, etX[q]), d.vv(ax_V, thX[q]))
                rhs = d.lt(thA[i], xy_V)
                c("R8", (rb[i], vb[p], vb[q]), (i, p, q), lhs, rhs)
                # (x, a, y)
                xa_R, xa_V = d.harp_r[p][i], d.tri_r[p][i]
                ay_R, ay_V = d.harp_l[i][q], d.tri_l[i][q]
                lhs = add(rm(xa_R, etX[q]), d.hl(xa_R, thX[q]), d.hr(xa_V, etX[q]), d.ff(xa_V, thX[q]))
                rhs = add(rm(etX[p], ay_R), d.hl(etX[p], ay_V), d.hr(thX[p], ay_R), d.ff(thX[p], ay_V))
                c("R9", (vb[p], rb[i], vb[q]), (p, i, q), lhs, rhs)
                lhs = add(d.lt(xa_R, thX[q]), d.rt(xa_V, etX[q]), d.vv(xa_V, thX[q]))
                rhs = add(d.lt(etX[p], ay_V), d.rt(thX[p], ay_R), d.vv(thX[p], ay_V))
                c("R10", (vb[p], rb[i], vb[q]), (p, i, q), lhs, rhs)
            for r in range(m):
                # (x, y, z)
                yz_R, yz_V = d.f[q][r], d.mul_V[q][r]
                lhs = add(rm(xy_R, etX[r]), d.hl(xy_R, thX[r]), d.hr(xy_V, etX[r]), d.ff(xy_V, thX[r]))
                rhs = add(rm(etX[p], yz_R), d.hl(etX[p], yz_V), d.hr(thX[p], yz_R), d.ff(thX[p], yz_V))
                c("R11", (vb[p], vb[q], vb[r]), (p, q, r), lhs, rhs)
                lhs = add(d.lt(xy_R, thX[r]), d.rt(xy_V, etX[r]), d.vv(xy_V, thX[r]))
                rhs = add(d.lt(etX[p], yz_V), d.rt(thX[p], yz_R), d.vv(thX[p], yz_V))
                c("R12", (vb[p], vb[q], vb[r]), (p, q, r), lhs, rhs)

    for al, be, ab in _pairs(S):
        for i in range(n):
            a = A[i]
            pa = R._P_cols[al][i]
            pb = R._P_cols[be][i]
            for p in range(m):
                x = X[p]
                # (a, x)
                qbx, pbx = d.q(be, x), d.pv(be, x)
                lhs = add(rm(pa, qbx), d.hl(pa, pbx))
                in_R = add(d.hl(pa, x), rm(a, qbx), d.hl(a, pbx), scale(lam, d.harp_l[i][p]))
                in_V = add(d.lt(pa, x), d.lt(a, pbx), scale(lam, d.tri_l[i][p]))
                rhs = add(R.Pw(ab, in_R), d.q(ab, in_V))
                c("R13", (sn[al], sn[be], rb[i], vb[p]), (al, be, i, p), lhs, rhs)
                # (x, a)
                qax, pax = d.q(al, x), d.pv(al, x)
                lhs = add(rm(qax, pb), d.hr(pax, pb))
                in_R = add(rm(qax, a), d.hr(pax, a), d.hr(x, pb), scale(lam, d.harp_r[p][i]))
                in_V = add(d.rt(pax, a), d.rt(x, pb), scale(lam, d.tri_r[p][i]))
                rhs = add(R.Pw(ab, in_R), d.q(ab, in_V))
                c("R14", (sn[al], sn[be], vb[p], rb[i]), (al, be, p, i), lhs, rhs)
        for p in range(m):
            x = X[p]
            qax, pax = d.q(al, x), d.pv(al, x)
            for q in range(m):
                y = X[q]
                qby, pby = d.q(be, y), d.pv(be, y)
                lhs = add(rm(qax, qby), d.hl(qax, pby), d.hr(pax, qby), d.ff(pax, pby))
                in_R = add(d.hl(qax, y), d.ff(pax, y), d.hr(x, qby), d.ff(x, pby), scale(lam, d.f[p][q]))
                in_V = add(d.lt(qax, y), d.vv(pax, y), d.rt(x, qby), d.vv(x, pby), scale(lam, d.mul_V[p][q]))
                rhs = add(R.Pw(ab, in_R), d.q(ab, in_V))
                c("R15", (sn[al], sn[be], vb[p], vb[q]), (al, be, p, q), lhs, rhs)
                lhs = add(d.lt(qax, pby), d.rt(pax, qby), d.vv(pax, pby))
                rhs = d.pv(ab, in_V)
                c("R16", (sn[al], sn[be], vb[p], vb[q]), (al, be, p, q), lhs, rhs)

    for w in range(len(S)):
        for p in range(m):
            x = X[p]
            lhs = add(R.th(d.q(w, x)), d.et(d.pv(w, x)))
            rhs = add(R.Pw(w, etX[p]), d.q(w, thX[p]))
            c("R17", (sn[w], vb[p]), (w, p), lhs, rhs)
    return col.report()


# ---------------------------------------------------------------------------
# extension <-> datum


def extension_to_datum(E: HomAlgebra, rho: LinearMap, r_span: Sequence | None = None,
                       v_basis: Sequence | None = None, r_names: Sequence[str] | None = None,
                       v_names: Sequence[str] | None = None) -> ExtendingDatum:
    """Datum of ``E`` relative to the retraction ``rho`` onto a subalgebra.

    ``r_span`` embeds the subalgebra (default: the first ``rho.target_dim``
    basis vectors of ``E``).  ``V`` is the kernel of ``rho``; its basis comes
    from row reduction unless ``v_basis`` is given.
    """
    N, n = E.dim, rho.target_dim
    if rho.source_dim != N:
        raise ShapeError(f"retraction must have {N} columns")
    if r_span is None:
        r_span = [la.unit(N, i) for i in range(n)]
    r_span = [tuple(to_scalar(x) for x in v) for v in r_span]
    if len(r_span) != n:
        raise ShapeError("r_span size must equal the retraction's target dimension")
    for k, v in enumerate(r_span):
        if rho(v) != la.unit(n, k):
            raise NotARetractionError(f"rho does not fix subalgebra basis vector {k + 1}")
    if not check_subalgebra(E, r_span).ok:
        raise NotSubalgebraError("the retraction's image is not a subalgebra")
    if v_basis is None:
        v_basis = la.kernel(rho.matrix, N)
    v_basis = [tuple(to_scalar(x) for x in v) for v in v_basis]
    if any(any(rho(v)) for v in v_basis):
        raise NotADirectSumError("V basis vectors must lie in the kernel of rho")
    cols = r_span + v_basis
    if len(cols) != N or la.rank(tuple(cols)) != N:
        raise NotADirectSumError("subalgebra and kernel do not span E")

    units = [la.unit(N, j) for j in range(N)]

    def names_for(vecs, prefix):
        # unit vectors keep the ambient basis names
        if all(v in units for v in vecs):
            return [E.basis[units.index(v)] for v in vecs]
        return [f"{prefix}{k + 1}" for k in range(len(vecs))]

    r_names = r_names or names_for(r_span, "r")
    v_names = v_names or names_for(v_basis, "v")
    F = change_basis(E, cols, list(r_names) + list(v_names))
    return _read_blocks(F, n)


def _read_blocks(F: HomAlgebra, n: int) -> ExtendingDatum:
    N = F.dim
    m = N - n
    rs, vs = slice(0, n), slice(n, N)
    mu = F.mu
    R = HomAlgebra(F.semigroup, F.basis[:n],
                   [[mu[i][j][rs] for j in range(n)] for i in range(n)],
                   tuple(r[rs] for r in F.theta[rs]),
                   tuple(tuple(r[rs] for r in M[rs]) for M in F.P), F.weight)
    for i in range(n):
        for j in range(n):
            if any(mu[i][j][vs]):
                raise NotSubalgebraError("leading block is not closed under multiplication")
    rng_n, rng_m = range(n), range(m)
    return ExtendingDatum(
        R, F.basis[n:],
        tri_l=[[mu[i][n + q][vs] for q in rng_m] for i in rng_n],
        tri_r=[[mu[n + p][j][vs] for j in rng_n] for p in rng_m],
        harp_r=[[mu[n + p][j][rs] for j in rng_n] for p in rng_m],
        harp_l=[[mu[i][n + q][rs] for q in rng_m] for i in rng_n],
        f=[[mu[n + p][n + q][rs] for q in rng_m] for p in rng_m],
        mul_V=[[mu[n + p][n + q][vs] for q in rng_m] for p in rng_m],
        Q=tuple(tuple(r[vs] for r in M[rs]) for M in F.P),
        P_V=tuple(tuple(r[vs] for r in M[vs]) for M in F.P),
        eta=tuple(r[vs] for r in F.theta[rs]),
        theta_V=tuple(r[vs] for r in F.theta[vs]),
    )


def canonical_retraction(N: int, n: int) -> LinearMap:
    return LinearMap(N, n, tuple(la.unit(N, i) for i in range(n)))


def datum_to_extension(d: ExtendingDatum) -> HomAlgebra:
    rep = check_extending_structure(d)
    if not rep.ok:
        raise InvalidDatumError(f"datum violates {rep.violations[0].label}: {rep.violations[0]}")
    return build_unified_product(d).algebra


# ---------------------------------------------------------------------------
# equivalence


def check_datum_equivalence(d1: ExtendingDatum, d2: ExtendingDatum, w: EquivWitness) -> Report:
    """Conditions for ``phi(a, x) = (a + g(x), h(x))`` to identify the two products."""
    if d1.base != d2.base:
        raise BaseMismatchError("datums are over different base algebras")
    if d1.m != d2.m:
        raise BaseMismatchError("datums have different V dimensions")
    R, n, m = d1.base, d1.n, d1.m
    if la.shape(w.g) != (n, m) or la.shape(w.h) != (m, m):
        raise ShapeError(f"witness must have g: {n}x{m}, h: {m}x{m}")
    S = R.semigroup
    G = lambda x: la.mat_vec(w.g, x)
    H = lambda x: la.mat_vec(w.h, x)
    rb, vb, sn = R.basis, d1.vbasis, S.elements
    A = [R.e(i) for i in range(n)]
    X = [la.unit(m, p) for p in range(m)]
    gX = [G(x) for x in X]
    hX = [H(x) for x in X]
    col = _Collector()
    c = col.compare

    # h as a bimodule morphism
    for i in range(n):
        for p in range(m):
            c("E1", ("left", rb[i], vb[p]), (0, i, p), H(d1.tri_l[i][p]), d2.lt(A[i], hX[p]))
            c("E1", ("right", vb[p], rb[i]), (1, p, i), H(d1.tri_r[p][i]), d2.rt(hX[p], A[i]))
    for k in range(len(S)):
        for p in range(m):
            c("E1", ("P", sn[k], vb[p]), (2, k, p), H(d1.pv(k, X[p])), d2.pv(k, hX[p]))
    for p in range(m):
        c("E1", ("theta", vb[p]), (3, p), H(d1.thv(X[p])), d2.thv(hX[p]))

    for i in range(n):
        for p in range(m):
            lhs = add(d1.harp_l[i][p], G(d1.tri_l[i][p]))
            rhs = add(R.mul(A[i], gX[p]), d2.hl(A[i], hX[p]))
            c("E2", (rb[i], vb[p]), (i, p), lhs, rhs)
            lhs = add(d1.harp_r[p][i], G(d1.tri_r[p][i]))
            rhs = add(R.mul(gX[p], A[i]), d2.hr(hX[p], A[i]))
            c("E3", (vb[p], rb[i]), (p, i), lhs, rhs)
    for p in range(m):
        for q in range(m):
            lhs = add(d1.f[p][q], G(d1.mul_V[p][q]))
            rhs = add(R.mul(gX[p], gX[q]), d2.hl(gX[p], hX[q]), d2.hr(hX[p], gX[q]), d2.ff(hX[p], hX[q]))
            c("E4", (vb[p], vb[q]), (p, q), lhs, rhs)
            lhs = H(d1.mul_V[p][q])
            rhs = add(d2.lt(gX[p], hX[q]), d2.rt(hX[p], gX[q]), d2.vv(hX[p], hX[q]))
            c("E5", (vb[p], vb[q]), (p, q), lhs, rhs)
    for k in range(len(S)):
        for p in range(m):
            lhs = add(d1.q(k, X[p]), G(d1.pv(k, X[p])))
            rhs = add(R.Pw(k, gX[p]), d2.q(k, hX[p]))
            c("E6", (sn[k], vb[p]), (k, p), lhs, rhs)
    for p in range(m):
        lhs = add(d1.et(X[p]), G(d1.thv(X[p])))
        rhs = add(R.th(gX[p]), d2.et(hX[p]))
        c("E7", (vb[p],), (p,), lhs, rhs)
    rep = col.report()

    morph = check_morphism(w.as_map(n), build_unified_product(d1).algebra, build_unified_product(d2).algebra)
    if morph.ok != rep.ok:
        raise InternalConsistencyError(
            f"equivalence conditions ({'pass' if rep.ok else 'fail'}) disagree with the "
            f"morphism test ({'pass' if morph.ok else 'fail'})")
    if not la.is_invertible(w.h):
        rep.violations.append(Violation("h-invertible", ("h",), f"rank<{m}", f"rank={m}"))
    if rep.ok and w.h == la.identity(m):
        rep.notes.append("cohomologous")
    return rep


__all__ = [
    "DATUM_FIELDS", "EquivWitness", "ExtendingDatum", "UnifiedProduct", "build_unified_product",
    "canonical_retraction", "check_datum_equivalence", "check_extending_structure",
    "datum_to_extension", "extension_to_datum",
]
