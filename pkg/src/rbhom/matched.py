"""Matched pairs, bicrossed products and factorizations."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .algebra import (
    Bimodule,
    HomAlgebra,
    LinearMap,
    Report,
    Violation,
    _Collector,
    _as_tensor,
    add,
    bilinear,
    check_algebra,
    check_bimodule,
    check_subalgebra,
)
from .errors import (
    InternalConsistencyError,
    InvalidBaseError,
    InvalidPairError,
    NotADirectSumError,
    SemigroupMismatchError,
)
from .extending import ExtendingDatum, build_unified_product, extension_to_datum
from .scalars import to_scalar


@dataclass(frozen=True)
class MatchedPair:
    """Actions between two algebras, same tensor layouts as :class:`ExtendingDatum`."""

    R: HomAlgebra
    V: HomAlgebra
    tri_l: tuple
    tri_r: tuple
    harp_r: tuple
    harp_l: tuple

    def __post_init__(self):
        n, m = self.R.dim, self.V.dim
        if self.R.semigroup != self.V.semigroup:
            raise SemigroupMismatchError("matched algebras must share the semigroup")
        if self.R.weight != self.V.weight:
            raise SemigroupMismatchError("matched algebras must share the weight")
        s = lambda k, v: object.__setattr__(self, k, v)
        s("tri_l", _as_tensor(self.tri_l, n, m, m, "tri_l"))
        s("tri_r", _as_tensor(self.tri_r, m, n, m, "tri_r"))
        s("harp_r", _as_tensor(self.harp_r, m, n, n, "harp_r"))
        s("harp_l", _as_tensor(self.harp_l, n, m, n, "harp_l"))

    @classmethod
    def trivial(cls, R: HomAlgebra, V: HomAlgebra) -> "MatchedPair":
        d = ExtendingDatum.zero(R, V.basis)
        return cls(R, V, d.tri_l, d.tri_r, d.harp_r, d.harp_l)

    def left_bimodule(self) -> Bimodule:
        """``V`` as an ``R``-bimodule."""
        return Bimodule(self.R, self.V.basis, self.V.theta, self.V.P, self.tri_l, self.tri_r)

    def right_bimodule(self) -> Bimodule:
        """``R`` as a ``V``-bimodule (harpoons as actions)."""
        return Bimodule(self.V, self.R.basis, self.R.theta, self.R.P, self.harp_r, self.harp_l)


def _prefixed(rep: Report, prefix: str):
    return [Violation(f"{prefix}/{v.label}", v.indices, v.lhs, v.rhs, v.order) for v in rep]


def check_matched_pair(mp: MatchedPair) -> Report:
    R, V = mp.R, mp.V
    for name, A in (("R", R), ("V", V)):
        rep = check_algebra(A)
        if not rep.ok:
            raise InvalidBaseError(f"{name} fails its axioms: {rep.violations[0]}")
    n, m = R.dim, V.dim
    lt = lambda a, x: bilinear(mp.tri_l, a, x, m)
    rt = lambda x, a: bilinear(mp.tri_r, x, a, m)
    hr = lambda x, a: bilinear(mp.harp_r, x, a, n)
    hl = lambda a, x: bilinear(mp.harp_l, a, x, n)
    rm, vm = R.mul, V.mul
    A = [R.e(i) for i in range(n)]
    X = [V.e(p) for p in range(m)]
    thA = [R.th(a) for a in A]
    thX = [V.th(x) for x in X]
    rb, vb = R.basis, V.basis

    col = _Collector()
    for v in _prefixed(check_bimodule(mp.left_bimodule()), "M1"):
        col.add(v)
    for v in _prefixed(check_bimodule(mp.right_bimodule()), "M2"):
        col.add(v)
    c = col.compare
    for i in range(n):
        for j in range(n):
            ab = R.mu[i][j]
            for p in range(m):
                c("M3", (rb[i], rb[j], vb[p]), (i, j, p), hl(ab, thX[p]),
                  add(rm(thA[i], mp.harp_l[j][p]), hl(thA[i], mp.tri_l[j][p])))
                c("M4", (vb[p], rb[i], rb[j]), (p, i, j),
                  add(rm(mp.harp_r[p][i], thA[j]), hr(mp.tri_r[p][i], thA[j])), hr(thX[p], ab))
                c("M5", (rb[i], vb[p], rb[j]), (i, p, j),
                  add(rm(mp.harp_l[i][p], thA[j]), hr(mp.tri_l[i][p], thA[j])),
                  add(rm(thA[i], mp.harp_r[p][j]), hl(thA[i], mp.tri_r[p][j])))
    for p in range(m):
        for q in range(m):
            xy = V.mu[p][q]
            for i in range(n):
                c("M6", (vb[p], vb[q], rb[i]), (p, q, i), rt(xy, thA[i]),
                  add(rt(thX[p], mp.harp_r[q][i]), vm(thX[p], mp.tri_r[q][i])))
                c("M7", (rb[i], vb[p], vb[q]), (i, p, q),
                  add(lt(mp.harp_l[i][p], thX[q]), vm(mp.tri_l[i][p], thX[q])), lt(thA[i], xy))
                c("M8", (vb[p], rb[i], vb[q]), (p, i, q),
                  add(lt(mp.harp_r[p][i], thX[q]), vm(mp.tri_r[p][i], thX[q])),
                  add(rt(thX[p], mp.harp_l[i][q]), vm(thX[p], mp.tri_l[i][q])))
    return col.report()


def to_datum(mp: MatchedPair) -> ExtendingDatum:
    """Zero extension: ``f``, ``Q`` and ``eta`` vanish, ``V`` keeps its own structure."""
    z = ExtendingDatum.zero(mp.R, mp.V.basis)
    return z.replace(tri_l=mp.tri_l, tri_r=mp.tri_r, harp_r=mp.harp_r, harp_l=mp.harp_l,
                     mul_V=mp.V.mu, P_V=mp.V.P, theta_V=mp.V.theta)


def build_bicrossed(mp: MatchedPair) -> HomAlgebra:
    rep = check_matched_pair(mp)
    if not rep.ok:
        raise InvalidPairError(f"not a matched pair: {rep.violations[0]}")
    return build_unified_product(to_datum(mp)).algebra


class FactorizationReport(Report):
    """Report plus the induced matched pair when both blocks are subalgebras."""

    def __init__(self, violations=(), notes=(), pair: MatchedPair | None = None):
        super().__init__(violations, notes)
        self.pair = pair


def check_factorization(E: HomAlgebra, r_span, v_span) -> FactorizationReport:
    r_span = [tuple(to_scalar(x) for x in v) for v in r_span]
    v_span = [tuple(to_scalar(x) for x in v) for v in v_span]
    cols = r_span + v_span
    if len(cols) != E.dim or la.rank(tuple(cols)) != E.dim:
        raise NotADirectSumError("the two spans do not form a direct sum decomposition")
    viol = _prefixed(check_subalgebra(E, r_span), "R-block") + _prefixed(check_subalgebra(E, v_span), "V-block")
    rep = FactorizationReport(viol)
    if viol:
        return rep
    n = len(r_span)
    # retraction along V: first n coordinates in the adapted basis
    Cinv = la.inverse(la.from_columns(cols, E.dim))
    rho = LinearMap(E.dim, n, Cinv[:n])
    d = extension_to_datum(E, rho, r_span, v_span)
    if any(any(v) for row in d.f for v in row) or any(any(r) for M in d.Q for r in M) or any(any(r) for r in d.eta):
        raise InternalConsistencyError("factorizing extension produced a nonzero cocycle, Q or eta block")
    V = HomAlgebra(d.base.semigroup, d.vbasis, d.mul_V, d.theta_V, d.P_V, d.base.weight)
    rep.pair = MatchedPair(d.base, V, d.tri_l, d.tri_r, d.harp_r, d.harp_l)
    return rep


__all__ = ["FactorizationReport", "MatchedPair", "build_bicrossed", "check_factorization",
           "check_matched_pair", "to_datum"]
