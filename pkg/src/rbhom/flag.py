"""Flag datums: extending data through a one-dimensional space.

A flag datum over ``R`` (dim ``n``) is stored as

* ``l``, ``r``: functionals, rows of length ``n``
* ``t_r``, ``t_l``: ``n x n`` matrices
* ``a1``, ``a2``: vectors of ``R``; ``b[w]`` one vector per semigroup element
* ``k1``, ``k2``: scalars; ``kfam[w]`` one scalar per semigroup element
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from . import linalg as la
from .algebra import HomAlgebra, Report, Violation, _Collector, _pairs, add, check_algebra, scale
from .errors import ConstraintError, GridTooLargeError, InvalidBaseError, ShapeError, UnsupportedError
from .extending import EquivWitness, ExtendingDatum, check_datum_equivalence
from .scalars import ZERO, Scalar, parse_scalar, to_scalar


@dataclass(frozen=True)
class FlagDatum:
    base: HomAlgebra
    l: tuple
    r: tuple
    t_r: tuple
    t_l: tuple
    a1: tuple
    k1: Scalar
    b: tuple
    kfam: tuple
    a2: tuple
    k2: Scalar

    def __post_init__(self):
        n, k = self.base.dim, len(self.base.semigroup)
        vec = lambda v, what: _vec(v, n, what)
        s = lambda name, v: object.__setattr__(self, name, v)
        s("l", vec(self.l, "l"))
        s("r", vec(self.r, "r"))
        s("t_r", tuple(vec(row, "t_r") for row in self.t_r))
        s("t_l", tuple(vec(row, "t_l") for row in self.t_l))
        if len(self.t_r) != n or len(self.t_l) != n:
            raise ShapeError(f"t_r and t_l must be {n}x{n}")
        s("a1", vec(self.a1, "a1"))
        s("a2", vec(self.a2, "a2"))
        if len(self.b) != k or len(self.kfam) != k:
            raise ShapeError("b and kfam need one entry per semigroup element")
        s("b", tuple(vec(v, "b") for v in self.b))
        s("kfam", tuple(to_scalar(x) for x in self.kfam))
        s("k1", to_scalar(self.k1))
        s("k2", to_scalar(self.k2))

    @classmethod
    def scalars(cls, base: HomAlgebra, l, r, t_r, t_l, a1, k1, b, kfam, a2, k2) -> "FlagDatum":
        """Flag datum over a one-dimensional base from its scalar coordinates."""
        if base.dim != 1:
            raise ShapeError("scalar form requires a one-dimensional base")
        return cls(base, (l,), (r,), ((t_r,),), ((t_l,),), (a1,), k1, tuple((x,) for x in b),
                   tuple(kfam), (a2,), k2)

    def as_tuple(self) -> tuple:
        """``(l, r, t_r, t_l, a1, k1, b, kfam, a2, k2)`` for a one-dimensional base."""
        if self.base.dim != 1:
            raise ShapeError("scalar form requires a one-dimensional base")
        return (self.l[0], self.r[0], self.t_r[0][0], self.t_l[0][0], self.a1[0], self.k1,
                tuple(v[0] for v in self.b), self.kfam, self.a2[0], self.k2)

    def __str__(self):
        if self.base.dim == 1:
            t = self.as_tuple()
            pair = lambda p: "(" + ",".join(str(x) for x in p) + ")"
            return "(" + ",".join(pair(x) if isinstance(x, tuple) else str(x) for x in t) + ")"
        return repr(self)


def _vec(v, n, what):
    v = tuple(to_scalar(x) for x in v)
    if len(v) != n:
        raise ShapeError(f"{what} must have length {n}")
    return v


def _dot(row, v) -> Scalar:
    acc = ZERO
    for a, x in zip(row, v):
        if a and x:
            acc = acc + a * x
    return acc


def check_flag(F: FlagDatum) -> Report:
    """The twenty-one flag conditions, evaluated on basis elements of ``R``."""
    R = F.base
    rep = check_algebra(R)
    if not rep.ok:
        raise InvalidBaseError(f"base algebra fails its axioms: {rep.violations[0]}")
    n, S, lam = R.dim, R.semigroup, R.weight
    k1, k2, a1, a2 = F.k1, F.k2, F.a1, F.a2
    L = lambda v: _dot(F.l, v)
    Rf = lambda v: _dot(F.r, v)
    tr = lambda v: la.mat_vec(F.t_r, v)
    tl = lambda v: la.mat_vec(F.t_l, v)
    m = R.mul
    A = [R.e(i) for i in range(n)]
    thA = [R.th(a) for a in A]
    B, sn = R.basis, S.elements
    col = _Collector()

    def c(label, names, order, lhs, rhs):
        if not isinstance(lhs, tuple):
            lhs, rhs = (lhs,), (rhs,)
        col.compare(label, names, order, lhs, rhs)

    for i in range(n):
        a, ta = A[i], thA[i]
        for j in range(n):
            b, tb = A[j], thA[j]
            ab = R.mu[i][j]
            c("F1", (B[i], B[j]), (i, j), L(ab) * k2, L(ta) * L(b))
            c("F2", (B[i], B[j]), (i, j), Rf(a) * Rf(tb), Rf(ab) * k2)
            c("F3", (B[i], B[j]), (i, j), L(a) * Rf(tb), L(ta) * Rf(b))
            c("F6", (B[i], B[j]), (i, j), add(m(ab, a2), scale(k2, tl(ab))),
              add(m(ta, tl(b)), scale(L(b), tl(ta))))
            c("F7", (B[i], B[j]), (i, j), add(m(tr(a), tb), scale(Rf(a), tr(tb))),
              add(m(a2, ab), scale(k2, tr(ab))))
            c("F8", (B[i], B[j]), (i, j), add(m(tl(a), tb), scale(L(a), tr(tb))),
              add(m(ta, tr(b)), scale(Rf(b), tl(ta))))

    for al, be, ab_ in _pairs(S):
        ka, kb, kab = F.kfam[al], F.kfam[be], F.kfam[ab_]
        ba, bb, bab = F.b[al], F.b[be], F.b[ab_]
        Pab = lambda v: R.Pw(ab_, v)
        for i in range(n):
            a = A[i]
            pa, pb = R.Pw(al, a), R.Pw(be, a)
            c("F4", (sn[al], sn[be], B[i]), (al, be, i), L(pa) * kb, kab * (L(pa) + L(a) * kb + lam * L(a)))
            c("F5", (sn[al], sn[be], B[i]), (al, be, i), ka * Rf(pb), kab * (ka * Rf(a) + Rf(pb) + lam * Rf(a)))
            lhs = add(m(pa, bb), scale(kb, tl(pa)))
            rhs = add(Pab(add(tl(pa), m(a, bb), scale(kb, tl(a)), scale(lam, tl(a)))),
                      scale(L(pa) + L(a) * kb + lam * L(a), bab))
            c("F17", (sn[al], sn[be], B[i]), (al, be, i), lhs, rhs)
            lhs = add(m(ba, pb), scale(ka, tr(pb)))
            rhs = add(Pab(add(m(ba, a), scale(ka, tr(a)), tr(pb), scale(lam, tr(a)))),
                      scale(ka * Rf(a) + Rf(pb) + lam * Rf(a), bab))
            c("F18", (sn[al], sn[be], B[i]), (al, be, i), lhs, rhs)
        lhs = add(m(ba, bb), scale(kb, tl(ba)), scale(ka, tr(bb)), scale(ka * kb, a1))
        rhs = add(Pab(add(tl(ba), scale(ka, a1), tr(bb), scale(kb, a1), scale(lam, a1))),
                  scale(L(ba) + ka * k1 + Rf(bb) + k1 * kb + lam * k1, bab))
        c("F19", (sn[al], sn[be]), (al, be), lhs, rhs)
        c("F20", (sn[al], sn[be]), (al, be), L(ba) * kb + ka * Rf(bb) + k1 * ka * kb,
          kab * (L(ba) + k1 * ka + Rf(bb) + k1 * kb + lam * k1))

    for i in range(n):
        a, ta = A[i], thA[i]
        c("F9", (B[i],), (i,), add(m(a1, ta), scale(k1, tr(ta))),
          add(m(a2, tr(a)), scale(Rf(a), tl(a2)), scale(k2, tr(tr(a))), scale(k2 * Rf(a), a1)))
        c("F10", (B[i],), (i,), k1 * Rf(ta), L(a2) * Rf(a) + k2 * Rf(tr(a)) + k1 * k2 * Rf(a))
        c("F11", (B[i],), (i,), add(m(tl(a), a2), scale(k2, tl(tl(a))), scale(L(a), tr(a2)), scale(L(a) * k2, a1)),
          add(m(ta, a1), scale(k1, tl(ta))))
        c("F12", (B[i],), (i,), L(tl(a)) * k2 + L(a) * Rf(a2) + L(a) * k1 * k2, L(ta) * k1)
        c("F13", (B[i],), (i,),
          add(m(tr(a), a2), scale(k2, tl(tr(a))), scale(Rf(a), tr(a2)), scale(Rf(a) * k2, a1)),
          add(m(a2, tl(a)), scale(L(a), tl(a2)), scale(k2, tr(tl(a))), scale(k2 * L(a), a1)))
        c("F14", (B[i],), (i,), L(tr(a)) * k2 + Rf(a) * Rf(a2) + Rf(a) * k1 * k2,
          L(a2) * L(a) + k2 * Rf(tl(a)) + k2 * k1 * L(a))

    c("F15", (), (), add(m(a1, a2), scale(k2, tl(a1)), scale(k1, tr(a2))),
      add(m(a2, a1), scale(k1, tl(a2)), scale(k2, tr(a1))))
    c("F16", (), (), L(a1) * k2 + k1 * Rf(a2), L(a2) * k1 + k2 * Rf(a1))
    for w in range(len(S)):
        c("F21", (sn[w],), (w,), add(R.th(F.b[w]), scale(F.kfam[w], a2)),
          add(R.Pw(w, a2), scale(k2, F.b[w])))
    return col.report()


def flag_to_datum(F: FlagDatum, vname: str = "x") -> ExtendingDatum:
    R = F.base
    n = R.dim
    cols = lambda M: [tuple(M[r][i] for r in range(n)) for i in range(n)]
    return ExtendingDatum(
        R, (vname,),
        tri_l=[[(F.l[i],)] for i in range(n)],
        tri_r=[[(F.r[i],) for i in range(n)]],
        harp_r=[cols(F.t_r)],
        harp_l=[[v] for v in cols(F.t_l)],
        f=[[F.a1]],
        mul_V=[[(F.k1,)]],
        Q=tuple(tuple((x,) for x in b) for b in F.b),
        P_V=tuple((((k,),)) for k in F.kfam),
        eta=tuple((x,) for x in F.a2),
        theta_V=((F.k2,),),
    )


def datum_to_flag(d: ExtendingDatum) -> FlagDatum:
    if d.m != 1:
        raise ShapeError(f"flag datums need a one-dimensional V, got {d.m}")
    n = d.n
    return FlagDatum(
        d.base,
        l=tuple(d.tri_l[i][0][0] for i in range(n)),
        r=tuple(d.tri_r[0][i][0] for i in range(n)),
        t_r=la.from_columns([d.harp_r[0][i] for i in range(n)], n),
        t_l=la.from_columns([d.harp_l[i][0] for i in range(n)], n),
        a1=d.f[0][0],
        k1=d.mul_V[0][0][0],
        b=tuple(tuple(r[0] for r in Q) for Q in d.Q),
        kfam=tuple(P[0][0] for P in d.P_V),
        a2=tuple(r[0] for r in d.eta),
        k2=d.theta_V[0][0],
    )


# ---------------------------------------------------------------------------
# the classification table


INSTANCE_VALUES = tuple(Fraction(x) for x in (1, -1, 2, -2, 3, -3, 5, -5)) + (Fraction(1, 2), Fraction(1, 3))


@dataclass(frozen=True)
class FlagRowSpec:
    row_id: str
    params: tuple
    constraints: tuple
    flag: tuple
    witnesses: tuple  # of (h, g, class) formula triples
    derived: tuple = ()  # (name, formula) pairs evaluated before the flag
    note: str | None = None

    def check_constraints(self, inst: Mapping[str, Scalar]):
        missing = [p for p in self.params if p not in inst]
        if missing:
            raise ConstraintError(f"row {self.row_id}: missing parameter(s) {', '.join(missing)}")
        for con in self.constraints:
            name, value = (s.strip() for s in con.split("!="))
            if to_scalar(inst[name]) == parse_scalar(value):
                raise ConstraintError(f"row {self.row_id}: constraint {con} violated")

    def environment(self, inst: Mapping[str, Scalar]) -> dict:
        env = {k: to_scalar(v) for k, v in inst.items()}
        for name, formula in self.derived:
            env[name] = parse_scalar(formula, env)
        return env

    def random_instance(self, rng: random.Random) -> dict:
        while True:
            inst = {p: Scalar(rng.choice(INSTANCE_VALUES)) for p in self.params}
            try:
                self.check_constraints(inst)
            except ConstraintError:
                continue
            return inst


def _flag_from_formulas(base: HomAlgebra, parts, env) -> FlagDatum:
    ev = lambda s: parse_scalar(s, env)
    l, r, t_r, t_l, a1, k1, b, k, a2, k2 = parts
    return FlagDatum.scalars(base, ev(l), ev(r), ev(t_r), ev(t_l), ev(a1), ev(k1),
                             [ev(x) for x in b], [ev(x) for x in k], ev(a2), ev(k2))


@lru_cache(maxsize=1)
def table2_rows() -> tuple:
    raw = json.loads(resources.files("rbhom").joinpath("data/table2.json").read_text())
    rows = []
    for r in raw["rows"]:
        rows.append(FlagRowSpec(
            row_id=r["id"], params=tuple(r["params"]), constraints=tuple(r["constraints"]),
            flag=tuple(tuple(x) if isinstance(x, list) else x for x in r["flag"]),
            witnesses=tuple((w["h"], w["g"], tuple(tuple(x) if isinstance(x, list) else x for x in w["class"]))
                            for w in r["witnesses"]),
            derived=tuple(r.get("derived", {}).items()), note=r.get("note")))
    return tuple(rows)


def table2_row(row_id: str) -> FlagRowSpec:
    for r in table2_rows():
        if r.row_id == str(row_id):
            return r
    raise KeyError(f"unknown row id {row_id!r}; known: {', '.join(r.row_id for r in table2_rows())}")


def instantiate_row(spec: FlagRowSpec, inst: Mapping[str, Scalar], base: HomAlgebra):
    """Instantiated flag datum and ``(witness, class datum)`` pairs."""
    spec.check_constraints(inst)
    env = spec.environment(inst)
    flag = _flag_from_formulas(base, spec.flag, env)
    out = []
    for h, g, cls in spec.witnesses:
        w = EquivWitness(((parse_scalar(g, env),),), ((parse_scalar(h, env),),))
        out.append((w, _flag_from_formulas(base, cls, env)))
    return flag, out


def _tag(rep: Report, prefix: str) -> list:
    return [Violation(f"{prefix}/{v.label}", v.indices, v.lhs, v.rhs, v.order) for v in rep]


def verify_table2_row(spec: FlagRowSpec, inst: Mapping[str, Scalar], base: HomAlgebra | None = None,
                      vname: str = "e2") -> Report:
    """Check a row's flag datum and each listed witness.

    The witness ``(g, h)`` is applied from the class representative to the
    row's flag datum; the inverse witness is checked in the other direction.
    """
    from .catalog import idempotent_line
    base = base or idempotent_line()
    flag, pairs = instantiate_row(spec, inst, base)
    rep = Report()
    rep.violations += _tag(check_flag(flag), "flag")
    d_flag = flag_to_datum(flag, vname)
    for k, (w, cls) in enumerate(pairs, 1):
        rep.violations += _tag(check_flag(cls), f"class{k}")
        d_cls = flag_to_datum(cls, vname)
        rep.violations += _tag(check_datum_equivalence(d_cls, d_flag, w), f"witness{k}")
        rep.violations += _tag(check_datum_equivalence(d_flag, d_cls, w.inverse()), f"inverse{k}")
    if spec.note:
        rep.notes.append(f"row {spec.row_id}: {spec.note}")
    return rep


# ---------------------------------------------------------------------------
# grid search


GRID_CAP = 10 ** 6


def grid_fields(S_elements: Sequence[str]) -> list[str]:
    return (["l", "r", "t_r", "t_l", "a1", "k1"] + [f"b_{w}" for w in S_elements]
            + [f"k_{w}" for w in S_elements] + ["a2", "k2"])


def enumerate_flags(base: HomAlgebra, grid: Mapping[str, Sequence]) -> list[FlagDatum]:
    """Grid points (lexicographic in field order) whose flag datum passes.

    Fields not in ``grid`` are fixed at 0.  An empty value set anywhere makes
    the grid empty.
    """
    if base.dim != 1:
        raise UnsupportedError("grid enumeration is implemented for one-dimensional bases")
    names = grid_fields(base.semigroup.elements)
    unknown = set(grid) - set(names)
    if unknown:
        raise ShapeError(f"unknown grid field(s): {', '.join(sorted(unknown))}")
    axes = [tuple(to_scalar(v) for v in grid.get(f, (ZERO,))) for f in names]
    size = 1
    for ax in axes:
        size *= len(ax)
    if size > GRID_CAP:
        raise GridTooLargeError(f"grid has {size} points, cap is {GRID_CAP}")
    k = len(base.semigroup)
    out = []
    for point in itertools.product(*axes):
        l, r, t_r, t_l, a1, k1 = point[:6]
        b, kf = point[6:6 + k], point[6 + k:6 + 2 * k]
        a2, k2 = point[6 + 2 * k:]
        F = FlagDatum.scalars(base, l, r, t_r, t_l, a1, k1, b, kf, a2, k2)
        if check_flag(F).ok:
            out.append(F)
    return out


__all__ = [
    "FlagDatum", "FlagRowSpec", "check_flag", "datum_to_flag", "enumerate_flags", "flag_to_datum",
    "grid_fields", "instantiate_row", "table2_row", "table2_rows", "verify_table2_row",
]
