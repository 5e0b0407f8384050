"""Finite semigroups, Rota-Baxter family Hom-associative algebras, modules.

Conventions used throughout the package:

* ``mu[i][j]`` is the coordinate vector of ``x_i * x_j``.
* Matrices act on column vectors: column ``j`` of ``theta`` is ``theta(x_j)``.
* Operator families are tuples indexed by the position of the semigroup element.

All checkers evaluate identities on basis tuples only (every identity involved
is multilinear) and return a :class:`Report`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .errors import (
    NotSubalgebraError,
    RankDeficiencyError,
    SemigroupMismatchError,
    ShapeError,
)
from .scalars import LAMBDA, ZERO, Scalar, to_scalar

# ---------------------------------------------------------------------------
# reports


def _natural_key(label: str):
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in re.split(r"(\d+)", label) if p)


def _fmt(side) -> str:
    if isinstance(side, tuple):
        return la.vec_str(side)
    return str(side)


@dataclass(frozen=True)
class Violation:
    label: str
    indices: tuple
    lhs: object
    rhs: object
    order: tuple = field(default=(), compare=False, repr=False)

    def __str__(self):
        return f"{self.label} @ ({','.join(str(i) for i in self.indices)}) lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"

    def sort_key(self):
        return (_natural_key(self.label), self.order)


class Report:
    """Ordered list of violations plus free-form notes."""

    def __init__(self, violations: Iterable[Violation] = (), notes: Iterable[str] = ()):
        self.violations: list[Violation] = list(violations)
        self.notes: list[str] = list(notes)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def labels(self) -> set[str]:
        return {v.label for v in self.violations}

    def extend(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        return self

    def sorted(self) -> "Report":
        return Report(sorted(self.violations, key=Violation.sort_key), self.notes)

    def lines(self) -> list[str]:
        return [str(v) for v in self.violations]

    def __str__(self):
        return "\n".join(self.lines())

    def __repr__(self):
        return f"Report({len(self.violations)} violations)"


class _Collector:
    """Accumulates violations for one checker; sorted on completion."""

    def __init__(self):
        self.items: list[Violation] = []

    def compare(self, label, names, order, lhs, rhs):
        if lhs != rhs:
            self.items.append(Violation(label, tuple(names), lhs, rhs, tuple(order)))

    def add(self, v: Violation):
        self.items.append(v)

    def report(self) -> Report:
        return Report(sorted(self.items, key=Violation.sort_key))


# ---------------------------------------------------------------------------
# tensor helpers


def bilinear(T, u, v, out_dim: int):
    """Apply a bilinear map given by ``T[i][j]`` (output vectors) to ``u, v``."""
    acc = [ZERO] * out_dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        Ti = T[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            t = Ti[j]
            c = None
            for k, tk in enumerate(t):
                if tk:
                    if c is None:
                        c = ui * vj
                    acc[k] = acc[k] + c * tk
    return tuple(acc)


def add(*vs):
    out = vs[0]
    for v in vs[1:]:
        out = tuple(a + b for a, b in zip(out, v))
    return out


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    if not c:
        return (ZERO,) * len(v)
    return tuple(c * x for x in v)


def zero_tensor(a: int, b: int, c: int):
    z = (ZERO,) * c
    return tuple(tuple(z for _ in range(b)) for _ in range(a))


def _as_matrix(M, rows: int, cols: int, what: str):
    M = tuple(tuple(to_scalar(x) for x in r) for r in M)
    if len(M) != rows or any(len(r) != cols for r in M):
        raise ShapeError(f"{what} must be {rows}x{cols}")
    return M


def _as_tensor(T, a: int, b: int, c: int, what: str):
    T = tuple(tuple(tuple(to_scalar(x) for x in v) for v in row) for row in T)
    if len(T) != a or any(len(r) != b for r in T) or any(len(v) != c for r in T for v in r):
        raise ShapeError(f"{what} must have shape {a}x{b}x{c}")
    return T


# ---------------------------------------------------------------------------
# semigroups


@dataclass(frozen=True)
class FiniteSemigroup:
    elements: tuple
    table: tuple  # table[i][j] = index of elements[i]*elements[j], or None if missing

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        if len(set(self.elements)) != len(self.elements):
            raise ShapeError("semigroup elements must be distinct")
        n = len(self.elements)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ShapeError(f"semigroup table must be {n}x{n}")

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, name: str) -> int:
        return self.elements.index(name)

    @classmethod
    def from_products(cls, elements: Sequence[str], products: dict) -> "FiniteSemigroup":
        """``products`` maps ``(a, b)`` name pairs to names; missing pairs stay undefined."""
        idx = {e: k for k, e in enumerate(elements)}
        table = [[None] * len(elements) for _ in elements]
        for (a, b), c in products.items():
            table[idx[a]][idx[b]] = idx.get(c, c)
        return cls(tuple(elements), tuple(tuple(r) for r in table))

    @classmethod
    def z2(cls) -> "FiniteSemigroup":
        """``{e, s}`` with ``e`` a unit and ``s*s = e``."""
        return cls(("e", "s"), ((0, 1), (1, 0)))

    @classmethod
    def trivial(cls) -> "FiniteSemigroup":
        return cls(("e",), ((0,),))


def semigroup_validate(S: FiniteSemigroup) -> Report:
    col = _Collector()
    n = len(S)
    names = S.elements
    bad = set()
    for i in range(n):
        for j in range(n):
            k = S.table[i][j]
            if not isinstance(k, int) or not 0 <= k < n:
                bad.add((i, j))
                col.compare("closure", (names[i], names[j]), (i, j), "undefined" if k is None else str(k), "element")
    for i in range(n):
        for j in range(n):
            if (i, j) in bad:
                continue
            ij = S.table[i][j]
            for k in range(n):
                if (ij, k) in bad or (j, k) in bad or (i, S.table[j][k]) in bad:
                    continue
                lhs, rhs = S.table[ij][k], S.table[i][S.table[j][k]]
                col.compare("assoc", (names[i], names[j], names[k]), (i, j, k), names[lhs], names[rhs])
    return col.report()


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class HomAlgebra:
    semigroup: FiniteSemigroup
    basis: tuple
    mu: tuple
    theta: tuple
    P: tuple
    weight: Scalar = LAMBDA

    def __post_init__(self):
        n = len(self.basis)
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != n:
            raise ShapeError("basis names must be distinct")
        object.__setattr__(self, "mu", _as_tensor(self.mu, n, n, n, "mu"))
        object.__setattr__(self, "theta", _as_matrix(self.theta, n, n, "theta"))
        if len(self.P) != len(self.semigroup):
            raise ShapeError("P must be given for every semigroup element")
        object.__setattr__(self, "P", tuple(_as_matrix(M, n, n, f"P[{w}]")
                                            for M, w in zip(self.P, self.semigroup.elements)))
        object.__setattr__(self, "weight", to_scalar(self.weight))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _theta_cols(self):
        return tuple(la.column(self.theta, j) for j in range(self.dim))

    @cached_property
    def _P_cols(self):
        return tuple(tuple(la.column(M, j) for j in range(self.dim)) for M in self.P)

    def mul(self, u, v):
        return bilinear(self.mu, u, v, self.dim)

    def th(self, v):
        return la.mat_vec(self.theta, v)

    def Pw(self, w: int, v):
        return la.mat_vec(self.P[w], v)

    def e(self, i: int):
        return la.unit(self.dim, i)

    @classmethod
    def build(cls, semigroup: FiniteSemigroup, basis: Sequence[str], mul: dict | None = None,
              theta: dict | None = None, P: dict | None = None, weight=LAMBDA) -> "HomAlgebra":
        """Sparse constructor.

        ``mul`` maps ``(i, j)`` index pairs to coordinate vectors; ``theta`` maps
        ``j`` to the image vector (identity when omitted); ``P`` maps semigroup
        element names to ``{j: vector}`` dicts.
        """
        n = len(basis)
        mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in (mul or {}).items():
            mu[i][j] = [to_scalar(x) for x in vec]
        if theta is None:
            th = la.identity(n)
        else:
            cols = [list(la.unit(n, j)) if j not in theta else [to_scalar(x) for x in theta[j]]
                    for j in range(n)]
            th = la.from_columns(cols, n)
        Ps = []
        for w in semigroup.elements:
            spec = (P or {}).get(w, {})
            cols = [[to_scalar(x) for x in spec[j]] if j in spec else [ZERO] * n for j in range(n)]
            Ps.append(la.from_columns(cols, n))
        return cls(semigroup, tuple(basis), mu, th, tuple(Ps), to_scalar(weight))


@dataclass(frozen=True)
class LinearMap:
    source_dim: int
    target_dim: int
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_matrix(self.matrix, self.target_dim, self.source_dim, "matrix"))

    def __call__(self, v):
        return la.mat_vec(self.matrix, v)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, la.identity(n))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self`` after ``other``."""
        return LinearMap(other.source_dim, self.target_dim, la.mat_mul(self.matrix, other.matrix))


def _pairs(S: FiniteSemigroup):
    for a in range(len(S)):
        for b in range(len(S)):
            yield a, b, S.mul(a, b)


def check_hom_assoc(A: HomAlgebra) -> Report:
    col = _Collector()
    n, B = A.dim, A.basis
    th = A._theta_cols
    prod = [[A.mu[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = A.mul(th[i], prod[j][k])
                rhs = A.mul(prod[i][j], th[k])
                col.compare("hom-assoc", (B[i], B[j], B[k]), (i, j, k), lhs, rhs)
    return col.report()


def check_rb_family(A: HomAlgebra) -> Report:
    col = _Collector()
    n, B, S = A.dim, A.basis, A.semigroup
    lam = A.weight
    Pc = A._P_cols
    for a, b, ab in _pairs(S):
        for i in range(n):
            pa = Pc[a][i]
            for j in range(n):
                pb = Pc[b][j]
                lhs = A.mul(pa, pb)
                inner = add(A.mul(pa, A.e(j)), A.mul(A.e(i), pb), scale(lam, A.mu[i][j]))
                rhs = A.Pw(ab, inner)
                col.compare("rb-family", (S.elements[a], S.elements[b], B[i], B[j]), (a, b, i, j), lhs, rhs)
    return col.report()


def check_theta_P_commute(A: HomAlgebra) -> Report:
    col = _Collector()
    for w, name in enumerate(A.semigroup.elements):
        for j in range(A.dim):
            lhs = A.Pw(w, A._theta_cols[j])
            rhs = A.th(A._P_cols[w][j])
            col.compare("theta-P", (name, A.basis[j]), (w, j), lhs, rhs)
    return col.report()


def check_algebra(A: HomAlgebra) -> Report:
    rep = semigroup_validate(A.semigroup)
    if not rep.ok:
        return rep
    rep.extend(check_hom_assoc(A))
    rep.extend(check_rb_family(A))
    rep.extend(check_theta_P_commute(A))
    return rep


def _same_context(A: HomAlgebra, B: HomAlgebra):
    if A.semigroup != B.semigroup:
        raise SemigroupMismatchError("algebras use different semigroups")
    if A.weight != B.weight:
        raise SemigroupMismatchError(f"weights differ: {A.weight} vs {B.weight}")


def check_morphism(phi: LinearMap, A: HomAlgebra, B: HomAlgebra) -> Report:
    if phi.source_dim != A.dim or phi.target_dim != B.dim:
        raise ShapeError(f"map is {phi.target_dim}x{phi.source_dim}, expected {B.dim}x{A.dim}")
    _same_context(A, B)
    col = _Collector()
    n = A.dim
    img = [phi(A.e(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            col.compare("morph-mul", (A.basis[i], A.basis[j]), (i, j), phi(A.mu[i][j]), B.mul(img[i], img[j]))
    for w, name in enumerate(A.semigroup.elements):
        for i in range(n):
            col.compare("morph-P", (name, A.basis[i]), (w, i), phi(A._P_cols[w][i]), B.Pw(w, img[i]))
    for i in range(n):
        col.compare("morph-theta", (A.basis[i],), (i,), phi(A._theta_cols[i]), B.th(img[i]))
    return col.report()


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class Bimodule:
    """``base`` acting on an ``m``-dimensional space.

    ``left[i][p]`` is ``a_i |> v_p`` and ``right[p][i]`` is ``v_p <| a_i``.
    """

    base: HomAlgebra
    vbasis: tuple
    theta_V: tuple
    P_V: tuple
    left: tuple
    right: tuple

    def __post_init__(self):
        n, m = self.base.dim, len(self.vbasis)
        object.__setattr__(self, "vbasis", tuple(self.vbasis))
        object.__setattr__(self, "theta_V", _as_matrix(self.theta_V, m, m, "theta_V"))
        if len(self.P_V) != len(self.base.semigroup):
            raise ShapeError("P_V must be given for every semigroup element")
        object.__setattr__(self, "P_V", tuple(_as_matrix(M, m, m, "P_V") for M in self.P_V))
        object.__setattr__(self, "left", _as_tensor(self.left, n, m, m, "left action"))
        object.__setattr__(self, "right", _as_tensor(self.right, m, n, m, "right action"))

    @property
    def dim(self) -> int:
        return len(self.vbasis)

    @classmethod
    def regular(cls, A: HomAlgebra) -> "Bimodule":
        return cls(A, A.basis, A.theta, A.P, A.mu, A.mu)


def _module_theta_P(M: Bimodule, col: _Collector):
    m = M.dim
    for w, name in enumerate(M.base.semigroup.elements):
        for p in range(m):
            e = la.unit(m, p)
            lhs = la.mat_vec(M.theta_V, la.mat_vec(M.P_V[w], e))
            rhs = la.mat_vec(M.P_V[w], la.mat_vec(M.theta_V, e))
            col.compare("module(theta-P)", (name, M.vbasis[p]), (w, p), lhs, rhs)


def _left_conditions(M: Bimodule, col: _Collector):
    R, n, m = M.base, M.base.dim, M.dim
    lam, S = R.weight, R.semigroup
    L = M.left
    act = lambda a, x: bilinear(L, a, x, m)
    ev = [la.unit(m, p) for p in range(m)]
    thV = [la.mat_vec(M.theta_V, x) for x in ev]
    for i in range(n):
        for j in range(n):
            for p in range(m):
                lhs = act(R.mu[i][j], thV[p])
                rhs = act(R._theta_cols[i], L[j][p])
                col.compare("left-module(1)", (R.basis[i], R.basis[j], M.vbasis[p]), (i, j, p), lhs, rhs)
    for a, b, ab in _pairs(S):
        for i in range(n):
            pa = R._P_cols[a][i]
            for p in range(m):
                pbx = la.mat_vec(M.P_V[b], ev[p])
                lhs = act(pa, pbx)
                inner = add(act(pa, ev[p]), act(R.e(i), pbx), scale(lam, L[i][p]))
                rhs = la.mat_vec(M.P_V[ab], inner)
                col.compare("left-module(2)", (S.elements[a], S.elements[b], R.basis[i], M.vbasis[p]),
                            (a, b, i, p), lhs, rhs)


def _right_conditions(M: Bimodule, col: _Collector):
    R, n, m = M.base, M.base.dim, M.dim
    lam, S = R.weight, R.semigroup
    Rt = M.right
    act = lambda x, a: bilinear(Rt, x, a, m)
    ev = [la.unit(m, p) for p in range(m)]
    thV = [la.mat_vec(M.theta_V, x) for x in ev]
    for p in range(m):
        for i in range(n):
            for j in range(n):
                lhs = act(thV[p], R.mu[i][j])
                rhs = act(Rt[p][i], R._theta_cols[j])
                col.compare("right-module(1)", (M.vbasis[p], R.basis[i], R.basis[j]), (p, i, j), lhs, rhs)
    for a, b, ab in _pairs(S):
        for p in range(m):
            pax = la.mat_vec(M.P_V[a], ev[p])
            for i in range(n):
                pb = R._P_cols[b][i]
                lhs = act(pax, pb)
                inner = add(act(pax, R.e(i)), act(ev[p], pb), scale(lam, Rt[p][i]))
                rhs = la.mat_vec(M.P_V[ab], inner)
                col.compare("right-module(2)", (S.elements[a], S.elements[b], M.vbasis[p], R.basis[i]),
                            (a, b, p, i), lhs, rhs)


def _compat_condition(M: Bimodule, col: _Collector):
    R, n, m = M.base, M.base.dim, M.dim
    for i in range(n):
        for p in range(m):
            for j in range(n):
                lhs = bilinear(M.right, M.left[i][p], R._theta_cols[j], m)
                rhs = bilinear(M.left, R._theta_cols[i], M.right[p][j], m)
                col.compare("bimodule(compat)", (R.basis[i], M.vbasis[p], R.basis[j]), (i, p, j), lhs, rhs)


def check_left_module(M: Bimodule) -> Report:
    col = _Collector()
    _left_conditions(M, col)
    _module_theta_P(M, col)
    return col.report()


def check_right_module(M: Bimodule) -> Report:
    col = _Collector()
    _module_theta_P(M, col)
    _right_conditions(M, col)
    return col.report()


def check_bimodule(M: Bimodule) -> Report:
    col = _Collector()
    _left_conditions(M, col)
    _module_theta_P(M, col)
    _right_conditions(M, col)
    _compat_condition(M, col)
    return col.report()


# ---------------------------------------------------------------------------
# subalgebras and basis changes


def _span_matrix(E: HomAlgebra, span: Sequence) -> tuple:
    span = [tuple(to_scalar(x) for x in v) for v in span]
    if any(len(v) != E.dim for v in span):
        raise ShapeError(f"span vectors must have length {E.dim}")
    if la.rank(tuple(span)) != len(span) if span else False:
        raise RankDeficiencyError("span vectors are linearly dependent")
    return tuple(span)


def check_subalgebra(E: HomAlgebra, span: Sequence) -> Report:
    span = _span_matrix(E, span)
    col = _Collector()
    names = [f"u{k + 1}" for k in range(len(span))]
    inside = lambda v: not any(v) or (bool(span) and la.coordinates(span, v) is not None)
    for i, u in enumerate(span):
        for j, v in enumerate(span):
            w = E.mul(u, v)
            if not inside(w):
                col.add(Violation("closed-mul", (names[i], names[j]), w, "outside span", (i, j)))
    for w_i, name in enumerate(E.semigroup.elements):
        for i, u in enumerate(span):
            w = E.Pw(w_i, u)
            if not inside(w):
                col.add(Violation("closed-P", (name, names[i]), w, "outside span", (w_i, i)))
    for i, u in enumerate(span):
        w = E.th(u)
        if not inside(w):
            col.add(Violation("closed-theta", (names[i],), w, "outside span", (i,)))
    return col.report()


def restrict(E: HomAlgebra, span: Sequence, names: Sequence[str] | None = None) -> HomAlgebra:
    """The subalgebra on ``span``, expressed in span coordinates."""
    span = _span_matrix(E, span)
    if not check_subalgebra(E, span).ok:
        raise NotSubalgebraError("span is not closed under the algebra operations")
    k = len(span)
    coord = lambda v: la.coordinates(span, v) if any(v) else la.zero_vec(k)
    mu = [[coord(E.mul(u, v)) for v in span] for u in span]
    th = la.from_columns([coord(E.th(u)) for u in span], k)
    P = tuple(la.from_columns([coord(E.Pw(w, u)) for u in span], k) for w in range(len(E.semigroup)))
    return HomAlgebra(E.semigroup, tuple(names or [f"u{i + 1}" for i in range(k)]), mu, th, P, E.weight)


def change_basis(E: HomAlgebra, cols: Sequence, names: Sequence[str] | None = None) -> HomAlgebra:
    """Re-express ``E`` in the basis given by ``cols`` (old coordinates)."""
    if len(cols) != E.dim:
        raise ShapeError("need exactly dim basis vectors")
    return restrict(E, cols, names)


def direct_product(A: HomAlgebra, B: HomAlgebra) -> HomAlgebra:
    _same_context(A, B)
    n, m = A.dim, B.dim
    N = n + m
    z = (ZERO,) * N
    mu = [[z] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mu[i][j] = A.mu[i][j] + (ZERO,) * m
    for p in range(m):
        for q in range(m):
            mu[n + p][n + q] = (ZERO,) * n + B.mu[p][q]
    block = lambda X, Y: tuple(tuple(r) + (ZERO,) * m for r in X) + tuple((ZERO,) * n + tuple(r) for r in Y)
    return HomAlgebra(A.semigroup, A.basis + B.basis, mu, block(A.theta, B.theta),
                      tuple(block(x, y) for x, y in zip(A.P, B.P)), A.weight)


def zero_algebra(S: FiniteSemigroup, basis: Sequence[str], weight=LAMBDA) -> HomAlgebra:
    n = len(basis)
    return HomAlgebra(S, tuple(basis), zero_tensor(n, n, n), la.zeros(n, n),
                      tuple(la.zeros(n, n) for _ in S.elements), weight)


__all__ = [
    "Bimodule", "FiniteSemigroup", "HomAlgebra", "LinearMap", "Report", "Violation",
    "check_algebra", "check_bimodule", "check_hom_assoc", "check_left_module", "check_morphism",
    "check_rb_family", "check_right_module", "check_subalgebra", "check_theta_P_commute",
    "change_basis", "direct_product", "restrict", "semigroup_validate", "zero_algebra",
]
