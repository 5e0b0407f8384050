"""Seeded generators shared by the test modules."""

from __future__ import annotations

import random
from pathlib import Path

from rbhom import linalg as la
from rbhom.algebra import HomAlgebra, change_basis, zero_algebra
from rbhom.catalog import S2, idempotent_line, rb_idempotent_line, twisted_plane
from rbhom.extending import (
    DATUM_FIELDS,
    EquivWitness,
    ExtendingDatum,
    build_unified_product,
    canonical_retraction,
    extension_to_datum,
)
from rbhom.flag import flag_to_datum, instantiate_row, table2_rows
from rbhom.matched import MatchedPair, to_datum
from rbhom.scalars import LAMBDA, Scalar

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

L = LAMBDA
SPARSE_VALUES = (Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), L, -L)
SMALL_INTS = (-2, -1, 1, 2, 3)


def bases() -> list[HomAlgebra]:
    return [idempotent_line(), twisted_plane(), rb_idempotent_line("e1")]


def v_algebras() -> list[HomAlgebra]:
    return [
        rb_idempotent_line("x1"),
        HomAlgebra.build(S2, ["x1"], mul={(0, 0): [1]}),
        zero_algebra(S2, ["x1"]),
        zero_algebra(S2, ["x1", "x2"]),
    ]


def table3_pair(l, r, t_r, t_l) -> MatchedPair:
    """Matched pair between the idempotent line and its Rota-Baxter twin."""
    return MatchedPair(idempotent_line(), rb_idempotent_line("e2"), [[(l,)]], [[(r,)]],
                       [[(t_r,)]], [[(t_l,)]])


TABLE3_POINTS = ((0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0))


def twisted_datum() -> ExtendingDatum:
    E = twisted_plane()
    rho = canonical_retraction(2, 1)
    return extension_to_datum(E, rho, v_basis=[(0, 1)], v_names=["x1"])


def random_flag_datum(rng: random.Random) -> ExtendingDatum:
    spec = rng.choice(table2_rows())
    flag, _ = instantiate_row(spec, spec.random_instance(rng), idempotent_line())
    return flag_to_datum(flag, "x1")


def seed_datum(rng: random.Random) -> ExtendingDatum:
    """A valid datum drawn from the structured pool."""
    kind = rng.randrange(4)
    if kind == 0:
        return random_flag_datum(rng)
    if kind == 1:
        return twisted_datum()
    if kind == 2:
        return to_datum(table3_pair(*rng.choice(TABLE3_POINTS)))
    return to_datum(MatchedPair.trivial(rng.choice(bases()), rng.choice(v_algebras())))


def random_witness(rng: random.Random, n: int, m: int) -> EquivWitness:
    pick = lambda: rng.choice((0, 0) + SMALL_INTS)
    while True:
        h = [[pick() for _ in range(m)] for _ in range(m)]
        if la.is_invertible(tuple(tuple(Scalar(x) for x in r) for r in h)):
            break
    g = [[pick() for _ in range(m)] for _ in range(n)]
    return EquivWitness(g, h)


def transport(d: ExtendingDatum, w: EquivWitness) -> ExtendingDatum:
    """Datum ``d'`` whose unified product maps onto that of ``d`` through ``w``."""
    up = build_unified_product(d).algebra
    M = w.as_map(d.n).matrix
    cols = [la.column(M, j) for j in range(up.dim)]
    E2 = change_basis(up, cols, up.basis)
    return extension_to_datum(E2, canonical_retraction(up.dim, d.n))


def valid_datum(rng: random.Random) -> tuple[ExtendingDatum, ExtendingDatum, EquivWitness]:
    """``(d, d', w)`` with ``w`` an equivalence from ``d'`` to ``d``."""
    d = seed_datum(rng)
    w = random_witness(rng, d.n, d.m)
    return d, transport(d, w), w


def _entry_paths(d: ExtendingDatum):
    """Every (field, index path) of a scalar entry in the datum."""
    for name in DATUM_FIELDS:
        yield from ((name, p) for p in _paths(getattr(d, name)))


def _paths(t, prefix=()):
    if isinstance(t, tuple) and t and isinstance(t[0], tuple):
        for i, x in enumerate(t):
            yield from _paths(x, prefix + (i,))
    elif isinstance(t, tuple):
        for i in range(len(t)):
            yield prefix + (i,)


def _set(t, path, value):
    if len(path) == 1:
        return t[:path[0]] + (value,) + t[path[0] + 1:]
    i = path[0]
    return t[:i] + (_set(t[i], path[1:], value),) + t[i + 1:]


def _get(t, path):
    for i in path:
        t = t[i]
    return t


def perturb(d: ExtendingDatum, rng: random.Random) -> ExtendingDatum:
    name, path = rng.choice(list(_entry_paths(d)))
    old = getattr(d, name)
    return d.replace(**{name: _set(old, path, _get(old, path) + rng.choice(SPARSE_VALUES))})


def sparse_datum(rng: random.Random, density: float = 0.2) -> ExtendingDatum:
    R = rng.choice(bases())
    m = rng.choice((1, 2))
    d = ExtendingDatum.zero(R, ["x1", "x2"][:m])
    changes = {}
    for name in DATUM_FIELDS:
        t = getattr(d, name)
        for path in _paths(t):
            if rng.random() < density:
                t = _set(t, path, rng.choice(SPARSE_VALUES))
        changes[name] = t
    return d.replace(**changes)


def random_datum(rng: random.Random) -> ExtendingDatum:
    """Mix of valid, perturbed-valid and sparse random datums."""
    k = rng.randrange(3)
    if k == 0:
        return valid_datum(rng)[1]
    if k == 1:
        return perturb(valid_datum(rng)[1], rng)
    return sparse_datum(rng, rng.choice((0.05, 0.15, 0.3)))


ACCEPTANCE: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE[k] = line
    print(line)
