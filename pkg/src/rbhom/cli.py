"""Command-line front end.

Exit codes: 0 every check passed, 1 violations found, 2 usage or parse error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .algebra import Report, check_algebra, semigroup_validate
from .errors import InternalConsistencyError, RBHomError, ScalarParseError
from .scalars import LAMBDA, parse_scalar

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_SEED = 0
DEFAULT_TRIALS = 3


class UsageError(Exception):
    pass


def _out(line: str = ""):
    print(line)


def _report(title: str, rep: Report, stream=None) -> bool:
    say = (lambda s: print(s, file=stream)) if stream else _out
    if rep.ok:
        say(f"{title}: ok")
    else:
        n = len(rep)
        say(f"{title}: {n} violation{'s' if n != 1 else ''}")
        for line in rep.lines():
            say(line)
    for note in rep.notes:
        say(f"note: {note}")
    return rep.ok


def _parse_sets(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--set expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_scalar(v.strip())
    return out


def _load(path: str, sets: dict | None = None):
    from .fileformat import load, resolve
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    doc = load(p)
    try:
        return doc, resolve(doc, sets)
    except KeyError as e:
        raise UsageError(str(e.args[0]))


def _pick(doc, model, kind: str, name: str | None):
    if name:
        if model.kinds.get(name) != kind:
            raise UsageError(f"no {kind} block named {name!r}")
        return name, model[name]
    names = [b.name for b in doc.blocks if b.kind == kind]
    if len(names) != 1:
        raise UsageError(f"expected exactly one {kind} block, found {len(names)}; use --name")
    return names[0], model[names[0]]


def _matrix(text: str):
    rows = [r for r in text.split(";")]
    return [[parse_scalar(x) for x in r.split(",")] for r in rows]


def _name_of(model, kind: str, obj, default: str) -> str:
    for n, o in model.of_kind(kind).items():
        if o == obj:
            return n
    return default


def _write(doc, path: str | None):
    from .fileformat import serialize
    text = serialize(doc)
    if path:
        Path(path).write_text(text)
        _out(f"wrote {path}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(a) -> int:
    from .deformation import check_deformation
    from .extending import check_extending_structure
    from .flag import check_flag, enumerate_flags
    from .matched import check_matched_pair
    doc, model = _load(a.file, _parse_sets(a.set))
    checkers = {
        "semigroup": semigroup_validate, "algebra": check_algebra, "datum": check_extending_structure,
        "flag": check_flag, "pair": check_matched_pair, "deform": check_deformation,
    }
    ok = True
    for b in doc.blocks:
        obj = model[b.name]
        title = f"{b.kind} {b.name}"
        if b.kind == "grid":
            hits = enumerate_flags(obj["base"], obj["fields"])
            _out(f"{title}: {len(hits)} passing point{'s' if len(hits) != 1 else ''}")
            for F in hits:
                _out(f"  {F}")
            continue
        try:
            ok &= _report(title, checkers[b.kind](obj))
        except InternalConsistencyError:
            raise
        except RBHomError as e:
            _out(f"{title}: precondition failed: {e}")
            ok = False
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_product(a) -> int:
    from .extending import build_unified_product, check_extending_structure
    from .fileformat import Document, algebra_block, semigroup_block
    doc, model = _load(a.datum, _parse_sets(a.set))
    name, d = _pick(doc, model, "datum", a.name)
    if not _report(f"datum {name}", check_extending_structure(d), None if a.output else sys.stderr):
        return EXIT_VIOLATIONS
    E = build_unified_product(d).algebra
    sg = _name_of(model, "semigroup", E.semigroup, "S")
    out = Document(blocks=[semigroup_block(E.semigroup, sg), algebra_block(E, f"{name}_product", sg)])
    _write(out, a.output)
    return EXIT_OK


def cmd_bicrossed(a) -> int:
    from .fileformat import Document, algebra_block, semigroup_block
    from .matched import build_bicrossed, check_matched_pair
    doc, model = _load(a.pair, _parse_sets(a.set))
    name, mp = _pick(doc, model, "pair", a.name)
    if not _report(f"pair {name}", check_matched_pair(mp), None if a.output else sys.stderr):
        return EXIT_VIOLATIONS
    E = build_bicrossed(mp)
    sg = _name_of(model, "semigroup", E.semigroup, "S")
    out = Document(blocks=[semigroup_block(E.semigroup, sg), algebra_block(E, f"{name}_bicrossed", sg)])
    _write(out, a.output)
    return EXIT_OK


def _instances(spec, sets: dict, seed: int, trials: int, tag: str):
    missing = [p for p in spec.params if p not in sets]
    if not missing:
        return [dict(sets)]
    rng = random.Random(f"{seed}:{tag}")
    out = []
    for _ in range(trials):
        inst = spec.random_instance(rng)
        inst.update(sets)
        out.append(inst)
    return out


def _inst_str(inst: dict) -> str:
    return "[" + ", ".join(f"{k}={v}" for k, v in inst.items()) + "]"


def _verify_row(spec, inst) -> bool:
    from .flag import verify_table2_row
    rep = verify_table2_row(spec, inst)
    nw = len(spec.witnesses)
    title = f"row {spec.row_id} {_inst_str(inst)} ({nw} witness{'es' if nw != 1 else ''})"
    return _report(title, rep)


def cmd_flag_verify(a) -> int:
    from .flag import table2_row
    try:
        spec = table2_row(a.row)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    _out(f"# seed={a.seed} trials={a.trials}")
    sets = _parse_sets(a.set)
    unknown = set(sets) - set(spec.params)
    if unknown:
        raise UsageError(f"row {spec.row_id} has no parameter(s) {', '.join(sorted(unknown))}")
    ok = True
    for inst in _instances(spec, sets, a.seed, a.trials, spec.row_id):
        ok &= _verify_row(spec, inst)
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_flag_enumerate(a) -> int:
    from .flag import enumerate_flags
    doc, model = _load(a.grid, _parse_sets(a.set))
    name, g = _pick(doc, model, "grid", a.name)
    hits = enumerate_flags(g["base"], g["fields"])
    _out(f"grid {name}: {len(hits)} passing point{'s' if len(hits) != 1 else ''}")
    for F in hits:
        _out(str(F))
    return EXIT_OK


def cmd_table2(a) -> int:
    from .flag import table2_rows
    _out(f"# seed={a.seed} trials={a.trials}")
    checks = fails = 0
    for spec in table2_rows():
        for inst in _instances(spec, {}, a.seed, a.trials, spec.row_id):
            checks += 1
            if not _verify_row(spec, inst):
                fails += 1
    _out(f"table2: {checks} checks, {fails} failures")
    return EXIT_OK if not fails else EXIT_VIOLATIONS


TABLE3_GRID = {"l": (0, 1), "r": (0, 1), "t_r": (0, 1), "t_l": (0, 1), "k1": (1,),
               "k_e": (-LAMBDA,), "k_s": (-LAMBDA,), "k2": (1,)}


def table3_rows() -> list[tuple]:
    """``(l, r, t_r, t_l)`` of every passing point of the matched-pair grid."""
    from .catalog import idempotent_line
    from .flag import enumerate_flags
    return [F.as_tuple()[:4] for F in enumerate_flags(idempotent_line(), TABLE3_GRID)]


def cmd_table3(a) -> int:
    rows = table3_rows()
    _out("l r t_r t_l")
    for r in rows:
        _out(" ".join(str(x) for x in r))
    _out(f"table3: {len(rows)} rows")
    return EXIT_OK


def cmd_deform(a) -> int:
    from .deformation import DeformationMap, check_deformation, count_index_1dim, solve_deformation_1dim
    doc, model = _load(a.datum, _parse_sets(a.set))
    name, d = _pick(doc, model, "datum", a.name)
    if a.action == "check":
        if a.d is None:
            raise UsageError("deform check needs --d")
        M = _matrix(a.d)
        if d.n == 1 and d.m == 1 and len(M) == 1 and len(M[0]) == 1:
            pass
        elif len(M) != d.n or any(len(r) != d.m for r in M):
            raise UsageError(f"--d must be a {d.n}x{d.m} matrix (rows separated by ';')")
        ok = _report(f"deform {name} d={a.d}", check_deformation(DeformationMap(d, M)))
        return EXIT_OK if ok else EXIT_VIOLATIONS
    if a.action == "solve":
        sol = solve_deformation_1dim(d)
        for c in sol.constraints:
            _out(f"constraint: {c.to_str('d')} = 0")
        if sol.note:
            _out(f"note: {sol.note}")
        _out(f"solutions = {sol}")
        return EXIT_OK
    rep = count_index_1dim(d)
    for line in rep.lines():
        _out(line)
    return EXIT_OK


def cmd_equiv(a) -> int:
    from .extending import EquivWitness, check_datum_equivalence
    sets = _parse_sets(a.set)
    ldoc, lm = _load(a.left, sets)
    rdoc, rm = _load(a.right, sets)
    ln, d1 = _pick(ldoc, lm, "datum", a.left_name)
    rn, d2 = _pick(rdoc, rm, "datum", a.right_name)
    g = _matrix(a.g)
    h = _matrix(a.h)
    if d1.m == 1 and len(g) == 1 and len(g[0]) == d1.n:
        g = [[x] for x in g[0]]
    if len(g) != d1.n or any(len(r) != d1.m for r in g):
        raise UsageError(f"--g must be {d1.n}x{d1.m}")
    if len(h) != d1.m or any(len(r) != d1.m for r in h):
        raise UsageError(f"--h must be {d1.m}x{d1.m}")
    ok = _report(f"equiv {ln} -> {rn}", check_datum_equivalence(d1, d2, EquivWitness(g, h)))
    return EXIT_OK if ok else EXIT_VIOLATIONS


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rbhom", description="Structure-constant checks for Rota-Baxter family Hom-associative algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_set(sp):
        sp.add_argument("--set", action="append", metavar="NAME=VALUE", help="override a file parameter")
        return sp

    sp = with_set(sub.add_parser("check", help="run the checker for every block in a file"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = with_set(sub.add_parser("product", help="unified product of a datum"))
    sp.add_argument("--datum", required=True)
    sp.add_argument("--name")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_product)

    sp = with_set(sub.add_parser("bicrossed", help="bicrossed product of a matched pair"))
    sp.add_argument("--pair", required=True)
    sp.add_argument("--name")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bicrossed)

    fp = sub.add_parser("flag", help="flag datums")
    fsub = fp.add_subparsers(dest="flag_command", required=True, parser_class=_Parser)
    sp = with_set(fsub.add_parser("verify", help="verify a classification row"))
    sp.add_argument("--row", required=True)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sp.set_defaults(func=cmd_flag_verify)
    sp = with_set(fsub.add_parser("enumerate", help="grid search"))
    sp.add_argument("--grid", required=True)
    sp.add_argument("--name")
    sp.set_defaults(func=cmd_flag_enumerate)

    sp = sub.add_parser("table2", help="verify every classification row")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sp.set_defaults(func=cmd_table2)

    sp = sub.add_parser("table3", help="matched pairs on the 16-point grid")
    sp.set_defaults(func=cmd_table3)

    sp = with_set(sub.add_parser("deform", help="deformation maps of a 1-dimensional extension"))
    sp.add_argument("action", choices=("check", "solve", "index"))
    sp.add_argument("--datum", required=True)
    sp.add_argument("--name")
    sp.add_argument("--d", help="deformation map: a scalar, or rows separated by ';'")
    sp.set_defaults(func=cmd_deform)

    sp = with_set(sub.add_parser("equiv", help="check an equivalence witness between two datums"))
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--left-name")
    sp.add_argument("--right-name")
    sp.add_argument("--g", required=True, help="n x m matrix, rows separated by ';'")
    sp.add_argument("--h", required=True, help="m x m matrix, rows separated by ';'")
    sp.set_defaults(func=cmd_equiv)
    return p


def main(argv=None) -> int:
    from .fileformat import ParseError
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ScalarParseError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except RBHomError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATIONS


if __name__ == "__main__":
    sys.exit(main())
