"""Line-oriented text format for semigroups, algebras, datums and related objects.

Example::

    semigroup Z2 {
      elements: e, s
      table: e*e = e
      ...
    }

    algebra A over QL weight l uses Z2 {
      dim: 1
      basis: e1
      mul: e1*e1 = 1 e1
      theta: e1 -> 1 e1
    }

Statements end at ``;`` or a newline, ``#`` starts a comment.  Coefficients
are rational literals, parenthesised scalar expressions such as ``(3*l)``, or
templates ``{k2*tr}`` evaluated against ``param`` declarations.  A
:class:`Document` is purely syntactic; :func:`resolve` turns it into library
objects and reports unknown names with their location.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import linalg as la
from .algebra import FiniteSemigroup, HomAlgebra, _natural_key
from .errors import RBHomError, ScalarParseError
from .scalars import LAMBDA, ZERO, Scalar, parse_scalar, to_scalar


class ParseError(RBHomError, ValueError):
    def __init__(self, line: int, col: int, expected: str, found: str, source: str | None = None):
        self.line, self.col, self.expected, self.found, self.source = line, col, expected, found, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: expected {expected}, found {found}")


class DuplicateBlockError(ParseError):
    pass


class UnresolvedReferenceError(ParseError):
    pass


# ---------------------------------------------------------------------------
# document model


@dataclass(frozen=True)
class Template:
    """A coefficient evaluated later against document parameters."""

    expr: str

    def __str__(self):
        return "{" + self.expr + "}"


@dataclass(frozen=True)
class Term:
    coef: object  # Scalar or Template
    name: str
    pos: tuple = field(default=(0, 0), compare=False, repr=False)
    cpos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass
class Block:
    kind: str
    name: str
    header: dict
    fields: dict
    pos: tuple = field(default=(0, 0), compare=False, repr=False)
    where: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass
class Document:
    imports: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    blocks: list = field(default_factory=list)
    source: str | None = field(default=None, compare=False, repr=False)
    imported: list = field(default_factory=list, compare=False, repr=False)

    def names(self) -> list[str]:
        return [b.name for b in self.blocks]

    def block(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        for d in self.imported:
            try:
                return d.block(name)
            except KeyError:
                pass
        raise KeyError(name)

    def all_blocks(self) -> list[Block]:
        out = []
        for d in self.imported:
            out += d.all_blocks()
        return out + list(self.blocks)


INT, NAMES, TABLE, ENTRY, VECTOR, SCALAR, SCALARS = "int", "names", "table", "entry", "vector", "scalar", "scalars"

# key -> (value kind, entry operator, indexed by a semigroup element)
SCHEMAS = {
    "semigroup": {"elements": (NAMES, None, False), "table": (TABLE, None, False)},
    "algebra": {"dim": (INT, None, False), "basis": (NAMES, None, False), "mul": (ENTRY, "*", False),
                "theta": (ENTRY, "->", False), "P": (ENTRY, "->", True)},
    "datum": {"vdim": (INT, None, False), "vbasis": (NAMES, None, False),
              "tri_l": (ENTRY, "|", False), "tri_r": (ENTRY, "|", False),
              "harp_r": (ENTRY, "|", False), "harp_l": (ENTRY, "|", False),
              "f": (ENTRY, "|", False), "mul_V": (ENTRY, "|", False),
              "Q": (ENTRY, "->", True), "P_V": (ENTRY, "->", True),
              "eta": (ENTRY, "->", False), "theta_V": (ENTRY, "->", False)},
    "flag": {"l": (VECTOR, None, False), "r": (VECTOR, None, False), "t_r": (ENTRY, "->", False),
             "t_l": (ENTRY, "->", False), "a1": (VECTOR, None, False), "k1": (SCALAR, None, False),
             "b": (VECTOR, None, True), "k": (SCALAR, None, True), "a2": (VECTOR, None, False),
             "k2": (SCALAR, None, False)},
    "pair": {"tri_l": (ENTRY, "|", False), "tri_r": (ENTRY, "|", False),
             "harp_r": (ENTRY, "|", False), "harp_l": (ENTRY, "|", False)},
    "deform": {"d": (ENTRY, "->", False)},
    "grid": {},  # any identifier, each a list of scalars
}

HEADERS = {
    "semigroup": (),
    "algebra": (("over", "ident"), ("weight", "scalar"), ("uses", "ident")),
    "datum": (("base", "ident"),),
    "flag": (("base", "ident"),),
    "pair": (("R", "ident"), ("V", "ident")),
    "deform": (("datum", "ident"),),
    "grid": (("base", "ident"),),
}
HEADER_DEFAULTS = {"algebra": {"over": "QL", "weight": LAMBDA}}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _AnyName(dict):
    # lets template syntax be checked before parameters are known
    def __bool__(self):
        return True

    def __contains__(self, key):
        return True

    def __getitem__(self, key):
        return LAMBDA * LAMBDA + 7


# ---------------------------------------------------------------------------
# scanner


class _Scanner:
    def __init__(self, text: str, source: str | None):
        self.t = text
        self.i = 0
        self.source = source
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def loc(self, offset: int | None = None) -> tuple[int, int]:
        off = self.i if offset is None else offset
        line = bisect.bisect_right(self.starts, off)
        return line, off - self.starts[line - 1] + 1

    def _found(self, off: int) -> str:
        t = self.t
        if off >= len(t):
            return "end of input"
        if t[off] == "\n":
            return "end of line"
        m = _IDENT.match(t, off) or re.compile(r"\d+").match(t, off)
        return repr(m.group(0) if m else t[off])

    def fail(self, expected: str, offset: int | None = None, cls=ParseError):
        off = self.i if offset is None else offset
        line, col = self.loc(off)
        raise cls(line, col, expected, self._found(off), self.source)

    def skip(self, newlines: bool = False):
        t = self.t
        while self.i < len(t):
            c = t[self.i]
            if c in " \t\r" or (newlines and c == "\n"):
                self.i += 1
            elif c == "#":
                while self.i < len(t) and t[self.i] != "\n":
                    self.i += 1
            else:
                break

    def peek(self) -> str:
        return self.t[self.i:self.i + 1]

    def accept(self, s: str) -> bool:
        self.skip()
        if self.t.startswith(s, self.i):
            self.i += len(s)
            return True
        return False

    def expect(self, s: str, what: str | None = None):
        if not self.accept(s):
            self.fail(what or repr(s))

    def ident(self, what: str = "a name") -> tuple[str, tuple]:
        self.skip()
        m = _IDENT.match(self.t, self.i)
        if not m:
            self.fail(what)
        at = self.loc()
        self.i = m.end()
        return m.group(0), at

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.t, self.i)
        if not m:
            self.fail("a non-negative integer")
        self.i = m.end()
        return int(m.group(0))

    def string(self) -> str:
        self.skip()
        if self.peek() != '"':
            self.fail("a quoted path")
        end = self.t.find('"', self.i + 1)
        nl = self.t.find("\n", self.i + 1)
        if end < 0 or (0 <= nl < end):
            self.fail("closing '\"'", len(self.t) if end < 0 else nl)
        s = self.t[self.i + 1:end]
        self.i = end + 1
        return s

    def _scalar_text(self, text: str, start: int, env=None) -> Scalar:
        try:
            return parse_scalar(text, env, 0)
        except ScalarParseError as e:
            if e.expected == "nonzero divisor" and isinstance(env, _AnyName):
                return ZERO
            self.fail(e.expected, start + e.position)
        except ZeroDivisionError:
            self.fail("nonzero divisor", start)

    def coefficient(self) -> object | None:
        """Unsigned coefficient, or None when the next token is not one."""
        self.skip()
        c = self.peek()
        if c == "(":
            depth, j = 0, self.i
            while j < len(self.t):
                if self.t[j] == "(":
                    depth += 1
                elif self.t[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif self.t[j] == "\n":
                    break
                j += 1
            if j >= len(self.t) or self.t[j] != ")":
                self.fail("')'", j)
            v = self._scalar_text(self.t[self.i + 1:j], self.i + 1)
            self.i = j + 1
            return v
        if c == "{":
            end = self.t.find("}", self.i)
            nl = self.t.find("\n", self.i)
            if end < 0 or (0 <= nl < end):
                self.fail("'}' closing the template", len(self.t) if end < 0 else nl)
            raw = self.t[self.i + 1:end]
            expr = re.sub(r"\s+", "", raw)
            if not expr:
                self.fail("a template expression", self.i + 1)
            self._scalar_text(raw, self.i + 1, _AnyName())
            self.i = end + 1
            return Template(expr)
        if c.isdigit():
            m = re.compile(r"\d+(?:/\d+)?").match(self.t, self.i)
            text = m.group(0)
            if "/" in text and int(text.split("/")[1]) == 0:
                self.fail("nonzero denominator", self.i + text.index("/") + 1)
            self.i = m.end()
            return parse_scalar(text)
        return None


def _drop_empty(b: Block):
    # zero entries carry no information; canonical text omits them
    for key in list(b.fields):
        v = b.fields[key]
        if (isinstance(v, dict) and not v) or (isinstance(v, tuple) and not v) or _is_zero(v):
            del b.fields[key]


def _neg(c):
    if isinstance(c, Template):
        return Template(f"-({c.expr})")
    return -c


def _is_zero(c) -> bool:
    return isinstance(c, Scalar) and not c


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, source: str | None):
        self.s = _Scanner(text, source)

    def document(self) -> Document:
        s = self.s
        doc = Document(source=s.source)
        seen: dict[str, tuple] = {}
        while True:
            s.skip(newlines=True)
            if s.i >= len(s.t):
                break
            word, at = s.ident("'import', 'param' or a block keyword")
            if word == "import":
                doc.imports.append(s.string())
                self.end_of_line()
            elif word == "param":
                name, pat = s.ident("a parameter name")
                if name in doc.params:
                    s.fail("a new parameter name", s.starts[pat[0] - 1] + pat[1] - 1)
                s.expect("=", "'='")
                s.skip()
                eol = s.t.find("\n", s.i)
                eol = len(s.t) if eol < 0 else eol
                hash_ = s.t.find("#", s.i, eol)
                stop = eol if hash_ < 0 else hash_
                text = s.t[s.i:stop]
                if not text.strip():
                    s.fail("a scalar value")
                doc.params[name] = s._scalar_text(text, s.i)
                s.i = stop
                self.end_of_line()
            elif word in SCHEMAS:
                b = self.block(word, at)
                if b.name in seen:
                    line, col = b.pos
                    raise DuplicateBlockError(line, col, f"a block name not already used (line {seen[b.name][0]})",
                                              repr(b.name), s.source)
                seen[b.name] = b.pos
                doc.blocks.append(b)
            else:
                s.fail("'import', 'param' or a block keyword", s.i - len(word))
        return doc

    def end_of_line(self):
        s = self.s
        s.skip()
        if s.i < len(s.t) and s.peek() not in "\n;":
            s.fail("end of line")
        if s.peek() == ";":
            s.i += 1

    def block(self, kind: str, at) -> Block:
        s = self.s
        name, npos = s.ident(f"a {kind} name")
        header, hpos = {}, {}
        spec = dict(HEADERS[kind])
        while True:
            s.skip()
            if s.peek() == "{":
                s.i += 1
                break
            kw_off = s.i
            kw, _ = s.ident("'{' or a header keyword" if spec else "'{'")
            if kw not in spec:
                s.fail("'{' or one of " + ", ".join(repr(k) for k in spec) if spec else "'{'", kw_off)
            if kw in header:
                s.fail("a header keyword not already given", kw_off)
            if spec[kw] == "ident":
                header[kw], hpos[kw] = s.ident(f"a name after '{kw}'")
            else:
                s.skip()
                off = s.i
                hpos[kw] = s.loc()
                m = re.compile(r"[^\s{]+").match(s.t, s.i)
                if not m:
                    s.fail(f"a scalar after '{kw}'")
                s.i = m.end()
                header[kw] = s._scalar_text(m.group(0), off)
        for kw, _ in HEADERS[kind]:
            if kw not in header:
                if kw in HEADER_DEFAULTS.get(kind, {}):
                    header[kw] = HEADER_DEFAULTS[kind][kw]
                else:
                    s.fail(f"header keyword '{kw}'", s.i - 1)
        if kind == "algebra" and header["over"] != "QL":
            line, col = hpos["over"]
            raise ParseError(line, col, "'over QL'", repr(header["over"]), s.source)
        b = Block(kind, name, {k: header[k] for k, _ in HEADERS[kind]}, {}, npos)
        b.where.update({("header", k): p for k, p in hpos.items()})
        self.body(b)
        return b

    def body(self, b: Block):
        s = self.s
        schema = SCHEMAS[b.kind]
        while True:
            s.skip(newlines=True)
            while s.peek() == ";":
                s.i += 1
                s.skip(newlines=True)
            if s.peek() == "}":
                s.i += 1
                _drop_empty(b)
                return
            if s.i >= len(s.t):
                s.fail("'}' closing the block")
            key_off = s.i
            base, kpos = s.ident("a field name or '}'")
            if b.kind == "grid":
                kind, op, indexed = SCALARS, None, False
            elif base not in schema:
                s.fail(f"a {b.kind} field (" + ", ".join(schema) + ")", key_off)
            else:
                kind, op, indexed = schema[base]
            key = base
            if indexed:
                s.expect("[", f"'[' after '{base}'")
                w, _ = s.ident("a semigroup element")
                s.expect("]", "']'")
                key = f"{base}[{w}]"
            elif s.accept("["):
                s.fail("':'", s.i - 1)
            s.expect(":", "':'")
            b.where.setdefault(key, kpos)
            if kind in (ENTRY, TABLE):
                store = b.fields.setdefault(key, {})
                s.skip()
                lhs_off = s.i
                lhs, value, lpos = (self.table_entry() if kind == TABLE else self.entry(op))
                if (key, lhs) in b.where:
                    s.fail("an entry not already given", lhs_off)
                b.where[(key, lhs)] = lpos
                if kind == TABLE:
                    store[lhs] = value[0]
                    b.where[(key, lhs, "value")] = value[1]
                elif value:
                    store[lhs] = value
            else:
                if key in b.fields:
                    s.fail(f"field '{key}' only once", key_off)
                if kind == INT:
                    b.fields[key] = s.integer()
                elif kind == NAMES:
                    b.fields[key] = self.names()
                elif kind == VECTOR:
                    b.fields[key] = self.vector()
                elif kind == SCALAR:
                    b.fields[key] = self.signed_coefficient()
                else:
                    b.fields[key] = self.scalar_list()
            self.statement_end()

    def statement_end(self):
        s = self.s
        s.skip()
        c = s.peek()
        if c == ";" or c == "\n":
            s.i += 1
        elif c != "}":
            s.fail("';', end of line or '}'")

    def names(self) -> tuple:
        s = self.s
        out = []
        offs = []
        while True:
            s.skip()
            offs.append(s.i)
            n, _ = s.ident("a name")
            if n in out:
                s.fail("distinct names", offs[-1])
            out.append(n)
            if not s.accept(","):
                return tuple(out)

    def table_entry(self):
        s = self.s
        s.skip()
        at = s.loc()
        a, _ = s.ident("a semigroup element")
        s.expect("*", "'*'")
        b, _ = s.ident("a semigroup element")
        s.expect("=", "'='")
        c, cpos = s.ident("a semigroup element")
        return (a, b), (c, cpos), at

    def entry(self, op: str):
        s = self.s
        s.skip()
        first, p1 = s.ident("a basis name")
        if op == "->":
            lhs, pos = (first,), [p1]
            s.expect("->", "'->'")
        else:
            s.expect(op, repr(op))
            second, p2 = s.ident("a basis name")
            lhs, pos = (first, second), [p1, p2]
            arrow = "=" if op == "*" else "->"
            s.expect(arrow, repr(arrow))
        return lhs, self.vector(), tuple(pos)

    def signed_coefficient(self):
        s = self.s
        neg = False
        s.skip()
        if s.peek() in "+-" and s.peek():
            neg = s.peek() == "-"
            s.i += 1
        c = s.coefficient()
        if c is None:
            s.fail("a coefficient")
        return _neg(c) if neg else c

    def scalar_list(self) -> tuple:
        out = [self.signed_coefficient()]
        while self.s.accept(","):
            out.append(self.signed_coefficient())
        return tuple(out)

    def vector(self) -> tuple:
        s = self.s
        terms: dict[str, Term] = {}
        first = True
        while True:
            s.skip()
            neg = False
            if s.peek() in "+-" and s.peek():
                neg = s.peek() == "-"
                s.i += 1
                s.skip()
            elif not first:
                break
            cpos = s.loc()
            c = s.coefficient()
            s.skip()
            m = _IDENT.match(s.t, s.i)
            if m is None:
                if c is not None and first and _is_zero(c) and not neg:
                    return ()
                s.fail("a basis name" if c is not None else "a coefficient or basis name")
            if c is None:
                c = to_scalar(1)
            at = s.loc()
            s.i = m.end()
            name = m.group(0)
            if name in terms:
                s.fail("each basis name once per vector", s.i - len(name))
            terms[name] = Term(_neg(c) if neg else c, name, at, cpos)
            first = False
        return tuple(sorted((t for t in terms.values() if not _is_zero(t.coef)),
                            key=lambda t: _natural_key(t.name)))


def parse(text: str, source: str | None = None) -> Document:
    """Parse a document; imports are recorded but not loaded (see :func:`load`)."""
    return _Parser(text, source).document()


def load(path, _stack: tuple = ()) -> Document:
    """Parse a file and, recursively, the files it imports."""
    path = Path(path)
    key = str(path.resolve())
    if key in _stack:
        raise ParseError(1, 1, "an import graph without cycles", repr(str(path)), str(path))
    doc = parse(path.read_text(), str(path))
    for rel in doc.imports:
        doc.imported.append(load(path.parent / rel, _stack + (key,)))
    seen = {}
    for b in doc.all_blocks():
        if b.name in seen:
            line, col = b.pos
            raise DuplicateBlockError(line, col, "a block name not defined by an import", repr(b.name), str(path))
        seen[b.name] = b
    return doc


# ---------------------------------------------------------------------------
# serializer


def _coef_str(c) -> str:
    if isinstance(c, Template):
        return str(c)
    s = str(c)
    if c.is_rational:
        return s
    return f"({s})"


def _vector_str(terms) -> str:
    if not terms:
        return "0"
    out = []
    for k, t in enumerate(terms):
        c = t.coef
        if k and isinstance(c, Scalar) and c.is_rational and c.to_fraction() < 0:
            out.append(f"- {_coef_str(-c)} {t.name}")
        else:
            out.append(("+ " if k else "") + f"{_coef_str(c)} {t.name}")
    return " ".join(out)


def _header_str(b: Block) -> str:
    parts = [b.kind, b.name]
    for kw, kind in HEADERS[b.kind]:
        v = b.header[kw]
        parts += [kw, str(v) if kind == "scalar" else v]
    return " ".join(parts) + " {"


def _field_order(b: Block) -> list[str]:
    if b.kind == "grid":
        return sorted(b.fields, key=_grid_key)
    order = []
    schema = SCHEMAS[b.kind]
    for base, (_, _, indexed) in schema.items():
        if indexed:
            keys = [k for k in b.fields if k.startswith(base + "[")]
            order += sorted(keys, key=_natural_key)
        elif base in b.fields:
            order.append(base)
    return order


_GRID_ORDER = ["l", "r", "t_r", "t_l", "a1", "k1"]


def _grid_key(k: str):
    if k in _GRID_ORDER:
        return (0, _GRID_ORDER.index(k), "")
    if k.startswith("b_"):
        return (1, 0, k)
    if k.startswith("k_"):
        return (2, 0, k)
    return (3, ["a2", "k2"].index(k) if k in ("a2", "k2") else 2, k)


def _block_lines(b: Block) -> list[str]:
    lines = [_header_str(b)]
    schema = SCHEMAS[b.kind]
    for key in _field_order(b):
        base = key.split("[")[0]
        kind, op, _ = schema.get(base, (SCALARS, None, False))
        v = b.fields[key]
        if kind == INT:
            lines.append(f"  {key}: {v}")
        elif kind == NAMES:
            lines.append(f"  {key}: {', '.join(v)}")
        elif kind == TABLE:
            for (a, c), res in sorted(v.items(), key=lambda kv: (_natural_key(kv[0][0]), _natural_key(kv[0][1]))):
                lines.append(f"  {key}: {a}*{c} = {res}")
        elif kind == ENTRY:
            for lhs in sorted(v, key=lambda t: tuple(_natural_key(x) for x in t)):
                if op == "->":
                    head = f"{lhs[0]} ->"
                elif op == "*":
                    head = f"{lhs[0]}*{lhs[1]} ="
                else:
                    head = f"{lhs[0]}|{lhs[1]} ->"
                lines.append(f"  {key}: {head} {_vector_str(v[lhs])}")
        elif kind == VECTOR:
            if v:
                lines.append(f"  {key}: {_vector_str(v)}")
        elif kind == SCALAR:
            if not _is_zero(v):
                lines.append(f"  {key}: {_signed_coef_str(v)}")
        else:
            lines.append(f"  {key}: {', '.join(_signed_coef_str(c) for c in v)}")
    lines.append("}")
    return lines


def _signed_coef_str(c) -> str:
    if isinstance(c, Scalar) and c.is_rational:
        return str(c)
    return _coef_str(c)


def serialize(doc: Document) -> str:
    """Canonical text: sorted entries, zero entries omitted, two-space indent."""
    chunks = []
    head = [f'import "{p}"' for p in doc.imports] + [f"param {k} = {v}" for k, v in doc.params.items()]
    if head:
        chunks.append("\n".join(head))
    for b in doc.blocks:
        chunks.append("\n".join(_block_lines(b)))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


# ---------------------------------------------------------------------------
# resolution


@dataclass
class Model:
    """Library objects built from a document, by block name."""

    objects: dict
    kinds: dict
    params: dict
    blocks: dict = field(default_factory=dict)

    def of_kind(self, kind: str) -> dict:
        return {n: o for n, o in self.objects.items() if self.kinds[n] == kind}

    def __getitem__(self, name: str):
        return self.objects[name]


class _Resolver:
    def __init__(self, doc: Document, overrides: Mapping | None):
        self.doc = doc
        self.blocks = {}
        self.origin = {}
        self._collect(doc)
        params = {}
        self._params(doc, params)
        for k, v in (overrides or {}).items():
            if k not in params:
                raise KeyError(f"unknown parameter {k!r}; declared: {', '.join(params) or 'none'}")
            params[k] = to_scalar(v) if not isinstance(v, str) else parse_scalar(v)
        self.params = params
        self.objects = {}
        self.active = set()

    def _collect(self, doc: Document):
        for d in doc.imported:
            self._collect(d)
        for b in doc.blocks:
            self.blocks[b.name] = b
            self.origin[b.name] = doc.source

    def _params(self, doc: Document, out: dict):
        for d in doc.imported:
            self._params(d, out)
        out.update(doc.params)

    def fail(self, b: Block, pos, expected: str, found: str, cls=UnresolvedReferenceError):
        line, col = pos if pos else b.pos
        raise cls(line, col, expected, found, self.origin.get(b.name))

    def value(self, b: Block, c, pos) -> Scalar:
        if isinstance(c, Template):
            for name in _IDENT.findall(c.expr):
                if name != "l" and name not in self.params:
                    declared = ", ".join(self.params) or "none"
                    self.fail(b, pos, f"a declared parameter ({declared})", repr(name))
            try:
                return parse_scalar(c.expr, self.params)
            except ScalarParseError as e:
                self.fail(b, pos, e.expected, repr(e.found))
            except ZeroDivisionError:
                self.fail(b, pos, "a template without division by zero", str(c), ParseError)
        return c

    def vec(self, b: Block, terms, basis, what: str) -> tuple:
        out = [ZERO] * len(basis)
        for t in terms:
            if t.name not in basis:
                self.fail(b, t.pos, f"a basis element of {what} ({', '.join(basis)})", repr(t.name))
            out[basis.index(t.name)] = self.value(b, t.coef, t.cpos or t.pos)
        return tuple(out)

    def ref(self, b: Block, kw: str, kind: str):
        name, pos = b.header[kw], b.where.get(("header", kw))
        art = lambda k: ("an " if k[0] in "aeiou" else "a ") + k
        if name not in self.blocks:
            self.fail(b, pos, f"{art(kind)} block named {name!r}", "no such block")
        other = self.blocks[name]
        if other.kind != kind:
            self.fail(b, pos, f"{art(kind)} block named {name!r}", f"{art(other.kind)} block")
        return self.get(name)

    def get(self, name: str):
        if name in self.objects:
            return self.objects[name]
        b = self.blocks[name]
        if name in self.active:
            self.fail(b, None, "non-circular block references", repr(name))
        self.active.add(name)
        obj = getattr(self, "_" + b.kind)(b)
        self.active.discard(name)
        self.objects[name] = obj
        return obj

    def index_of(self, b: Block, name: str, names, what: str, pos) -> int:
        if name not in names:
            self.fail(b, pos, f"{what} ({', '.join(names)})", repr(name))
        return names.index(name)

    def _lhs(self, b: Block, key: str, lhs: tuple, spaces: list, whats: list) -> tuple:
        pos = b.where.get((key, lhs), (b.pos,) * len(lhs))
        return tuple(self.index_of(b, x, sp, f"a basis element of {w}", p)
                     for x, sp, w, p in zip(lhs, spaces, whats, pos))

    def _indexed(self, b: Block, base: str, S: FiniteSemigroup):
        out = {}
        for key in b.fields:
            if key.startswith(base + "["):
                w = key[len(base) + 1:-1]
                out[self.index_of(b, w, S.elements, "a semigroup element", b.where.get(key))] = key
        return out

    def _basis(self, b: Block, dim_key: str, basis_key: str, default_prefix: str):
        basis = b.fields.get(basis_key)
        dim = b.fields.get(dim_key)
        if basis is None and dim is None:
            self.fail(b, None, f"'{basis_key}' or '{dim_key}'", "neither", ParseError)
        if basis is None:
            basis = tuple(f"{default_prefix}{k + 1}" for k in range(dim))
        if dim is not None and dim != len(basis):
            self.fail(b, b.where.get(dim_key), f"{dim_key} equal to the number of names in {basis_key} ({len(basis)})",
                      str(dim), ParseError)
        return tuple(basis)

    # -- block builders --------------------------------------------------

    def _semigroup(self, b: Block) -> FiniteSemigroup:
        els = b.fields.get("elements")
        if not els:
            self.fail(b, None, "an 'elements' field", "none", ParseError)
        n = len(els)
        table = [[None] * n for _ in range(n)]
        for (x, y), z in b.fields.get("table", {}).items():
            zpos = b.where.get(("table", (x, y), "value"))
            i, j = self._lhs(b, "table", (x, y), [els, els], [b.name, b.name])
            table[i][j] = self.index_of(b, z, els, f"an element of {b.name}", zpos)
        return FiniteSemigroup(tuple(els), tuple(tuple(r) for r in table))

    def _algebra(self, b: Block) -> HomAlgebra:
        S = self.ref(b, "uses", "semigroup")
        basis = self._basis(b, "dim", "basis", "x")
        n = len(basis)
        mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for lhs, terms in b.fields.get("mul", {}).items():
            i, j = self._lhs(b, "mul", lhs, [basis, basis], [b.name, b.name])
            mu[i][j] = self.vec(b, terms, basis, b.name)
        theta = self._matrix(b, "theta", basis, basis, b.name, b.name)
        P = [la.zeros(n, n)] * len(S)
        for w, key in self._indexed(b, "P", S).items():
            P[w] = self._matrix(b, key, basis, basis, b.name, b.name)
        return HomAlgebra(S, basis, mu, theta, tuple(P), b.header["weight"])

    def _matrix(self, b: Block, key: str, src, dst, swhat: str, dwhat: str):
        cols = [la.zero_vec(len(dst)) for _ in src]
        for lhs, terms in b.fields.get(key, {}).items():
            (j,) = self._lhs(b, key, lhs, [src], [swhat])
            cols[j] = self.vec(b, terms, dst, dwhat)
        return la.from_columns(cols, len(dst)) if src else tuple(() for _ in dst)

    def _tensor(self, b: Block, key: str, s1, s2, dst, w1: str, w2: str, wd: str):
        T = [[la.zero_vec(len(dst)) for _ in s2] for _ in s1]
        for lhs, terms in b.fields.get(key, {}).items():
            i, j = self._lhs(b, key, lhs, [s1, s2], [w1, w2])
            T[i][j] = self.vec(b, terms, dst, wd)
        return T

    def _actions(self, b: Block, R: HomAlgebra, vb, rname: str, vname: str) -> dict:
        rb = R.basis
        return dict(
            tri_l=self._tensor(b, "tri_l", rb, vb, vb, rname, vname, vname),
            tri_r=self._tensor(b, "tri_r", vb, rb, vb, vname, rname, vname),
            harp_r=self._tensor(b, "harp_r", vb, rb, rb, vname, rname, rname),
            harp_l=self._tensor(b, "harp_l", rb, vb, rb, rname, vname, rname),
        )

    def _datum(self, b: Block):
        from .extending import ExtendingDatum
        R = self.ref(b, "base", "algebra")
        vb = self._basis(b, "vdim", "vbasis", "v")
        S = R.semigroup
        rb = R.basis
        vname, rname = f"V of {b.name}", b.header["base"]
        clash = set(vb) & set(rb)
        if clash:
            self.fail(b, b.where.get("vbasis"), "V basis names distinct from the base basis", repr(sorted(clash)[0]),
                      ParseError)
        Q = [la.zeros(len(rb), len(vb))] * len(S)
        PV = [la.zeros(len(vb), len(vb))] * len(S)
        for w, key in self._indexed(b, "Q", S).items():
            Q[w] = self._matrix(b, key, vb, rb, vname, rname)
        for w, key in self._indexed(b, "P_V", S).items():
            PV[w] = self._matrix(b, key, vb, vb, vname, vname)
        return ExtendingDatum(
            R, vb, **self._actions(b, R, vb, rname, vname),
            f=self._tensor(b, "f", vb, vb, rb, vname, vname, rname),
            mul_V=self._tensor(b, "mul_V", vb, vb, vb, vname, vname, vname),
            Q=tuple(Q), P_V=tuple(PV),
            eta=self._matrix(b, "eta", vb, rb, vname, rname),
            theta_V=self._matrix(b, "theta_V", vb, vb, vname, vname))

    def _flag(self, b: Block):
        from .flag import FlagDatum
        R = self.ref(b, "base", "algebra")
        rb, S, name = R.basis, R.semigroup, b.header["base"]
        vec = lambda key: self.vec(b, b.fields.get(key, ()), rb, name)
        sc = lambda key: self.value(b, b.fields.get(key, ZERO), b.where.get(key))
        bs = [la.zero_vec(len(rb))] * len(S)
        ks = [ZERO] * len(S)
        for w, key in self._indexed(b, "b", S).items():
            bs[w] = vec(key)
        for w, key in self._indexed(b, "k", S).items():
            ks[w] = sc(key)
        return FlagDatum(R, vec("l"), vec("r"), self._matrix(b, "t_r", rb, rb, name, name),
                         self._matrix(b, "t_l", rb, rb, name, name), vec("a1"), sc("k1"), tuple(bs),
                         tuple(ks), vec("a2"), sc("k2"))

    def _pair(self, b: Block):
        from .matched import MatchedPair
        R = self.ref(b, "R", "algebra")
        V = self.ref(b, "V", "algebra")
        return MatchedPair(R, V, **self._actions(b, R, V.basis, b.header["R"], b.header["V"]))

    def _deform(self, b: Block):
        from .deformation import DeformationMap
        d = self.ref(b, "datum", "datum")
        dn = b.header["datum"]
        return DeformationMap(d, self._matrix(b, "d", d.vbasis, d.base.basis, f"V of {dn}", f"the base of {dn}"))

    def _grid(self, b: Block):
        from .flag import grid_fields
        R = self.ref(b, "base", "algebra")
        names = grid_fields(R.semigroup.elements)
        out = {}
        for key, vals in b.fields.items():
            if key not in names:
                self.fail(b, b.where.get(key), "a grid field (" + ", ".join(names) + ")", repr(key))
            out[key] = tuple(self.value(b, v, b.where.get(key)) for v in vals)
        return {"base": R, "fields": out}


def resolve(doc: Document, overrides: Mapping | None = None) -> Model:
    """Build every block of ``doc`` (and its imports) into library objects."""
    r = _Resolver(doc, overrides)
    for name in r.blocks:
        r.get(name)
    kinds = {n: b.kind for n, b in r.blocks.items()}
    return Model(r.objects, kinds, r.params, dict(r.blocks))


def render(doc: Document, overrides: Mapping | None = None) -> Document:
    """Copy of ``doc`` with templates evaluated and parameters dropped."""
    r = _Resolver(doc, overrides)

    def terms(b, ts):
        new = (Term(r.value(b, t.coef, t.cpos or t.pos), t.name, t.pos, t.cpos) for t in ts)
        return tuple(t for t in new if t.coef)

    blocks = []
    for b in doc.blocks:
        schema = SCHEMAS[b.kind]
        fields = {}
        for key, v in b.fields.items():
            kind = schema.get(key.split("[")[0], (SCALARS,))[0]
            pos = b.where.get(key)
            if kind == ENTRY:
                fields[key] = {lhs: t for lhs, ts in v.items() if (t := terms(b, ts))}
            elif kind == VECTOR:
                fields[key] = terms(b, v)
            elif kind == SCALAR:
                fields[key] = r.value(b, v, pos)
            elif kind == SCALARS:
                fields[key] = tuple(r.value(b, c, pos) for c in v)
            else:
                fields[key] = v
        nb = Block(b.kind, b.name, dict(b.header), fields, b.pos, dict(b.where))
        _drop_empty(nb)
        blocks.append(nb)
    return Document(list(doc.imports), {}, blocks, doc.source, list(doc.imported))


# ---------------------------------------------------------------------------
# objects -> blocks


def _terms(vec, basis) -> tuple:
    ts = [Term(c, n) for c, n in zip(vec, basis) if c]
    return tuple(sorted(ts, key=lambda t: _natural_key(t.name)))


def _entries1(M, src, dst) -> dict:
    out = {}
    for j, name in enumerate(src):
        t = _terms(la.column(M, j), dst)
        if t:
            out[(name,)] = t
    return out


def _entries2(T, s1, s2, dst) -> dict:
    out = {}
    for i, a in enumerate(s1):
        for j, c in enumerate(s2):
            t = _terms(T[i][j], dst)
            if t:
                out[(a, c)] = t
    return out


def semigroup_block(S: FiniteSemigroup, name: str) -> Block:
    els = S.elements
    table = {(els[i], els[j]): els[k] for i in range(len(els)) for j in range(len(els))
             if (k := S.table[i][j]) is not None}
    return Block("semigroup", name, {}, {"elements": tuple(els), "table": table})


def algebra_block(A: HomAlgebra, name: str, semigroup_name: str) -> Block:
    fields = {"dim": A.dim, "basis": A.basis}
    mul = _entries2(A.mu, A.basis, A.basis, A.basis)
    if mul:
        fields["mul"] = mul
    th = _entries1(A.theta, A.basis, A.basis)
    if th:
        fields["theta"] = th
    for w, M in zip(A.semigroup.elements, A.P):
        e = _entries1(M, A.basis, A.basis)
        if e:
            fields[f"P[{w}]"] = e
    return Block("algebra", name, {"over": "QL", "weight": A.weight, "uses": semigroup_name}, fields)


def datum_block(d, name: str, base_name: str) -> Block:
    rb, vb = d.base.basis, d.vbasis
    fields = {"vdim": d.m, "vbasis": vb}
    for key, T, s1, s2, dst in (("tri_l", d.tri_l, rb, vb, vb), ("tri_r", d.tri_r, vb, rb, vb),
                                ("harp_r", d.harp_r, vb, rb, rb), ("harp_l", d.harp_l, rb, vb, rb),
                                ("f", d.f, vb, vb, rb), ("mul_V", d.mul_V, vb, vb, vb)):
        e = _entries2(T, s1, s2, dst)
        if e:
            fields[key] = e
    for w, M in zip(d.base.semigroup.elements, d.Q):
        if e := _entries1(M, vb, rb):
            fields[f"Q[{w}]"] = e
    for w, M in zip(d.base.semigroup.elements, d.P_V):
        if e := _entries1(M, vb, vb):
            fields[f"P_V[{w}]"] = e
    if e := _entries1(d.eta, vb, rb):
        fields["eta"] = e
    if e := _entries1(d.theta_V, vb, vb):
        fields["theta_V"] = e
    return Block("datum", name, {"base": base_name}, fields)


def pair_block(mp, name: str, r_name: str, v_name: str) -> Block:
    rb, vb = mp.R.basis, mp.V.basis
    fields = {}
    for key, T, s1, s2, dst in (("tri_l", mp.tri_l, rb, vb, vb), ("tri_r", mp.tri_r, vb, rb, vb),
                                ("harp_r", mp.harp_r, vb, rb, rb), ("harp_l", mp.harp_l, rb, vb, rb)):
        if e := _entries2(T, s1, s2, dst):
            fields[key] = e
    return Block("pair", name, {"R": r_name, "V": v_name}, fields)


def deform_block(dm, name: str, datum_name: str) -> Block:
    fields = {}
    if e := _entries1(dm.d, dm.datum.vbasis, dm.datum.base.basis):
        fields["d"] = e
    return Block("deform", name, {"datum": datum_name}, fields)


def flag_block(F, name: str, base_name: str) -> Block:
    rb = F.base.basis
    fields = {}
    for key in ("l", "r"):
        if t := _terms(getattr(F, key), rb):
            fields[key] = t
    for key in ("t_r", "t_l"):
        if e := _entries1(getattr(F, key), rb, rb):
            fields[key] = e
    if t := _terms(F.a1, rb):
        fields["a1"] = t
    if F.k1:
        fields["k1"] = F.k1
    for w, v in zip(F.base.semigroup.elements, F.b):
        if t := _terms(v, rb):
            fields[f"b[{w}]"] = t
    for w, k in zip(F.base.semigroup.elements, F.kfam):
        if k:
            fields[f"k[{w}]"] = k
    if t := _terms(F.a2, rb):
        fields["a2"] = t
    if F.k2:
        fields["k2"] = F.k2
    return Block("flag", name, {"base": base_name}, fields)


__all__ = [
    "Block", "Document", "DuplicateBlockError", "Model", "ParseError", "Template", "Term",
    "UnresolvedReferenceError", "algebra_block", "datum_block", "deform_block", "flag_block", "load",
    "pair_block", "parse", "render", "resolve", "semigroup_block", "serialize",
]
