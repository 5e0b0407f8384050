"""Polynomials in one unknown with coefficients in Q(l), and their low-degree roots."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedError
from .scalars import ONE, ZERO, Scalar, to_scalar


class DPoly:
    """Immutable polynomial ``sum c_k u^k`` with :class:`Scalar` coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [to_scalar(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def var(cls) -> "DPoly":
        return cls((ZERO, ONE))

    @classmethod
    def const(cls, x) -> "DPoly":
        return cls((x,))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    @staticmethod
    def _lift(x):
        if isinstance(x, DPoly):
            return x
        if isinstance(x, (Scalar, int)):
            return DPoly((x,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = o.c + (ZERO,) * (n - len(o.c))
        return DPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return DPoly(-x for x in self.c)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return DPoly()
        out = [ZERO] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return DPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        return o is not None and self.c == o.c

    def __hash__(self):
        return hash(("DPoly", self.c))

    def __call__(self, x) -> Scalar:
        acc = ZERO
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def monic(self) -> "DPoly":
        if not self.c:
            return self
        inv = self.c[-1].inverse("monic")
        return DPoly(x * inv for x in self.c)

    def divmod(self, other: "DPoly"):
        if not other.c:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        q = [ZERO] * max(len(r) - len(other.c) + 1, 0)
        lead_inv = other.c[-1].inverse("polynomial division")
        for k in range(len(r) - len(other.c), -1, -1):
            coef = r[k + len(other.c) - 1] * lead_inv
            q[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    r[k + j] = r[k + j] - coef * y
        return DPoly(q), DPoly(r[:len(other.c) - 1])

    def to_str(self, var: str = "u") -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            c = self.c[k]
            if not c:
                continue
            cs = str(c)
            if k and (any(ch in cs[1:] for ch in "+-") or "/" in cs):
                cs = f"({cs})"
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if k and c == 1:
                t = mono
            elif k and c == -1:
                t = "-" + mono
            else:
                t = cs + ("*" + mono if mono else "")
            terms.append(t)
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"DPoly({self})"


def poly_gcd(a: DPoly, b: DPoly) -> DPoly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


@dataclass(frozen=True)
class Roots:
    """Roots of a polynomial of degree at most two.

    ``kind`` is ``"all"`` (zero polynomial), ``"finite"`` or ``"irrational"``.
    """

    kind: str
    values: tuple = ()
    note: str = ""


def roots_upto2(p: DPoly) -> Roots:
    if not p:
        return Roots("all")
    if p.degree == 0:
        return Roots("finite", ())
    if p.degree == 1:
        c0, c1 = p.c
        return Roots("finite", (-c0 / c1,))
    if p.degree == 2:
        c0, c1, c2 = p.c
        disc = c1 * c1 - 4 * c2 * c0
        s = disc.sqrt()
        if s is None:
            return Roots("irrational", (), f"discriminant {disc} is not a square in Q(l)")
        r1 = (-c1 - s) / (2 * c2)
        r2 = (-c1 + s) / (2 * c2)
        vals = (r1,) if r1 == r2 else tuple(sorted((r1, r2), key=str))
        return Roots("finite", vals)
    raise UnsupportedError(f"root finding above degree 2 is not supported (degree {p.degree})")


def common_roots(polys) -> Roots:
    """Common roots of a family of polynomials, each of degree at most two."""
    polys = [p for p in polys if p]
    if not polys:
        return Roots("all")
    for p in polys:
        if p.degree > 2:
            raise UnsupportedError(f"constraint of degree {p.degree} exceeds the supported degree 2")
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
    return roots_upto2(g.monic())
