"""Exact arithmetic in Q(l).

Rationals are :class:`fractions.Fraction`.  Polynomials over Q are stored as
tuples of coefficients, index ``i`` holding the coefficient of ``l**i``, with
no trailing zeros (the zero polynomial is the empty tuple).  A :class:`Scalar`
is a reduced quotient ``num/den`` of such polynomials with ``den`` monic, so
equal rational functions are structurally equal.

Literal syntax, ``l`` standing for the indeterminate::

    scalar   := ratfunc
    ratfunc  := poly | "(" poly ")" "/" "(" poly ")"
    poly     := term { ("+"|"-") term }
    term     := rational | rational "*" mono | mono
    mono     := "l" | "l" "^" uint
    rational := ["-"] uint [ "/" uint ]

:func:`parse_scalar` accepts any rational expression built from these atoms
(a superset of the grammar); ``str(Scalar)`` emits the canonical form above.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Mapping, Union

from .errors import DegreeCapError, PoleError, ScalarParseError, ScalarZeroDivisionError

MAX_DEGREE = 64

_ZERO_Q = Fraction(0)
_ONE_Q = Fraction(1)

# ---------------------------------------------------------------------------
# coefficient-tuple polynomial kernels


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _check_degree(c):
    if len(c) - 1 > MAX_DEGREE:
        raise DegreeCapError(f"polynomial degree {len(c) - 1} exceeds cap {MAX_DEGREE}")
    return c


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def _psub(a, b):
    n = max(len(a), len(b))
    c = [_ZERO_Q] * n
    for i, x in enumerate(a):
        c[i] = x
    for i, x in enumerate(b):
        c[i] -= x
    return _trim(c)


def _pneg(a):
    return tuple(-x for x in a)


def _pscale(a, q):
    if not q:
        return ()
    return tuple(x * q for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    c = [_ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _check_degree(_trim(c))


def _pdivmod(a, b):
    if not b:
        raise ScalarZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [_ZERO_Q] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c:
            c = c / lb
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def _pmonic(a):
    if not a or a[-1] == 1:
        return a
    return _pscale(a, 1 / a[-1])


def _pgcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, _pmonic(_pdivmod(a, b)[1])
    return _pmonic(a)


def _peval(a, x):
    acc = _ZERO_Q
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _rat_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _mono_str(k: int) -> str:
    return "l" if k == 1 else f"l^{k}"


def _poly_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if not parts:
            if k == 0:
                parts.append(_rat_str(c))
            elif c == 1:
                parts.append(_mono_str(k))
            else:
                parts.append(f"{_rat_str(c)}*{_mono_str(k)}")
            continue
        parts.append("+" if c > 0 else "-")
        c = abs(c)
        if k == 0:
            parts.append(_rat_str(c))
        elif c == 1:
            parts.append(_mono_str(k))
        else:
            parts.append(f"{_rat_str(c)}*{_mono_str(k)}")
    return "".join(parts)


def _rat_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _psqrt(a):
    """Square root in Q[l] if ``a`` is a perfect square, else None."""
    if not a:
        return ()
    if (len(a) - 1) % 2:
        return None
    top = _rat_sqrt(a[-1])
    if top is None:
        return None
    k = (len(a) - 1) // 2
    s = [_ZERO_Q] * (k + 1)
    s[k] = top
    for i in range(k - 1, -1, -1):
        # coefficient of l^(k+i) in s^2 = 2*s_k*s_i + sum_{j>i, k+i-j>i} s_j s_{k+i-j}
        acc = a[k + i]
        for j in range(i + 1, k):
            m = k + i - j
            if i < m <= k:
                acc -= s[j] * s[m]
        s[i] = acc / (2 * top)
    s = _trim(s)
    return s if _pmul(s, s) == a else None


# ---------------------------------------------------------------------------


class Poly:
    """Polynomial over Q in ``l``; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = _trim([Fraction(x) for x in coeffs])
        object.__setattr__(self, "coeffs", _check_degree(c))

    @classmethod
    def _wrap(cls, t) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", t)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        return Poly._wrap(_padd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly._wrap(_psub(self.coeffs, other.coeffs))

    def __neg__(self) -> "Poly":
        return Poly._wrap(_pneg(self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly._wrap(_pmul(self.coeffs, other.coeffs))

    def __divmod__(self, other: "Poly"):
        q, r = _pdivmod(self.coeffs, other.coeffs)
        return Poly._wrap(q), Poly._wrap(r)

    def gcd(self, other: "Poly") -> "Poly":
        return Poly._wrap(_pgcd(self.coeffs, other.coeffs))

    def monic(self) -> "Poly":
        return Poly._wrap(_pmonic(self.coeffs))

    def sqrt(self):
        s = _psqrt(self.coeffs)
        return None if s is None else Poly._wrap(s)

    def __call__(self, x) -> Fraction:
        return _peval(self.coeffs, Fraction(x))

    def __str__(self):
        return _poly_str(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"


_ONE_T = (_ONE_Q,)


class Scalar:
    """Element of Q(l) in reduced form: ``num/den``, gcd 1, ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, str, Poly, "Scalar"] = 0, den=None):
        if isinstance(value, Scalar) and den is None:
            n, d = value.num, value.den
        elif isinstance(value, str) and den is None:
            s = parse_scalar(value)
            n, d = s.num, s.den
        else:
            n = value.coeffs if isinstance(value, Poly) else _trim([Fraction(value)])
            if den is None:
                d = _ONE_T
            else:
                d = den.coeffs if isinstance(den, Poly) else _trim([Fraction(den)])
            n, d = _normalize(n, d, "Scalar()")
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, n, d=_ONE_T) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "num", n)
        object.__setattr__(s, "den", d)
        object.__setattr__(s, "_hash", None)
        return s

    @classmethod
    def from_polys(cls, num: Poly, den: Poly) -> "Scalar":
        return cls._make(*_normalize(num.coeffs, den.coeffs, "from_polys"))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates -----------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    @property
    def is_polynomial(self) -> bool:
        return self.den == _ONE_T

    @property
    def is_rational(self) -> bool:
        return self.den == _ONE_T and len(self.num) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not a rational constant")
        return self.num[0] if self.num else _ZERO_Q

    @property
    def numerator(self) -> Poly:
        return Poly._wrap(self.num)

    @property
    def denominator(self) -> Poly:
        return Poly._wrap(self.den)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == _ONE_T and other.den == _ONE_T:
            return Scalar._make(_padd(self.num, other.num))
        if self.den == other.den:
            return Scalar._make(*_normalize(_padd(self.num, other.num), self.den, "add"))
        n = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar._make(*_normalize(n, _pmul(self.den, other.den), "add"))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(_pneg(self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other) - self
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _ONE_T and other.den == _ONE_T:
            return Scalar._make(_pmul(self.num, other.num))
        # cross-cancel before multiplying keeps the result reduced
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        n1, d2 = (self.num, other.den) if len(g1) == 1 else (
            _pdivmod(self.num, g1)[0], _pdivmod(other.den, g1)[0])
        n2, d1 = (other.num, self.den) if len(g2) == 1 else (
            _pdivmod(other.num, g2)[0], _pdivmod(self.den, g2)[0])
        n, d = _pmul(n1, n2), _pmul(d1, d2)
        lc = d[-1]
        if lc != 1:
            n, d = _pscale(n, 1 / lc), _pscale(d, 1 / lc)
        return Scalar._make(n, d)

    __rmul__ = __mul__

    def inverse(self, site: str = "scalar_div") -> "Scalar":
        if not self.num:
            raise ScalarZeroDivisionError(f"division by zero in {site}")
        n, d = self.den, self.num
        lc = d[-1]
        if lc != 1:
            n, d = _pscale(n, 1 / lc), _pscale(d, 1 / lc)
        return Scalar._make(n, d)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inverse("scalar_div")

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other) / self
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse("pow") ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation, comparison, printing --------------------------------

    def eval(self, v) -> Fraction:
        v = Fraction(v)
        d = _peval(self.den, v)
        if not d:
            raise PoleError(f"denominator of {self} vanishes at l = {_rat_str(v)}")
        return _peval(self.num, v) / d

    def sqrt(self):
        """Square root in Q(l), or None when it does not exist there."""
        sn, sd = _psqrt(self.num), _psqrt(self.den)
        if sn is None or sd is None:
            return None
        return Scalar._make(*_normalize(sn, sd, "sqrt"))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den == _ONE_T and self.num == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.den == _ONE_T and len(self.num) <= 1:
                h = hash(self.num[0] if self.num else 0)
            else:
                h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        if self.den == _ONE_T:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"Scalar('{self}')"

    @property
    def is_monomial(self) -> bool:
        """True for ``c*l^k`` (a single nonzero term, polynomial)."""
        return self.den == _ONE_T and sum(1 for c in self.num if c) == 1


def _normalize(n, d, site):
    if not d:
        raise ScalarZeroDivisionError(f"division by zero in {site}")
    if not n:
        return (), _ONE_T
    if len(d) > 1:
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
    lc = d[-1]
    if lc != 1:
        n, d = _pscale(n, 1 / lc), _pscale(d, 1 / lc)
    return n, d


ZERO = Scalar._make(())
ONE = Scalar._make(_ONE_T)
LAMBDA = Scalar._make((_ZERO_Q, _ONE_Q))


def to_scalar(x) -> Scalar:
    """Coerce ints, Fractions, literal strings and Scalars."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(x)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    return a * b.inverse("scalar_div")


def scalar_eval(a: Scalar, v) -> Fraction:
    return a.eval(v)


# ---------------------------------------------------------------------------
# parsing


class _ExprParser:
    """Recursive descent over + - * / ^ and parentheses.

    Identifiers other than ``l`` are looked up in ``env``.
    """

    def __init__(self, text: str, env: Mapping[str, Scalar] | None, offset: int):
        self.text = text
        self.env = env or {}
        self.offset = offset
        self.pos = 0

    def error(self, expected: str):
        self.skip()
        found = self.text[self.pos:self.pos + 12] or "end of input"
        raise ScalarParseError(expected, found, self.offset + self.pos)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek():
            self.error("operator or end of scalar")
        return v

    def expr(self) -> Scalar:
        sign = None
        if self.peek() in "+-" and self.peek():
            sign = self.text[self.pos]
            self.pos += 1
        v = self.term()
        if sign == "-":
            v = -v
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> Scalar:
        v = self.power()
        while self.peek() and self.peek() in "*/":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.power()
            if op == "*":
                v = v * rhs
            else:
                if not rhs:
                    self.error("nonzero divisor")
                v = v / rhs
        return v

    def power(self) -> Scalar:
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("unsigned integer exponent")
            v = v ** int(self.text[start:self.pos])
        return v

    def atom(self) -> Scalar:
        c = self.peek()
        if c == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("')'")
            self.pos += 1
            return v
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Scalar._make(_trim([Fraction(int(self.text[start:self.pos]))]))
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "l":
                return LAMBDA
            if name in self.env:
                return to_scalar(self.env[name])
            self.pos = start
            self.error("'l', a number or '('" if not self.env else f"a known name ({', '.join(sorted(self.env))})")
        if c == "-" or c == "+":
            # unary sign inside a product, e.g. "2*-l"
            self.pos += 1
            v = self.atom()
            return -v if c == "-" else v
        self.error("'l', a number or '('")


def parse_scalar(text: str, env: Mapping[str, Scalar] | None = None, offset: int = 0) -> Scalar:
    """Parse a scalar literal (or rational expression) into a :class:`Scalar`."""
    return _ExprParser(text, env, offset).parse()
