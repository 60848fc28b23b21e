"""Exact arithmetic in Q(q), the field of rational functions in q.

Motivic weights (classes of GL_n, of representation stacks, eigenvalues of
semi-simple inertia) all live here.  Everything is exact: coefficients are
:class:`fractions.Fraction` and rational functions are kept in lowest terms
with a monic denominator, so ``==`` compares canonical representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "QPoly",
    "QRat",
    "Q",
    "NotRegularError",
    "ParseError",
    "arithmetic",
    "ord_at_one",
    "is_regular",
    "residue",
    "gl_class",
    "partition_poly",
    "parse_qrat",
]

Scalar = Union[int, Fraction]


class ParseError(ValueError):
    """Raised for text that does not follow the documented grammar."""


class NotRegularError(ArithmeticError):
    """Raised when a value has a pole at q=1 where regularity is required."""


class QPoly:
    """Polynomial with rational coefficients, ``coeffs[i]`` multiplies q^i.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "QPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def __neg__(self) -> "QPoly":
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "QPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "QPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lead
        if len(rem) <= db:
            return QPoly._raw(()), self
        quot = [Fraction(0)] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = c / lb
                quot[i - db] = f
                for j in range(db + 1):
                    rem[i - db + j] -= f * b[j]
        return QPoly(quot), QPoly(rem[:db])

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def monic(self) -> "QPoly":
        if not self:
            return self
        lc = self.lead
        if lc == 1:
            return self
        return QPoly._raw(tuple(c / lc for c in self.coeffs))

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def root_one_multiplicity(self) -> int:
        """Multiplicity of the root q=1, by repeated synthetic division."""
        if not self:
            raise ValueError("zero polynomial has every root")
        cs = list(self.coeffs)
        mult = 0
        while True:
            # synthetic division by (q - 1); the final carry is the value at 1
            carry = Fraction(0)
            quot = [Fraction(0)] * (len(cs) - 1)
            for i in range(len(cs) - 1, -1, -1):
                carry = carry + cs[i]
                if i:
                    quot[i - 1] = carry
            if carry != 0:
                return mult
            mult += 1
            cs = quot

    def format(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = str(a)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if a == 1 else f"{a}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x):
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return QPoly([x])
    return NotImplemented


def _valuation(p: QPoly) -> int:
    for i, c in enumerate(p.coeffs):
        if c:
            return i
    return 0


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd over Q (Euclid); gcd(0, 0) is 0."""
    a = a.monic()
    while b:
        # monic remainders keep the coefficients small
        a, b = b.monic(), a % b
    return a.monic()


_ONE_POLY = QPoly([1])


class QRat:
    """An element of Q(q) in canonical form.

    ``numerator`` and ``denominator`` are coprime and the denominator is
    monic; zero is ``0/1``.  Instances are immutable and hashable.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, numerator=0, denominator=1):
        num = _as_poly(numerator)
        den = _as_poly(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("QRat needs polynomial or rational arguments")
        if not den:
            raise ZeroDivisionError("QRat with zero denominator")
        if not num:
            num, den = QPoly._raw(()), _ONE_POLY
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            num = QPoly._raw(tuple(c / lc for c in num.coeffs))
            den = QPoly._raw(tuple(c / lc for c in den.coeffs))
        self.numerator = num
        self.denominator = den
        self._hash = None

    @classmethod
    def _reduced(cls, num: QPoly, den: QPoly, g) -> "QRat":
        """num/den with monic den, given that gcd(num, den) divides g (None: 1)."""
        if not num:
            return cls._canonical(QPoly._raw(()), _ONE_POLY)
        if g is not None:
            h = poly_gcd(num, g)
            if h.degree > 0:
                num, den = num // h, den // h
        return cls._canonical(num, den)

    @classmethod
    def _canonical(cls, num: QPoly, den: QPoly) -> "QRat":
        r = object.__new__(cls)
        r.numerator = num
        r.denominator = den
        r._hash = None
        return r

    # -- predicates and basic data -------------------------------------

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def is_constant(self) -> bool:
        return self.numerator.is_constant() and self.denominator.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.numerator(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, QRat):
            return (self.numerator == other.numerator
                    and self.denominator == other.denominator)
        if isinstance(other, (int, Fraction, QPoly)):
            return self == QRat(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.numerator.coeffs, self.denominator.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"QRat({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        if self.denominator == _ONE_POLY:
            return self.numerator.format()
        return f"({self.numerator.format()})/({self.denominator.format()})"

    # -- field operations -----------------------------------------------

    def __neg__(self) -> "QRat":
        return QRat._canonical(-self.numerator, self.denominator)

    def __add__(self, other) -> "QRat":
        other = _as_qrat(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        b, d = self.denominator, other.denominator
        if b == d:
            return QRat(self.numerator + other.numerator, b)
        g = poly_gcd(b, d)
        if g.degree == 0:
            return QRat._reduced(self.numerator * d + other.numerator * b, b * d, None)
        b1, d1 = b // g, d // g
        num = self.numerator * d1 + other.numerator * b1
        # any common factor of num and b1*d1*g divides g
        return QRat._reduced(num, b1 * d, g)

    __radd__ = __add__

    def __sub__(self, other) -> "QRat":
        other = _as_qrat(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QRat":
        return (-self) + other

    def __mul__(self, other) -> "QRat":
        other = _as_qrat(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return QRat._canonical(QPoly._raw(()), _ONE_POLY)
        if other.is_constant():
            c = other.numerator.coeffs[0]
            return QRat._canonical(
                QPoly._raw(tuple(x * c for x in self.numerator.coeffs)),
                self.denominator)
        if self.is_constant():
            return other * self
        if self.is_q_power():
            return other._shift(self)
        if other.is_q_power():
            return self._shift(other)
        # cross-cancel; the four cofactors are pairwise coprime and the
        # denominators stay monic, so the product is already canonical
        g1 = poly_gcd(self.numerator, other.denominator)
        g2 = poly_gcd(other.numerator, self.denominator)
        n1, d2 = self.numerator // g1, other.denominator // g1
        n2, d1 = other.numerator // g2, self.denominator // g2
        return QRat._canonical(n1 * n2, d1 * d2)

    def is_q_power(self) -> bool:
        """True for c*q^n with n of either sign."""
        return len(self.numerator.coeffs) - _valuation(self.numerator) == 1 and \
            len(self.denominator.coeffs) - _valuation(self.denominator) == 1

    def _shift(self, mono: "QRat") -> "QRat":
        # self * c q^n, cancelling powers of q against the other side
        n = mono.numerator.degree - mono.denominator.degree
        c = mono.numerator.lead
        num = tuple(x * c for x in self.numerator.coeffs)
        den = self.denominator.coeffs
        if n > 0:
            cut = min(n, _valuation(self.denominator))
            den = den[cut:]
            num = (Fraction(0),) * (n - cut) + num
        elif n < 0:
            cut = min(-n, _valuation(self.numerator))
            num = num[cut:]
            den = (Fraction(0),) * (-n - cut) + den
        return QRat._canonical(QPoly._raw(num), QPoly._raw(den))

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRat(self.denominator, self.numerator)

    def __truediv__(self, other) -> "QRat":
        other = _as_qrat(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QRat":
        return _as_qrat(other) * self.inverse()

    def __pow__(self, n: int) -> "QRat":
        if n < 0:
            return self.inverse() ** (-n)
        return QRat._canonical(self.numerator ** n, self.denominator ** n)

    def __call__(self, x: Scalar) -> Fraction:
        d = self.denominator(x)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at q={x}")
        return self.numerator(x) / d


def _as_qrat(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return QRat._canonical(QPoly._raw(()), _ONE_POLY)
        return QRat._canonical(QPoly._raw((Fraction(x),)), _ONE_POLY)
    if isinstance(x, QPoly):
        return QRat._canonical(x, _ONE_POLY)
    return NotImplemented


Q = QRat(QPoly([0, 1]))
"""The class of the affine line."""

ONE = QRat(1)
ZERO = QRat(0)


def arithmetic(a: QRat, b: QRat, op: str) -> QRat:
    """Apply ``op`` (one of add, sub, mul, div) to two rational functions."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ord_at_one(a: QRat) -> int:
    """Order of vanishing at q=1; negative for a pole."""
    if not a:
        raise ValueError("ord_at_one is undefined for 0")
    return (a.numerator.root_one_multiplicity()
            - a.denominator.root_one_multiplicity())


def is_regular(a: QRat) -> bool:
    # in lowest terms, a pole at 1 shows up as a root of the denominator
    return a.denominator(1) != 0


_Q_MINUS_ONE = QRat(QPoly([-1, 1]))


def residue(a: QRat, k: int = 1) -> Fraction:
    """Value of (q-1)^k * a at q=1."""
    b = a * _Q_MINUS_ONE ** k if k else a
    if not is_regular(b):
        raise NotRegularError(f"(q-1)^{k} * ({a}) has a pole at q=1")
    return b(1)


@lru_cache(maxsize=None)
def gl_class(n: int) -> QRat:
    """[GL_n] = q^(n(n-1)/2) * prod_{i=1..n} (q^i - 1)."""
    if n < 0:
        raise ValueError("gl_class needs n >= 0")
    p = QPoly.monomial(n * (n - 1) // 2)
    for i in range(1, n + 1):
        p = p * (QPoly.monomial(i) - 1)
    return QRat(p)


def partition_poly(parts: Sequence[int]) -> QRat:
    """prod_i (q^{lambda_i} - 1); 1 for the empty partition."""
    p = QPoly([1])
    for part in parts:
        if part <= 0:
            raise ValueError(f"partition parts must be positive, got {part}")
        p = p * (QPoly.monomial(part) - 1)
    return QRat(p)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} "
                             f"in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("q", None))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _RatParser:
    # expr := term (('+'|'-') term)*
    # term := unary (('*'|'/') unary)*
    # unary := ('-'|'+') unary | power
    # power := atom ('^' ['-'] INT)?
    # atom := INT | 'q' | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> QRat:
        if not self.toks:
            raise ParseError("empty rational function")
        r = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return r

    def expr(self) -> QRat:
        r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            r = r + rhs if op == "+" else r - rhs
        return r

    def term(self) -> QRat:
        r = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            r = r * rhs if op == "*" else r / rhs
        return r

    def unary(self) -> QRat:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> QRat:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            base = base ** (sign * val)
        return base

    def atom(self) -> QRat:
        kind, val = self.take()
        if kind == "num":
            return QRat(val)
        if kind == "q":
            return Q
        if (kind, val) == ("op", "("):
            r = self.expr()
            self.expect_op(")")
            return r
        raise ParseError(f"unexpected token in {self.text!r}")


def parse_qrat(text: str) -> QRat:
    """Parse a rational function of q, e.g. ``"(q^2 - 1)/(q - 1)"``.

    Accepts the output of :meth:`QRat.format` and, more generally, any
    expression built from rational numbers and ``q`` with ``+ - * / ^``
    and parentheses.  Division by zero raises :class:`ZeroDivisionError`.
    """
    return _RatParser(text).parse()
