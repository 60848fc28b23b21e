"""Hall algebra elements and the idempotent operators E_r, pi_k, pi_t.

Data model
----------
A *letter* is a dimension vector (tuple of nonnegative ints, length 1 for
vector bundles).  A *word* ``(g1, ..., gn)`` stands for the Hall product
[g1] * ... * [gn].  A *monomial* is a sorted tuple of words and stands for
their commutative product; the empty monomial is the unit 1.  A
:class:`HallElement` is a finite rational combination of monomials.

E_r acts on a word by splitting every letter into r ordered pieces (an
n x r matrix whose row i sums to letter i) with no empty column; each column,
read top to bottom with zeros deleted, is a word and the columns multiply
commutatively.  On a commutative product E_p is expanded with the covering
numbers, see :func:`e_op`.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    aut_order,
    binom_poly,
    covering,
    lattice_sum,
    partitions,
    set_partitions,
    stirling1,
    stirling2,
)
from .qscalar import ParseError

__all__ = [
    "DimVector",
    "Word",
    "Monomial",
    "TruncationBound",
    "HallElement",
    "OutsideUError",
    "ConsistencyError",
    "word_key",
    "word_degree",
    "monomial_scalar_degree",
    "make_monomial",
    "format_monomial",
    "UNIT",
    "monomial_key",
    "monomial_degree",
    "comm_mul",
    "hall_mul",
    "e_op",
    "pi_op",
    "pi_t",
    "tpoly_mul",
    "eigen_check",
    "joyce_projection",
    "joyce_projection_tori",
    "filtration_degree",
    "parse_element",
    "format_tpoly",
    "words_up_to",
    "monomials_up_to",
    "binomial_power_t",
]

DimVector = Tuple[int, ...]
Word = Tuple[DimVector, ...]
Monomial = Tuple[Word, ...]

UNIT: Monomial = ()


class OutsideUError(ValueError):
    """A Hall product or coproduct was asked of a commutative product of
    two or more words, which lies outside the free subalgebra U."""


class ConsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagreed."""


# -- ordering -------------------------------------------------------------------


def _letter_degree(g: DimVector) -> int:
    return sum(g)


def word_degree(w: Word) -> int:
    return sum(sum(g) for g in w)


def word_key(w: Word):
    return (word_degree(w), len(w), w)


def monomial_key(m: Monomial):
    return (sum(word_degree(w) for w in m), len(m), tuple(word_key(w) for w in m))


def make_monomial(words: Iterable[Word]) -> Monomial:
    return tuple(sorted(words, key=word_key))


def monomial_scalar_degree(m: Monomial) -> int:
    return sum(word_degree(w) for w in m)


def monomial_degree(m: Monomial, vertex_count: Optional[int] = None) -> DimVector:
    """Total dimension vector of a monomial (sum of all letters)."""
    letters = [g for w in m for g in w]
    if not letters:
        return (0,) * (vertex_count or 1)
    n = len(letters[0])
    return tuple(sum(g[i] for g in letters) for i in range(n))


def _letter(x) -> DimVector:
    if isinstance(x, int):
        g = (x,)
    else:
        g = tuple(int(c) for c in x)
    if any(c < 0 for c in g) or not any(g):
        raise ValueError(f"letters must be nonzero nonnegative vectors, got {x!r}")
    return g


# -- truncation -------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationBound:
    """Cap on degrees kept by series computations.

    ``componentwise`` bounds every entry of the dimension vector, ``total``
    bounds the entry sum; either may be None.  An int passed to
    :meth:`coerce` becomes a total-degree cap, a sequence a componentwise one.
    """

    componentwise: Optional[DimVector] = None
    total: Optional[int] = None

    @classmethod
    def coerce(cls, value) -> Optional["TruncationBound"]:
        if value is None or isinstance(value, TruncationBound):
            return value
        if isinstance(value, int):
            return cls(total=value)
        return cls(componentwise=tuple(int(v) for v in value))

    def admits(self, degree: Sequence[int]) -> bool:
        if self.total is not None and sum(degree) > self.total:
            return False
        if self.componentwise is not None:
            if len(degree) != len(self.componentwise):
                raise ValueError(f"degree {tuple(degree)} does not match cap "
                                 f"{self.componentwise}")
            return all(d <= c for d, c in zip(degree, self.componentwise))
        return True

    def meet(self, other: Optional["TruncationBound"]) -> "TruncationBound":
        if other is None or other == self:
            return self
        if self.componentwise is None:
            comp = other.componentwise
        elif other.componentwise is None:
            comp = self.componentwise
        else:
            comp = tuple(min(a, b) for a, b in zip(self.componentwise,
                                                   other.componentwise))
        totals = [t for t in (self.total, other.total) if t is not None]
        return TruncationBound(comp, min(totals) if totals else None)

    def max_total(self, vertex_count: int) -> int:
        bounds = []
        if self.total is not None:
            bounds.append(self.total)
        if self.componentwise is not None:
            bounds.append(sum(self.componentwise))
        if not bounds:
            raise ValueError("unbounded truncation")
        return min(bounds)

    def dimension_vectors(self, vertex_count: int) -> list:
        """Nonzero dimension vectors admitted by the cap, in degree order."""
        top = self.max_total(vertex_count)
        out = []
        for g in iproduct(range(top + 1), repeat=vertex_count):
            if any(g) and self.admits(g):
                out.append(g)
        return sorted(out, key=lambda g: (sum(g), g))

    def __str__(self) -> str:
        parts = []
        if self.componentwise is not None:
            parts.append("<=" + str(self.componentwise))
        if self.total is not None:
            parts.append(f"|.|<={self.total}")
        return " and ".join(parts) or "none"


def _merge_caps(a, b):
    if a is None:
        return b
    return a.meet(b)


# -- elements -------------------------------------------------------------------


class HallElement:
    """A finite Q-linear combination of commutative monomials of Hall words.

    ``x * y`` is the commutative product, ``x @ y`` the Hall product; both
    accept rational scalars on either side of ``*``.  ``cap`` records the
    truncation a series value was computed under.  It is metadata: equality
    ignores it, but products of capped elements discard terms past the cap.
    """

    __slots__ = ("_terms", "cap", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None,
                 cap: Optional[TruncationBound] = None):
        self.cap = TruncationBound.coerce(cap)
        out = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if len(m) > 1:
                    m = make_monomial(m)
                if c and (self.cap is None or not m
                          or self.cap.admits(monomial_degree(m))):
                    out[m] = out.get(m, 0) + c
            out = {m: c for m, c in out.items() if c}
        self._terms = out
        self._hash = None

    @classmethod
    def _from_dict(cls, terms: dict, cap=None) -> "HallElement":
        # callers guarantee nonzero coefficients and admitted degrees
        x = object.__new__(cls)
        x._terms = terms
        x.cap = cap
        x._hash = None
        return x

    # constructors

    @classmethod
    def zero(cls) -> "HallElement":
        return cls()

    @classmethod
    def one(cls) -> "HallElement":
        return cls({UNIT: 1})

    @classmethod
    def word(cls, *letters) -> "HallElement":
        """The Hall word [letters]; ints stand for 1-vertex dimension vectors."""
        if not letters:
            return cls.one()
        return cls({(tuple(_letter(x) for x in letters),): 1})

    @classmethod
    def monomial(cls, *words) -> "HallElement":
        """Commutative product of words, each given as a sequence of letters."""
        ws = [tuple(_letter(x) for x in w) for w in words]
        if any(not w for w in ws):
            raise ValueError("empty word inside a monomial")
        return cls({make_monomial(ws): 1})

    @classmethod
    def parse(cls, text: str) -> "HallElement":
        return parse_element(text)

    # container protocol

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list:
        """(monomial, coefficient) pairs in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __iter__(self) -> Iterator[Monomial]:
        return iter(m for m, _ in self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, HallElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == HallElement({UNIT: other})._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # gradings

    def max_scalar_degree(self) -> int:
        return max((monomial_scalar_degree(m) for m in self._terms), default=0)

    def degrees(self) -> list:
        return sorted({monomial_degree(m) for m in self._terms if m},
                      key=lambda g: (sum(g), g))

    def part(self, degree: Sequence[int]) -> "HallElement":
        """Component of the given total dimension vector."""
        degree = tuple(degree)
        return HallElement._from_dict(
            {m: c for m, c in self._terms.items()
             if (monomial_degree(m, len(degree)) == degree)}, self.cap)

    def truncate(self, cap) -> "HallElement":
        cap = TruncationBound.coerce(cap)
        return HallElement(self._terms, _merge_caps(cap, self.cap))

    def in_U(self) -> bool:
        return all(len(m) <= 1 for m in self._terms)

    # linear structure

    def __neg__(self) -> "HallElement":
        return HallElement._from_dict({m: -c for m, c in self._terms.items()},
                                      self.cap)

    def __add__(self, other) -> "HallElement":
        if isinstance(other, (int, Fraction)):
            other = HallElement({UNIT: other})
        if not isinstance(other, HallElement):
            return NotImplemented
        cap = _merge_caps(self.cap, other.cap)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        if cap is not None and cap != self.cap:
            return HallElement(out, cap)
        if cap is not None and cap != other.cap:
            return HallElement(out, cap)
        return HallElement._from_dict(out, cap)

    __radd__ = __add__

    def __sub__(self, other) -> "HallElement":
        if isinstance(other, (int, Fraction)):
            other = HallElement({UNIT: other})
        if not isinstance(other, HallElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "HallElement":
        return (-self) + other

    def scale(self, c) -> "HallElement":
        c = Fraction(c)
        if not c:
            return HallElement._from_dict({}, self.cap)
        return HallElement._from_dict({m: v * c for m, v in self._terms.items()},
                                      self.cap)

    def __mul__(self, other) -> "HallElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, HallElement):
            return comm_mul(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "HallElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "HallElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __matmul__(self, other) -> "HallElement":
        if isinstance(other, HallElement):
            return hall_mul(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> "HallElement":
        """Commutative power."""
        out = HallElement({UNIT: 1}, self.cap)
        for _ in range(n):
            out = comm_mul(out, self)
        return out

    # text form

    def format(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.items():
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            body = str(a) if not m else f"{a}*{format_monomial(m)}"
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"HallElement({self.format()!r})"


def format_letter(g: DimVector) -> str:
    if len(g) == 1:
        return str(g[0])
    return "(" + ",".join(map(str, g)) + ")"


def format_word(w: Word) -> str:
    return "[" + ",".join(format_letter(g) for g in w) + "]"


def format_monomial(m: Monomial) -> str:
    return "".join(format_word(w) for w in m) if m else "1"


_ELEM_TOKEN = re.compile(r"\s*(\d+|[-+*/\[\](),])")


def parse_element(text: str) -> HallElement:
    """Parse the canonical text form, e.g. ``"1*[2] - 1/2*[1][1]"``.

    Grammar::

        element  := '0' | ['+'|'-'] term (('+'|'-') term)*
        term     := coeff ['*' monomial] | monomial
        coeff    := INT ['/' INT]
        monomial := '1' | word+
        word     := '[' letter (',' letter)* ']'
        letter   := INT | '(' INT (',' INT)* ')'
    """
    toks = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _ELEM_TOKEN.match(stripped, pos)
        if not m:
            raise ParseError(f"unexpected character at {stripped[pos:].strip()[:8]!r}")
        toks.append(m.group(1))
        pos = m.end()
    if not toks:
        raise ParseError("empty element")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'more input'!r} in {text!r}")
        i += 1
        return tok

    def integer():
        tok = take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer, got {tok!r} in {text!r}")
        return int(tok)

    def letter():
        if peek() == "(":
            take("(")
            comps = [integer()]
            while peek() == ",":
                take(",")
                comps.append(integer())
            take(")")
            return _letter(comps)
        return _letter(integer())

    def word():
        take("[")
        letters = [letter()]
        while peek() == ",":
            take(",")
            letters.append(letter())
        take("]")
        return tuple(letters)

    def monomial():
        if peek() == "1":
            take()
            return UNIT
        if peek() != "[":
            raise ParseError(f"expected a word in {text!r}")
        ws = []
        while peek() == "[":
            ws.append(word())
        return make_monomial(ws)

    def term():
        if peek() == "[":
            return Fraction(1), monomial()
        num = integer()
        coeff = Fraction(num)
        if peek() == "/":
            take("/")
            den = integer()
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            coeff = Fraction(num, den)
        if peek() == "*":
            take("*")
            return coeff, monomial()
        if peek() == "[":
            return coeff, monomial()
        return coeff, UNIT

    acc = defaultdict(Fraction)
    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    c, m = term()
    acc[m] += sign * c
    while peek() is not None:
        op = take()
        if op not in ("+", "-"):
            raise ParseError(f"expected '+' or '-' in {text!r}, got {op!r}")
        c, m = term()
        acc[m] += c if op == "+" else -c
    return HallElement(acc)


# -- products -------------------------------------------------------------------


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=word_key))


def comm_mul(x: HallElement, y: HallElement) -> HallElement:
    """Commutative product: bilinear extension of multiset union."""
    cap = _merge_caps(x.cap, y.cap)
    out = defaultdict(Fraction)
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            out[_mono_mul(a, b)] += ca * cb
    return HallElement(out, cap)


def _single_word(m: Monomial) -> Word:
    if len(m) > 1:
        raise OutsideUError(f"{format_monomial(m)} is a commutative product of "
                            "several words, outside U")
    return m[0] if m else ()


def hall_mul(x: HallElement, y: HallElement) -> HallElement:
    """Hall product on U: bilinear extension of word concatenation."""
    cap = _merge_caps(x.cap, y.cap)
    xs = [(_single_word(a), c) for a, c in x._terms.items()]
    ys = [(_single_word(b), c) for b, c in y._terms.items()]
    out = defaultdict(Fraction)
    for a, ca in xs:
        for b, cb in ys:
            w = a + b
            out[(w,) if w else UNIT] += ca * cb
    return HallElement(out, cap)


# -- idempotent operators E_r -------------------------------------------------------


@lru_cache(maxsize=None)
def _weak_compositions(n: int, r: int) -> tuple:
    if r == 0:
        return ((),) if n == 0 else ()
    if r == 1:
        return ((n,),)
    return tuple((first,) + rest for first in range(n, -1, -1)
                 for rest in _weak_compositions(n - first, r - 1))


@lru_cache(maxsize=None)
def _letter_splits(g: DimVector, r: int) -> tuple:
    """Ordered r-tuples of dimension vectors summing to g."""
    per_vertex = [_weak_compositions(c, r) for c in g]
    out = []
    for choice in iproduct(*per_vertex):
        out.append(tuple(tuple(comp[j] for comp in choice) for j in range(r)))
    return tuple(out)


@lru_cache(maxsize=None)
def _e_word(r: int, w: Word) -> Mapping[Monomial, int]:
    """E_r of a single nonempty word, as monomial -> multiplicity."""
    if r == 0 or r > word_degree(w):
        return {}
    remaining = [0] * (len(w) + 1)
    for i in range(len(w) - 1, -1, -1):
        remaining[i] = remaining[i + 1] + _letter_degree(w[i])
    out = defaultdict(int)

    def rec(i, cols):
        if i == len(w):
            out[make_monomial(cols)] += 1
            return
        empty = sum(1 for c in cols if not c)
        if empty > remaining[i]:
            return
        for split in _letter_splits(w[i], r):
            rec(i + 1, tuple(c + (s,) if any(s) else c
                             for c, s in zip(cols, split)))

    rec(0, ((),) * r)
    out.pop((), None)
    return {m: c for m, c in out.items() if all(m_w for m_w in m) and len(m) == r}


@lru_cache(maxsize=None)
def _e_monomial(p: int, m: Monomial) -> Mapping[Monomial, int]:
    """E_p of a commutative product of words via covering numbers."""
    if not m:
        return {UNIT: 1} if p == 0 else {}
    if len(m) == 1:
        return _e_word(p, m[0])
    if p == 0:
        return {}
    out = defaultdict(int)
    ranges = [range(1, min(word_degree(w), p) + 1) for w in m]
    for ns in iproduct(*ranges):
        if sum(ns) < p:
            continue
        cov = covering(p, ns)
        if not cov:
            continue
        partial = {UNIT: cov}
        for w, n in zip(m, ns):
            ew = _e_word(n, w)
            nxt = defaultdict(int)
            for a, ca in partial.items():
                for b, cb in ew.items():
                    nxt[_mono_mul(a, b)] += ca * cb
            partial = nxt
            if not partial:
                break
        for mono, c in partial.items():
            out[mono] += c
    return {k: v for k, v in out.items() if v}


def e_op(r: int, x: HallElement) -> HallElement:
    """E_r, the stack of r-tuples of nonzero orthogonal idempotents.

    On a word: sum over letter-splitting matrices with r nonempty columns.
    On a commutative product of words w_1 ... w_s:
    E_p(prod w_j) = sum_{(n_j)} covering(p, (n_j)) prod_j E_{n_j}(w_j).
    """
    if r < 0:
        raise ValueError("E_r needs r >= 0")
    out = defaultdict(Fraction)
    for m, c in x._terms.items():
        for mono, k in _e_monomial(r, m).items():
            out[mono] += c * k
    return HallElement(out, x.cap)


def pi_op(k: int, x: HallElement) -> HallElement:
    """Projection onto K^k: sum_{r >= k} s(r, k)/r! E_r."""
    out = HallElement._from_dict({}, x.cap)
    for r in range(k, x.max_scalar_degree() + 1):
        s = stirling1(r, k)
        if s:
            out = out + e_op(r, x).scale(Fraction(s, factorial(r)))
    return out


def pi_t(x: HallElement) -> dict:
    """pi_t(x) = sum_k pi_k(x) t^k, as a dict power -> HallElement.

    Computed through the projections and, independently, as
    sum_n binom(t, n) E_n(x); the two must agree.
    """
    top = x.max_scalar_degree()
    by_projection = {}
    for k in range(top + 1):
        v = pi_op(k, x)
        if v:
            by_projection[k] = v
    by_binomial = defaultdict(lambda: HallElement._from_dict({}, x.cap))
    for n in range(top + 1):
        en = e_op(n, x)
        if not en:
            continue
        for k, c in enumerate(binom_poly(n).coeffs):
            if c:
                by_binomial[k] = by_binomial[k] + en.scale(c)
    by_binomial = {k: v for k, v in by_binomial.items() if v}
    if by_projection != by_binomial:
        raise ConsistencyError("pi_t: projection route and binomial route differ")
    return by_projection


def tpoly_mul(a: Mapping[int, HallElement], b: Mapping[int, HallElement],
              mul=comm_mul) -> dict:
    """Product of polynomials in t with HallElement coefficients."""
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            z = mul(x, y)
            out[i + j] = out[i + j] + z if i + j in out else z
    return {k: v for k, v in out.items() if v}


def format_tpoly(p: Mapping[int, HallElement]) -> str:
    if not p:
        return "0"
    return " + ".join(f"({p[k]})*t^{k}" for k in sorted(p))


def eigen_check(r: int, k: int, x: HallElement) -> bool:
    """E_r(pi_k(x)) == r! S(k, r) pi_k(x)."""
    pk = pi_op(k, x)
    return e_op(r, pk) == pk.scale(factorial(r) * stirling2(k, r))


def filtration_degree(x: HallElement):
    """Least n with pi_j(x) = 0 for all j > n; ``"zero"`` for x = 0."""
    if not x:
        return "zero"
    top = x.max_scalar_degree()
    for j in range(top, -1, -1):
        if pi_op(j, x):
            return j
    raise ConsistencyError("nonzero element with all projections zero")


# -- comparison with virtual projections ------------------------------------------------


def _gl_monomial(parts: Sequence[int]) -> Monomial:
    return make_monomial([((p,),) for p in parts])


def joyce_projection(k: int, n: int) -> HallElement:
    """Virtual projection of [BGL_n] by the closed partition sum.

    sum over lambda |- n of s(l(lambda), k) / |Aut lambda| * prod_i [lambda_i].
    """
    if n < 1:
        raise ValueError("joyce_projection needs n >= 1")
    out = defaultdict(Fraction)
    for lam in partitions(n):
        s = stirling1(len(lam), k)
        if s:
            out[_gl_monomial(lam)] += Fraction(s, aut_order(lam))
    return HallElement(out)


def joyce_projection_tori(k: int, n: int) -> HallElement:
    """Virtual projection of [BGL_n] as a sum over the tori T_phi.

    Every set partition Q of {1..n} contributes
    prod|b|!/n! * (sum_{R <= Q, dim R = k} n(R, Q)) * prod_b [|b|],
    with the lattice sum computed by :func:`~.combinatorics.n_RQ`.  The
    enumeration is exponential in n; n <= 6 runs in about a second.
    """
    if n < 1:
        raise ValueError("joyce_projection_tori needs n >= 1")
    out = defaultdict(Fraction)
    for Q in set_partitions(n):
        sizes = [len(b) for b in Q.blocks]
        weight = Fraction(1, factorial(n))
        for s in sizes:
            weight *= factorial(s)
        total = lattice_sum(len(Q), k)
        if total:
            out[_gl_monomial(sizes)] += weight * total
    return HallElement(out)


# -- enumeration and generating functions ------------------------------------------


def words_up_to(top: int, vertex_count: int = 1, cap=None) -> list:
    """All words of total degree 1..top, in canonical word order."""
    cap = TruncationBound.coerce(cap)
    letters = [g for g in iproduct(range(top + 1), repeat=vertex_count)
               if 0 < sum(g) <= top]
    out = []

    def rec(prefix, deg):
        if prefix:
            out.append(prefix)
        for g in letters:
            d = deg + sum(g)
            if d <= top:
                rec(prefix + (g,), d)

    rec((), 0)
    if cap is not None:
        out = [w for w in out if cap.admits(monomial_degree((w,)))]
    return sorted(out, key=word_key)


def monomials_up_to(top: int, vertex_count: int = 1) -> list:
    """All commutative monomials of total degree 0..top, in monomial order."""
    words = words_up_to(top, vertex_count)
    out = []

    def rec(start, chosen, deg):
        out.append(tuple(chosen))
        for i in range(start, len(words)):
            d = deg + word_degree(words[i])
            if d <= top:
                chosen.append(words[i])
                rec(i, chosen, d)
                chosen.pop()

    rec(0, [], 0)
    return sorted((make_monomial(m) for m in out), key=monomial_key)


def binomial_power_t(x: HallElement, cap, mul=comm_mul) -> dict:
    """(1 + x)^t = sum_j binom(t, j) x^j as a dict power of t -> element.

    x must have zero constant term; powers are truncated by the cap, so the
    sum is finite.
    """
    cap = TruncationBound.coerce(cap)
    if x[UNIT]:
        raise ValueError("binomial_power_t needs zero constant term")
    x = x.truncate(cap)
    out: dict = {}
    power = HallElement({UNIT: 1}, cap)
    j = 0
    while power:
        for k, c in enumerate(binom_poly(j).coeffs):
            if c:
                term = power.scale(c)
                out[k] = out[k] + term if k in out else term
        power = mul(power, x)
        j += 1
    return {k: v for k, v in out.items() if v}
