"""The integral into the q-twisted group algebra and its q = 1 residues.

A :class:`MotivicSeries` is a truncated sum of QRat coefficients times
symbols u^gamma.  Two products act on it: the twisted one,
u^g * u^b = q^{-chi(b, g)} u^{g+b}, and the plain coefficientwise one.
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional

from .epsilon import QuiverSpec, vir_failures
from .hallcore import HallElement, TruncationBound, Word, hall_mul
from .qscalar import (
    ONE,
    Q,
    NotRegularError,
    ParseError,
    QRat,
    gl_class,
    is_regular,
    parse_qrat,
)

__all__ = [
    "MotivicSeries",
    "TwistMismatchError",
    "twisted_mul",
    "plain_mul",
    "rep_class",
    "integrate",
    "no_poles_check",
    "residue_series",
    "series_log",
    "series_exp",
    "lie_morphism_check",
    "lie_sides",
]


class TwistMismatchError(ValueError):
    """Series built over different quivers were combined."""


def _q_power(n: int) -> QRat:
    return Q ** n


def _degree_key(g):
    return (sum(g), g)


class MotivicSeries:
    """Finite map from dimension vectors to nonzero QRat coefficients."""

    __slots__ = ("coeffs", "quiver", "cap")

    def __init__(self, coeffs: Optional[Mapping] = None, quiver: QuiverSpec = None,
                 cap=None):
        if quiver is None:
            raise ValueError("a motivic series needs its quiver")
        self.quiver = quiver
        self.cap = TruncationBound.coerce(cap)
        out = {}
        for g, c in (coeffs or {}).items():
            g = tuple(int(x) for x in g)
            quiver._check(g)
            c = c if isinstance(c, QRat) else QRat(c)
            if c and (self.cap is None or not any(g) or self.cap.admits(g)):
                out[g] = c
        self.coeffs: Dict[tuple, QRat] = out

    @classmethod
    def monomial(cls, degree, coeff, quiver: QuiverSpec, cap=None) -> "MotivicSeries":
        return cls({tuple(degree): coeff}, quiver, cap)

    def _like(self, coeffs, cap) -> "MotivicSeries":
        return MotivicSeries(coeffs, self.quiver, cap)

    def _join(self, other: "MotivicSeries"):
        if not isinstance(other, MotivicSeries):
            raise TypeError("expected a MotivicSeries")
        if other.quiver != self.quiver:
            raise TwistMismatchError("series over different quivers cannot be combined")
        if self.cap is None:
            return other.cap
        return self.cap.meet(other.cap)

    def __getitem__(self, degree) -> QRat:
        return self.coeffs.get(tuple(degree), QRat(0))

    def degrees(self) -> list:
        return sorted(self.coeffs, key=_degree_key)

    def items(self) -> list:
        return [(g, self.coeffs[g]) for g in self.degrees()]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotivicSeries):
            return NotImplemented
        return self.quiver == other.quiver and self.coeffs == other.coeffs

    def __add__(self, other: "MotivicSeries") -> "MotivicSeries":
        cap = self._join(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out[g] + c if g in out else c
        return self._like(out, cap)

    def __neg__(self) -> "MotivicSeries":
        return self._like({g: -c for g, c in self.coeffs.items()}, self.cap)

    def __sub__(self, other: "MotivicSeries") -> "MotivicSeries":
        return self + (-other)

    def scale(self, c) -> "MotivicSeries":
        c = c if isinstance(c, QRat) else QRat(c)
        return self._like({g: v * c for g, v in self.coeffs.items()}, self.cap)

    def __matmul__(self, other: "MotivicSeries") -> "MotivicSeries":
        return twisted_mul(self, other)

    def __mul__(self, other):
        if isinstance(other, MotivicSeries):
            return plain_mul(self, other)
        return self.scale(other)

    def truncate(self, cap) -> "MotivicSeries":
        cap = TruncationBound.coerce(cap)
        return self._like(self.coeffs, cap if self.cap is None else cap.meet(self.cap))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c.format()})*u^{_fmt_degree(g)}" for g, c in self.items())

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MotivicSeries({self.format()!r})"

    def to_json(self) -> list:
        return [{"degree": list(g), "coeff": c.format()} for g, c in self.items()]

    @classmethod
    def from_json(cls, data, quiver: QuiverSpec, cap=None) -> "MotivicSeries":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            coeffs = {tuple(e["degree"]): parse_qrat(e["coeff"]) for e in data}
        except (KeyError, TypeError) as exc:
            raise ParseError('series JSON must be a list of {"degree": [...], '
                             '"coeff": "..."}') from exc
        return cls(coeffs, quiver, cap)


def _fmt_degree(g) -> str:
    return str(g[0]) if len(g) == 1 else "(" + ",".join(map(str, g)) + ")"


def _add_deg(a, b):
    return tuple(x + y for x, y in zip(a, b))


def twisted_mul(a: MotivicSeries, b: MotivicSeries) -> MotivicSeries:
    """u^g * u^b = q^{-chi(b, g)} u^{g+b}, extended bilinearly."""
    cap = a._join(b)
    chi = a.quiver.euler
    out = defaultdict(lambda: QRat(0))
    for g, cg in a.coeffs.items():
        for bb, cb in b.coeffs.items():
            out[_add_deg(g, bb)] += cg * cb * _q_power(-chi(bb, g))
    return MotivicSeries(out, a.quiver, cap)


def plain_mul(a: MotivicSeries, b: MotivicSeries) -> MotivicSeries:
    """Untwisted product u^g u^b = u^{g+b}."""
    cap = a._join(b)
    out = defaultdict(lambda: QRat(0))
    for g, cg in a.coeffs.items():
        for bb, cb in b.coeffs.items():
            out[_add_deg(g, bb)] += cg * cb
    return MotivicSeries(out, a.quiver, cap)


@lru_cache(maxsize=None)
def rep_class(gamma, quiver: QuiverSpec) -> QRat:
    """Class of the stack of representations of dimension gamma:
    q^{sum_{a: i->j} gamma_i gamma_j} / prod_i [GL_{gamma_i}]."""
    gamma = tuple(gamma)
    quiver._check(gamma)
    den = ONE
    for n in gamma:
        den = den * gl_class(n)
    return _q_power(quiver.arrow_pairing(gamma)) / den


@lru_cache(maxsize=None)
def _word_integral(w: Word, quiver: QuiverSpec):
    """(degree, coefficient) of the integral of a word, built letter by letter
    with the twisted product."""
    if not w:
        return quiver.zero(), ONE
    deg, coeff = _word_integral(w[:-1], quiver)
    g = w[-1]
    return (_add_deg(deg, g),
            coeff * rep_class(g, quiver) * _q_power(-quiver.euler(g, deg)))


def integrate(x: HallElement, quiver: QuiverSpec, cap=None) -> MotivicSeries:
    """The Gamma-indexed integral of x.

    A word integrates to the twisted product of its letters' classes; a
    commutative product of words to the plain product of their integrals.
    """
    cap = TruncationBound.coerce(cap)
    if cap is None:
        cap = x.cap
    out = defaultdict(lambda: QRat(0))
    for m, c in x.terms.items():
        deg = quiver.zero()
        coeff = QRat(c)
        for w in m:
            wd, wc = _word_integral(w, quiver)
            deg = _add_deg(deg, wd)
            coeff = coeff * wc
        if cap is None or not any(deg) or cap.admits(deg):
            out[deg] += coeff
    return MotivicSeries(out, quiver, cap)


def _shifted(series: MotivicSeries, k: int):
    shift = (Q - 1) ** k
    for g, c in series.items():
        yield g, c * shift


def no_poles_check(x: HallElement, k: int, quiver: QuiverSpec, cap=None) -> bool:
    """True iff (q-1)^k times every coefficient of the integral is regular."""
    return all(is_regular(c) for _, c in _shifted(integrate(x, quiver, cap), k))


def residue_series(x: HallElement, k: int, quiver: QuiverSpec, cap=None) -> Dict[tuple, Fraction]:
    """Degreewise value at q = 1 of (q-1)^k times the integral of x."""
    out = {}
    for g, c in _shifted(integrate(x, quiver, cap), k):
        if not is_regular(c):
            raise NotRegularError(f"(q-1)^{k} * integral has a pole at q=1 in degree "
                                  f"{_fmt_degree(g)}: {c.format()}")
        v = c(1)
        if v:
            out[g] = v
    return out


def _series_cap(s: MotivicSeries, cap) -> TruncationBound:
    cap = TruncationBound.coerce(cap)
    cap = s.cap if cap is None else (cap if s.cap is None else cap.meet(s.cap))
    if cap is None:
        raise ValueError("series log/exp need a truncation cap")
    return cap


def _twisted_series(y: MotivicSeries, coeff, cap) -> MotivicSeries:
    y = y.truncate(cap)
    zero = y.quiver.zero()
    out = MotivicSeries({}, y.quiver, cap)
    power = MotivicSeries({zero: 1}, y.quiver, cap)
    n = 0
    while power:
        c = coeff(n)
        if c:
            out = out + power.scale(c)
        power = twisted_mul(power, y)
        n += 1
    return out


def series_log(s: MotivicSeries, cap=None) -> MotivicSeries:
    """log(s) in the twisted algebra; s must have constant term 1."""
    cap = _series_cap(s, cap)
    zero = s.quiver.zero()
    if s[zero] != ONE:
        raise ValueError("series_log needs constant term 1")
    y = s - MotivicSeries({zero: 1}, s.quiver, s.cap)
    if y[zero]:
        raise ValueError("series_log needs constant term 1")
    return _twisted_series(y, lambda n: Fraction((-1) ** (n + 1), n) if n else 0, cap)


def series_exp(s: MotivicSeries, cap=None) -> MotivicSeries:
    """exp(s) in the twisted algebra; s must have zero constant term."""
    from math import factorial

    cap = _series_cap(s, cap)
    if s[s.quiver.zero()]:
        raise ValueError("series_exp needs zero constant term")
    return _twisted_series(s, lambda n: Fraction(1, factorial(n)), cap)


def _check_virtual(x: HallElement, name: str):
    bad = vir_failures(x)
    if bad:
        raise ValueError(f"{name} is not virtually indecomposable: pi_{bad[0]}({name}) != 0")


def lie_sides(x: HallElement, y: HallElement, quiver: QuiverSpec, cap=None):
    """Both sides of the Lie-morphism identity, as degree -> rational maps.

    Left: residue at k = 1 of the integral of x*y - y*x.
    Right: sum over g + b of -chi~(b, g) res_x(g) res_y(b), chi~ the
    antisymmetrized Euler form.
    """
    _check_virtual(x, "x")
    _check_virtual(y, "y")
    lhs = residue_series(hall_mul(x, y) - hall_mul(y, x), 1, quiver, cap)
    rx = residue_series(x, 1, quiver, cap)
    ry = residue_series(y, 1, quiver, cap)
    cap = TruncationBound.coerce(cap) or x.cap
    rhs = defaultdict(Fraction)
    for g, a in rx.items():
        for b, c in ry.items():
            d = _add_deg(g, b)
            if cap is None or cap.admits(d):
                rhs[d] += -quiver.euler_antisym(b, g) * a * c
    return lhs, {d: v for d, v in rhs.items() if v}


def lie_morphism_check(x: HallElement, y: HallElement, quiver: QuiverSpec, cap=None) -> bool:
    lhs, rhs = lie_sides(x, y, quiver, cap)
    return lhs == rhs
