"""Quivers, the element [N], flag powers, epsilon functions and the coproduct on U.

All series live in a completion and are computed under a
:class:`~.hallcore.TruncationBound`; every result carries the cap it was
computed under in its ``cap`` attribute.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from pathlib import Path
from typing import Dict, Sequence, Tuple

from .combinatorics import binom_poly, stirling1
from .hallcore import (
    UNIT,
    ConsistencyError,
    HallElement,
    Monomial,
    OutsideUError,
    TruncationBound,
    Word,
    comm_mul,
    e_op,
    format_monomial,
    hall_mul,
    monomial_key,
    pi_op,
)
from .qscalar import ParseError

__all__ = [
    "QuiverSpec",
    "TruncationBound",
    "POINT",
    "LOOP",
    "A2",
    "n_element",
    "flag_power",
    "eps",
    "eps_t",
    "eps_t_binomial",
    "exp_star",
    "log_star",
    "exp_log_star",
    "coproduct",
    "word_coproduct",
    "tensor_from",
    "primitive_tensor",
    "format_tensor",
    "e2_via_coproduct",
    "vir_check",
    "vir_failures",
]


@dataclass(frozen=True)
class QuiverSpec:
    """A finite quiver; ``arrows`` is a tuple of (source, target) pairs."""

    vertex_count: int
    arrows: Tuple[Tuple[int, int], ...] = field(default=())
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a quiver needs at least one vertex")
        arrows = tuple((int(a), int(b)) for a, b in self.arrows)
        for a, b in arrows:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"arrow {a}->{b} leaves the vertex range "
                                 f"0..{self.vertex_count - 1}")
        object.__setattr__(self, "arrows", tuple(sorted(arrows)))

    def euler(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        """chi(beta, gamma) = sum_i beta_i gamma_i - sum_{a: i->j} beta_i gamma_j."""
        self._check(beta)
        self._check(gamma)
        return (sum(b * g for b, g in zip(beta, gamma))
                - sum(beta[i] * gamma[j] for i, j in self.arrows))

    def euler_antisym(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        return self.euler(beta, gamma) - self.euler(gamma, beta)

    def arrow_pairing(self, gamma: Sequence[int]) -> int:
        return sum(gamma[i] * gamma[j] for i, j in self.arrows)

    def zero(self) -> tuple:
        return (0,) * self.vertex_count

    def _check(self, v):
        if len(v) != self.vertex_count:
            raise ValueError(f"dimension vector {tuple(v)} has the wrong length "
                             f"for a {self.vertex_count}-vertex quiver")

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data, name: str = "") -> "QuiverSpec":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"quiver file is not valid JSON: {exc}") from exc
        try:
            n = data["vertices"]
            arrows = data.get("arrows", [])
            if not isinstance(n, int) or not all(len(a) == 2 for a in arrows):
                raise TypeError
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError('quiver JSON must look like {"vertices": n, '
                             '"arrows": [[i, j], ...]}') from exc
        return cls(n, tuple(tuple(a) for a in arrows), name)

    @classmethod
    def load(cls, path) -> "QuiverSpec":
        path = Path(path)
        return cls.from_json(path.read_text(), path.stem)


POINT = QuiverSpec(1, (), "point")
LOOP = QuiverSpec(1, ((0, 0),), "loop")
A2 = QuiverSpec(2, ((0, 1),), "a2")


def _cap(cap, quiver: QuiverSpec) -> TruncationBound:
    cap = TruncationBound.coerce(cap)
    if cap is None:
        raise ValueError("series computations need a truncation cap")
    if cap.componentwise is not None and len(cap.componentwise) != quiver.vertex_count:
        raise ValueError(f"cap {cap.componentwise} does not match a "
                         f"{quiver.vertex_count}-vertex quiver")
    return cap


def n_element(quiver: QuiverSpec, cap) -> HallElement:
    """[N]: the sum of [gamma] over nonzero gamma admitted by the cap."""
    cap = _cap(cap, quiver)
    return HallElement({((g,),): 1 for g in cap.dimension_vectors(quiver.vertex_count)},
                       cap)


def _flag_powers(quiver: QuiverSpec, cap: TruncationBound) -> list:
    n_el = n_element(quiver, cap)
    out = [HallElement({UNIT: 1}, cap)]
    while True:
        nxt = hall_mul(out[-1], n_el)
        if not nxt:
            return out
        out.append(nxt)


def flag_power(n: int, quiver: QuiverSpec, cap) -> HallElement:
    """F_n[N] = [N]^{*n}, truncated; F_0 = 1."""
    cap = _cap(cap, quiver)
    powers = _flag_powers(quiver, cap)
    return powers[n] if n < len(powers) else HallElement({}, cap)


def eps(k: int, quiver: QuiverSpec, cap) -> HallElement:
    """epsilon_k = sum_{n >= k} s(n, k)/n! F_n, truncated."""
    cap = _cap(cap, quiver)
    out = HallElement({}, cap)
    for n, fn in enumerate(_flag_powers(quiver, cap)):
        s = stirling1(n, k)
        if s:
            out = out + fn.scale(Fraction(s, factorial(n)))
    return out


def eps_t_binomial(quiver: QuiverSpec, cap) -> Dict[int, HallElement]:
    """(1 + [N])^{*t} = sum_n binom(t, n) F_n, as a dict power of t -> element."""
    cap = _cap(cap, quiver)
    out: dict = {}
    for n, fn in enumerate(_flag_powers(quiver, cap)):
        for k, c in enumerate(binom_poly(n).coeffs):
            if c:
                term = fn.scale(c)
                out[k] = out[k] + term if k in out else term
    return {k: v for k, v in out.items() if v}


def eps_t(quiver: QuiverSpec, cap) -> Dict[int, HallElement]:
    """sum_k epsilon_k t^k, checked against the binomial-power route."""
    cap = _cap(cap, quiver)
    top = cap.max_total(quiver.vertex_count)
    by_stirling = {}
    for k in range(top + 1):
        e = eps(k, quiver, cap)
        if e:
            by_stirling[k] = e
    if by_stirling != eps_t_binomial(quiver, cap):
        raise ConsistencyError("epsilon_t: Stirling route and binomial route differ")
    return by_stirling


# -- exponential and logarithm under the Hall product ----------------------------


def _series_cap(x: HallElement, cap) -> TruncationBound:
    cap = TruncationBound.coerce(cap)
    cap = x.cap if cap is None else (cap if x.cap is None else cap.meet(x.cap))
    if cap is None:
        raise ValueError("exp/log need a truncation cap (pass one or use a capped element)")
    return cap


def _nilpotent_series(y: HallElement, coeff, cap: TruncationBound) -> HallElement:
    y = y.truncate(cap)
    out = HallElement({}, cap)
    power = HallElement({UNIT: 1}, cap)
    n = 0
    while power:
        c = coeff(n)
        if c:
            out = out + power.scale(c)
        power = hall_mul(power, y)
        n += 1
    return out


def exp_star(x: HallElement, cap=None) -> HallElement:
    """exp_*(x) = sum x^{*n}/n!; x must have zero constant term."""
    cap = _series_cap(x, cap)
    if x[UNIT]:
        raise ValueError("exp_* needs an element with zero constant term")
    return _nilpotent_series(x, lambda n: Fraction(1, factorial(n)), cap)


def log_star(x: HallElement, cap=None) -> HallElement:
    """log_*(x) = sum_{n>=1} (-1)^{n+1} (x-1)^{*n}/n; x must have constant term 1."""
    cap = _series_cap(x, cap)
    if x[UNIT] != 1:
        raise ValueError("log_* needs an element with constant term 1")
    return _nilpotent_series(x - 1, lambda n: Fraction((-1) ** (n + 1), n) if n else 0,
                             cap)


def exp_log_star(x: HallElement, direction: str, cap=None) -> HallElement:
    if direction == "exp":
        return exp_star(x, cap)
    if direction == "log":
        return log_star(x, cap)
    raise ValueError(f"direction must be 'exp' or 'log', got {direction!r}")


# -- coproduct ---------------------------------------------------------------------

Tensor = Dict[Tuple[Monomial, Monomial], Fraction]


def _letter_halves(g) -> list:
    return [(a, tuple(c - x for c, x in zip(g, a)))
            for a in iproduct(*(range(c + 1) for c in g))]


def word_coproduct(w: Word) -> Dict[Tuple[Word, Word], int]:
    """Letterwise splitting of a word into a pair of words, zeros crossed off."""
    out = defaultdict(int)
    for choice in iproduct(*(_letter_halves(g) for g in w)):
        left = tuple(a for a, _ in choice if any(a))
        right = tuple(b for _, b in choice if any(b))
        out[(left, right)] += 1
    return dict(out)


def _as_mono(w: Word) -> Monomial:
    return (w,) if w else UNIT


def coproduct(x: HallElement) -> Tensor:
    """Delta on U, as a dict (left monomial, right monomial) -> coefficient."""
    out = defaultdict(Fraction)
    for m, c in x.terms.items():
        if len(m) > 1:
            raise OutsideUError(f"coproduct is defined on U only; got "
                                f"{format_monomial(m)}")
        w = m[0] if m else ()
        for (a, b), k in word_coproduct(w).items():
            out[(_as_mono(a), _as_mono(b))] += c * k
    return {k: v for k, v in out.items() if v}


def tensor_from(pairs) -> Tensor:
    """Build a tensor from (coefficient, left element, right element) triples."""
    out = defaultdict(Fraction)
    for c, x, y in pairs:
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                out[(a, b)] += Fraction(c) * ca * cb
    return {k: v for k, v in out.items() if v}


def primitive_tensor(x: HallElement) -> Tensor:
    """1 (x) x + x (x) 1."""
    one = HallElement.one()
    return tensor_from([(1, one, x), (1, x, one)])


def truncate_tensor(t: Tensor, cap) -> Tensor:
    """Drop pairs whose combined degree the cap does not admit."""
    cap = TruncationBound.coerce(cap)
    out = {}
    for (a, b), c in t.items():
        both = a + b
        if not both or cap.admits(_mono_degree(both)):
            out[(a, b)] = c
    return out


def _mono_degree(m: Monomial):
    letters = [g for w in m for g in w]
    return tuple(sum(g[i] for g in letters) for i in range(len(letters[0])))


def format_tensor(t: Tensor) -> str:
    if not t:
        return "0"
    keys = sorted(t, key=lambda ab: (monomial_key(ab[0]), monomial_key(ab[1])))
    pieces = []
    for a, b in keys:
        c = t[(a, b)]
        body = f"{abs(c)}*{format_monomial(a)}(x){format_monomial(b)}"
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    return out + "".join(f" {s} {b}" for s, b in pieces[1:])


def e2_via_coproduct(x: HallElement) -> HallElement:
    """mu_comm(Delta x - 1 (x) x - x (x) 1) on the augmentation ideal of U."""
    if x[UNIT]:
        raise ValueError("e2_via_coproduct applies to elements without constant term")
    t = coproduct(x)
    for key, c in primitive_tensor(x).items():
        t[key] = t.get(key, 0) - c
    out = HallElement()
    for (a, b), c in t.items():
        if c:
            out = out + comm_mul(HallElement({a: 1}), HallElement({b: 1})).scale(c)
    return out


# -- virtual indecomposability ----------------------------------------------------


def vir_failures(x: HallElement) -> list:
    """Indices j != 1 with pi_j(x) nonzero."""
    return [j for j in range(x.max_scalar_degree() + 1)
            if j != 1 and pi_op(j, x)]


def vir_check(x: HallElement) -> bool:
    """True iff pi_j(x) = 0 for all j != 1.

    E_2 acts on the image of pi_k by 2 S(k, 2) = 2^k - 2, which vanishes
    only for k <= 1, so the condition is E_0 x = 0 and E_2 x = 0.
    :func:`vir_failures` checks every projection instead.
    """
    return not x[UNIT] and not e_op(2, x)
