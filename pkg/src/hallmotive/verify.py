"""Self-check suites over the invariants of every module.

Each suite is a list of named properties; a property takes the degree bound
``d`` and returns True or False.  Random inputs come from a fixed seed so a
report is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, List

from . import combinatorics as cb
from . import epsilon as ep
from . import hallcore as hc
from . import integrate as ig
from . import spectra as sp
from .fixtures import resolve_fixture
from .qscalar import QPoly, QRat, is_regular, ord_at_one, partition_poly

SEED = 20240611


@dataclass(frozen=True)
class Outcome:
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str = ""


# -- random inputs -------------------------------------------------------------


def random_qpoly(rng: random.Random, degree: int = 3) -> QPoly:
    return QPoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                  for _ in range(rng.randint(0, degree) + 1)])


def random_qrat(rng: random.Random, nonzero: bool = False) -> QRat:
    while True:
        num = random_qpoly(rng)
        den = random_qpoly(rng)
        if den and (num or not nonzero):
            return QRat(num, den)


def random_regular(rng: random.Random) -> QRat:
    while True:
        a = random_qrat(rng)
        if is_regular(a):
            return a


def random_element(rng: random.Random, top: int, terms: int = 3) -> hc.HallElement:
    pool = [m for m in hc.monomials_up_to(top) if m]
    picks = rng.sample(pool, min(terms, len(pool)))
    return hc.HallElement({m: Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2))
                           for m in picks})


def uncapped(x: hc.HallElement) -> hc.HallElement:
    """The same element with its truncation metadata dropped."""
    return hc.HallElement(x.terms)


# -- qscalar --------------------------------------------------------------------


def _q_canonical(d):
    rng = random.Random(SEED)
    for _ in range(40):
        a, b = random_qrat(rng), random_qrat(rng, nonzero=True)
        c = a * b / b
        if c != a or c.numerator.coeffs != a.numerator.coeffs or \
                c.denominator.coeffs != a.denominator.coeffs:
            return False
    return True


def _q_ord_additive(d):
    rng = random.Random(SEED + 1)
    for _ in range(40):
        a, b = random_qrat(rng, True), random_qrat(rng, True)
        a = a * QRat(QPoly([-1, 1])) ** rng.randint(-2, 2)
        if ord_at_one(a * b) != ord_at_one(a) + ord_at_one(b):
            return False
    return True


def _q_regular_closed(d):
    rng = random.Random(SEED + 2)
    for _ in range(40):
        a, b = random_regular(rng), random_regular(rng)
        if not (is_regular(a + b) and is_regular(a * b)):
            return False
    return True


def _q_partition_ord(d):
    return all(ord_at_one(partition_poly(lam)) == len(lam)
               for n in range(max(d, 1) + 1) for lam in cb.partitions(n) if lam)


# -- combinatorics ----------------------------------------------------------------


def _c_stirling_inversion(d):
    top = 2 * d + 2
    return all(sum(cb.stirling2(l, r) * cb.stirling1(r, k) for r in range(top + 1))
               == (l == k) for l in range(top + 1) for k in range(top + 1))


def _c_binomial_covering(d):
    for p in range(1, d + 1):
        for lam in product(range(1, d + 1), repeat=p):
            lhs = QPoly([1])
            for part in lam:
                lhs = lhs * cb.binom_poly(part)
            rhs = QPoly()
            for n in range(sum(lam) + 1):
                rhs = rhs + cb.binom_poly(n) * cb.covering(n, lam)
            if lhs != rhs:
                return False
    return True


def _c_covering_brute(d):
    top = min(d + 1, 5)
    for n in range(top + 1):
        for p in range(1, 4):
            for lam in product(range(n + 1), repeat=p):
                if cb.covering(n, lam) != cb.covering_brute_force(n, lam):
                    return False
    return True


def _c_lattice_lemma(d):
    top = min(d + 1, 6)
    return all(cb.lattice_sum(m, k) == cb.stirling1(m, k)
               for m in range(1, top + 1) for k in range(m + 1))


# -- hallcore ------------------------------------------------------------------------


def _elements(d):
    return [hc.HallElement({m: 1}) for m in hc.monomials_up_to(d)]


def _h_e_commute(d):
    for x in _elements(d):
        for r in range(d + 1):
            for s in range(r + 1, d + 1):
                if hc.e_op(r, hc.e_op(s, x)) != hc.e_op(s, hc.e_op(r, x)):
                    return False
    return True


def _h_projections(d):
    for x in _elements(d):
        pis = [hc.pi_op(k, x) for k in range(d + 1)]
        if sum(pis, hc.HallElement()) != x:
            return False
        for k, pk in enumerate(pis):
            for l in range(d + 1):
                want = pk if k == l else hc.HallElement()
                if hc.pi_op(l, pk) != want:
                    return False
    return True


def _h_eigen(d):
    return all(hc.eigen_check(r, k, x) for x in _elements(d)
               for r in range(d + 1) for k in range(d + 1))


def _h_pi_t_multiplicative(d):
    rng = random.Random(SEED + 3)
    half = max(d // 2, 1)
    for _ in range(6):
        x, y = random_element(rng, half), random_element(rng, half)
        if hc.pi_t(x * y) != hc.tpoly_mul(hc.pi_t(x), hc.pi_t(y)):
            return False
    return True


def _h_e_product(d):
    rng = random.Random(SEED + 4)
    half = max(d // 2, 1)
    for _ in range(6):
        x, y = random_element(rng, half), random_element(rng, half)
        for p in range(d + 1):
            rhs = hc.HallElement()
            for n in range(p + 1):
                for m in range(p + 1):
                    c = cb.covering(p, (n, m))
                    if c:
                        rhs = rhs + (hc.e_op(n, x) * hc.e_op(m, y)).scale(c)
            if hc.e_op(p, x * y) != rhs:
                return False
    return True


def _h_joyce(d):
    top = d + 2
    return all(hc.joyce_projection(k, n) == hc.pi_op(k, hc.HallElement.word(n))
               for n in range(1, top + 1) for k in range(n + 1))


def _h_joyce_tori(d):
    top = min(d + 1, 6)
    return all(hc.joyce_projection_tori(k, n) == hc.joyce_projection(k, n)
               for n in range(1, top + 1) for k in range(n + 1))


def generating_sides(top: int):
    """Both sides of pi_t(1 + X) = (1 + X)^t, X = sum_{1 <= n <= top} [n]."""
    x = hc.HallElement({(((n,),),): 1 for n in range(1, top + 1)})
    return hc.pi_t(1 + x), hc.binomial_power_t(x, top)


def _h_generating(d):
    top = d + 2
    lhs, rhs = generating_sides(top)
    return lhs == rhs


# -- epsilon ----------------------------------------------------------------------


def _cap_quivers(d):
    return [ep.POINT, ep.A2] if d <= 4 else [ep.POINT]


def _e_e2_coproduct(d):
    for w in hc.words_up_to(d + 1):
        x = hc.HallElement({(w,): 1})
        if hc.e_op(2, x) != ep.e2_via_coproduct(x):
            return False
    for w in hc.words_up_to(min(d, 3), 2):
        x = hc.HallElement({(w,): 1})
        if hc.e_op(2, x) != ep.e2_via_coproduct(x):
            return False
    return True


def _e_eps_t(d):
    for quiver in _cap_quivers(d):
        try:
            ep.eps_t(quiver, d)
        except hc.ConsistencyError:
            return False
    return True


def _triple(t, first: bool):
    # (Delta (x) 1) Delta when first, else (1 (x) Delta) Delta
    out = {}
    for (a, b), c in t.items():
        src = a if first else b
        for (l, r), k in ep.coproduct(hc.HallElement({src: 1})).items():
            key = (l, r, b) if first else (a, l, r)
            out[key] = out.get(key, 0) + c * k
    return {k: v for k, v in out.items() if v}


def _e_coassociative(d):
    for vc in (1, 2):
        for w in hc.words_up_to(d if vc == 1 else min(d, 3), vc):
            t = ep.coproduct(hc.HallElement({(w,): 1}))
            if _triple(t, True) != _triple(t, False):
                return False
            if t != {(b, a): c for (a, b), c in t.items()}:
                return False
    return True


def _e_primitive(d):
    for quiver in _cap_quivers(d):
        e1 = ep.eps(1, quiver, d)
        if ep.truncate_tensor(ep.coproduct(e1), d) != ep.primitive_tensor(e1):
            return False
    return True


def filtered_product_sides(a: int, b: int, quiver, cap):
    """pi_j(eps_a * eps_b) for j > a+b, and both sides of the top-degree identity."""
    xa, xb = ep.eps(a, quiver, cap), ep.eps(b, quiver, cap)
    prod_ = hc.hall_mul(xa, xb)
    higher = {j: hc.pi_op(j, prod_) for j in range(a + b + 1, prod_.max_scalar_degree() + 1)}
    return higher, hc.pi_op(a + b, prod_), hc.pi_op(a, xa) * hc.pi_op(b, xb)


def _e_filtered(d):
    for quiver in _cap_quivers(d):
        for a in range(d + 1):
            for b in range(d + 1 - a):
                higher, top, expect = filtered_product_sides(a, b, quiver, d)
                if any(higher.values()) or top != expect:
                    return False
    return True


def _e_lie_closure(d):
    top = min(d, 3)
    for quiver in (ep.POINT, ep.A2):
        e1 = ep.eps(1, quiver, top)
        pieces = [uncapped(e1.part(g)) for g in e1.degrees()]
        for x, y in combinations_with_replacement(pieces, 2):
            if not ep.vir_check(hc.hall_mul(x, y) - hc.hall_mul(y, x)):
                return False
    return True


def _e_vir(d):
    return all(ep.vir_check(ep.eps(1, quiver, d + 1)) for quiver in
               (ep.POINT, ep.LOOP, ep.A2))


# -- integrate ------------------------------------------------------------------------


def _i_star(d):
    for quiver in (ep.POINT, ep.A2):
        top = d
        words = hc.words_up_to(top, quiver.vertex_count)
        ints = {w: ig.integrate(hc.HallElement({(w,): 1}), quiver) for w in words}
        for u in words:
            for v in words:
                lhs = ig.integrate(hc.HallElement({(u + v,): 1}), quiver)
                if lhs != ig.twisted_mul(ints[u], ints[v]):
                    return False
    return True


def _i_plain(d):
    rng = random.Random(SEED + 5)
    half = max(d // 2, 1)
    for _ in range(8):
        x, y = random_element(rng, half), random_element(rng, half)
        for quiver in (ep.POINT, ep.LOOP):
            lhs = ig.integrate(x * y, quiver)
            if lhs != ig.plain_mul(ig.integrate(x, quiver), ig.integrate(y, quiver)):
                return False
    return True


def _i_no_poles(d):
    top = d + 1
    return all(ig.no_poles_check(hc.pi_op(k, hc.HallElement.word(n)), k, ep.POINT)
               for n in range(1, top + 1) for k in range(n + 1))


def _i_pipeline(d):
    for quiver in (ep.POINT, ep.A2):
        cap = hc.TruncationBound(total=d)
        e1 = ep.eps(1, quiver, cap)
        series = ig.MotivicSeries(
            {g: ig.rep_class(g, quiver)
             for g in [quiver.zero()] + cap.dimension_vectors(quiver.vertex_count)},
            quiver, cap)
        if ig.series_log(series) != ig.integrate(e1, quiver, cap):
            return False
    return True


def _i_lie(d):
    top = min(d, 3)
    for quiver in (ep.POINT, ep.A2):
        e1 = ep.eps(1, quiver, top)
        pieces = [uncapped(e1.part(g)) for g in e1.degrees()]
        for x in pieces:
            for y in pieces:
                if not ig.lie_morphism_check(x, y, quiver):
                    return False
    return True


# -- spectra ------------------------------------------------------------------------


def random_problem(rng: random.Random, n: int, mode: str = "field") -> sp.SpectralProblem:
    """Lower triangular problem with diagonal entries (q^i - 1) or a local variant."""
    q = QRat(QPoly([0, 1]))
    if mode == "field":
        diag = [q ** (i + 1) - 1 for i in range(n)]
    else:
        diag = [QRat(i + 1) + (q - 1) * QRat(rng.randint(-2, 2)) for i in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == i:
                row.append(diag[i])
            elif j < i:
                row.append(random_regular(rng) if mode == "local" else random_qrat(rng))
            else:
                row.append(QRat(0))
        rows.append(row)
    vec = [random_qrat(rng) for _ in range(n)]
    return sp.SpectralProblem(tuple(str(i) for i in range(n)), rows, {"v": vec}, mode)


def _s_exact(d):
    rng = random.Random(SEED + 6)
    for n in range(1, min(d + 2, 6) + 1):
        p = random_problem(rng, n)
        vals, P = sp.eigen_decompose(p)
        D = [[vals[i] if i == j else QRat(0) for j in range(n)] for i in range(n)]
        if sp.mat_mul(p.matrix, P) != sp.mat_mul(P, D):
            return False
    return True


def _s_reconstruct(d):
    rng = random.Random(SEED + 7)
    for n in range(1, min(d + 2, 6) + 1):
        p = random_problem(rng, n)
        comps = sp.decompose_vector(p, "v")
        total = [sum((c[i] for c in comps.values()), QRat(0)) for i in range(n)]
        if tuple(total) != p.vector("v"):
            return False
        for lam, c in comps.items():
            image = [sum((p.matrix[i][l] * c[l] for l in range(n)), QRat(0))
                     for i in range(n)]
            if image != [lam * x for x in c]:
                return False
    return True


def _s_local(d):
    rng = random.Random(SEED + 8)
    return all(sp.local_soundness(random_problem(rng, n, "local"))
               for n in range(1, min(d + 2, 6) + 1))


def intro_problem() -> sp.SpectralProblem:
    return sp.SpectralProblem.load(resolve_fixture("intro3x3.json"))


def intro_consistency() -> bool:
    """ord-grouped components of e1 against pi_1[2], pi_2[2] via e1 -> [2], e3 -> [1][1]."""
    sums = sp.ord_grouped_sums(intro_problem(), "e1")
    basis = {0: hc.HallElement.word(2), 2: hc.HallElement.monomial([1], [1])}
    for k in (1, 2):
        vec = sums.get(k)
        if vec is None or vec[1] or not all(x.is_constant() for x in vec):
            return False
        elem = sum((basis[i].scale(vec[i].constant_value()) for i in basis),
                   hc.HallElement())
        if elem != hc.pi_op(k, hc.HallElement.word(2)):
            return False
    return True


def _s_consistency(d):
    return intro_consistency()


SUITES: Dict[str, List[tuple]] = {
    "qscalar": [
        ("canonical form of a*b/b", _q_canonical),
        ("ord_at_one is additive", _q_ord_additive),
        ("regular elements closed under + and *", _q_regular_closed),
        ("ord_at_one(partition_poly) = length", _q_partition_ord),
    ],
    "combinatorics": [
        ("Stirling inversion", _c_stirling_inversion),
        ("binomial product = covering sum", _c_binomial_covering),
        ("covering matches enumeration", _c_covering_brute),
        ("partition-lattice sum = s(m,k)", _c_lattice_lemma),
    ],
    "hallcore": [
        ("E_r commute", _h_e_commute),
        ("pi_k idempotent, orthogonal, complete", _h_projections),
        ("E_r pi_k = r! S(k,r) pi_k", _h_eigen),
        ("pi_t multiplicative", _h_pi_t_multiplicative),
        ("E_p(xy) covering formula", _h_e_product),
        ("pi_k[n] closed form", _h_joyce),
        ("torus sum = closed form", _h_joyce_tori),
        ("pi_t(1+X) = (1+X)^t", _h_generating),
    ],
    "epsilon": [
        ("E_2 from coproduct", _e_e2_coproduct),
        ("eps_t two routes", _e_eps_t),
        ("coassociative and cocommutative", _e_coassociative),
        ("eps_1 primitive", _e_primitive),
        ("eps_1 virtually indecomposable", _e_vir),
        ("filtered Hall product", _e_filtered),
        ("Lie closure of commutators", _e_lie_closure),
    ],
    "integrate": [
        ("integral is a *-morphism", _i_star),
        ("untwisted compatibility", _i_plain),
        ("no poles on pi_k[n]", _i_no_poles),
        ("log before = log after integrating", _i_pipeline),
        ("Lie morphism at q=1", _i_lie),
    ],
    "spectra": [
        ("M P = P D", _s_exact),
        ("components reconstruct v", _s_reconstruct),
        ("local mode regular", _s_local),
        ("intro example matches pi_k[2]", _s_consistency),
    ],
}


def run_suites(names=None, max_degree: int = 4) -> List[Outcome]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; known: {', '.join(SUITES)}")
    out = []
    for suite in names:
        for label, fn in SUITES[suite]:
            t0 = time.perf_counter()
            try:
                ok, detail = bool(fn(max_degree)), ""
            except Exception as exc:  # report, never abort the whole run
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(Outcome(suite, label, ok, time.perf_counter() - t0, detail))
    return out
