import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from hallmotive.epsilon import A2, LOOP, POINT, QuiverSpec, eps
from hallmotive.hallcore import (
    HallElement,
    TruncationBound,
    hall_mul,
    pi_op,
    words_up_to,
)
from hallmotive.integrate import (
    MotivicSeries,
    TwistMismatchError,
    integrate,
    lie_morphism_check,
    lie_sides,
    no_poles_check,
    plain_mul,
    rep_class,
    residue_series,
    series_exp,
    series_log,
    twisted_mul,
)
from hallmotive.qscalar import NotRegularError, ParseError, Q, QRat, gl_class
from hallmotive.verify import uncapped

H = HallElement
W = HallElement.word


def u(degree, coeff, quiver=POINT, cap=None):
    return MotivicSeries.monomial(degree, coeff, quiver, cap)


def element(words):
    return H({(w,): 1 for w in words})


def test_series_drops_zeros_and_respects_cap():
    s = MotivicSeries({(1,): 0, (2,): 3, (5,): 1}, POINT, 4)
    assert s.coeffs == {(2,): QRat(3)}
    assert s[(7,)] == QRat(0)
    with pytest.raises(ValueError):
        MotivicSeries({(1, 0): 1}, POINT)
    with pytest.raises(ValueError):
        MotivicSeries({(1,): 1})


def test_twisted_mul_examples():
    assert twisted_mul(u((1,), 1), u((1,), 1)) == u((2,), Q ** -1)
    x = u((3,), Q + 2)
    assert twisted_mul(u((0,), 1), x) == x
    assert twisted_mul(x, u((0,), 1)) == x
    a, b = u((1, 0), 1, A2), u((0, 1), 1, A2)
    assert twisted_mul(a, b) == u((1, 1), 1, A2)
    assert twisted_mul(b, a) == u((1, 1), Q, A2)
    assert (a @ b) == twisted_mul(a, b)


def test_twisted_mul_is_associative():
    vecs = [(i, j) for i in range(3) for j in range(3)]
    for g, b, c in product(vecs, repeat=3):
        x, y, z = u(g, Q + 1, A2), u(b, 2, A2), u(c, Q ** 2, A2)
        assert (x @ y) @ z == x @ (y @ z)


def test_twist_mismatch():
    with pytest.raises(TwistMismatchError):
        twisted_mul(u((1,), 1, POINT), u((1,), 1, LOOP))
    with pytest.raises(TwistMismatchError):
        u((1,), 1, POINT) + u((1,), 1, LOOP)


def test_plain_mul_and_arithmetic():
    a, b = u((1,), Q), u((2,), 3)
    assert plain_mul(a, b) == u((3,), 3 * Q)
    assert a * b == plain_mul(a, b)
    assert a * 2 == u((1,), 2 * Q)
    assert (a + b) - b == a
    capped = plain_mul(u((2,), 1, cap=3), u((2,), 1))
    assert not capped


def test_rep_class_examples():
    assert rep_class((1,), POINT) == 1 / (Q - 1)
    assert rep_class((0,), POINT) == QRat(1)
    assert rep_class((0, 0), A2) == QRat(1)
    assert rep_class((1,), LOOP) == Q / (Q - 1)
    assert rep_class((3,), POINT) == 1 / gl_class(3)
    assert rep_class((2,), LOOP) == Q ** 4 / gl_class(2)
    assert rep_class((1, 1), A2) == Q / (Q - 1) ** 2
    assert rep_class((2, 1), A2) == Q ** 2 / (gl_class(2) * gl_class(1))


def test_integrate_examples():
    assert integrate(W(1), POINT) == u((1,), 1 / (Q - 1))
    assert integrate(W(1, 1), POINT) == u((2,), Q ** -1 / (Q - 1) ** 2)
    assert integrate(H.monomial([1], [1]), POINT) == u((2,), 1 / (Q - 1) ** 2)
    assert integrate(H.one(), POINT) == u((0,), 1)
    assert integrate(H(), POINT) == MotivicSeries({}, POINT)
    assert integrate(W((1, 0), (0, 1)), A2) == u((1, 1), 1 / (Q - 1) ** 2, A2)
    assert integrate(W((0, 1), (1, 0)), A2) == u((1, 1), Q / (Q - 1) ** 2, A2)


def test_integrate_is_linear():
    x = W(1, 2).scale(Fraction(1, 3)) + W(3)
    assert integrate(x, POINT) == (integrate(W(1, 2), POINT).scale(Fraction(1, 3))
                                   + integrate(W(3), POINT))


def test_integrate_cap():
    x = W(1) + W(2, 1) + W(5)
    s = integrate(x, POINT, 3)
    assert s.degrees() == [(1,), (3,)]
    assert integrate(x.truncate(3), POINT).degrees() == [(1,), (3,)]


@pytest.mark.parametrize("quiver", [POINT, A2], ids=["point", "A2"])
def test_star_morphism_on_words(quiver):
    words = words_up_to(3, quiver.vertex_count)
    ints = {w: integrate(element([w]), quiver) for w in words}
    for a in words:
        for b in words:
            assert integrate(hall_mul(element([a]), element([b])), quiver) == ints[a] @ ints[b]


def test_star_morphism_on_sums():
    words = words_up_to(2, 2)
    x = H({(w,): i + 1 for i, w in enumerate(words)})
    y = H({(w,): Fraction(1, i + 2) for i, w in enumerate(words)})
    assert integrate(hall_mul(x, y), A2) == integrate(x, A2) @ integrate(y, A2)


def test_untwisted_compatibility():
    words = words_up_to(2, 1)
    for a in words:
        for b in words:
            x, y = element([a]), element([b])
            for quiver in (POINT, LOOP):
                assert integrate(x * y, quiver) == integrate(x, quiver) * integrate(y, quiver)


def test_untwisted_compatibility_on_monomials():
    x = H.monomial([1], [1, 1]) + W(2).scale(3)
    y = H.monomial([1]) - H.monomial([1], [1])
    for quiver in (POINT, LOOP):
        assert integrate(x * y, quiver) == integrate(x, quiver) * integrate(y, quiver)


def test_no_poles_examples():
    assert no_poles_check(eps(1, POINT, 4), 1, POINT)
    assert not no_poles_check(W(1), 0, POINT)
    assert no_poles_check(H.one(), 0, POINT)
    assert not no_poles_check(W(2), 1, POINT)


def test_no_poles_on_projections():
    for n in range(1, 6):
        x = W(n)
        for k in range(n + 2):
            assert no_poles_check(pi_op(k, x), k, POINT), (n, k)


def test_no_poles_fails_below_the_filtration_degree():
    # pi_2[2] = 1/2 [1][1] integrates to 1/(2(q-1)^2)
    assert not no_poles_check(pi_op(2, W(2)), 1, POINT)


def test_residue_examples():
    res = residue_series(eps(1, POINT, 4), 1, POINT)
    assert res == {(n,): Fraction((-1) ** (n - 1), n * n) for n in range(1, 5)}
    assert residue_series(H.one(), 0, POINT) == {(0,): 1}
    assert residue_series(H.one(), 0, A2) == {(0, 0): 1}


def test_residue_pole_reports_degree():
    with pytest.raises(NotRegularError, match="degree 2"):
        residue_series(W(1) + W(2), 1, POINT)


def _class_series(quiver, cap):
    cap = TruncationBound.coerce(cap)
    degrees = [quiver.zero()] + cap.dimension_vectors(quiver.vertex_count)
    return MotivicSeries({g: rep_class(g, quiver) for g in degrees}, quiver, cap)


@pytest.mark.parametrize("quiver", [POINT, A2], ids=["point", "A2"])
def test_log_pipeline_equivalence(quiver):
    cap = 4 if quiver is POINT else 3
    assert series_log(_class_series(quiver, cap)) == integrate(eps(1, quiver, cap), quiver, cap)


def test_series_exp_log_inverse():
    s = _class_series(A2, 3)
    assert series_exp(series_log(s)) == s
    with pytest.raises(ValueError):
        series_log(u((1,), 1, cap=3))
    with pytest.raises(ValueError):
        series_exp(u((0,), 1, cap=3))
    with pytest.raises(ValueError):
        series_log(u((0,), 1))


def test_lie_both_sides_on_a2():
    x, y = W((1, 0)), W((0, 1))
    lhs, rhs = lie_sides(x, y, A2)
    assert lhs == rhs == {(1, 1): -1}
    assert lie_sides(y, x, A2) == ({(1, 1): 1}, {(1, 1): 1})
    assert lie_morphism_check(x, x, A2)


def _pieces(quiver, cap):
    e1 = eps(1, quiver, cap)
    return [uncapped(e1.part(g)) for g in e1.degrees()]


def test_lie_point_quiver_vanishes():
    pieces = _pieces(POINT, 3)
    for x in pieces:
        for y in pieces:
            lhs, rhs = lie_sides(x, y, POINT)
            assert lhs == rhs == {}


def test_lie_on_a2_pieces():
    pieces = _pieces(A2, 3)
    nonzero = 0
    for x in pieces:
        for y in pieces:
            lhs, rhs = lie_sides(x, y, A2)
            assert lhs == rhs
            nonzero += bool(lhs)
    assert nonzero > 0


def test_lie_precondition_names_projection():
    with pytest.raises(ValueError, match="pi_2"):
        lie_morphism_check(W(2), W(1), POINT)
    with pytest.raises(ValueError, match="y is not"):
        lie_morphism_check(W(1), H.monomial([1], [1]), POINT)


def test_series_json_round_trip():
    s = integrate(eps(1, A2, 2), A2, 2)
    data = s.to_json()
    assert [e["degree"] for e in data] == [[0, 1], [1, 0], [0, 2], [1, 1], [2, 0]]
    back = MotivicSeries.from_json(json.dumps(data), A2, 2)
    assert back == s
    with pytest.raises(ParseError):
        MotivicSeries.from_json('[{"deg": [1]}]', POINT)


def test_series_format():
    assert integrate(W(1), POINT).format() == "((1)/(q - 1))*u^1"
    assert MotivicSeries({}, POINT).format() == "0"


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3))
def test_star_morphism_random_words(a, b):
    a = tuple(g for g in a if any(g)) or ((1, 0),)
    b = tuple(g for g in b if any(g)) or ((0, 1),)
    quiver = QuiverSpec(2, ((0, 1), (1, 1)))
    lhs = integrate(element([a + b]), quiver)
    assert lhs == integrate(element([a]), quiver) @ integrate(element([b]), quiver)
