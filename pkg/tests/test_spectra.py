import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hallmotive.fixtures import available, resolve_fixture
from hallmotive.hallcore import HallElement, pi_op
from hallmotive.qscalar import ONE, ZERO, ParseError, Q, QRat, is_regular, parse_qrat
from hallmotive.spectra import (
    SpectralError,
    SpectralProblem,
    decompose_vector,
    eigen_decompose,
    inverse_unit_lower,
    local_soundness,
    mat_mul,
    match_partition,
    ord_group_rationality,
    ord_grouped_sums,
)
from hallmotive.verify import random_problem


def intro():
    return SpectralProblem.load(resolve_fixture("intro3x3"))


def local():
    return SpectralProblem.load(resolve_fixture("local2x2.json"))


def diag(d):
    n = len(d)
    return tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n))


def f(text):
    return parse_qrat(text)


def test_fixtures_ship():
    assert {"intro3x3.json", "local2x2.json", "point.json", "loop.json", "a2.json"} <= set(available())
    with pytest.raises(FileNotFoundError):
        resolve_fixture("nope")


def test_intro_eigenvalues():
    d, P = eigen_decompose(intro())
    assert d == (Q - 1, Q ** 2 - 1, (Q - 1) ** 2)
    assert all(P[i][i] == ONE for i in range(3))
    assert all(not P[i][j] for i in range(3) for j in range(i + 1, 3))


def test_intro_components_of_e1():
    comps = decompose_vector(intro(), "e1")
    assert list(comps) == [Q - 1, Q ** 2 - 1, (Q - 1) ** 2]
    assert comps[Q - 1] == (ONE, f("-1/(q*(q-1))"), f("-1/q"))
    assert comps[Q ** 2 - 1] == (ZERO, f("1/(q*(q-1))"), f("-(q-2)/(2*q)"))
    assert comps[(Q - 1) ** 2] == (ZERO, ZERO, QRat(1) / 2)


def test_intro_ord_groups_match_hallcore():
    groups = ord_grouped_sums(intro(), "e1")
    assert list(groups) == [1, 2]
    assert groups[1] == (ONE, ZERO, QRat(-1) / 2)
    assert groups[2] == (ZERO, ZERO, QRat(1) / 2)
    # e1 <-> [2], e3 <-> [1][1]
    basis = [HallElement.word(2), None, HallElement.monomial([1], [1])]
    for k in (1, 2):
        image = HallElement()
        for b, c in zip(basis, groups[k]):
            if c:
                image = image + b.scale(c.constant_value())
        assert image == pi_op(k, HallElement.word(2))


def test_intro_rationality():
    assert ord_group_rationality(intro(), "e1")
    p = intro()
    scaled = tuple(x / (Q - 1) for x in p.vector("e1"))
    assert not ord_group_rationality(p, scaled)
    assert ord_group_rationality(p, (ZERO, ZERO, ONE))


def test_local_example():
    p = local()
    d, P = eigen_decompose(p)
    assert d == (ONE, Q + 1)
    assert (P[0][0], P[1][0]) == (ONE, -1 / Q)
    assert local_soundness(p)


def test_repeated_diagonal_rejected():
    p = SpectralProblem(("a", "b"), diag([ONE, ONE]))
    with pytest.raises(SpectralError, match="repeated"):
        eigen_decompose(p)


def test_local_mode_rejects_non_units():
    m = ((Q - 1, ZERO), (ONE, Q ** 2 - 1))
    eigen_decompose(SpectralProblem(("a", "b"), m))
    with pytest.raises(SpectralError, match="not a unit"):
        eigen_decompose(SpectralProblem(("a", "b"), m, mode="local"))


def test_upper_entries_rejected():
    with pytest.raises(SpectralError, match="lower triangular"):
        eigen_decompose(SpectralProblem(("a", "b"), ((ONE, ONE), (ZERO, Q))))


def test_shape_errors():
    with pytest.raises(SpectralError):
        SpectralProblem(("a",), ((ONE, ZERO),))
    with pytest.raises(SpectralError):
        SpectralProblem(("a",), ((ONE,),), {"v": (ONE, ONE)})
    with pytest.raises(SpectralError):
        SpectralProblem(("a",), ((ONE,),), mode="other")
    with pytest.raises(SpectralError, match="no vector"):
        intro().vector("e9")
    with pytest.raises(SpectralError):
        decompose_vector(intro(), (ONE,))


def test_zero_and_eigenvector_inputs():
    p = intro()
    comps = decompose_vector(p, (ZERO, ZERO, ZERO))
    assert all(not any(c) for c in comps.values())
    _, P = eigen_decompose(p)
    col = tuple(P[i][1] for i in range(3))
    comps = decompose_vector(p, col)
    assert comps[Q ** 2 - 1] == col
    assert not any(comps[Q - 1]) and not any(comps[(Q - 1) ** 2])


def test_match_partition_examples():
    assert match_partition(Q ** 2 - 1, 4) == (2,)
    assert match_partition((Q - 1) ** 2, 4) == (1, 1)
    assert match_partition(Q + 1, 6) is None
    assert match_partition(ONE, 3) == ()
    assert match_partition((Q ** 3 - 1) * (Q - 1), 3) is None
    assert match_partition((Q ** 3 - 1) * (Q - 1), 4) == (3, 1)


def test_zero_eigenvalue_is_grouped_last():
    p = SpectralProblem(("a", "b"), ((ZERO, ZERO), (ONE, Q - 1)))
    groups = ord_grouped_sums(p, (ONE, ZERO))
    assert list(groups) == [1, None]
    assert groups[None] == (ONE, -1 / (Q - 1))


def test_json_round_trip():
    p = intro()
    assert SpectralProblem.from_json(json.dumps(p.to_json())) == p
    for bad in ("{", '{"labels": ["a"]}', '{"labels": ["a"], "matrix": [["q +"]]}'):
        with pytest.raises(ParseError):
            SpectralProblem.from_json(bad)


def _check_problem(p):
    d, P = eigen_decompose(p)
    assert mat_mul(p.matrix, P) == mat_mul(P, diag(d))
    Pi = inverse_unit_lower(P)
    n = p.size
    identity = diag([ONE] * n)
    assert mat_mul(P, Pi) == identity and mat_mul(Pi, P) == identity


@pytest.mark.parametrize("mode", ["field", "local"])
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_exactness_and_reconstruction(n, mode):
    rng = random.Random(1000 * n + len(mode))
    for _ in range(3):
        p = random_problem(rng, n, mode)
        _check_problem(p)
        v = tuple(QRat(rng.randint(-3, 3)) + Q ** rng.randint(0, 2) for _ in range(n))
        comps = decompose_vector(p, v)
        total = [ZERO] * n
        for lam, c in comps.items():
            total = [a + b for a, b in zip(total, c)]
            mc = tuple(sum((p.matrix[i][j] * c[j] for j in range(n)), ZERO) for i in range(n))
            assert mc == tuple(lam * x for x in c)
        assert tuple(total) == v
        if mode == "local":
            assert local_soundness(p)


@settings(max_examples=25)
@given(st.integers(1, 5), st.integers(0, 2 ** 32))
def test_local_soundness_property(n, seed):
    p = random_problem(random.Random(seed), n, "local")
    _, P = eigen_decompose(p)
    assert all(is_regular(x) for M in (P, inverse_unit_lower(P)) for row in M for x in row)
