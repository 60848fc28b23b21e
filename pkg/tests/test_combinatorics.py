from fractions import Fraction
from itertools import combinations, product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hallmotive.combinatorics import (
    SetPartition,
    aut_order,
    binom_poly,
    compositions,
    covering,
    covering_brute_force,
    enumerate_kind,
    is_partition,
    lattice_sum,
    n_RQ,
    partitions,
    set_partitions,
    stirling1,
    stirling2,
)
from hallmotive.qscalar import QPoly


def surjections(k, r):
    return sum(1 for f in product(range(r), repeat=k) if set(f) == set(range(r)))


def test_stirling1_examples():
    assert stirling1(2, 1) == -1
    assert stirling1(3, 1) == 2
    assert all(stirling1(n, n) == 1 for n in range(10))
    assert stirling1(0, 0) == 1 and stirling1(3, 0) == 0 and stirling1(0, 2) == 0


def test_stirling1_counts_permutations_by_cycles():
    # |s(n, k)| = number of permutations of n with k cycles
    from itertools import permutations

    for n in range(1, 7):
        counts = [0] * (n + 1)
        for perm in permutations(range(n)):
            seen, cycles = set(), 0
            for i in range(n):
                if i not in seen:
                    cycles += 1
                    while i not in seen:
                        seen.add(i)
                        i = perm[i]
            counts[cycles] += 1
        for k in range(n + 1):
            assert stirling1(n, k) == (-1) ** (n - k) * counts[k]


def test_stirling2_examples():
    assert stirling2(3, 2) == 3
    assert all(stirling2(k, 1) == 1 for k in range(1, 10))
    assert stirling2(1, 2) == 0
    for k in range(7):
        for r in range(7):
            assert factorial(r) * stirling2(k, r) == surjections(k, r)


def test_stirling_inversion():
    for l in range(11):
        for k in range(11):
            total = sum(stirling2(l, r) * stirling1(r, k) for r in range(11))
            assert total == (1 if l == k else 0)


def test_covering_examples():
    assert covering(2, [1, 1]) == 2
    assert covering(3, [2, 2]) == 6
    assert all(covering(n, [n]) == 1 for n in range(6))


def test_covering_matches_enumeration():
    for n in range(6):
        for p in range(1, 4):
            for lam in product(range(n + 1), repeat=p):
                assert covering(n, lam) == covering_brute_force(n, lam)


def test_binom_poly_examples():
    assert binom_poly(0) == QPoly([1])
    assert binom_poly(2) == QPoly([0, Fraction(-1, 2), Fraction(1, 2)])
    assert binom_poly(2).coeffs[1] == Fraction(-1, 2)
    for n in range(8):
        for k in range(n + 1):
            assert binom_poly(n).coeffs[k] == Fraction(stirling1(n, k), factorial(n))
        for t in range(8):
            from math import comb

            assert binom_poly(n)(t) == comb(t, n)


def test_binomial_product_identity():
    for p in range(1, 5):
        for lam in product(range(1, 5), repeat=p):
            lhs = QPoly([1])
            for part in lam:
                lhs = lhs * binom_poly(part)
            rhs = QPoly()
            for n in range(sum(lam) + 1):
                rhs = rhs + binom_poly(n) * covering(n, lam)
            assert lhs == rhs, lam


def full_n_RQ(Q, R):
    """n(R, Q) straight from the definition: B ranges over all sets of
    coarsenings of Q containing Q itself, with join R."""
    coarser = [P for P in set_partitions(Q.m) if P.coarsens(Q) and P != Q]
    total = 0
    for size in range(len(coarser) + 1):
        for chosen in combinations(coarser, size):
            if _join([Q, *chosen]) == R:
                total += (-1) ** size
    return total


def _join(parts):
    m = parts[0].m
    label = {x: x for x in range(1, m + 1)}

    def find(x):
        while label[x] != x:
            x = label[x]
        return x

    for P in parts:
        for b in P.blocks:
            for x in b[1:]:
                ra, rb = find(b[0]), find(x)
                if ra != rb:
                    label[ra] = rb
    groups = {}
    for x in range(1, m + 1):
        groups.setdefault(find(x), []).append(x)
    return SetPartition(groups.values())


def test_n_RQ_examples():
    Q = SetPartition.discrete(3)
    assert n_RQ(Q, Q) == 1
    assert sum(n_RQ(Q, R) for R in set_partitions(3) if len(R) == 1) == 2
    Q4 = SetPartition.discrete(4)
    assert sum(n_RQ(Q4, R) for R in set_partitions(4) if len(R) == 2) == 11
    with pytest.raises(ValueError):
        n_RQ(SetPartition([(1, 2), (3,)]), SetPartition([(1, 3), (2,)]))


def test_codim_one_reduction_matches_definition():
    for m in range(1, 5):
        for Q in set_partitions(m):
            for R in set_partitions(m):
                if R.coarsens(Q):
                    assert n_RQ(Q, R) == full_n_RQ(Q, R), (Q, R)


def test_lattice_lemma():
    for m in range(1, 7):
        for k in range(m + 1):
            assert lattice_sum(m, k) == stirling1(m, k)


def test_set_partition_counts():
    bell = [1, 1, 2, 5, 15, 52, 203]
    for m, b in enumerate(bell):
        assert len(list(set_partitions(m))) == b
    for m in range(7):
        for k in range(m + 1):
            assert sum(1 for P in set_partitions(m) if len(P) == k) == stirling2(m, k)


def test_set_partition_validation():
    with pytest.raises(ValueError):
        SetPartition([(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        SetPartition([(1,), (3,)])
    assert SetPartition.single(3).coarsens(SetPartition.discrete(3))
    assert not SetPartition.discrete(3).coarsens(SetPartition.single(3))


def test_enumerate_examples():
    assert enumerate_kind("partitions", 3) == [(3,), (2, 1), (1, 1, 1)]
    assert enumerate_kind("compositions", 3, 2) == [(1, 2), (2, 1)]
    assert enumerate_kind("compositions", 2, 3) == []
    assert enumerate_kind("compositions", 3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    with pytest.raises(ValueError):
        enumerate_kind("necklaces", 3)


@given(st.integers(0, 12))
def test_partition_enumeration(n):
    ps = list(partitions(n))
    assert len(set(ps)) == len(ps)
    assert all(is_partition(p) and sum(p) == n for p in ps)
    assert ps == sorted(ps, reverse=True)


@given(st.integers(0, 9), st.integers(0, 9))
def test_composition_enumeration(n, parts):
    cs = list(compositions(n, parts))
    from math import comb

    expected = comb(n - 1, parts - 1) if n and parts else int(n == parts == 0)
    assert len(cs) == expected
    assert cs == sorted(cs)
    assert all(sum(c) == n and len(c) == parts and min(c, default=1) >= 1 for c in cs)


def test_aut_order():
    assert aut_order((2, 1, 1)) == 2
    assert aut_order((1, 1, 1)) == 6
    assert aut_order(()) == 1
