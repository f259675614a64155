"""Orders of -2, orbit cycles, matching splits, cubic edge coloring."""

import pytest

from steiner_balance.numtheory import (
    cubic_one_factorization,
    is_singly_even,
    neg2_cycles,
    order_of_minus2,
    prime_factors,
    split_two_factors,
    swc_condition,
    uncovered_pair_edges,
)


def test_order_of_minus2_examples():
    assert order_of_minus2(7) == 6
    assert order_of_minus2(23) == 22
    assert order_of_minus2(19) == 9
    with pytest.raises(ValueError):
        order_of_minus2(9)
    with pytest.raises(ValueError):
        order_of_minus2(2)


def test_singly_even():
    assert is_singly_even(6) and is_singly_even(22)
    assert not is_singly_even(4) and not is_singly_even(9) and not is_singly_even(12)


def test_swc_condition_examples():
    assert swc_condition(9)       # v-2 = 7, order 6
    assert swc_condition(25)      # v-2 = 23, order 22
    assert not swc_condition(21)  # v-2 = 19, order 9
    assert not swc_condition(7)   # v-2 = 5, order 4 (even but not singly)


def test_swc_set_up_to_60():
    admissible = [v for v in range(7, 61) if v % 6 in (1, 3)]
    assert [v for v in admissible if swc_condition(v)] == [9, 25, 33, 49, 51]


def test_neg2_cycles_examples():
    assert neg2_cycles(7) == [(1, 5, 4, 6, 2, 3)]
    assert neg2_cycles(5) == [(1, 3, 4, 2)]
    lengths = sorted(len(c) for c in neg2_cycles(19))
    assert 9 in lengths


def test_neg2_cycles_cover_all_nonzero():
    for n in (5, 7, 11, 13, 23, 49):
        cycles = neg2_cycles(n)
        seen = sorted(x for c in cycles for x in c)
        assert seen == list(range(1, n))


def test_split_two_factors():
    split = split_two_factors(neg2_cycles(7))
    assert len(split.factors) == 2
    assert all(len(f) == 3 for f in split.factors)
    split5 = split_two_factors(neg2_cycles(5))
    assert all(len(f) == 2 for f in split5.factors)


def test_split_rejects_odd_cycles():
    with pytest.raises(ValueError, match="odd length"):
        split_two_factors(neg2_cycles(19))


def test_split_succeeds_whenever_condition_holds():
    for v in range(7, 201):
        if v % 6 in (1, 3) and swc_condition(v):
            split = split_two_factors(neg2_cycles(v - 2))
            n = v - 2
            assert all(len(f) == (n - 1) // 2 for f in split.factors)


def test_uncovered_pair_sum_range():
    # every pair {a, b} with b = -2a has (n+1)/2 <= a+b <= (n-1)/2 + n
    for n in (5, 7, 11, 13, 25, 49):
        for a, b in uncovered_pair_edges(n):
            assert (n + 1) // 2 <= a + b <= (n - 1) // 2 + n


def test_prime_factors():
    assert prime_factors(25) == [5]
    assert prime_factors(35) == [5, 7]
    assert prime_factors(49) == [7]


def test_cubic_one_factorization_k4():
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    split = cubic_one_factorization(k4)
    assert split.factors == (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def test_cubic_one_factorization_prism():
    # two triangles joined by a matching: 3-edge-colorable
    prism = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    split = cubic_one_factorization(prism)
    assert len(split.factors) == 3
    assert sorted(e for f in split.factors for e in f) == sorted(prism)


def test_cubic_one_factorization_petersen_fails():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    with pytest.raises(ValueError, match="no 1-factorization"):
        cubic_one_factorization(outer + spokes + inner)


def test_cubic_rejects_non_cubic():
    with pytest.raises(ValueError, match="3-regular"):
        cubic_one_factorization([(0, 1), (1, 2), (2, 0)])


def test_factor_split_invariants():
    split = split_two_factors(neg2_cycles(23))
    union = sorted(e for f in split.factors for e in f)
    assert union == sorted(split.source_graph)
    for f in split.factors:
        touched = [x for e in f for x in e]
        assert len(touched) == len(set(touched)) == 22
