"""Constructive families: block counts, validity, and identity-labeling sums."""

import math
import random
from itertools import combinations

import pytest

from steiner_balance.design import identity_labeling, validate
from steiner_balance.metrics import metric_report
from steiner_balance.independence import is_independent, make_pair
from steiner_balance.constructions import (
    _sw_general_parts,
    _sw_special_parts,
    bose,
    bose_independent_pair,
    catalog,
    fourpack,
    skolem,
    skolem_independent_pair,
    sum_class_packing,
    sum_zero_triples,
    sw_complete_general,
    sw_complete_special,
)


# ---------------------------------------------------------------------------
# sum-class packings


def test_sum_class_t2_v11_sigma2():
    d = sum_class_packing(2, 11, 2)
    assert d.b == 15
    assert validate(d).is_packing
    r = metric_report(d, identity_labeling(11))
    assert (r.min_sum, r.max_sum, r.diff_sum) == (13, 24, 11)


def test_sum_class_t2_v13_sigma2():
    d = sum_class_packing(2, 13, 2)
    assert d.b == 22
    r = metric_report(d, identity_labeling(13))
    assert r.min_sum == 15 == 13 + math.comb(3, 2) - 1
    assert r.max_sum == 28


def test_sum_class_t3_v11_negative_sigma():
    # raw class omega = v + sigma = 2; the MaxSum cap is met even though v
    # is below the threshold for the MinSum statement
    d = sum_class_packing(3, 11, -9)
    assert d.b == math.comb(11, 4) // 11 == 30
    assert validate(d).is_packing
    r = metric_report(d, identity_labeling(11))
    assert r.max_sum == 3 * 11 - 9 == 24


def test_sum_class_block_sums_congruent():
    d = sum_class_packing(2, 13, 5)
    for block in d.blocks:
        assert sum(block) % 13 == 5


def test_sum_class_signed_window_guarantees():
    # the exact MinSum/MaxSum/DiffSum values across the whole signed window
    for v in (10, 11, 13, 14):
        for sigma in range(-math.comb(4, 2) + 1, math.comb(3, 2)):
            d = sum_class_packing(2, v, sigma)
            assert d.b == math.comb(v, 3) // v
            assert validate(d).is_packing
            r = metric_report(d, identity_labeling(v))
            assert r.min_sum == v + sigma
            assert r.max_sum == 2 * v + sigma
            assert r.diff_sum == v


def test_sum_class_rejects_bad_parameters():
    with pytest.raises(ValueError, match="gcd"):
        sum_class_packing(2, 12, 0)
    with pytest.raises(ValueError, match="sigma"):
        sum_class_packing(2, 11, 11)
    with pytest.raises(ValueError, match="sigma"):
        sum_class_packing(2, 11, -6)
    with pytest.raises(ValueError, match="too small"):
        sum_class_packing(3, 4, 0)


def test_sum_class_orbit_property():
    # translates of any block land in v distinct sum classes when gcd(v,t+1)=1
    rng = random.Random(3)
    for t, v in ((2, 11), (3, 11)):
        for _ in range(11):
            s = tuple(sorted(rng.sample(range(v), t + 1)))
            classes = {sum((x + a) % v for x in s) % v for a in range(v)}
            assert len(classes) == v


# ---------------------------------------------------------------------------
# quadruple packing on even orders


def test_fourpack_20():
    d = fourpack(20)
    assert d.b == 240
    assert validate(d).is_packing
    r = metric_report(d, identity_labeling(20))
    assert (r.min_sum, r.max_sum) == (22, 54)
    assert r.diff_sum == 2 * 20 - 8


def test_fourpack_20_class1_sums():
    s = 10
    d = fourpack(20)
    class1 = [b for b in d.blocks if sum(1 for p in b if p < s) == 3]
    assert len(class1) == 120
    assert {sum(b) for b in class1} <= {2 * s + 2, 3 * s + 2, 4 * s + 2}


def test_fourpack_22():
    d = fourpack(22)
    assert d.b == (22 - 4) * math.comb(22, 3) // ((22 - 1) * 4) == 330
    st = validate(d)
    assert st.is_packing and not st.is_steiner
    r = metric_report(d, identity_labeling(22))
    assert (r.min_sum, r.max_sum) == (24, 60)


def test_fourpack_rejects_bad_orders():
    with pytest.raises(ValueError):
        fourpack(21)
    with pytest.raises(ValueError):
        fourpack(18)


# ---------------------------------------------------------------------------
# completions


def test_sum_zero_triples_counts():
    for n in (5, 7, 11, 13):
        assert len(sum_zero_triples(n)) == (n - 1) * (n - 2) // 6


def test_sw_special_examples():
    d, lab = sw_complete_special(9)
    assert validate(d).is_steiner and d.b == 12
    r = metric_report(d, lab)
    assert r.min_sum >= 7 and r.max_sum <= 20

    d, lab = sw_complete_special(25)
    assert validate(d).is_steiner and d.b == 100
    r = metric_report(d, lab)
    assert r.min_sum >= 23 and r.max_sum <= 52


def test_sw_special_rejects_failing_condition():
    with pytest.raises(ValueError, match="sw_complete_general"):
        sw_complete_special(21)
    with pytest.raises(ValueError, match="sw_complete_general"):
        sw_complete_special(7)


def test_sw_special_block_type_sums():
    for v in (9, 25, 33):
        type1, type2, type3, split = _sw_special_parts(v)
        for b in type1:
            s = sum(b)
            assert v - 2 <= s <= v + 2 or 2 * v - 2 <= s <= 2 * v + 2
        for b in type2:
            assert v - 1 <= sum(b) <= 2 * v + 1
        assert sum(type3) == v
        assert all(len(f) == (v - 3) // 2 for f in split.factors)


def test_sw_general_all_admissible_to_31():
    for v in range(7, 32):
        if v % 6 not in (1, 3):
            continue
        d, lab = sw_complete_general(v)
        st = validate(d)
        assert st.is_steiner, v
        assert d.b == v * (v - 1) // 6
        r = metric_report(d, lab)
        assert r.min_sum >= v - 5
        assert r.max_sum <= 2 * v + 2
        assert r.diff_sum <= v + 7


def test_sw_general_block_type_sums():
    for v in (13, 19, 27):
        type1, type2, type3, _ = _sw_general_parts(v)
        for b in type1:
            s = sum(b)
            assert v - 5 <= s <= v - 2 or 2 * v - 1 <= s <= 2 * v + 2
        for b in type2:
            assert v - 4 <= sum(b) <= 2 * v + 1
        assert type3 == ((v - 3) // 2, (v - 1) // 2, (v + 1) // 2)
        assert sum(type3) == 3 * (v - 1) // 2


# ---------------------------------------------------------------------------
# Bose, Skolem, catalog


def test_bose_valid():
    for v in (9, 15, 21, 27, 33):
        d = bose(v)
        st = validate(d)
        assert st.is_steiner
        assert d.b == v * (v - 1) // 6
    with pytest.raises(ValueError):
        bose(13)


def test_bose_independent_pair():
    for v in (9, 15, 21, 27):
        d = bose(v)
        a, b = bose_independent_pair(v)
        assert len(a) == len(b) == v // 3 + 1
        assert not set(a) & set(b)
        assert is_independent(d, a) and is_independent(d, b)


def test_skolem_valid():
    for v in (7, 13, 19, 25, 31):
        d = skolem(v)
        assert validate(d).is_steiner
        assert d.b == v * (v - 1) // 6
    with pytest.raises(ValueError):
        skolem(9)


def test_skolem_independent_pair():
    # sizes ((v+2)/3 + 1, (v+2)/3): a balanced pair of two (v+2)/3+1 sets is
    # impossible at v=13 (any such pair needs 30 blocks with two points
    # inside, more than the 26 an STS(13) has) and absent at v=19 too
    for v in (13, 19, 25):
        d = skolem(v)
        a, b = skolem_independent_pair(v)
        assert len(a) == (v + 2) // 3 + 1
        assert len(b) == (v + 2) // 3
        assert not set(a) & set(b)
        assert is_independent(d, a) and is_independent(d, b)


def test_no_sts13_has_two_disjoint_independent_6_sets():
    # counting: each 6-set's 15 internal pairs need 15 distinct blocks with
    # exactly two points inside; the two block families are disjoint, so a
    # disjoint pair of 6-sets would need 30 of the 26 blocks.
    d = skolem(13)
    sixes = [s for s in combinations(range(13), 6) if is_independent(d, s)]
    assert sixes, "independent 6-sets do exist"
    for i, a in enumerate(sixes):
        for b in sixes[i + 1:]:
            assert set(a) & set(b), "found a forbidden disjoint pair"


def test_catalog():
    d7, l7 = catalog("STS7")
    assert metric_report(d7, l7).min_sum == 6
    d9, _ = catalog("STS9")
    assert validate(d9).is_steiner
    d8, l8 = catalog("S348")
    assert (d8.t, d8.k, d8.v) == (3, 4, 8)
    r = metric_report(d8, l8)
    assert (r.min_sum, r.max_sum) == (10, 18)
    with pytest.raises(ValueError, match="unknown catalog"):
        catalog("STS11")


def test_every_construction_validates():
    designs = [
        sum_class_packing(2, 11, 2),
        fourpack(20),
        sw_complete_special(9)[0],
        sw_complete_general(13)[0],
        bose(15),
        skolem(13),
        catalog("S348")[0],
    ]
    for d in designs:
        assert validate(d).is_packing, d.provenance
