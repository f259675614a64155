"""Sum metrics, closed-form bounds, and the low-sum triple budget."""

from fractions import Fraction
from itertools import combinations, permutations

import pytest

from steiner_balance.design import Design, Labeling, identity_labeling, validate
from steiner_balance.metrics import (
    basic_bounds,
    metric_report,
    phi,
    sts_diffsum_lower,
    triple_bound,
)
from steiner_balance.constructions import catalog, bose


def test_metric_report_catalog():
    d7, l7 = catalog("STS7")
    r = metric_report(d7, l7)
    assert (r.min_sum, r.max_sum, r.diff_sum) == (6, 13, 7)
    assert r.ratio_sum == Fraction(13, 6)
    assert sum(r.argmin_block) == 6 and sum(r.argmax_block) == 13

    d9, l9 = catalog("STS9")
    r = metric_report(d9, l9)
    assert (r.min_sum, r.max_sum) == (9, 18)
    assert r.ratio_sum == 2


def test_metric_report_empty_design_errors():
    d = Design(v=5, t=2, k=3, blocks=())
    with pytest.raises(ValueError, match="empty"):
        metric_report(d, identity_labeling(5))


def test_reversal_identity_exact():
    # MaxSum(D, rk) = k(v-1) - MinSum(D, reverse(rk)), and DiffSum matches
    import random

    rng = random.Random(7)
    d = bose(15)
    for _ in range(25):
        ranks = list(range(15))
        rng.shuffle(ranks)
        lab = Labeling(tuple(ranks))
        rev = lab.reverse()
        a = metric_report(d, lab)
        b = metric_report(d, rev)
        assert a.max_sum == 3 * 14 - b.min_sum
        assert a.diff_sum == b.diff_sum


def test_basic_bounds_sts7():
    sheet = basic_bounds(2, 3, 7)
    assert sheet.minsum_upper == 7
    assert sheet.sts_refined == (7, Fraction(2))


def test_basic_bounds_k_equals_t_plus_1():
    # (t=3,k=4,v=8): caps (v-1)+C(3,2) = 10 and t(v-1)-C(3,2) = 18
    sheet = basic_bounds(3, 4, 8)
    assert sheet.minsum_upper == 10
    assert sheet.maxsum_lower == 18


def test_basic_bounds_sts13_refined_diffsum():
    sheet = basic_bounds(2, 3, 13)
    assert sheet.sts_refined[0] == sts_diffsum_lower(13) == 14


def test_basic_bounds_general_formulas():
    sheet = basic_bounds(2, 4, 13)
    assert sheet.diffsum_lower == (13 - 4) * 1
    assert sheet.ratiosum_lower == Fraction(13 * 5 - 8, 13 * 3 + 0)
    assert sheet.sts_refined is None
    with pytest.raises(ValueError):
        basic_bounds(3, 3, 9)


def test_bounds_hold_for_every_labeling_tiny_v():
    # exhaustive over all labelings of the catalog systems: each labeling's
    # min_sum stays under the cap and max_sum over the floor
    for name in ("STS7", "STS9"):
        d, _ = catalog(name)
        sheet = basic_bounds(d.t, d.k, d.v)
        for perm in permutations(range(d.v)):
            r = metric_report(d, Labeling(perm))
            assert r.min_sum <= sheet.minsum_upper
            assert r.max_sum >= sheet.maxsum_lower
            assert r.diff_sum >= sheet.diffsum_lower


def test_phi_values():
    assert phi(7) == Fraction(19, 2) and triple_bound(7) == 3
    assert phi(6) == Fraction(13, 2) and triple_bound(6) == 2
    assert phi(3) == 1 and triple_bound(3) == 0
    with pytest.raises(ValueError):
        phi(2)


def _max_low_sum_packing(x: int) -> int:
    """Independent oracle: largest pair-disjoint family of triples on
    {0..x-1} whose every triple sums to at most x-1, by exhaustive search."""
    cands = [t for t in combinations(range(x), 3) if sum(t) <= x - 1]
    best = 0

    def rec(i, used_pairs, count):
        nonlocal best
        best = max(best, count)
        if count + (len(cands) - i) <= best:
            return
        for j in range(i, len(cands)):
            prs = set(combinations(cands[j], 2))
            if prs & used_pairs:
                continue
            rec(j + 1, used_pairs | prs, count + 1)

    rec(0, set(), 0)
    return best


def test_triple_bound_against_exhaustive_oracle():
    # frozen oracle values: x -> max packing size
    oracle = {3: 0, 4: 1, 5: 1, 6: 2, 7: 3, 8: 4, 9: 5}
    for x, expected in oracle.items():
        assert _max_low_sum_packing(x) == expected
        assert expected <= triple_bound(x)
    assert _max_low_sum_packing(7) == triple_bound(7) == 3  # bound attained


def test_sts_diffsum_lower():
    assert sts_diffsum_lower(7) == 7
    assert sts_diffsum_lower(9) == 9
    assert sts_diffsum_lower(13) == 14
    assert sts_diffsum_lower(15) == 16
    with pytest.raises(ValueError):
        sts_diffsum_lower(11)
    with pytest.raises(ValueError):
        sts_diffsum_lower(5)
