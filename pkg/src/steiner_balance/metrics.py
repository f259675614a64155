"""Block-sum metrics for labeled designs and the closed-form bounds on them.

For a labeling rk, each block B gets sum(B) = sum of ranks of its points.
MinSum/MaxSum are the extremes over blocks, DiffSum their difference,
RatioSum their ratio.  RatioSum and the triple-count function phi are exact
rationals throughout; half-integer phi values make floats a correctness
hazard here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .design import Design, Labeling


@dataclass(frozen=True)
class MetricReport:
    """Sum metrics of one (design, labeling) pair with witness blocks.

    ratio_sum is None ("undefined") when min_sum = 0, which can happen for
    pathological packings with k = 1-style degenerate blocks, never for
    k >= 2 with distinct ranks.
    """

    min_sum: int
    max_sum: int
    diff_sum: int
    ratio_sum: Fraction | None
    argmin_block: tuple[int, ...]
    argmax_block: tuple[int, ...]


def block_sum(block: tuple[int, ...], labeling: Labeling) -> int:
    ranks = labeling.ranks
    return sum(ranks[p] for p in block)


def metric_report(design: Design, labeling: Labeling) -> MetricReport:
    if labeling.v != design.v:
        raise ValueError(f"labeling has {labeling.v} ranks, design has {design.v} points")
    if not design.blocks:
        raise ValueError("metrics are undefined for an empty block set")
    ranks = labeling.ranks
    sums = [sum(ranks[p] for p in block) for block in design.blocks]
    lo = min(sums)
    hi = max(sums)
    return MetricReport(
        min_sum=lo,
        max_sum=hi,
        diff_sum=hi - lo,
        ratio_sum=Fraction(hi, lo) if lo > 0 else None,
        argmin_block=design.blocks[sums.index(lo)],
        argmax_block=design.blocks[sums.index(hi)],
    )


@dataclass(frozen=True)
class BoundSheet:
    """Closed-form bounds on the optimal metrics of a Steiner system S(t,k,v).

    These cap the best MinSum (and floor the best MaxSum/DiffSum/RatioSum)
    over all S(t,k,v) and all labelings.  They are stated for Steiner
    systems only and are not asserted against mere packings.  For triple
    systems (t=2, k=3) the refined pair (sts_diffsum_lower, sts_ratiosum_lower)
    is attached.
    """

    t: int
    k: int
    v: int
    minsum_upper: int
    maxsum_lower: int
    diffsum_lower: int
    ratiosum_lower: Fraction
    sts_refined: tuple[int, Fraction] | None


def basic_bounds(t: int, k: int, v: int) -> BoundSheet:
    if not (0 < t < k <= v):
        raise ValueError(f"need 0 < t < k <= v, got t={t} k={k} v={v}")
    minsum2 = v * (k - t + 1) + k * (t - 2)  # twice the MinSum cap
    maxsum2 = v * (k + t - 1) - k * t        # twice the MaxSum floor
    refined = None
    if t == 2 and k == 3:
        if v >= 7 and v % 6 in (1, 3):
            d = sts_diffsum_lower(v)
        else:
            d = v
        refined = (d, Fraction(2))
    return BoundSheet(
        t=t,
        k=k,
        v=v,
        minsum_upper=minsum2 // 2,
        maxsum_lower=-((-maxsum2) // 2),
        diffsum_lower=(v - k) * (t - 1),
        ratiosum_lower=Fraction(maxsum2, minsum2),
        sts_refined=refined,
    )


def phi(x: int) -> Fraction:
    """Pair budget of a triple packing on {0..x-1} whose every triple sums
    to at most x-1; the packing then has at most floor(phi(x)/3) triples."""
    if x < 3:
        raise ValueError(f"phi needs x >= 3, got {x}")
    correction = {0: Fraction(0), 1: Fraction(0), 4: Fraction(0),
                  2: Fraction(1, 2), 3: Fraction(1, 2),
                  5: Fraction(1)}[x % 6]
    return Fraction(x * (x - 1), 4) - (x // 6) - correction


def triple_bound(x: int) -> int:
    """Maximum number of triples with all sums <= x-1: floor(phi(x)/3)."""
    return math.floor(phi(x) / 3)


def sts_diffsum_lower(v: int) -> int:
    """Best possible DiffSum floor over all Steiner triple systems of order v:
    v itself at orders 7 and 9, v+1 from order 13 on."""
    if v < 7 or v % 6 not in (1, 3):
        raise ValueError(f"no Steiner triple system of order {v}")
    return v if v in (7, 9) else v + 1
