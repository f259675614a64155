"""Independent sets in packings and the labeling bounds they induce.

A point set is independent when it contains no whole block.  The maximum
independent set size alpha(D) caps the best MinSum of any labeling at
k*alpha - C(k,2); a pair of disjoint independent sets caps the best DiffSum
and, conversely, yields a labeling whose DiffSum is provably small.

Exact searches are capped (configuration constants below) so the full test
suite stays fast; beyond the caps, seeded heuristics take over and say so.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .design import Design, Labeling, block_masks

MIS_EXACT_CAP = 30        # branch-and-bound exact maximum independent set
PAIR_EXACT_CAP = 15       # exact disjoint-pair search


def clip_threshold(design: Design) -> Fraction:
    """Size beyond which an independent set stops helping the pair objective:
    v(k-t+1)/(2k) + (k+t)/2 - 1, kept exact."""
    v, t, k = design.v, design.t, design.k
    return Fraction(v * (k - t + 1), 2 * k) + Fraction(k + t, 2) - 1


def is_independent(design: Design, points) -> bool:
    """True iff no block of the design is contained in the point set."""
    mask = 0
    for p in points:
        mask |= 1 << p
    return all(bm & mask != bm for bm in block_masks(design))


def max_independent_set(design: Design, cap: int = MIS_EXACT_CAP) -> tuple[int, ...]:
    """An exact maximum independent set (lexicographically least witness).

    Plain include/exclude branch and bound over points in index order;
    intended for v <= 30, errors above the cap (use the greedy search there).
    """
    v = design.v
    if v > cap:
        raise ValueError(f"exact search capped at v={cap}; use greedy_independent_set")
    masks = block_masks(design)
    # blocks indexed by their largest point: a block can only complete when
    # its largest point is added.
    by_top: list[list[int]] = [[] for _ in range(v)]
    for bm, block in zip(masks, design.blocks):
        by_top[block[-1]].append(bm & ~(1 << block[-1]))

    best: list[tuple[int, ...]] = [()]

    def extend(p: int, chosen: int, size: int, picked: list[int]) -> None:
        if size + (v - p) <= len(best[0]):
            return
        if p == v:
            if size > len(best[0]):
                best[0] = tuple(picked)
            return
        rest = [bm for bm in by_top[p] if bm & chosen == bm]
        if not rest:  # p completes no block: taking it is safe
            picked.append(p)
            extend(p + 1, chosen | (1 << p), size + 1, picked)
            picked.pop()
        extend(p + 1, chosen, size, picked)

    extend(0, 0, 0, [])
    return best[0]


def greedy_independent_set(design: Design, seed: int = 0) -> tuple[int, ...]:
    """Seeded random-permutation insertion: add each point unless it completes
    a block.  The result is a maximal independent set; for triple packings its
    size is at least floor(sqrt(2v))."""
    rng = random.Random(seed)
    order = list(range(design.v))
    rng.shuffle(order)
    masks = block_masks(design)
    chosen = 0
    out = []
    for p in order:
        trial = chosen | (1 << p)
        if all(bm & trial != bm for bm in masks):
            chosen = trial
            out.append(p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class IndependentPair:
    """Two disjoint independent sets, ordered so gamma >= delta, with their
    sizes clipped (exactly, as rationals) at the pair threshold."""

    set_a: tuple[int, ...]
    set_b: tuple[int, ...]
    gamma: int
    delta: int
    gamma_clip: Fraction
    delta_clip: Fraction
    exact: bool

    @property
    def clipped_sum(self) -> Fraction:
        return self.gamma_clip + self.delta_clip


def make_pair(design: Design, set_a, set_b, exact: bool) -> IndependentPair:
    a = tuple(sorted(set_a))
    b = tuple(sorted(set_b))
    if set(a) & set(b):
        raise ValueError("independent pair sets overlap")
    if not is_independent(design, a) or not is_independent(design, b):
        raise ValueError("a set of the pair is not independent")
    if len(a) < len(b):
        a, b = b, a
    thr = clip_threshold(design)
    return IndependentPair(
        set_a=a, set_b=b, gamma=len(a), delta=len(b),
        gamma_clip=min(Fraction(len(a)), thr),
        delta_clip=min(Fraction(len(b)), thr),
        exact=exact,
    )


def _independent_sets_up_to(design: Design, size_cap: int) -> list[tuple[int, int]]:
    """All independent sets of size <= size_cap as (mask, size), DFS order."""
    v = design.v
    masks = block_masks(design)
    by_top: list[list[int]] = [[] for _ in range(v)]
    for bm, block in zip(masks, design.blocks):
        by_top[block[-1]].append(bm & ~(1 << block[-1]))
    out: list[tuple[int, int]] = []

    def extend(p: int, chosen: int, size: int) -> None:
        out.append((chosen, size))
        if size == size_cap:
            return
        for q in range(p, v):
            if all(bm & chosen != bm for bm in by_top[q]):
                extend(q + 1, chosen | (1 << q), size + 1)

    extend(0, 0, 0)
    return out


def independent_pair(design: Design, cap: int = PAIR_EXACT_CAP) -> IndependentPair:
    """A pair of disjoint independent sets maximizing the clipped size sum.

    Exact (certified) for v <= the cap by enumerating independent sets up to
    the useful size; beyond the cap a greedy-seeded local improvement runs
    instead and the result is flagged heuristic.
    """
    if design.v <= cap:
        return _independent_pair_exact(design)
    return _independent_pair_heuristic(design)


def _independent_pair_exact(design: Design) -> IndependentPair:
    thr = clip_threshold(design)
    size_cap = min(design.v, math.ceil(thr))
    sets = _independent_sets_up_to(design, size_cap)
    by_size: dict[int, list[int]] = {}
    for mask, size in sets:
        by_size.setdefault(size, []).append(mask)
    sizes = sorted(by_size, reverse=True)

    def clip(s: int) -> Fraction:
        return min(Fraction(s), thr)

    combos = sorted(
        ((clip(s1) + clip(s2), s1, s2) for s1 in sizes for s2 in sizes if s2 <= s1),
        key=lambda c: (-c[0], -c[1]),
    )
    best: IndependentPair | None = None
    for value, s1, s2 in combos:
        if best is not None and value <= best.clipped_sum:
            break
        found = None
        for ma in by_size[s1]:
            for mb in by_size[s2]:
                if ma & mb == 0:
                    found = (ma, mb)
                    break
            if found:
                break
        if found:
            a = tuple(p for p in range(design.v) if found[0] >> p & 1)
            b = tuple(p for p in range(design.v) if found[1] >> p & 1)
            best = make_pair(design, a, b, exact=True)
    if best is None:  # no nonempty pair: fall back to empty sets
        best = make_pair(design, (), (), exact=True)
    return best


def _independent_pair_heuristic(design: Design, seed: int = 0, restarts: int = 20) -> IndependentPair:
    thr = clip_threshold(design)
    masks = block_masks(design)
    best: IndependentPair | None = None
    for r in range(restarts):
        first = set(greedy_independent_set(design, seed=seed + r))
        # grow a second set greedily in the complement
        rng = random.Random(seed + 1000 + r)
        order = [p for p in range(design.v) if p not in first]
        rng.shuffle(order)
        second: set[int] = set()
        chosen = 0
        for p in order:
            trial = chosen | (1 << p)
            if all(bm & trial != bm for bm in masks):
                chosen = trial
                second.add(p)
        cand = make_pair(design, tuple(first), tuple(second), exact=False)
        if best is None or cand.clipped_sum > best.clipped_sum:
            best = cand
    assert best is not None
    return best


@dataclass(frozen=True)
class IndepBounds:
    """Labeling bounds implied by independence numbers.

    minsum_upper / maxsum_lower / diffsum_lower follow from a single maximum
    independent set of size alpha; pair_diffsum_lower from a disjoint pair
    (clipped, exact rational).  The necessity thresholds say how large alpha
    (respectively both pair sizes) must be for the closed-form caps on
    MinSum (respectively DiffSum) to be attainable at all.
    """

    alpha: int
    minsum_upper: int
    maxsum_lower: int
    diffsum_lower: int
    pair_diffsum_lower: Fraction | None
    alpha_necessity_threshold: Fraction
    alpha_necessity_met: bool
    pair_necessity_threshold: Fraction
    pair_necessity_met: bool | None


def indep_bounds(design: Design, alpha: int, pair: IndependentPair | None = None) -> IndepBounds:
    v, t, k = design.v, design.t, design.k
    kc2 = math.comb(k, 2)
    alpha_thr = Fraction(v * (k - t + 1), 2 * k) + Fraction(k + t - 3, 2)
    pair_thr = clip_threshold(design)
    pair_diff = None
    pair_met = None
    if pair is not None:
        pair_diff = k * (v + k - 2) - k * (pair.gamma_clip + pair.delta_clip)
        pair_met = Fraction(pair.gamma) >= pair_thr and Fraction(pair.delta) >= pair_thr
    return IndepBounds(
        alpha=alpha,
        minsum_upper=k * alpha - kc2,
        maxsum_lower=k * (v - 1 - alpha) + kc2,
        diffsum_lower=k * (v + k - 2 - 2 * alpha),
        pair_diffsum_lower=pair_diff,
        alpha_necessity_threshold=alpha_thr,
        alpha_necessity_met=Fraction(alpha) >= alpha_thr,
        pair_necessity_threshold=pair_thr,
        pair_necessity_met=pair_met,
    )


def labeling_from_pair(design: Design, pair: IndependentPair) -> Labeling:
    """Rank one independent set lowest, the other highest, the rest in
    between; all three zones in ascending point order, so the result is
    reproducible.

    Guarantees: with sizes (gamma, delta) = (a, b), every block keeps at
    least one point out of each zone, so MinSum >= gamma + C(k-1,2) and
    MaxSum <= k*v - C(k,2) - delta - 1.  The often-quoted stronger caps
    MinSum >= gamma + C(k,2) and DiffSum <= k(v-k) - gamma - delta - 1 hold
    on most instances in this library's corpus but are not implied by the
    construction alone.
    """
    v = design.v
    if set(pair.set_a) & set(pair.set_b):
        raise ValueError("independent pair sets overlap")
    a, b = pair.set_a, pair.set_b
    ranks = [-1] * v
    for r, p in enumerate(a):
        ranks[p] = r
    for r, p in enumerate(b):
        ranks[p] = v - len(b) + r
    middle = [p for p in range(v) if ranks[p] < 0]
    for r, p in enumerate(middle):
        ranks[p] = len(a) + r
    return Labeling(tuple(ranks))
