"""Storage-layout view of a labeled design: per-node access load, fractional
repetition rate, and recovery-stripe uniformity.

Blocks play storage nodes; points play data items placed on every node whose
block contains them.  Popularity is a deterministic nonincreasing weight per
rank, so every statistic here is exact rational arithmetic (the coefficient
of variation alone is reported as a float since it takes a square root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .design import Design, Labeling, validate

FRC_ENUMERATION_CAP = 10 ** 6
ZIPF_PRECISION = 10 ** 9  # denominator for non-integer exponents


@dataclass(frozen=True)
class AccessProfile:
    """Nonincreasing per-rank access weights; rank 0 is the most popular."""

    kind: str
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("access weights must be nonnegative")
        if any(a < b for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError("access weights must be nonincreasing in rank")


def uniform_profile(v: int) -> AccessProfile:
    return AccessProfile("uniform", (Fraction(1),) * v)


def linear_profile(v: int) -> AccessProfile:
    """Weight v-1-r for rank r: block load then mirrors the block sum, so the
    load spread of a layout equals its DiffSum exactly."""
    return AccessProfile("linear", tuple(Fraction(v - 1 - r) for r in range(v)))


def zipf_profile(v: int, exponent: float | int | Fraction) -> AccessProfile:
    """Weights 1/(r+1)^s; exact for integer s, otherwise rounded to 1e-9."""
    if exponent < 0:
        raise ValueError("zipf exponent must be nonnegative")
    weights = []
    for r in range(v):
        if float(exponent).is_integer():
            weights.append(Fraction(1, (r + 1) ** int(exponent)))
        else:
            weights.append(Fraction(round(ZIPF_PRECISION / (r + 1) ** float(exponent)),
                                    ZIPF_PRECISION))
    return AccessProfile(f"zipf({exponent})", tuple(weights))


def custom_profile(weights) -> AccessProfile:
    return AccessProfile("custom", tuple(Fraction(w) for w in weights))


@dataclass(frozen=True)
class LoadReport:
    """Per-node access load and its summary statistics."""

    per_node_load: tuple[Fraction, ...]
    max: Fraction
    min: Fraction
    spread: Fraction
    mean: Fraction
    variance: Fraction
    coefficient_of_variation: float


def access_load(design: Design, labeling: Labeling, profile: AccessProfile) -> LoadReport:
    if labeling.v != design.v or len(profile.weights) != design.v:
        raise ValueError("design, labeling, and profile sizes disagree")
    if not design.blocks:
        raise ValueError("load is undefined for an empty block set")
    w = profile.weights
    ranks = labeling.ranks
    loads = tuple(sum((w[ranks[p]] for p in block), Fraction(0)) for block in design.blocks)
    mean = sum(loads, Fraction(0)) / len(loads)
    variance = sum(((x - mean) ** 2 for x in loads), Fraction(0)) / len(loads)
    cv = math.sqrt(variance) / float(mean) if mean > 0 else 0.0
    return LoadReport(
        per_node_load=loads,
        max=max(loads),
        min=min(loads),
        spread=max(loads) - min(loads),
        mean=mean,
        variance=variance,
        coefficient_of_variation=cv,
    )


def frc_rate(design: Design, read_k: int, cap: int = FRC_ENUMERATION_CAP) -> int:
    """Minimum number of distinct items reachable from any read_k nodes.

    Exhaustive over all C(b, read_k) node subsets; errors when that count
    exceeds the cap rather than sampling.
    """
    b = design.b
    if not (1 <= read_k <= b):
        raise ValueError(f"read_k must be in 1..{b}, got {read_k}")
    n_subsets = math.comb(b, read_k)
    if n_subsets > cap:
        raise ValueError(f"C({b},{read_k}) = {n_subsets} exceeds the enumeration cap {cap}")
    masks = []
    for block in design.blocks:
        m = 0
        for p in block:
            m |= 1 << p
        masks.append(m)
    best = design.v
    for subset in combinations(masks, read_k):
        u = 0
        for m in subset:
            u |= m
        best = min(best, u.bit_count())
    return best


@dataclass(frozen=True)
class RecoveryReport:
    """How many parity stripes (blocks) each disk (point) participates in."""

    stripes_per_point: tuple[int, ...]
    uniform: bool
    stripes: int | None  # the common count when uniform


def recovery_uniformity(design: Design) -> RecoveryReport:
    counts = validate(design).replication
    uniform = len(set(counts)) == 1
    return RecoveryReport(
        stripes_per_point=counts,
        uniform=uniform,
        stripes=counts[0] if uniform else None,
    )
