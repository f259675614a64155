"""Constructive families: sum-class packings, the even-order quadruple packing,
two completions of the sum-zero triple packing to full triple systems, the
Bose and Skolem triple systems, and a small fixed catalog.

All constructions return designs in canonical form with a provenance string,
and their natural labeling is the identity (callers may re-label).  Point
numbering conventions:

* cyclic constructions live on Z_v directly;
* Bose (v = 3n): point (x, i) in Z_n x {0,1,2} becomes n*i + x;
* Skolem (v = 6m+1): point (x, i) in Z_2m x {0,1,2} becomes 2m*i + x and the
  extra point becomes v-1.
"""

from __future__ import annotations

import math
from itertools import combinations

from .design import Design, Labeling, identity_labeling
from .numtheory import (
    cubic_one_factorization,
    neg2_cycles,
    split_two_factors,
    swc_condition,
    uncovered_pair_edges,
)


# ---------------------------------------------------------------------------
# sum-class packings


def sum_class_packing(t: int, v: int, sigma: int) -> Design:
    """The t-(v,t+1,1) packing of all (t+1)-subsets of Z_v with element sum
    congruent to sigma mod v.

    Requires gcd(v, t+1) = 1, which makes every class hold exactly
    C(v,t+1)/v blocks.  ``sigma`` may be a raw class 0 <= sigma < v or a
    negative index -C(t+2,2)+1 <= sigma < 0 standing for the class v+sigma.
    The exact MinSum = v+sigma / MaxSum = tv+sigma guarantees of the signed
    window additionally need v > C(t+2,2) + C(t+1,2).
    """
    if t < 1:
        raise ValueError(f"strength t must be positive, got {t}")
    if v < t + 2:
        raise ValueError(f"v={v} is too small for block size {t + 1}")
    if math.gcd(v, t + 1) != 1:
        raise ValueError(f"gcd(v, t+1) must be 1, got gcd({v},{t + 1})={math.gcd(v, t + 1)}")
    low = -math.comb(t + 2, 2) + 1
    if not (low <= sigma < v):
        raise ValueError(f"sigma must satisfy {low} <= sigma < {v}, got {sigma}")
    omega = sigma % v
    blocks = tuple(s for s in combinations(range(v), t + 1) if sum(s) % v == omega)
    return Design(v=v, t=t, k=t + 1, blocks=blocks,
                  provenance=f"sum-class t={t} v={v} sigma={sigma}")


def fourpack(v: int) -> Design:
    """A 3-(v,4,1) packing on even v > 18 with (v-4)/(v-1) * C(v,3)/4 blocks,
    MinSum v+2 and MaxSum 3v-6 under the identity labeling.

    Low half {0..s-1} and high half {s..2s-1} with s = v/2; each class picks
    the unique fourth point completing a fixed sum residue.
    """
    if v % 2 or v <= 18:
        raise ValueError(f"v must be even and > 18, got {v}")
    s = v // 2
    blocks = []
    for a, b, c in combinations(range(s), 3):
        d = (2 - (a + b + c)) % s
        blocks.append((a, b, c, s + d))
        d = (s - 6 - (a + b + c)) % s
        blocks.append((s + a, s + b, s + c, d))
    return Design(v=v, t=3, k=4, blocks=tuple(blocks), provenance=f"fourpack v={v}")


# ---------------------------------------------------------------------------
# completions of the sum-zero triple packing


def sum_zero_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """All triples of Z_n with element sum divisible by n (sorted)."""
    out = []
    for x, y in combinations(range(n), 2):
        z = (-(x + y)) % n
        if z > y:
            out.append((x, y, z))
    return tuple(sorted(out))


def _phi_map(v: int):
    """Embedding of Z_{v-2} into Z_v that skips the two new points
    (v-1)/2 and (v+1)/2."""
    half = (v - 3) // 2
    return lambda x: x if x <= half else x + 2


def _sw_special_parts(v: int):
    """Typed block lists of the two-new-point completion, plus the matchings."""
    if v % 6 not in (1, 3) or v < 7:
        raise ValueError(f"no Steiner triple system of order {v}")
    if not swc_condition(v):
        raise ValueError(
            f"the order of -2 condition fails for v={v}; use sw_complete_general")
    n = v - 2
    phi = _phi_map(v)
    split = split_two_factors(neg2_cycles(n))
    type1 = [tuple(sorted((phi(x), phi(y), phi(z)))) for x, y, z in sum_zero_triples(n)]
    type2 = []
    for i, factor in enumerate(split.factors, start=1):
        new_point = (v - 3 + 2 * i) // 2
        for x, y in factor:
            type2.append(tuple(sorted((new_point, phi(x), phi(y)))))
    type3 = (0, (v - 1) // 2, (v + 1) // 2)
    return type1, type2, type3, split


def sw_complete_special(v: int) -> tuple[Design, Labeling]:
    """Complete the sum-zero packing on Z_{v-2} to an STS(v) by adding two
    points, one per matching of the uncovered pairs.

    Works exactly when -2 has singly even order modulo every prime of v-2;
    the identity labeling then has MinSum >= v-2 and MaxSum <= 2v+2.
    """
    type1, type2, type3, _ = _sw_special_parts(v)
    design = Design(v=v, t=2, k=3, blocks=tuple(type1 + type2 + [type3]),
                    provenance=f"sw-special v={v}")
    return design, identity_labeling(v)


def _psi_map(v: int):
    """Embedding of Z_{v-2} minus 0 into Z_v that skips the three new points
    (v-3)/2, (v-1)/2, (v+1)/2."""
    half = (v - 3) // 2
    return lambda x: x - 1 if x <= half else x + 2


def _sw_general_parts(v: int):
    """Typed block lists of the three-new-point completion, plus the factor split."""
    if v % 6 not in (1, 3) or v < 7:
        raise ValueError(f"no Steiner triple system of order {v}")
    n = v - 2
    psi = _psi_map(v)
    deleted = {tuple(sorted((0, x, n - x))) for x in range(1, (n - 1) // 2 + 1)}
    kept = [b for b in sum_zero_triples(n) if b not in deleted]
    graph = list(uncovered_pair_edges(n))
    graph.extend((x, n - x) for x in range(1, (n - 1) // 2 + 1))
    split = cubic_one_factorization(graph)
    type1 = [tuple(sorted((psi(x), psi(y), psi(z)))) for x, y, z in kept]
    type2 = []
    for i, factor in enumerate(split.factors, start=1):
        new_point = (v - 5 + 2 * i) // 2
        for x, y in factor:
            type2.append(tuple(sorted((new_point, psi(x), psi(y)))))
    type3 = ((v - 3) // 2, (v - 1) // 2, (v + 1) // 2)
    return type1, type2, type3, split


def sw_complete_general(v: int) -> tuple[Design, Labeling]:
    """Complete to an STS(v) at every admissible order by deleting the zero
    element, 1-factorizing a cubic graph of leftover pairs, and adding three
    points.  The identity labeling has MinSum >= v-5 and MaxSum <= 2v+2."""
    type1, type2, type3, _ = _sw_general_parts(v)
    design = Design(v=v, t=2, k=3, blocks=tuple(type1 + type2 + [type3]),
                    provenance=f"sw-general v={v}")
    return design, identity_labeling(v)


# ---------------------------------------------------------------------------
# Bose and Skolem triple systems


def bose(v: int) -> Design:
    """The Bose STS(v) for v = 3n, n odd: an idempotent commutative
    quasigroup on Z_n crossed with three groups."""
    if v % 6 != 3:
        raise ValueError(f"Bose construction needs v = 3 (mod 6), got {v}")
    n = v // 3
    inv2 = (n + 1) // 2  # multiplicative inverse of 2 mod n

    def pt(x: int, i: int) -> int:
        return n * i + x

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for i in range(3):
        j = (i + 1) % 3
        for x, y in combinations(range(n), 2):
            blocks.append(tuple(sorted((pt(x, i), pt(y, i), pt((x + y) * inv2 % n, j)))))
    return Design(v=v, t=2, k=3, blocks=tuple(blocks), provenance=f"bose v={v}")


def bose_independent_pair(v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two disjoint independent sets of size v/3 + 1 in the Bose system.

    The whole first group plus one third-group point (c,2) is independent.
    So is the third group minus (c,2) together with the two second-group
    points (0,1) and (1,1), provided c is the quasigroup product 0*1: the
    only block riding on two second-group points then needs the removed
    third-group point.
    """
    n = v // 3
    if v % 6 != 3:
        raise ValueError(f"Bose construction needs v = 3 (mod 6), got {v}")
    inv2 = (n + 1) // 2
    c = inv2 % n  # (0 + 1) * inv2: the midpoint of the pair {0, 1}
    set_a = tuple(range(n)) + (2 * n + c,)
    set_b = tuple(sorted({n + 0, n + 1} | {2 * n + x for x in range(n) if x != c}))
    return set_a, set_b


def _half_idempotent(m: int):
    """Commutative quasigroup on Z_2m with x*x = x for x < m, built by
    renaming the addition table of Z_2m."""
    pi = [0] * (2 * m)
    for t in range(m):
        pi[2 * t] = t
        pi[2 * t + 1] = m + t
    return lambda x, y: pi[(x + y) % (2 * m)]


def skolem(v: int) -> Design:
    """The Skolem STS(v) for v = 6m+1: a half-idempotent commutative
    quasigroup on Z_2m crossed with three groups plus one extra point."""
    if v % 6 != 1 or v < 7:
        raise ValueError(f"Skolem construction needs v = 1 (mod 6) and v >= 7, got {v}")
    m = (v - 1) // 6
    n = 2 * m
    op = _half_idempotent(m)
    inf = v - 1

    def pt(x: int, i: int) -> int:
        return n * i + x

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for i in range(3):
        j = (i + 1) % 3
        for x in range(m, n):
            blocks.append(tuple(sorted((inf, pt(x, i), pt(x - m, j)))))
        for x, y in combinations(range(n), 2):
            blocks.append(tuple(sorted((pt(x, i), pt(y, i), pt(op(x, y), j)))))
    return Design(v=v, t=2, k=3, blocks=tuple(blocks), provenance=f"skolem v={v}")


def skolem_independent_pair(v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two disjoint independent sets of sizes ((v+2)/3 + 1, (v+2)/3) in the
    Skolem system.

    A balanced pair with both sizes (v+2)/3 + 1 does not exist here: at
    v = 13 no triple system at all has one (two disjoint independent 6-sets
    would need 15 + 15 distinct blocks with two points inside, but an
    STS(13) has only 26 blocks), and exhaustive search shows these systems
    have none at v = 19 either.  The larger set is the whole first group
    plus the extra point plus one third-group point (z,2) with z < m; the
    smaller is the third group minus (z,2) plus the two second-group points
    whose quasigroup product is z.
    """
    m = (v - 1) // 6
    if v % 6 != 1 or v < 13:
        raise ValueError(f"independent pair exposed for v = 1 (mod 6), v >= 13, got {v}")
    n = 2 * m
    op = _half_idempotent(m)
    b = next(x for x in range(1, n) if op(0, x) < m)
    z = op(0, b)
    set_a = tuple(range(n)) + (2 * n + z, v - 1)
    set_b = tuple(sorted([n + 0, n + b] + [2 * n + x for x in range(n) if x != z]))
    return set_a, set_b


# ---------------------------------------------------------------------------
# fixed catalog

_CATALOG_BLOCKS = {
    "STS7": (2, 3, 7, ("016", "024", "035", "123", "145", "256", "346")),
    "STS9": (2, 3, 9, ("018", "027", "036", "045", "126", "135", "147",
                       "234", "258", "378", "468", "567")),
    "S348": (3, 4, 8, ("0127", "0136", "0145", "0235", "0246", "0347", "0567",
                       "1234", "1256", "1357", "1467", "2367", "2457", "3456")),
}

CATALOG_NAMES = tuple(sorted(_CATALOG_BLOCKS))


def catalog(name: str) -> tuple[Design, Labeling]:
    """A fixed small system by name (STS7, STS9, S348) with identity labeling."""
    if name not in _CATALOG_BLOCKS:
        raise ValueError(f"unknown catalog design {name!r}; have {', '.join(CATALOG_NAMES)}")
    t, k, v, words = _CATALOG_BLOCKS[name]
    blocks = tuple(tuple(int(ch) for ch in w) for w in words)
    design = Design(v=v, t=t, k=k, blocks=blocks, provenance=f"catalog {name}")
    return design, identity_labeling(v)
