"""Number-theoretic and matching subroutines behind the triple-system completions.

The sum-zero triple packing on Z_n leaves exactly the pairs {x, -2x mod n}
uncovered.  Those pairs form a 2-regular graph whose cycles are the orbits of
x -> -2x; when every cycle is even the edges split into two perfect matchings
by alternation.  The general completion instead needs a proper 3-edge-coloring
of a cubic graph, done here by exact backtracking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Edge = tuple[int, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (desk scale)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def order_of_minus2(p: int) -> int:
    """Multiplicative order of -2 modulo an odd prime p."""
    if not _is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    a = (p - 2) % p
    x = a
    for e in range(1, p):
        if x == 1:
            return e
        x = (x * a) % p
    raise AssertionError("unreachable: a is a unit mod p")


def is_singly_even(n: int) -> bool:
    return n % 4 == 2


def swc_condition(v: int) -> bool:
    """True iff -2 has singly even order modulo every prime dividing v-2.

    This is the admissibility test for the two-new-point completion: it
    guarantees every orbit of x -> -2x on Z_{v-2} has singly even length.
    """
    if v < 3:
        raise ValueError(f"v must be at least 3, got {v}")
    return all(is_singly_even(order_of_minus2(p)) for p in prime_factors(v - 2))


def neg2_cycles(n: int) -> list[tuple[int, ...]]:
    """Cycles of x -> -2x mod n on Z_n \\ {0}, each rotated to start at its
    minimum element, listed in order of that minimum."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    seen = [False] * n
    cycles = []
    for start in range(1, n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = (-2 * x) % n
        cycles.append(tuple(cyc))
    return cycles


@dataclass(frozen=True)
class FactorSplit:
    """A partition of a regular graph's edges into perfect matchings."""

    factors: tuple[tuple[Edge, ...], ...]
    source_graph: tuple[Edge, ...]

    def __post_init__(self) -> None:
        union: list[Edge] = []
        for f in self.factors:
            union.extend(f)
        if sorted(union) != sorted(self.source_graph):
            raise ValueError("factors do not partition the source edge set")
        vertices = {x for e in self.source_graph for x in e}
        for f in self.factors:
            touched = [x for e in f for x in e]
            if sorted(set(touched)) != sorted(vertices) or len(touched) != len(vertices):
                raise ValueError("a factor is not a perfect matching")


def _canon_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def split_two_factors(cycles: list[tuple[int, ...]]) -> FactorSplit:
    """Alternate the edges of each even cycle into two perfect matchings.

    Each cycle must have even length; alternation starts at the cycle's
    minimum element so the output is deterministic.
    """
    f1: list[Edge] = []
    f2: list[Edge] = []
    edges: list[Edge] = []
    for cyc in cycles:
        if len(cyc) % 2:
            raise ValueError(
                f"cycle of odd length {len(cyc)} cannot be split into two matchings"
                " (the order of -2 condition fails here)")
        for i, x in enumerate(cyc):
            e = _canon_edge(x, cyc[(i + 1) % len(cyc)])
            edges.append(e)
            (f1 if i % 2 == 0 else f2).append(e)
    return FactorSplit(factors=(tuple(sorted(f1)), tuple(sorted(f2))),
                       source_graph=tuple(sorted(edges)))


def uncovered_pair_edges(n: int) -> tuple[Edge, ...]:
    """The pairs {x, -2x mod n} on Z_n \\ {0}, as a sorted edge list."""
    return tuple(sorted(_canon_edge(x, (-2 * x) % n) for x in range(1, n)))


def cubic_one_factorization(edges: list[Edge] | tuple[Edge, ...]) -> FactorSplit:
    """Partition a simple 3-regular graph into three perfect matchings.

    Exact backtracking over a proper 3-edge-coloring.  Color names are
    interchangeable, so a new color index may only be introduced in
    ascending order; that symmetry break loses no colorings.  Raises
    ValueError when no 1-factorization exists, e.g. for the Petersen graph.
    """
    canon = sorted(_canon_edge(a, b) for a, b in edges)
    if len(set(canon)) != len(canon):
        raise ValueError("graph has a repeated edge")
    degree: dict[int, int] = {}
    for a, b in canon:
        if a == b:
            raise ValueError(f"loop at vertex {a}")
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    if any(d != 3 for d in degree.values()):
        bad = next(x for x, d in sorted(degree.items()) if d != 3)
        raise ValueError(f"graph is not 3-regular: vertex {bad} has degree {degree[bad]}")

    # Order edges for search: breadth-first over the canonical edge list keeps
    # each new edge adjacent to already-colored ones, which drives pruning.
    order: list[Edge] = []
    placed = set()
    remaining = list(canon)
    while remaining:
        seed = remaining[0]
        frontier = {seed[0], seed[1]}
        progress = True
        while progress:
            progress = False
            for e in list(remaining):
                if e[0] in frontier or e[1] in frontier:
                    order.append(e)
                    remaining.remove(e)
                    frontier.update(e)
                    placed.add(e)
                    progress = True

    used: dict[int, int] = {x: 0 for x in degree}  # bitmask of colors at vertex
    color: dict[Edge, int] = {}

    def extend(i: int, n_colors: int) -> bool:
        if i == len(order):
            return True
        a, b = order[i]
        taken = used[a] | used[b]
        for c in range(min(n_colors + 1, 3)):
            bit = 1 << c
            if taken & bit:
                continue
            used[a] |= bit
            used[b] |= bit
            color[order[i]] = c
            if extend(i + 1, max(n_colors, c + 1)):
                return True
            used[a] &= ~bit
            used[b] &= ~bit
            del color[order[i]]
        return False

    if not extend(0, 0):
        raise ValueError("graph has no 1-factorization (3-edge-coloring search exhausted)")
    factors: list[list[Edge]] = [[], [], []]
    for e, c in color.items():
        factors[c].append(e)
    parts = tuple(tuple(sorted(f)) for f in factors)
    # Canonical factor order: by lexicographically least edge list.
    return FactorSplit(factors=tuple(sorted(parts)), source_graph=tuple(canon))
