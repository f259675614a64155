"""Core objects for partial Steiner systems: designs, labelings, validation, file I/O.

A design is a t-(v,k,1) packing: points 0..v-1 and k-element blocks such that
no t-subset of points lies in more than one block.  Blocks are stored
canonically (each block ascending, blocks in lexicographic order), which makes
equality, hashing, and file round-trips deterministic.

The on-disk design format is line oriented:

    v t k b
    p1 p2 ... pk        (b such lines, one block each)

``#`` starts a comment line anywhere.  A labeling file is a single data line
of v space-separated ranks, position = point.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations


class DesignError(ValueError):
    """Structural problem with a design, block, labeling, or design file."""


@dataclass(frozen=True)
class Design:
    """A t-(v,k,1) packing in canonical form.

    The constructor canonicalizes ``blocks`` (sorts each block and the block
    list) and rejects structurally malformed input.  It does not check the
    packing condition itself; use :func:`validate` for that.
    """

    v: int
    t: int
    k: int
    blocks: tuple[tuple[int, ...], ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.v < 1:
            raise DesignError(f"v must be positive, got {self.v}")
        if not (0 < self.t < self.k <= self.v):
            raise DesignError(f"need 0 < t < k <= v, got t={self.t} k={self.k} v={self.v}")
        canon = []
        for block in self.blocks:
            pts = tuple(sorted(block))
            if len(pts) != self.k:
                raise DesignError(f"block {tuple(block)} has {len(pts)} points, expected k={self.k}")
            if len(set(pts)) != self.k:
                raise DesignError(f"block {tuple(block)} repeats a point")
            if pts[0] < 0 or pts[-1] >= self.v:
                raise DesignError(f"block {tuple(block)} has a point outside 0..{self.v - 1}")
            canon.append(pts)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise DesignError(f"duplicate block {a}")
        object.__setattr__(self, "blocks", tuple(canon))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return f"{self.t}-({self.v},{self.k},1) packing with {self.b} blocks"


@dataclass(frozen=True)
class Labeling:
    """A bijection point -> popularity rank, as a tuple indexed by point."""

    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if sorted(self.ranks) != list(range(len(self.ranks))):
            raise DesignError("ranks must be a permutation of 0..v-1")

    @property
    def v(self) -> int:
        return len(self.ranks)

    def reverse(self) -> "Labeling":
        """Rank r becomes v-1-r; an involution."""
        n = self.v
        return Labeling(tuple(n - 1 - r for r in self.ranks))


def identity_labeling(v: int) -> Labeling:
    return Labeling(tuple(range(v)))


def reverse_labeling(labeling: Labeling) -> Labeling:
    return labeling.reverse()


@dataclass(frozen=True)
class PackingStatus:
    """Result of coverage validation of a design."""

    is_packing: bool
    is_steiner: bool
    uncovered_t_subsets: int
    replication: tuple[int, ...]
    block_count: int


def validate(design: Design) -> PackingStatus:
    """Check the packing/Steiner condition and count coverage exactly.

    ``is_packing`` means no t-subset of points occurs in two blocks;
    ``is_steiner`` additionally means every t-subset is covered.
    """
    cover: Counter = Counter()
    replication = [0] * design.v
    for block in design.blocks:
        for p in block:
            replication[p] += 1
        for sub in combinations(block, design.t):
            cover[sub] += 1
    is_packing = all(c <= 1 for c in cover.values())
    uncovered = math.comb(design.v, design.t) - len(cover)
    return PackingStatus(
        is_packing=is_packing,
        is_steiner=is_packing and uncovered == 0,
        uncovered_t_subsets=uncovered,
        replication=tuple(replication),
        block_count=design.b,
    )


def duplicated_t_subsets(design: Design) -> list[tuple[int, ...]]:
    """All t-subsets that occur in more than one block, sorted."""
    cover: Counter = Counter()
    for block in design.blocks:
        for sub in combinations(block, design.t):
            cover[sub] += 1
    return sorted(sub for sub, c in cover.items() if c > 1)


@lru_cache(maxsize=None)
def block_masks(design: Design) -> tuple[int, ...]:
    """Bitmask per block (bit p set iff point p in the block)."""
    masks = []
    for block in design.blocks:
        m = 0
        for p in block:
            m |= 1 << p
        masks.append(m)
    return tuple(masks)


def steiner_block_count(t: int, k: int, v: int) -> int:
    """Number of blocks of an S(t,k,v), C(v,t)/C(k,t), exact division."""
    num, den = math.comb(v, t), math.comb(k, t)
    if num % den:
        raise ValueError(f"C({v},{t}) is not divisible by C({k},{t})")
    return num // den


def steiner_replication(t: int, k: int, v: int) -> int:
    """Per-point block count of an S(t,k,v), C(v-1,t-1)/C(k-1,t-1)."""
    num, den = math.comb(v - 1, t - 1), math.comb(k - 1, t - 1)
    if num % den:
        raise ValueError(f"C({v - 1},{t - 1}) is not divisible by C({k - 1},{t - 1})")
    return num // den


# ---------------------------------------------------------------------------
# file format


def write_design(design: Design) -> str:
    lines = []
    if design.provenance:
        lines.append(f"# provenance: {design.provenance}")
    lines.append(f"{design.v} {design.t} {design.k} {design.b}")
    for block in design.blocks:
        lines.append(" ".join(str(p) for p in block))
    return "\n".join(lines) + "\n"


def read_design(text: str) -> Design:
    """Parse a design file; canonicalizes block and point order, never rejects
    merely non-canonical input.  Structural problems raise DesignError with a
    line number."""
    provenance = ""
    data: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment.startswith("provenance:"):
                provenance = comment[len("provenance:"):].strip()
            continue
        if not line:
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise DesignError(f"line {lineno}: not an integer row: {line!r}") from exc
        data.append((lineno, nums))
    if not data:
        raise DesignError("empty design file")
    head_line, head = data[0]
    if len(head) != 4:
        raise DesignError(f"line {head_line}: header must be 'v t k b', got {len(head)} fields")
    v, t, k, b = head
    body = data[1:]
    if len(body) != b:
        raise DesignError(f"header declares b={b} blocks but file has {len(body)} block lines")
    blocks = []
    for lineno, nums in body:
        if len(nums) != k:
            raise DesignError(f"line {lineno}: expected {k} points, got {len(nums)}")
        blocks.append(tuple(nums))
    try:
        return Design(v=v, t=t, k=k, blocks=tuple(blocks), provenance=provenance)
    except DesignError as exc:
        raise DesignError(f"invalid design in file: {exc}") from exc


def write_labeling(labeling: Labeling) -> str:
    return " ".join(str(r) for r in labeling.ranks) + "\n"


def read_labeling(text: str) -> Labeling:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            ranks = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise DesignError(f"line {lineno}: not an integer row: {line!r}") from exc
        return Labeling(ranks)
    raise DesignError("empty labeling file")
