"""Covering designs, weightings and the elementary transforms on them.

A design is stored as an ordered tuple of point labels plus a multiset of
blocks, each block a sorted tuple of point indices.  The block multiset is
kept sorted so that two designs with the same blocks serialize identically.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AllPointsRemoved,
    DesignError,
    DuplicatePoint,
    EmptyBlock,
    EmptyPointSet,
    InvalidWeighting,
    MissingWeight,
    TooFewBlocksRequested,
    UncoveredPair,
    UnknownPoint,
)
from .rational import common_denominator

Weighting = dict  # point label -> Fraction


@dataclass(frozen=True)
class CoveringDesign:
    points: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_labels(self, i: int) -> list[str]:
        return [self.points[j] for j in self.blocks[i]]

    def index(self, label: str) -> int:
        return self._index_map()[label]

    def _index_map(self) -> dict[str, int]:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.points)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def point_blocks(self) -> list[frozenset[int]]:
        """For each point index, the set of block indices containing it."""
        out: list[set[int]] = [set() for _ in self.points]
        for bi, blk in enumerate(self.blocks):
            for x in blk:
                out[x].add(bi)
        return [frozenset(s) for s in out]

    def replication(self) -> list[int]:
        r = [0] * self.v
        for blk in self.blocks:
            for x in blk:
                r[x] += 1
        return r

    def to_dict(self) -> dict:
        return {"points": list(self.points), "blocks": [self.block_labels(i) for i in range(self.b)]}

    def __repr__(self) -> str:
        return f"CoveringDesign(v={self.v}, b={self.b})"


@dataclass(frozen=True)
class IncidenceStats:
    replication: dict[str, int]
    block_sizes: tuple[int, ...]
    is_uniform: bool
    is_regular: bool


@dataclass(frozen=True)
class DualHypergraph:
    """Hypergraph with one vertex per block and one edge per point of the source."""

    n_vertices: int
    edges: tuple[frozenset[int], ...]

    def is_intersecting(self) -> bool:
        return all(a & b for a, b in itertools.combinations(self.edges, 2))

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def dual(self) -> "DualHypergraph":
        inc: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for ei, e in enumerate(self.edges):
            for vtx in e:
                inc[vtx].add(ei)
        return DualHypergraph(len(self.edges), tuple(frozenset(s) for s in inc))

    def as_design(self, prefix: str = "B") -> CoveringDesign:
        """Read the hypergraph itself as a design (vertices become points)."""
        points = [f"{prefix}{i}" for i in range(self.n_vertices)]
        blocks = [[points[i] for i in sorted(e)] for e in self.edges]
        return validate(points, blocks)


def _canonical_blocks(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(set(b))) for b in blocks))


def find_uncovered_pair(v: int, blocks: Sequence[Sequence[int]]):
    """First (x, y) index pair, x < y, not contained in any block, else None."""
    covered = [0] * v
    for blk in blocks:
        mask = 0
        for x in blk:
            mask |= 1 << x
        for x in blk:
            covered[x] |= mask
    for x in range(v):
        missing = ~covered[x] & ((1 << v) - 1) & ~((1 << (x + 1)) - 1)
        if missing:
            return x, (missing & -missing).bit_length() - 1
    return None


def validate(points: Sequence[str], blocks: Iterable[Iterable[str]]) -> CoveringDesign:
    """Build a :class:`CoveringDesign`, checking labels and pair coverage."""
    points = tuple(str(p) for p in points)
    if not points:
        raise EmptyPointSet("a covering design needs at least one point")
    index: dict[str, int] = {}
    for i, p in enumerate(points):
        if not p:
            raise EmptyPointSet("point labels must be non-empty")
        if p in index:
            raise DuplicatePoint(p)
        index[p] = i
    idx_blocks = []
    for bi, blk in enumerate(blocks):
        members = []
        for label in blk:
            label = str(label)
            if label not in index:
                raise UnknownPoint(bi, label)
            members.append(index[label])
        if not members:
            raise EmptyBlock(bi)
        idx_blocks.append(members)
    bad = find_uncovered_pair(len(points), idx_blocks)
    if bad is not None:
        raise UncoveredPair(points[bad[0]], points[bad[1]])
    if not idx_blocks:
        raise DesignError("a covering design needs at least one block")
    return CoveringDesign(points, _canonical_blocks(idx_blocks))


def from_index_blocks(v: int, blocks: Iterable[Iterable[int]], labels: Sequence[str] | None = None) -> CoveringDesign:
    """Convenience constructor for integer-labelled designs (labels default to 0..v-1)."""
    if labels is None:
        labels = [str(i) for i in range(v)]
    return validate(labels, [[labels[x] for x in blk] for blk in blocks])


def incidence_stats(design: CoveringDesign) -> IncidenceStats:
    r = design.replication()
    sizes = tuple(len(b) for b in design.blocks)
    return IncidenceStats(
        replication=dict(zip(design.points, r)),
        block_sizes=sizes,
        is_uniform=len(set(sizes)) <= 1,
        is_regular=len(set(r)) <= 1,
    )


def check_weighting(design: CoveringDesign, w: Mapping[str, Fraction], normalised: bool = False) -> list[Fraction]:
    """Return the weights in point order, raising on missing or negative entries."""
    out = []
    for p in design.points:
        if p not in w:
            raise MissingWeight(p)
        x = Fraction(w[p])
        if x < 0:
            raise InvalidWeighting(f"negative weight {x} on point {p!r}")
        out.append(x)
    if normalised and sum(out) != 1:
        raise InvalidWeighting(f"weights sum to {sum(out)}, not 1")
    return out


def block_weight(design: CoveringDesign, w: Mapping[str, Fraction], i: int) -> Fraction:
    total = Fraction(0)
    for x in design.blocks[i]:
        label = design.points[x]
        if label not in w:
            raise MissingWeight(label)
        total += Fraction(w[label])
    return total


def max_block_weight(design: CoveringDesign, w: Mapping[str, Fraction]) -> Fraction:
    """L(D, w): the heaviest block under ``w``."""
    ws = check_weighting(design, w)
    return max(sum((ws[x] for x in blk), Fraction(0)) for blk in design.blocks)


def uniform_weighting(design: CoveringDesign) -> Weighting:
    return {p: Fraction(1, design.v) for p in design.points}


def dual(design: CoveringDesign) -> DualHypergraph:
    return DualHypergraph(design.b, tuple(design.point_blocks()))


def remove_duplicated_and_zero_points(design: CoveringDesign, w: Mapping[str, Fraction]):
    """Drop zero-weight points, then merge points with identical block sets.

    Merged weight goes to the earliest point of each duplicate class.  Blocks
    left empty by the removals carry no weight and are dropped.
    """
    ws = check_weighting(design, w, normalised=True)
    keep = [i for i in range(design.v) if ws[i] > 0]
    if not keep:
        raise AllPointsRemoved("every point has weight zero")
    inc = design.point_blocks()
    survivors: dict[frozenset[int], int] = {}
    weight: dict[int, Fraction] = {}
    for i in keep:
        key = inc[i]
        if key in survivors:
            weight[survivors[key]] += ws[i]
        else:
            survivors[key] = i
            weight[i] = ws[i]
    kept = sorted(weight)
    labels = [design.points[i] for i in kept]
    pos = {i: j for j, i in enumerate(kept)}
    blocks = []
    for blk in design.blocks:
        nb = [pos[x] for x in blk if x in pos]
        if nb:
            blocks.append(nb)
    new = from_index_blocks(len(kept), blocks, labels)
    return new, {design.points[i]: weight[i] for i in kept}


def uniformize(design: CoveringDesign, w: Mapping[str, Fraction]):
    """Blow each point up into ``v * w(x)`` copies and pad blocks to a common size.

    Returns ``(D'', v, k)`` where ``v`` is the least common denominator of the
    weights and ``k`` the largest expanded block; under the uniform weighting
    ``1/v`` the new design has L = k/v = L(D, w).
    """
    ws = check_weighting(design, w, normalised=True)
    v = common_denominator(ws)
    copies: list[list[int]] = []
    labels: list[str] = []
    for i, p in enumerate(design.points):
        n = int(ws[i] * v)
        copies.append(list(range(len(labels), len(labels) + n)))
        labels.extend(f"{p}#{j}" for j in range(n))
    expanded = [[c for x in blk for c in copies[x]] for blk in design.blocks]
    k = max(len(e) for e in expanded)
    padded = []
    for e in expanded:
        members = set(e)
        filler = (x for x in range(v) if x not in members)
        while len(members) < k:
            members.add(next(filler))
        padded.append(sorted(members))
    return from_index_blocks(v, padded, labels), v, k


def pad_to_block_count(design: CoveringDesign, m: int) -> CoveringDesign:
    """Add copies of existing blocks (cycling through them) until there are ``m``."""
    if m < design.b:
        raise TooFewBlocksRequested(f"design already has {design.b} blocks, asked for {m}")
    extra = [design.blocks[i % design.b] for i in range(m - design.b)]
    return CoveringDesign(design.points, _canonical_blocks(list(design.blocks) + extra))


def duplicated_points(design: CoveringDesign) -> list[list[str]]:
    """Classes (size >= 2) of points incident with exactly the same blocks."""
    groups: dict[frozenset[int], list[str]] = {}
    for p, inc in zip(design.points, design.point_blocks()):
        groups.setdefault(inc, []).append(p)
    return [g for g in groups.values() if len(g) > 1]


def block_multiplicities(design: CoveringDesign) -> Counter:
    return Counter(design.blocks)


def pair_multiplicity(design: CoveringDesign) -> dict[tuple[int, int], int]:
    """Number of blocks containing each unordered pair of point indices."""
    count: Counter = Counter()
    for blk in design.blocks:
        for pair in itertools.combinations(blk, 2):
            count[pair] += 1
    return dict(count)


def is_linear_space(design: CoveringDesign) -> bool:
    """Every pair of points lies in exactly one block."""
    counts = pair_multiplicity(design)
    return len(counts) == design.v * (design.v - 1) // 2 and all(c == 1 for c in counts.values())
