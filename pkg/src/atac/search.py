"""Exhaustive computation of L(m) for small m.

Work in the dual picture: the m blocks are vertices, and each point becomes
the set of blocks containing it.  Pair coverage says these sets pairwise
intersect, and L(D) = 1 / nu*, so L(m) is one over the largest fractional
matching number of an intersecting family on m vertices.  Adding sets never
lowers nu*, so only maximal intersecting families matter.  Those are exactly
the upward-closed families holding one set from every complementary pair.

The search decides complementary pairs in order of increasing size of the
smaller set.  Two bounds cut branches:

* any member S of an intersecting family meets every other member, so
  nu* <= |S| (a design with a block set S covers every point from S);
* every edge has at least k vertices once all smaller sets are excluded, and
  a fractional matching puts total load <= m on the vertices, so nu* <= m / k.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .design import CoveringDesign, DualHypergraph, from_index_blocks, pad_to_block_count
from .errors import BudgetExceeded, SearchError
from .lp import LimitCertificate, data_limit, fractional_matching_number, verify_certificate

log = logging.getLogger(__name__)

MAX_UNBUDGETED = 6
MAX_SEARCHABLE = 7

# L(m) for m = 1..13.  Rows up to 6 are re-derived by exact_limit.
TABLE = {
    1: Fraction(1), 2: Fraction(1), 3: Fraction(2, 3), 4: Fraction(3, 5), 5: Fraction(5, 9),
    6: Fraction(1, 2), 7: Fraction(3, 7), 8: Fraction(5, 12), 9: Fraction(2, 5), 10: Fraction(3, 8),
    11: Fraction(5, 14), 12: Fraction(1, 3), 13: Fraction(4, 13),
}


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned: int = 0
    isomorphs: int = 0
    lp_solves: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.pruned += other.pruned
        self.isomorphs += other.isomorphs
        self.lp_solves += other.lp_solves


@dataclass
class SearchResult:
    m: int
    limit: Fraction
    witness: CoveringDesign
    certificate: LimitCertificate
    family: tuple = ()
    stats: SearchStats = field(default_factory=SearchStats)
    seconds: float = 0.0


# -- canonical form -----------------------------------------------------------


def _refine(n: int, edges: list[int], colour: list[int]) -> list[int]:
    """Iterate colour_v <- (colour_v, multiset of edge colour profiles at v) until stable."""
    while True:
        profiles = []
        for e in edges:
            profiles.append(tuple(sorted(colour[v] for v in range(n) if e >> v & 1)))
        sig = []
        for v in range(n):
            at_v = sorted(p for e, p in zip(edges, profiles) if e >> v & 1)
            sig.append((colour[v], tuple(at_v)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colour)):
            return new
        colour = new


def _relabel(edges: list[int], order: list[int]) -> tuple[int, ...]:
    # order[v] is the new label of vertex v
    out = []
    for e in edges:
        x = 0
        v = 0
        while e:
            if e & 1:
                x |= 1 << order[v]
            e >>= 1
            v += 1
        out.append(x)
    return tuple(sorted(out))


def canonical_form(n: int, edges) -> tuple[int, ...]:
    """Canonical relabelling of a set system on ``n`` vertices given as bitmasks.

    Two systems get the same form exactly when they are isomorphic.  Colour
    refinement narrows the candidates, and individualising vertices of the
    first non-trivial cell explores the remaining choices.
    """
    edges = list(edges)
    best = None

    def explore(colour):
        nonlocal best
        colour = _refine(n, edges, colour)
        if len(set(colour)) == n:
            key = _relabel(edges, colour)
            if best is None or key < best:
                best = key
            return
        counts: dict[int, int] = {}
        for c in colour:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colour[v] == target:
                explore([2 * c + (0 if u == v or c != target else 1) for u, c in enumerate(colour)])

    explore([0] * n)
    return best


def find_isomorphism(n: int, a, b):
    """Vertex map sending system ``a`` onto ``b`` (brute force), or None."""
    target = tuple(sorted(b))
    for perm in itertools.permutations(range(n)):
        if _relabel(list(a), list(perm)) == target:
            return perm
    return None


# -- enumeration --------------------------------------------------------------

_OUT, _FREE, _IN = -1, 0, 1


class _Enumerator:
    def __init__(self, m: int, incumbent: Fraction, deadline: float | None, progress=None, prune=True):
        self.m = m
        self.prune = prune
        self.full = (1 << m) - 1
        self.state = [_FREE] * (1 << m)
        self.trail: list[int] = []
        self.best = incumbent
        self.best_family: tuple | None = None
        self.deadline = deadline
        self.progress = progress
        self.stats = SearchStats()
        self.cache: dict[tuple, Fraction] = {}
        # pair representatives: smaller side first, ties broken by the mask value
        reps = []
        for s in range(1, 1 << m):
            c = self.full ^ s
            if (bin(s).count("1"), s) < (bin(c).count("1"), c):
                reps.append(s)
        self.order = sorted(reps, key=lambda s: (bin(s).count("1"), s))
        self.size = [bin(s).count("1") for s in range(1 << m)]

    def make_in(self, s: int) -> bool:
        """Put ``s`` in the family with all consequences; False on contradiction."""
        stack = [s]
        while stack:
            t = stack.pop()
            st = self.state[t]
            if st == _IN:
                continue
            if st == _OUT:
                return False
            c = self.full ^ t
            if self.state[c] == _IN:
                return False
            self.state[t] = _IN
            self.trail.append(t)
            if self.state[c] == _FREE:
                self.state[c] = _OUT
                self.trail.append(c)
            rest = c
            while rest:
                bit = rest & -rest
                rest ^= bit
                if self.state[t | bit] != _IN:
                    stack.append(t | bit)
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.state[self.trail.pop()] = _FREE

    def bound(self, level: int) -> Fraction:
        """Upper bound on nu* for completions when pairs before ``level`` are decided."""
        smallest = None
        for i in range(level):
            s = self.order[i]
            t = s if self.state[s] == _IN else self.full ^ s
            if smallest is None or self.size[t] < smallest:
                smallest = self.size[t]
        k = self.size[self.order[level]] if level < len(self.order) else self.m
        if smallest is None:
            return Fraction(self.m, k)
        return min(Fraction(smallest), Fraction(self.m, min(smallest, k)))

    def leaf(self) -> None:
        self.stats.leaves += 1
        members = [s for s in range(1, 1 << self.m) if self.state[s] == _IN]
        minimal = [s for s in members if not any(t != s and t & s == t for t in members)]
        key = canonical_form(self.m, minimal)
        if key in self.cache:
            self.stats.isomorphs += 1
            return
        h = DualHypergraph(self.m, tuple(frozenset(v for v in range(self.m) if e >> v & 1) for e in key))
        nu, _, _ = fractional_matching_number(h)
        self.stats.lp_solves += 1
        self.cache[key] = nu
        if nu > self.best:
            self.best = nu
            self.best_family = key

    def run(self, level: int = 0) -> None:
        self.stats.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"search for m={self.m} ran out of time after {self.stats.nodes} nodes")
        if self.progress is not None and self.stats.nodes % 5000 == 0:
            self.progress(self.stats)
        while level < len(self.order) and self.state[self.order[level]] != _FREE:
            level += 1
        if level == len(self.order):
            self.leaf()
            return
        if self.prune and self.bound(level) <= self.best:
            self.stats.pruned += 1
            return
        s = self.order[level]
        # excluding small sets first reaches the families with large edges early
        for choice in (self.full ^ s, s):
            mark = len(self.trail)
            if self.make_in(choice):
                self.run(level + 1)
            self.undo(mark)


def _run_prefix(args):
    m, prefix, incumbent, deadline = args
    en = _Enumerator(m, incumbent, deadline)
    for s in prefix:
        if not en.make_in(s):
            return None, None, en.stats
    en.run(0)
    return en.best, en.best_family, en.stats


def _prefixes(m: int, depth: int) -> list[tuple[int, ...]]:
    en = _Enumerator(m, Fraction(0), None)
    out = []

    def walk(level, chosen):
        while level < len(en.order) and en.state[en.order[level]] != _FREE:
            level += 1
        if len(chosen) == depth or level == len(en.order):
            out.append(tuple(chosen))
            return
        s = en.order[level]
        for choice in (en.full ^ s, s):
            mark = len(en.trail)
            if en.make_in(choice):
                walk(level + 1, chosen + [choice])
            en.undo(mark)

    walk(0, [])
    return out


def witness_from_family(m: int, family) -> CoveringDesign:
    """A design with exactly ``m`` blocks whose limit is 1/nu*(family).

    Points are the edges carrying positive weight in an optimal fractional
    matching, so there are at most ``m`` of them.
    """
    edges = [frozenset(v for v in range(m) if e >> v & 1) for e in family]
    nu, x, _ = fractional_matching_number(DualHypergraph(m, tuple(edges)))
    support = [e for e, w in zip(edges, x) if w > 0]
    blocks = [[i for i, e in enumerate(support) if b in e] for b in range(m)]
    blocks = [blk for blk in blocks if blk]
    design = from_index_blocks(len(support), blocks, [f"x{i}" for i in range(len(support))])
    return pad_to_block_count(design, m)


def exact_limit(m: int, budget: float | None = None, workers: int = 1, incumbent=None, progress=None) -> SearchResult:
    """L(m) by exhaustive search, with a certified witness design on m blocks.

    ``m <= 6`` always runs; ``m = 7`` needs a time budget in seconds.
    ``incumbent`` is an optional design with m blocks whose limit seeds the
    branch and bound: the search then proves nothing beats it.
    """
    if not isinstance(m, int) or m < 1 or m > MAX_SEARCHABLE:
        raise SearchError(f"m must be between 1 and {MAX_SEARCHABLE}, got {m}")
    if m > MAX_UNBUDGETED and budget is None:
        raise BudgetExceeded(f"m={m} needs an explicit time budget")
    start = time.monotonic()
    deadline = None if budget is None else start + budget
    if m == 1:
        design = from_index_blocks(1, [[0]], ["x0"])
        cert = data_limit(design)
        return SearchResult(1, cert.limit, design, cert, ((1,),), SearchStats(nodes=1, leaves=1, lp_solves=1))

    seed_nu = Fraction(0)
    if incumbent is not None:
        if incumbent.b != m:
            raise SearchError(f"incumbent has {incumbent.b} blocks, expected {m}")
        seed_nu = 1 / data_limit(incumbent).limit

    stats = SearchStats()
    if workers > 1:
        prefixes = _prefixes(m, 3)
        best, fam = seed_nu, None
        with ProcessPoolExecutor(workers) as pool:
            for nu, f, st in pool.map(_run_prefix, [(m, p, seed_nu, deadline) for p in prefixes]):
                stats.merge(st)
                if f is not None and (nu > best or (nu == best and fam is not None and f < fam)):
                    best, fam = nu, f
    else:
        en = _Enumerator(m, seed_nu, deadline, progress)
        en.run()
        stats = en.stats
        best, fam = en.best, en.best_family

    if fam is None:
        # nothing beat the incumbent
        if incumbent is None:
            raise SearchError(f"search for m={m} found no family")
        design = incumbent
    else:
        design = witness_from_family(m, fam)
    cert = data_limit(design)
    if cert.limit != 1 / best or not verify_certificate(design, cert):
        raise SearchError(f"witness for m={m} does not certify 1/{best}")
    return SearchResult(m, cert.limit, design, cert, fam or (), stats, time.monotonic() - start)


def stderr_progress(stats: SearchStats) -> None:
    print(
        f"nodes={stats.nodes} leaves={stats.leaves} pruned={stats.pruned} "
        f"isomorphs={stats.isomorphs} lp={stats.lp_solves}",
        file=sys.stderr,
        flush=True,
    )


# -- witnesses for 7 <= m <= 13 -----------------------------------------------


def load_fixture_witnesses() -> dict[int, CoveringDesign]:
    raw = json.loads(resources.files("atac").joinpath("data/witnesses.json").read_text())
    out = {}
    for key, entry in raw.items():
        out[int(key)] = from_index_blocks(entry["v"], entry["blocks"])
    return out


def table_witness(m: int) -> CoveringDesign:
    from .constructions import affine_plane, projective_plane

    if m == 7:
        return projective_plane(2)
    if m == 12:
        return affine_plane(3)
    if m == 13:
        return projective_plane(3)
    fixtures = load_fixture_witnesses()
    if m in fixtures:
        return fixtures[m]
    raise SearchError(f"no stored witness for m={m}")


@dataclass(frozen=True)
class TableRow:
    m: int
    expected: Fraction
    got: Fraction
    method: str
    ok: bool


def verify_table(max_exhaustive: int = MAX_UNBUDGETED) -> list[TableRow]:
    from .bounds import new_bound

    rows = []
    for m, expected in TABLE.items():
        if m <= max_exhaustive:
            got = exact_limit(m).limit
            method = "exhaustive"
        else:
            d = table_witness(m)
            cert = data_limit(d)
            got = cert.limit
            method = "witness"
            if d.b != m or not verify_certificate(d, cert):
                rows.append(TableRow(m, expected, got, method, False))
                continue
        ok = got == expected and (m < 2 or new_bound(m) <= expected)
        rows.append(TableRow(m, expected, got, method, ok))
    return rows


def uniform_covering_search(v: int, k: int, m: int, steps: int = 200_000, seed: int = 0):
    """Anneal m blocks of size k on v points until every pair is covered.

    Returns the block list or None.  A move swaps one point of one block for
    a point outside it; the cost is the number of uncovered pairs.
    """
    rng = random.Random(seed)
    blocks = [rng.sample(range(v), k) for _ in range(m)]
    count = [[0] * v for _ in range(v)]

    def touch(blk, delta):
        for a, b in itertools.combinations(blk, 2):
            count[a][b] += delta
            count[b][a] += delta

    for blk in blocks:
        touch(blk, 1)
    uncovered = sum(1 for a, b in itertools.combinations(range(v), 2) if count[a][b] == 0)
    for step in range(steps):
        if uncovered == 0:
            return [sorted(b) for b in blocks]
        # linear cooling from 2 down to a small floor
        temp = 2.0 * (1 - step / steps) + 0.02
        blk = blocks[rng.randrange(m)]
        j = rng.randrange(k)
        old = blk[j]
        new = rng.randrange(v)
        if new in blk:
            continue
        others = [x for x in blk if x != old]
        # pairs lost by dropping old, gained by adding new
        lost = sum(1 for x in others if count[old][x] == 1)
        gained = sum(1 for x in others if count[new][x] == 0)
        delta = lost - gained
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            for x in others:
                count[old][x] -= 1
                count[x][old] -= 1
                count[new][x] += 1
                count[x][new] += 1
            blk[j] = new
            uncovered += delta
    return None


def compress_witness(design: CoveringDesign) -> CoveringDesign:
    """Same limit, at most b points: keep the support of an optimal dual solution."""
    m = design.b
    family = tuple(sum(1 << j for j in pb) for pb in design.point_blocks())
    return witness_from_family(m, family)


def random_witness_search(m: int, target: Fraction, max_points: int = 42, seeds=range(4), steps: int = 2_000_000):
    """Find a design with m blocks and limit <= target, or None.

    Tries k-uniform coverings on v points with k / v == target (the uniform
    weighting then has every block at weight k / v), smallest v first, and
    compresses the result to at most m points.  This is how the stored
    witnesses for 8 <= m <= 11 were produced.
    """
    target = Fraction(target)
    for v in range(target.denominator, max_points + 1, target.denominator):
        k = target * v
        for seed in seeds:
            blocks = uniform_covering_search(v, int(k), m, steps=steps, seed=seed)
            if blocks is None:
                continue
            design = compress_witness(from_index_blocks(v, blocks))
            if data_limit(design).limit <= target:
                return design
    return None
