"""Choose a design for m machines and turn its weighting into item placements."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import constructions as cons
from .bounds import KNOWN_LIMITS
from .design import CoveringDesign, from_index_blocks, pad_to_block_count
from .errors import AtacError, CoverageViolated
from .fields import is_prime, is_prime_power
from .lp import LimitCertificate, data_limit, verify_certificate
from .rational import format_rational

log = logging.getLogger(__name__)

# tie order: earlier families win when limits are equal
FAMILY_ORDER = (
    "projective",
    "affine",
    "almost-projective",
    "transversal",
    "hjelmslev",
    "near-pencil",
    "table-witness",
    "search-witness",
    "single-point",
)


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: tuple
    blocks: int
    limit: Fraction

    def key(self):
        return (self.limit, FAMILY_ORDER.index(self.family), self.params)

    def describe(self) -> str:
        return f"{self.family}({', '.join(map(str, self.params))})" if self.params else self.family


def catalog(m: int) -> list[CatalogEntry]:
    """Every catalog entry with at most m blocks, limits from closed forms."""
    if m < 1:
        raise AtacError(f"need at least one machine, got {m}")
    out = [CatalogEntry("single-point", (), 1, Fraction(1))]
    q = 1
    while q * q + q + 1 <= m:
        if q == 1 or is_prime_power(q):
            out.append(CatalogEntry("projective", (q,), q * q + q + 1, Fraction(q + 1, q * q + q + 1)))
        q += 1
    q = 2
    while q * q + q <= m:
        if is_prime_power(q):
            out.append(CatalogEntry("affine", (q,), q * q + q, Fraction(1, q)))
        q += 1
    for s in (2, 3):
        if s * s + s <= m:
            out.append(CatalogEntry("almost-projective", (s,), s * s + s, Fraction(1, s)))
    n = 2
    while n * n + 2 <= m:
        if is_prime_power(n):
            k = min(n, m - n * n)
            out.append(CatalogEntry("transversal", (k, n), k + n * n, Fraction(1, k)))
        n += 1
    for p in (2, 3):
        size = p * p * (p * p + p + 1)
        if is_prime(p) and size <= m:
            out.append(CatalogEntry("hjelmslev", (p,), size, Fraction(p + 1, p * (p * p + p + 1))))
    for k in range(3, m + 1):
        out.append(CatalogEntry("near-pencil", (k,), k, Fraction(k - 1, 2 * k - 3)))
    for k, lim in KNOWN_LIMITS.items():
        if 7 <= k <= m:
            out.append(CatalogEntry("table-witness", (k,), k, lim))
        elif 2 <= k <= min(m, 6):
            out.append(CatalogEntry("search-witness", (k,), k, lim))
    return out


def best_known(m: int) -> CatalogEntry:
    return min(catalog(m), key=CatalogEntry.key)


def build(entry: CatalogEntry) -> CoveringDesign:
    if entry.family == "single-point":
        return from_index_blocks(1, [[0]], ["p0"])
    if entry.family == "table-witness":
        from .search import table_witness

        return table_witness(entry.params[0])
    if entry.family == "search-witness":
        from .search import exact_limit

        return exact_limit(entry.params[0]).witness
    return cons.construct(entry.family, *entry.params)


@dataclass
class KnownDesign:
    entry: CatalogEntry
    design: CoveringDesign
    limit: Fraction
    certificate: LimitCertificate | None = None


def best_known_design(m: int, certify: bool = True) -> KnownDesign:
    """The catalog design with the smallest limit, padded to exactly m blocks.

    With ``certify`` the limit is re-derived by the exact LP and must match
    the closed form.
    """
    entry = best_known(m)
    design = pad_to_block_count(build(entry), m)
    cert = None
    if certify:
        cert = data_limit(design)
        if cert.limit != entry.limit or not verify_certificate(design, cert):
            raise AtacError(f"{entry.describe()}: LP gives {cert.limit}, catalog says {entry.limit}")
    return KnownDesign(entry, design, entry.limit, cert)


# -- apportionment --------------------------------------------------------------


def apportion(n: int, weights: list[Fraction]) -> list[int]:
    """Largest-remainder split of n items by weights; ties go to the earlier point."""
    quotas = [n * w for w in weights]
    counts = [math.floor(q) for q in quotas]
    left = n - sum(counts)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[:left]:
        counts[i] += 1
    return counts


def assign_sized(items: list[tuple[str, int]], design: CoveringDesign, weights: list[Fraction]) -> dict[str, int]:
    """Longest-processing-time greedy toward the weighting: biggest items first,
    each into the group whose size over its target share stays smallest.

    A heuristic with no optimality claim; zero-weight groups stay empty.
    """
    filled = [0] * design.v
    live = [p for p in range(design.v) if weights[p] > 0]
    out = {}
    for name, size in sorted(items, key=lambda t: (-t[1], t[0])):
        p = min(live, key=lambda q: (Fraction(filled[q] + size) / weights[q], q))
        out[name] = p
        filled[p] += size
    return out


@dataclass
class PlacementManifest:
    design: CoveringDesign
    source: str
    groups: dict  # item -> point label
    machines: list  # [(block labels, items, load)]
    limit: Fraction
    achieved_max_load: Fraction
    empty_groups: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "design": {"source": self.source, **self.design.to_dict()},
            "groups": self.groups,
            "machines": [
                {"block": blk, "items": items, "load": format_rational(load)} for blk, items, load in self.machines
            ],
            "limit": format_rational(self.limit),
            "achieved_max_load": format_rational(self.achieved_max_load),
            "empty_groups": self.empty_groups,
        }


def check_coverage(manifest: PlacementManifest) -> None:
    """Scan every item pair; raise if some pair shares no machine."""
    where: dict[str, int] = {}
    for j, (_blk, items, _load) in enumerate(manifest.machines):
        for it in items:
            where[it] = where.get(it, 0) | (1 << j)
    names = list(manifest.groups)
    masks = [where.get(it, 0) for it in names]
    for i, a in enumerate(masks):
        if not a:
            raise CoverageViolated(names[i], 0)
        for j in range(i + 1, len(masks)):
            if not a & masks[j]:
                raise AtacError(f"items {names[i]!r} and {names[j]!r} share no machine")
    # each item sits exactly on the machines containing its group
    design = manifest.design
    for it, label in manifest.groups.items():
        p = design.index(label)
        expected = sum(1 << j for j, blk in enumerate(design.blocks) if p in blk)
        if where.get(it, 0) != expected:
            raise AtacError(f"item {it!r} is not on exactly the machines holding group {label!r}")


def plan(machines: int, items=None, n: int | None = None, design: CoveringDesign | None = None) -> PlacementManifest:
    """Place data on ``machines`` machines.

    Give either ``n`` equal items (named item0 .. item{n-1}) or ``items`` as
    ``(name, size)`` pairs with positive integer sizes.
    """
    if (n is None) == (items is None):
        raise AtacError("give either an item count or an item list")
    if design is None:
        known = best_known_design(machines)
        design, source = known.design, known.entry.describe()
        cert = known.certificate
    else:
        if design.b != machines:
            raise AtacError(f"design has {design.b} blocks for {machines} machines")
        source = "inline"
        cert = data_limit(design)
    weights = [cert.weighting[p] for p in design.points]

    if items is None:
        if n < 1:
            raise AtacError("need at least one item")
        counts = apportion(n, weights)
        names = [f"item{i}" for i in range(n)]
        sizes = dict.fromkeys(names, 1)
        point_of = {}
        it = iter(names)
        for p, c in enumerate(counts):
            for _ in range(c):
                point_of[next(it)] = p
    else:
        items = [(str(a), int(b)) for a, b in items]
        if not items:
            raise AtacError("item list is empty")
        if any(size <= 0 for _, size in items):
            raise AtacError("item sizes must be positive integers")
        if len({a for a, _ in items}) != len(items):
            raise AtacError("item names must be unique")
        sizes = dict(items)
        point_of = assign_sized(items, design, weights)

    total = sum(sizes.values())
    members: list[list[str]] = [[] for _ in design.points]
    for name, p in point_of.items():
        members[p].append(name)
    empty = [design.points[p] for p in range(design.v) if not members[p]]
    if empty:
        log.warning("%d of %d groups are empty (more groups than items)", len(empty), design.v)
    rows = []
    for j in range(design.b):
        its = list(itertools.chain.from_iterable(members[p] for p in design.blocks[j]))
        rows.append((design.block_labels(j), its, Fraction(sum(sizes[i] for i in its), total)))
    manifest = PlacementManifest(
        design,
        source,
        {name: design.points[p] for name, p in point_of.items()},
        rows,
        cert.limit,
        max(r[2] for r in rows),
        empty,
    )
    check_coverage(manifest)
    return manifest
