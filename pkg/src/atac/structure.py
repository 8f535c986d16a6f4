"""Recognise the named design classes and screen plane orders for existence."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .design import CoveringDesign, is_linear_space
from .fields import is_prime_power

PROJECTIVE = "projective-plane"
AFFINE = "affine-plane"
ALMOST_PROJECTIVE = "almost-projective-plane"
NEAR_PENCIL = "near-pencil"
TRANSVERSAL = "transversal-design"
HJELMSLEV = "hjelmslev-plane"


@dataclass(frozen=True, order=True)
class Structure:
    name: str
    params: tuple[tuple[str, int], ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}(" + ", ".join(f"{k}={v}" for k, v in self.params) + ")"


def _order_from_points(v: int, offset: int):
    """s >= 1 with s^2 + s + offset == v, else None."""
    s = (math.isqrt(4 * v - 4 * offset + 1) - 1) // 2
    return s if s >= 1 and s * s + s + offset == v else None


def is_projective_plane(d: CoveringDesign):
    s = _order_from_points(d.v, 1)
    if s is None or d.b != d.v:
        return None
    if any(len(b) != s + 1 for b in d.blocks) or not is_linear_space(d):
        return None
    return s


def is_affine_plane(d: CoveringDesign):
    s = math.isqrt(d.v)
    if s < 2 or s * s != d.v or d.b != s * s + s:
        return None
    if any(len(b) != s for b in d.blocks) or not is_linear_space(d):
        return None
    return s


def is_almost_projective_plane(d: CoveringDesign):
    s = _order_from_points(d.v, 0)
    if s is None or d.b != d.v:
        return None
    if any(len(b) != s + 1 for b in d.blocks) or any(r != s + 1 for r in d.replication()):
        return None
    return s


def is_near_pencil(d: CoveringDesign):
    m = d.v
    if m < 3 or d.b != m or not is_linear_space(d):
        return None
    sizes = sorted(len(b) for b in d.blocks)
    if sizes == [2] * (m - 1) + [m - 1]:
        return m
    return None


def _disjoint_cover(blocks: list[tuple[int, ...]], candidates: list[int], v: int):
    """Indices of pairwise disjoint candidate blocks covering all v points, or None."""
    full = (1 << v) - 1
    masks = {i: sum(1 << x for x in blocks[i]) for i in candidates}

    def extend(chosen, covered):
        if covered == full:
            return chosen
        first = (~covered & full & -(~covered & full)).bit_length() - 1
        for i in candidates:
            mk = masks[i]
            if mk >> first & 1 and not mk & covered:
                got = extend(chosen + [i], covered | mk)
                if got is not None:
                    return got
        return None

    return extend([], 0)


def find_transversal_structure(d: CoveringDesign):
    """``(k, n, group_block_indices)`` if ``d`` is a (k, n)-transversal design."""
    if not is_linear_space(d):
        return None
    for k in range(2, d.v + 1):
        if d.v % k:
            continue
        n = d.v // k
        if n < 2 or d.b != k + n * n:
            continue
        candidates = [i for i, blk in enumerate(d.blocks) if len(blk) == n]
        groups = _disjoint_cover(list(d.blocks), candidates, d.v)
        if groups is None or len(groups) != k:
            continue
        rest = [len(d.blocks[i]) for i in range(d.b) if i not in set(groups)]
        if all(size == k for size in rest):
            return k, n, groups
    return None


@dataclass
class HjelmslevStructure:
    t: int
    q: int
    point_classes: list[list[int]]
    block_classes: list[list[int]]
    quotient: list[frozenset[int]] = field(default_factory=list)


def _components(n: int, adjacent) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in adjacent:
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def find_hjelmslev_structure(d: CoveringDesign):
    """Check the (t, q)-projective Hjelmslev axioms using neighbour-induced classes.

    Point classes are the components of "together in more than one block",
    block classes the components of "meet in more than one point".
    """
    inc = np.zeros((d.v, d.b), dtype=np.int64)
    for j, blk in enumerate(d.blocks):
        inc[list(blk), j] = 1
    # intersecting: every two blocks meet
    block_meet = inc.T @ inc
    if (block_meet == 0).any():
        return None
    point_meet = inc @ inc.T
    pc = _components(d.v, zip(*np.nonzero(np.triu(point_meet, 1) > 1)))
    bc = _components(d.b, zip(*np.nonzero(np.triu(block_meet, 1) > 1)))
    if len(pc) != len(bc):
        return None
    q = _order_from_points(len(pc), 1)
    if q is None:
        return None
    class_of = [0] * d.v
    for ci, cls in enumerate(pc):
        for x in cls:
            class_of[x] = ci
    sizes = {len(c) for c in pc}
    if len(sizes) != 1:
        return None
    t = math.isqrt(sizes.pop())
    if t * t != len(pc[0]):
        return None
    quotient_lines = []
    for cls in bc:
        profile = None
        for j in cls:
            counts: dict[int, int] = {}
            for x in d.blocks[j]:
                counts[class_of[x]] = counts.get(class_of[x], 0) + 1
            if any(c != t for c in counts.values()):
                return None
            line = frozenset(counts)
            if profile is None:
                profile = line
            elif profile != line:
                return None
        quotient_lines.append(profile)
    # quotient must be a projective plane of order q
    if any(len(line) != q + 1 for line in quotient_lines) or len(set(quotient_lines)) != len(quotient_lines):
        return None
    seen = set()
    for line in quotient_lines:
        for pair in itertools.combinations(sorted(line), 2):
            if pair in seen:
                return None
            seen.add(pair)
    if len(seen) != len(pc) * (len(pc) - 1) // 2:
        return None
    return HjelmslevStructure(t, q, pc, bc, quotient_lines)


def classify(d: CoveringDesign) -> list[Structure]:
    out = []
    s = is_projective_plane(d)
    if s is not None:
        out.append(Structure(PROJECTIVE, (("s", s),)))
    s = is_affine_plane(d)
    if s is not None:
        out.append(Structure(AFFINE, (("s", s),)))
    s = is_almost_projective_plane(d)
    if s is not None:
        out.append(Structure(ALMOST_PROJECTIVE, (("s", s),)))
    m = is_near_pencil(d)
    if m is not None:
        out.append(Structure(NEAR_PENCIL, (("m", m),)))
    td = find_transversal_structure(d)
    if td is not None:
        out.append(Structure(TRANSVERSAL, (("k", td[0]), ("n", td[1]))))
    hj = find_hjelmslev_structure(d)
    if hj is not None and hj.t >= 2:
        out.append(Structure(HJELMSLEV, (("t", hj.t), ("q", hj.q))))
    return sorted(out)


# -- existence screens --------------------------------------------------------

EXISTS = "exists"
RULED_OUT = "ruled-out"
UNKNOWN = "unknown"
POSSIBLY_EXISTS = "possibly-exists"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExistenceStatus:
    order: int
    status: str
    reason: str
    witness: tuple | None = None

    def to_dict(self) -> dict:
        out = {"order": self.order, "status": self.status, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def is_sum_of_two_squares(n: int) -> bool:
    a = 0
    while a * a <= n:
        b = math.isqrt(n - a * a)
        if b * b == n - a * a:
            return True
        a += 1
    return False


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def plane_existence(s: int) -> ExistenceStatus:
    if s < 1:
        raise ValueError("order must be positive")
    if s == 1:
        return ExistenceStatus(s, EXISTS, "order 1: the triangle")
    if is_prime_power(s):
        return ExistenceStatus(s, EXISTS, "prime power: PG(2, s) over GF(s)")
    if s % 4 in (1, 2) and not is_sum_of_two_squares(s):
        return ExistenceStatus(s, RULED_OUT, "bruck-ryser: s = 1, 2 mod 4 and not a sum of two squares")
    if s == 10:
        return ExistenceStatus(s, RULED_OUT, "order-10: excluded by exhaustive computer search")
    return ExistenceStatus(s, UNKNOWN, "no construction and no known obstruction")


def ternary_solution(a: int, c: int, bound: int = 10_000):
    """Integers (x, y, z), not all zero, 0 <= x, y <= bound, with a x^2 + c y^2 = z^2, or None.

    Pairs are scanned by increasing max(x, y), so small witnesses come first.
    """
    if (abs(a) + abs(c)) * bound * bound >= 2**52:
        raise ValueError("coefficients too large for the vectorised scan")
    for n in range(1, bound + 1):
        # the square shell max(x, y) == n
        x = np.concatenate([np.arange(n + 1), np.full(n, n)]).astype(np.int64)
        y = np.concatenate([np.full(n + 1, n), np.arange(n)]).astype(np.int64)
        val = a * x * x + c * y * y
        z = np.rint(np.sqrt(np.maximum(val, 0))).astype(np.int64)
        hit = np.nonzero((val >= 0) & (z * z == val))[0]
        if hit.size:
            i = hit[0]
            return int(x[i]), int(y[i]), int(z[i])
    return None


def almost_plane_screen(s: int, bound: int = 10_000) -> ExistenceStatus:
    """Necessary conditions for an almost projective plane of order s."""
    m = s * (s + 1) // 2
    if s % 4 in (0, 3):
        if not _is_square(s + 1):
            return ExistenceStatus(s, RULED_OUT, "s = 0, 3 mod 4 requires s + 1 to be a square")
        if m % 4 == 2 and not is_sum_of_two_squares(s - 1):
            return ExistenceStatus(s, RULED_OUT, "m = 2 mod 4 requires s - 1 to be a sum of two squares")
        return ExistenceStatus(s, POSSIBLY_EXISTS, "square conditions hold")
    if not _is_square(s - 1):
        return ExistenceStatus(s, RULED_OUT, "s = 1, 2 mod 4 requires s - 1 to be a square")
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    sol = ternary_solution(s + 1, sign * 2, bound)
    form = f"{s + 1}x^2 {'+' if sign > 0 else '-'} 2y^2 = z^2"
    if sol is None:
        return ExistenceStatus(s, INCONCLUSIVE, f"no solution of {form} with |x|, |y| <= {bound}")
    return ExistenceStatus(s, POSSIBLY_EXISTS, f"{form} has a solution", sol)
