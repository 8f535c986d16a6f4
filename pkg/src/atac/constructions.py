"""Constructors for the design families whose data limits are known."""

from __future__ import annotations

import itertools

from .design import CoveringDesign, from_index_blocks, validate
from .errors import ConstructionError, NotPrimePower
from .fields import gf, is_prime, is_prime_power


def _normalised_vectors(F) -> list[tuple[int, int, int]]:
    """One representative per 1-dim subspace of F^3: first nonzero coordinate is 1."""
    out = []
    for v in itertools.product(F.elements(), repeat=3):
        lead = next((c for c in v if c != 0), None)
        if lead == 1:
            out.append(v)
    return out


def projective_plane(q: int) -> CoveringDesign:
    """PG(2, q): points and lines of GF(q)^3.  ``q = 1`` gives the triangle."""
    if q == 1:
        return validate(["0", "1", "2"], [["0", "1"], ["0", "2"], ["1", "2"]])
    if not is_prime_power(q):
        raise NotPrimePower(q)
    F = gf(q)
    pts = _normalised_vectors(F)
    blocks = []
    for line in pts:
        blk = []
        for i, x in enumerate(pts):
            dot = 0
            for a, b in zip(line, x):
                dot = F.add(dot, F.mul(a, b))
            if dot == 0:
                blk.append(i)
        blocks.append(blk)
    return from_index_blocks(len(pts), blocks)


def affine_plane(q: int) -> CoveringDesign:
    """AG(2, q): delete the line z = 0 and its points from PG(2, q)."""
    if q < 2:
        raise ConstructionError(f"affine planes need order >= 2, got {q}")
    if not is_prime_power(q):
        raise NotPrimePower(q)
    F = gf(q)
    pts = _normalised_vectors(F)
    at_infinity = {i for i, v in enumerate(pts) if v[2] == 0}
    keep = [i for i in range(len(pts)) if i not in at_infinity]
    pos = {i: j for j, i in enumerate(keep)}
    blocks = []
    for line in pts:
        if line == (0, 0, 1):
            continue
        blk = []
        for i in keep:
            x = pts[i]
            dot = 0
            for a, b in zip(line, x):
                dot = F.add(dot, F.mul(a, b))
            if dot == 0:
                blk.append(pos[i])
        blocks.append(blk)
    return from_index_blocks(len(keep), blocks)


def near_pencil(m: int) -> CoveringDesign:
    """Points 1..m; one block {2..m} and the pairs {1, i}.  m = 4 is the 3/5 design."""
    if m < 3:
        raise ConstructionError(f"near pencils need m >= 3, got {m}")
    labels = [str(i) for i in range(1, m + 1)]
    blocks = [labels[1:]] + [[labels[0], x] for x in labels[1:]]
    return validate(labels, blocks)


# Six points, six triples, every point on three triples, every pair covered.
# Regenerate with ``search_almost_projective_plane_order2``.
ALMOST_PROJECTIVE_ORDER_2 = ((0, 1, 2), (0, 1, 3), (0, 4, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5))


def search_almost_projective_plane_order2():
    """Exhaustive search (lexicographic) for a 3-uniform, 3-regular covering on 6 points with 6 blocks."""
    triples = list(itertools.combinations(range(6), 3))
    for choice in itertools.combinations(triples, 6):
        deg = [0] * 6
        for t in choice:
            for x in t:
                deg[x] += 1
        if any(d != 3 for d in deg):
            continue
        pairs = {p for t in choice for p in itertools.combinations(t, 2)}
        if len(pairs) == 15:
            return choice
    return None


def almost_projective_plane(s: int) -> CoveringDesign:
    if s == 2:
        return from_index_blocks(6, ALMOST_PROJECTIVE_ORDER_2)
    if s == 3:
        return from_index_blocks(12, [[(i + a) % 12 for a in (0, 1, 4, 6)] for i in range(12)])
    raise ConstructionError(f"no almost projective plane of order {s} is known (only 2 and 3)")


def transversal_design(k: int, n: int) -> CoveringDesign:
    """(k, n)-transversal design from GF(n).

    Point ``(i, x)`` is labelled ``"i:x"``.  Group ``i`` is a block of size n; the
    other blocks are ``{(i, a + b e_i)}`` over all ``a, b``, where the ``e_i`` are
    distinct field elements and, when ``k = n + 1``, the last row takes the value ``b``.
    """
    if not is_prime_power(n):
        raise NotPrimePower(n)
    if not 2 <= k <= n + 1:
        raise ConstructionError(f"need 2 <= k <= n + 1, got k={k}, n={n}")
    F = gf(n)
    labels = [f"{i}:{x}" for i in range(k) for x in range(n)]

    def pt(i, x):
        return i * n + x

    blocks = [[pt(i, x) for x in range(n)] for i in range(k)]
    for a in range(n):
        for b in range(n):
            blk = []
            for i in range(k):
                val = b if i == n else F.add(a, F.mul(b, i))
                blk.append(pt(i, val))
            blocks.append(blk)
    return from_index_blocks(k * n, blocks, labels)


def _chain_ring_classes(p: int) -> list[tuple[int, int, int]]:
    """Unit classes of unimodular triples over Z/p^2, first unit coordinate scaled to 1."""
    N = p * p
    reps = []
    for v in itertools.product(range(N), repeat=3):
        lead = next((c for c in v if c % p != 0), None)
        if lead == 1:
            reps.append(v)
    return reps


def hjelmslev_plane(p: int) -> CoveringDesign:
    """(p, p)-projective Hjelmslev plane over the chain ring Z/p^2.

    Points and blocks are the unit classes of unimodular triples; a point lies
    on a block when their dot product vanishes mod p^2.
    """
    if not is_prime(p):
        raise ConstructionError(f"{p} is not prime")
    if p > 3:
        raise ConstructionError(f"p = {p} is beyond desk scale (p <= 3)")
    N = p * p
    reps = _chain_ring_classes(p)
    labels = ["".join(str(c) for c in v) if N <= 10 else ",".join(map(str, v)) for v in reps]
    blocks = []
    for line in reps:
        blocks.append([i for i, x in enumerate(reps) if sum(a * b for a, b in zip(line, x)) % N == 0])
    design = from_index_blocks(len(reps), blocks, labels)
    expected = p * p * (p * p + p + 1)
    if design.v != expected:
        raise ConstructionError(f"built {design.v} points, expected {expected}")
    return design


FAMILIES = {
    "projective": (projective_plane, ("q",)),
    "affine": (affine_plane, ("q",)),
    "near-pencil": (near_pencil, ("m",)),
    "almost-projective": (almost_projective_plane, ("s",)),
    "transversal": (transversal_design, ("k", "n")),
    "hjelmslev": (hjelmslev_plane, ("p",)),
}


def construct(family: str, *params: int) -> CoveringDesign:
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise ConstructionError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != len(names):
        raise ConstructionError(f"{family} takes {len(names)} parameter(s): {', '.join(names)}")
    return fn(*params)

