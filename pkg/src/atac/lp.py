"""Exact rational linear programming and the data-limit certificates built on it.

The solver is a two-phase primal simplex over a fraction-free integer
tableau: every entry is an integer and the true (rational) entry is that
integer divided by a single shared denominator ``d``.  Pivoting uses the
Bareiss update, whose divisions are exact, so no gcd work is done per entry.
Bland's rule picks entering and leaving variables, which guarantees
termination on degenerate problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .design import CoveringDesign, DualHypergraph, check_weighting, dual
from .errors import AtacError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_SENSES = ("<=", ">=", "==")


@dataclass(frozen=True)
class LinearProgram:
    """``max``/``min`` of ``objective . x`` subject to ``rows[i] . x (sense) rhs[i]``, ``x >= 0``."""

    objective: tuple
    rows: tuple
    senses: tuple
    rhs: tuple
    maximize: bool = True

    def __post_init__(self):
        n = len(self.objective)
        if len(self.rows) != len(self.senses) or len(self.rows) != len(self.rhs):
            raise AtacError("rows, senses and rhs must have equal length")
        for row in self.rows:
            if len(row) != n:
                raise AtacError("every constraint row needs one coefficient per variable")
        for s in self.senses:
            if s not in _SENSES:
                raise AtacError(f"unknown constraint sense {s!r}")

    @classmethod
    def build(cls, objective, rows, senses, rhs, maximize=True) -> "LinearProgram":
        fr = lambda seq: tuple(Fraction(x) for x in seq)  # noqa: E731
        return cls(fr(objective), tuple(fr(r) for r in rows), tuple(senses), fr(rhs), maximize)


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None = None
    x: tuple | None = None
    duals: tuple | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Integer simplex tableau; rational entry = ``T[i, j] / d``.

    The last row is the objective row holding reduced costs, its last entry
    is minus the current objective value.  The last column is the rhs.
    """

    def __init__(self, T: np.ndarray, basis: list[int]):
        self.T = T
        self.basis = basis
        self.d = 1
        self.pivots = 0

    @property
    def n_rows(self) -> int:
        return self.T.shape[0] - 1

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        p = T[r, c]
        row = T[r].copy()
        new = (p * T - np.outer(T[:, c], row)) // self.d
        new[r] = row
        if p < 0:
            new = -new
            p = -p
        self.T = new
        self.d = p
        self.basis[r] = c
        self.pivots += 1

    def set_objective(self, cost: Sequence[int]) -> None:
        """Install reduced costs for integer ``cost`` (one per column) given the current basis."""
        n = self.T.shape[1] - 1
        obj = np.array([self.d * c for c in cost] + [0], dtype=object)
        for i, j in enumerate(self.basis):
            cb = cost[j]
            if cb:
                obj = obj - cb * self.T[i]
        self.T[-1] = obj
        assert len(obj) == n + 1

    def drop_row(self, r: int) -> None:
        self.T = np.delete(self.T, r, axis=0)
        del self.basis[r]

    def run(self, allowed: Sequence[bool], max_pivots: int) -> str:
        """Primal simplex with Bland's rule on the installed objective."""
        while True:
            obj = self.T[-1]
            entering = -1
            for j in range(len(allowed)):
                if allowed[j] and obj[j] > 0:
                    entering = j
                    break
            if entering < 0:
                return OPTIMAL
            col = self.T[:, entering]
            rhs = self.T[:, -1]
            best = None
            for i in range(self.n_rows):
                a = col[i]
                if a > 0:
                    key = (Fraction(rhs[i], a), self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            if self.pivots >= max_pivots:
                raise AtacError(f"simplex exceeded {max_pivots} pivots")
            self.pivot(best[1], entering)


def _integer_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int, int]:
    scale = 1
    for x in list(coeffs) + [rhs]:
        scale = math.lcm(scale, x.denominator)
    return [int(x * scale) for x in coeffs], int(rhs * scale), scale


def solve(lp: LinearProgram, max_pivots: int | None = None) -> LpSolution:
    """Solve ``lp`` exactly.

    Duals are returned for every constraint in the orientation of the problem
    as stated: ``sum(duals[i] * rhs[i]) == value`` and the reduced costs
    ``c - duals . A`` are <= 0 for a maximization (>= 0 for a minimization).
    """
    n = len(lp.objective)
    m = len(lp.rows)
    row_scale: list[int] = []
    rows_int: list[list[int]] = []
    rhs_int: list[int] = []
    senses: list[str] = []
    for coeffs, sense, b in zip(lp.rows, lp.senses, lp.rhs):
        ints, bi, scale = _integer_row(coeffs, b)
        if bi < 0:
            ints = [-a for a in ints]
            bi = -bi
            scale = -scale
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        rows_int.append(ints)
        rhs_int.append(bi)
        senses.append(sense)
        row_scale.append(scale)

    # columns: structural | slack or surplus per inequality | artificial per >= / == row
    n_aux = sum(1 for s in senses if s != "==")
    art_rows = [i for i, s in enumerate(senses) if s != "<="]
    n_cols = n + n_aux + len(art_rows)
    T = np.zeros((m + 1, n_cols + 1), dtype=object)
    identity_col = [0] * m
    aux = n
    art = n + n_aux
    for i in range(m):
        T[i, :n] = rows_int[i]
        T[i, -1] = rhs_int[i]
        if senses[i] == "<=":
            T[i, aux] = 1
            identity_col[i] = aux
            aux += 1
        else:
            if senses[i] == ">=":
                T[i, aux] = -1
                aux += 1
            T[i, art] = 1
            identity_col[i] = art
            art += 1
    is_art = [j >= n + n_aux for j in range(n_cols)]
    tab = _Tableau(T, list(identity_col))
    if max_pivots is None:
        max_pivots = 50 * (n_cols + m + 1) + 1000
    live_rows = list(range(m))

    if art_rows:
        tab.set_objective([-1 if is_art[j] else 0 for j in range(n_cols)])
        tab.run([True] * n_cols, max_pivots)
        if tab.T[-1, -1] != 0:
            return LpSolution(INFEASIBLE, pivots=tab.pivots)
        r = 0
        while r < tab.n_rows:
            if is_art[tab.basis[r]]:
                row = tab.T[r]
                j = next((j for j in range(n_cols) if not is_art[j] and row[j] != 0), None)
                if j is None:
                    tab.drop_row(r)
                    del live_rows[r]
                    continue
                tab.pivot(r, j)
            r += 1

    sign = 1 if lp.maximize else -1
    obj_scale = 1
    for c in lp.objective:
        obj_scale = math.lcm(obj_scale, c.denominator)
    cost = [int(sign * c * obj_scale) for c in lp.objective] + [0] * (n_cols - n)
    tab.set_objective(cost)
    status = tab.run([not a for a in is_art], max_pivots)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, pivots=tab.pivots)

    d = tab.d
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        if j < n:
            x[j] = Fraction(tab.T[i, -1], d)
    value = Fraction(-tab.T[-1, -1], d) / (sign * obj_scale)
    duals = [Fraction(0)] * m
    for orig in live_rows:
        y_scaled = Fraction(-tab.T[-1, identity_col[orig]], d)
        duals[orig] = y_scaled * row_scale[orig] / (sign * obj_scale)
    return LpSolution(OPTIMAL, value, tuple(x), tuple(duals), tab.pivots)


def _matching_lp(h: DualHypergraph) -> LinearProgram:
    edges = h.edges
    rows = [[1 if vtx in e else 0 for e in edges] for vtx in range(h.n_vertices)]
    return LinearProgram.build([1] * len(edges), rows, ["<="] * h.n_vertices, [1] * h.n_vertices)


def fractional_matching_number(h: DualHypergraph):
    """Maximum fractional matching of ``h``: ``(value, edge_weights, vertex_duals)``."""
    if h.n_vertices < 1:
        raise AtacError("hypergraph needs at least one vertex")
    if any(not e for e in h.edges):
        raise AtacError("empty edge: fractional matching is unbounded")
    sol = solve(_matching_lp(h))
    return sol.value, list(sol.x), list(sol.duals)


def fractional_transversal_min(h: DualHypergraph):
    """Minimum fractional transversal of ``h`` as ``(value, vertex_weights)``, solved directly."""
    if any(not e for e in h.edges):
        raise AtacError("empty edge cannot be covered")
    rows = [[1 if vtx in e else 0 for vtx in range(h.n_vertices)] for e in h.edges]
    lp = LinearProgram.build([1] * h.n_vertices, rows, [">="] * len(rows), [1] * len(rows), maximize=False)
    sol = solve(lp)
    return sol.value, list(sol.x)


@dataclass(frozen=True)
class LimitCertificate:
    """L(D) = limit, proved from above by ``weighting`` and from below by ``transversal``.

    ``transversal[i]`` is the weight of ``design.blocks[i]``.
    """

    limit: Fraction
    weighting: dict
    transversal: tuple
    pivots: int = field(default=0, compare=False)


def data_limit(design: CoveringDesign) -> LimitCertificate:
    """Exact L(D) with an upper and a lower certificate from a single solve."""
    h = dual(design)
    sol = solve(_matching_lp(h))
    nu = sol.value
    weighting = {p: x / nu for p, x in zip(design.points, sol.x)}
    return LimitCertificate(1 / nu, weighting, tuple(sol.duals), sol.pivots)


def certificate_problems(design: CoveringDesign, cert: LimitCertificate) -> list[str]:
    """Independent re-check of a certificate; an empty list means it proves L(D) = limit."""
    problems = []
    limit = Fraction(cert.limit)
    if limit <= 0:
        return [f"limit {limit} is not positive"]
    try:
        ws = check_weighting(design, cert.weighting, normalised=True)
    except AtacError as exc:
        problems.append(f"weighting: {exc}")
    else:
        for i, blk in enumerate(design.blocks):
            wb = sum((ws[x] for x in blk), Fraction(0))
            if wb > limit:
                problems.append(f"block {i} has weight {wb} > {limit}")
    h = [Fraction(t) for t in cert.transversal]
    if len(h) != design.b:
        problems.append(f"transversal has {len(h)} entries for {design.b} blocks")
        return problems
    if any(t < 0 for t in h):
        problems.append("transversal has a negative block weight")
    cover = [Fraction(0)] * design.v
    for t, blk in zip(h, design.blocks):
        for x in blk:
            cover[x] += t
    for p, c in zip(design.points, cover):
        if c < 1:
            problems.append(f"point {p!r} covered only to level {c}")
    if sum(h) != 1 / limit:
        problems.append(f"transversal value {sum(h)} != 1/limit = {1 / limit}")
    return problems


def verify_certificate(design: CoveringDesign, cert: LimitCertificate) -> bool:
    return not certificate_problems(design, cert)

