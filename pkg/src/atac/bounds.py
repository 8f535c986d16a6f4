"""Closed-form bounds on L(m) and L(D).

``new_bound(m)`` is irrational for most m, so it is held as an exact
:class:`QuadraticSurd` and every comparison is decided by integer
arithmetic (isolate the radical, square, track signs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Mapping, Sequence

from .design import CoveringDesign, check_weighting, max_block_weight
from .errors import AtacError, CoverageViolated


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_linear(r: Fraction, c: Fraction, d: int) -> int:
    """Sign of ``r + c * sqrt(d)`` for rational r, c and integer d >= 0."""
    s1 = _sign(r)
    s2 = _sign(c) if d > 0 else 0
    if s1 >= 0 and s2 >= 0:
        return 1 if (s1 or s2) else 0
    if s1 <= 0 and s2 <= 0:
        return -1
    lhs, rhs = r * r, c * c * d
    if lhs == rhs:
        return 0
    return s1 if lhs > rhs else s2


def _sign_sqrt_diff(A: Fraction, B: Fraction, K: Fraction) -> int:
    """Sign of ``sqrt(A) - sqrt(B) - K`` for rationals A, B >= 0.

    Only used with A, B of the form (integer) * (square of a rational), so the
    radicals are rewritten over integer radicands.
    """
    # sqrt(A) vs sqrt(B) + K
    rb, db = _split_radical(B)
    rhs_sign = _sign_linear(K, rb, db)
    if rhs_sign < 0:
        return 1
    # both sides nonnegative: compare A with B + K^2 + 2K sqrt(B)
    return _sign_linear(A - B - K * K, -2 * K * rb, db)


def _split_radical(x: Fraction) -> tuple[Fraction, int]:
    """Write sqrt(x) as c * sqrt(d) with rational c and squarefree-ish integer d."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    n = num * den
    r = math.isqrt(n)
    if r * r == n:
        return Fraction(r, den), 1
    return Fraction(1, den), n


@total_ordering
@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``(a + sqrt(d)) / b`` with integers a, d >= 0, b > 0."""

    a: int
    d: int
    b: int

    def __post_init__(self):
        if self.b <= 0 or self.d < 0:
            raise AtacError("QuadraticSurd needs b > 0 and d >= 0")

    @property
    def is_rational(self) -> bool:
        r = math.isqrt(self.d)
        return r * r == self.d

    def as_fraction(self) -> Fraction:
        r = math.isqrt(self.d)
        if r * r != self.d:
            raise AtacError(f"(a + sqrt({self.d}))/b is irrational")
        return Fraction(self.a + r, self.b)

    def lower(self, digits: int = 13) -> Fraction:
        """Rational lower bound within ``10**-digits`` / b of the true value."""
        scale = 10 ** digits
        return Fraction(self.a * scale + math.isqrt(self.d * scale * scale), self.b * scale)

    def upper(self, digits: int = 13) -> Fraction:
        scale = 10 ** digits
        root = math.isqrt(self.d * scale * scale)
        if root * root != self.d * scale * scale:
            root += 1
        return Fraction(self.a * scale + root, self.b * scale)

    def __float__(self) -> float:
        return float(self.lower(17))

    def compare(self, other) -> int:
        """-1, 0 or 1 as self is less than, equal to or greater than ``other``."""
        if isinstance(other, QuadraticSurd):
            # b2(a1 + sqrt d1) vs b1(a2 + sqrt d2)  <=>  sqrt(b2^2 d1) - sqrt(b1^2 d2) vs b1 a2 - b2 a1
            A = Fraction(other.b * other.b * self.d)
            B = Fraction(self.b * self.b * other.d)
            K = Fraction(self.b * other.a - other.b * self.a)
            return _sign_sqrt_diff(A, B, K)
        r = Fraction(other)
        # a + sqrt(d) vs r b
        return _sign_linear(Fraction(self.a) - r * self.b, Fraction(1), self.d)

    def __eq__(self, other):
        if isinstance(other, (QuadraticSurd, Fraction, int)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.as_fraction())
        # pull square factors out of d, then divide out the common gcd
        c, d = 1, self.d
        f = 2
        while f * f <= d:
            while d % (f * f) == 0:
                d //= f * f
                c *= f
            f += 1
        g = math.gcd(math.gcd(self.a, c), self.b)
        return hash((self.a // g, c // g, d, self.b // g))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.as_fraction())
        return f"({self.a} + sqrt({self.d}))/{self.b}"


def s_of(m: int) -> int:
    """The s with s^2 - s + 1 < m <= s^2 + s + 1."""
    if m < 2:
        raise AtacError(f"m must be at least 2, got {m}")
    s = math.isqrt(m)
    # m lies between s^2 and (s+1)^2; the window boundary sits at s^2 + s + 1
    if m > s * s + s + 1:
        s += 1
    while s * s - s + 1 >= m:
        s -= 1
    assert s * s - s + 1 < m <= s * s + s + 1
    return s


def hkt_bound(m: int) -> Fraction:
    """min(1/floor(sqrt m), (floor(sqrt m) + 1)/m)."""
    if m < 1:
        raise AtacError(f"m must be positive, got {m}")
    r = math.isqrt(m)
    return min(Fraction(1, r), Fraction(r + 1, m))


def new_bound(m: int) -> QuadraticSurd:
    """The improved lower bound F(m) as an exact surd."""
    s = s_of(m)
    if m == 3:
        # with s = 1 the closed form is identically 1, which overshoots L(3) = 2/3;
        # the bound at m = 3 is the HKT value
        return QuadraticSurd(2, 0, 3)
    a = s * s + (2 * m - 1) * s - 1
    d = (s * s - s - 1) ** 2 + 4 * m * (s - 1) * (s * s + s + 1 - m)
    b = 2 * m * (s * s + s - 1)
    return QuadraticSurd(a, d, b)


def new_bound_value(m: int):
    """F(m) as a Fraction when rational, else as the surd."""
    f = new_bound(m)
    return f.as_fraction() if f.is_rational else f


# L(m) for m = 1..13 (Mills; Kelly).
KNOWN_LIMITS = {
    1: Fraction(1), 2: Fraction(1), 3: Fraction(2, 3), 4: Fraction(3, 5), 5: Fraction(5, 9),
    6: Fraction(1, 2), 7: Fraction(3, 7), 8: Fraction(5, 12), 9: Fraction(2, 5), 10: Fraction(3, 8),
    11: Fraction(5, 14), 12: Fraction(1, 3), 13: Fraction(4, 13),
}


def known_exact(m: int) -> Fraction | None:
    """L(m) where it is settled: the small-m table, or a plane of prime-power order."""
    from .fields import is_prime_power

    if m in KNOWN_LIMITS:
        return KNOWN_LIMITS[m]
    s = s_of(m)
    if m == s * s + s + 1 and is_prime_power(s):
        return Fraction(s + 1, m)
    if m == s * s + s and is_prime_power(s):
        return Fraction(1, s)
    return None


@dataclass(frozen=True)
class BoundReport:
    m: int
    s: int
    hkt: Fraction
    new: QuadraticSurd
    known: Fraction | None

    def to_dict(self) -> dict:
        from .rational import format_rational

        return {
            "m": self.m,
            "s": self.s,
            "hkt_bound": format_rational(self.hkt),
            "new_bound": str(self.new),
            "new_bound_exact": {"a": self.new.a, "d": self.new.d, "b": self.new.b},
            "new_bound_lower": format_rational(self.new.lower()),
            "new_bound_decimal": f"{float(self.new.lower()):.10f}",
            "known_exact": None if self.known is None else format_rational(self.known),
        }


def bound_report(m: int) -> BoundReport:
    return BoundReport(m, s_of(m), hkt_bound(m), new_bound(m), known_exact(m))


# -- lower bounds on L(D) for a fixed design ---------------------------------


def lower_bound_frac_transversal(design: CoveringDesign, h: Sequence) -> Fraction:
    """1 / sum(h) for a block weighting covering every point to level >= 1."""
    h = [Fraction(x) for x in h]
    if len(h) != design.b:
        raise AtacError(f"need one weight per block ({design.b}), got {len(h)}")
    if any(x < 0 for x in h):
        raise AtacError("block weights must be nonnegative")
    cover = [Fraction(0)] * design.v
    for t, blk in zip(h, design.blocks):
        for x in blk:
            cover[x] += t
    for p, c in zip(design.points, cover):
        if c < 1:
            raise CoverageViolated(p, c)
    return 1 / sum(h)


def lower_bound_subfamily(design: CoveringDesign, block_indices: Sequence[int], t: int) -> Fraction:
    """t / |B'| when every point lies in at least t of the chosen blocks."""
    if t < 1:
        raise AtacError("t must be a positive integer")
    chosen = list(block_indices)
    if not chosen:
        raise AtacError("subfamily is empty")
    count = [0] * design.v
    for i in chosen:
        for x in design.blocks[i]:
            count[x] += 1
    for p, c in zip(design.points, count):
        if c < t:
            raise CoverageViolated(p, c)
    return Fraction(t, len(chosen))


@dataclass(frozen=True)
class RKBounds:
    lower: Fraction
    upper: Fraction
    exact: Fraction | None


def bounds_rk(design: CoveringDesign) -> RKBounds:
    """min r / |blocks| <= L(D) <= max |B| / |points|; tight for uniform regular designs."""
    r = design.replication()
    sizes = [len(b) for b in design.blocks]
    lower = Fraction(min(r), design.b)
    upper = Fraction(max(sizes), design.v)
    exact = None
    if len(set(r)) == 1 and len(set(sizes)) == 1:
        # r v = k b by double counting
        assert lower == upper
        exact = lower
    return RKBounds(lower, upper, exact)


def lower_bound_rep_seq(design: CoveringDesign) -> Fraction:
    """(1 + sigma) / (|X| + sigma) with sigma = sum 1/(r_x - 1); 1 if some r_x = 1."""
    r = design.replication()
    if min(r) < 2:
        return Fraction(1)
    sigma = sum((Fraction(1, x - 1) for x in r), Fraction(0))
    return (1 + sigma) / (design.v + sigma)


def av_weight_check(design: CoveringDesign, w: Mapping) -> bool:
    """|blocks| * L(D, w) >= sum r_x w(x)."""
    ws = check_weighting(design, w, normalised=True)
    r = design.replication()
    return design.b * max_block_weight(design, w) >= sum(rx * wx for rx, wx in zip(r, ws))


def max_weight_check(design: CoveringDesign, w: Mapping) -> list[tuple[str, Fraction, Fraction]]:
    """Points violating w(x) <= (r_x L - 1)/(r_x - 1), as (label, weight, bound).

    Only meaningful when L(D, w) < 1; returns an empty list otherwise.
    """
    ws = check_weighting(design, w, normalised=True)
    ell = max_block_weight(design, w)
    if ell >= 1:
        return []
    out = []
    for p, rx, wx in zip(design.points, design.replication(), ws):
        if rx < 2:
            out.append((p, wx, Fraction(-1)))
            continue
        bound = (rx * ell - 1) / (rx - 1)
        if wx > bound:
            out.append((p, wx, bound))
    return out


def max_weight_slack(design: CoveringDesign, w: Mapping) -> dict[str, Fraction]:
    """bound - w(x) per point (zero where the per-point inequality is tight)."""
    ws = check_weighting(design, w, normalised=True)
    ell = max_block_weight(design, w)
    return {p: (rx * ell - 1) / (rx - 1) - wx
            for p, rx, wx in zip(design.points, design.replication(), ws) if rx >= 2}


@dataclass(frozen=True)
class DesignBoundReport:
    rk_lower: Fraction
    rk_upper: Fraction
    rep_seq: Fraction
    transversal: Fraction
    exact: Fraction

    def ordered(self) -> bool:
        lows = (self.rk_lower, self.rep_seq, self.transversal)
        return all(x <= self.exact for x in lows) and self.exact <= self.rk_upper


def design_bound_report(design: CoveringDesign) -> DesignBoundReport:
    from .lp import data_limit

    cert = data_limit(design)
    rk = bounds_rk(design)
    return DesignBoundReport(
        rk_lower=rk.lower,
        rk_upper=rk.upper,
        rep_seq=lower_bound_rep_seq(design),
        transversal=lower_bound_frac_transversal(design, cert.transversal),
        exact=cert.limit,
    )
