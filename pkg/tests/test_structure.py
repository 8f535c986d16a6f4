import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atac.constructions import (
    affine_plane,
    almost_projective_plane,
    hjelmslev_plane,
    near_pencil,
    projective_plane,
    transversal_design,
)
from atac.design import from_index_blocks
from atac.fields import is_prime_power
from atac.lp import data_limit
from atac.structure import (
    EXISTS,
    INCONCLUSIVE,
    POSSIBLY_EXISTS,
    RULED_OUT,
    UNKNOWN,
    almost_plane_screen,
    classify,
    find_hjelmslev_structure,
    find_transversal_structure,
    is_sum_of_two_squares,
    plane_existence,
    ternary_solution,
)

import helpers


def names(d):
    return [str(s) for s in classify(d)]


def relabel(d, seed):
    rng = random.Random(seed)
    perm = list(range(d.v))
    rng.shuffle(perm)
    blocks = [[perm[x] for x in blk] for blk in d.blocks]
    rng.shuffle(blocks)
    return from_index_blocks(d.v, blocks)


def two_squares_by_factoring(n):
    # every prime 3 mod 4 divides n to an even power
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if p % 4 == 3 and e % 2:
            return False
        p += 1
    return not (n > 1 and n % 4 == 3)


@pytest.mark.parametrize(
    "design,expected",
    [
        (projective_plane(2), ["projective-plane(s=2)"]),
        (projective_plane(3), ["projective-plane(s=3)"]),
        (affine_plane(3), ["affine-plane(s=3)", "transversal-design(k=3, n=3)"]),
        (almost_projective_plane(2), ["almost-projective-plane(s=2)"]),
        (almost_projective_plane(3), ["almost-projective-plane(s=3)"]),
        (near_pencil(5), ["near-pencil(m=5)"]),
        (transversal_design(3, 4), ["transversal-design(k=3, n=4)"]),
        (hjelmslev_plane(2), ["hjelmslev-plane(t=2, q=2)"]),
        (helpers.triangle(), ["near-pencil(m=3)", "projective-plane(s=1)"]),
    ],
)
def test_classify(design, expected):
    assert names(design) == expected


@pytest.mark.parametrize("seed", range(3))
def test_classify_is_label_invariant(seed):
    for d in (projective_plane(3), almost_projective_plane(3), transversal_design(4, 5), hjelmslev_plane(2)):
        assert names(relabel(d, seed)) == names(d)


def test_z12_design_is_almost_projective_order3():
    d = from_index_blocks(12, [[(i + a) % 12 for a in (0, 1, 4, 6)] for i in range(12)])
    assert names(d) == ["almost-projective-plane(s=3)"]
    cert = data_limit(d)
    assert cert.limit == Fraction(1, 3)
    assert set(cert.weighting.values()) == {Fraction(1, 12)}


def test_unrecognised(five_point):
    assert classify(five_point) == []


def test_transversal_groups_are_returned():
    k, n, groups = find_transversal_structure(transversal_design(4, 5))
    assert (k, n) == (4, 5)
    assert len(groups) == 4


def test_hjelmslev_structure_order3():
    hj = find_hjelmslev_structure(hjelmslev_plane(3))
    assert (hj.t, hj.q) == (3, 3)
    assert len(hj.point_classes) == len(hj.block_classes) == 13
    assert all(len(c) == 9 for c in hj.point_classes)


def test_projective_plane_is_trivial_hjelmslev():
    hj = find_hjelmslev_structure(projective_plane(3))
    assert (hj.t, hj.q) == (1, 3)
    assert "hjelmslev" not in " ".join(names(projective_plane(3)))


def test_sum_of_two_squares_matches_factoring():
    assert [n for n in range(200) if is_sum_of_two_squares(n)] == [
        n for n in range(200) if n == 0 or two_squares_by_factoring(n)
    ]


@pytest.mark.parametrize("s", [6, 14, 21, 22, 10])
def test_plane_orders_ruled_out(s):
    assert plane_existence(s).status == RULED_OUT


def test_prime_power_planes_exist():
    for s in range(2, 28):
        if is_prime_power(s):
            assert plane_existence(s).status == EXISTS


def test_plane_existence_open_orders():
    assert [s for s in range(2, 40) if plane_existence(s).status == UNKNOWN] == [12, 15, 18, 20, 24, 26, 28, 34, 35, 36, 39]
    assert plane_existence(1).status == EXISTS
    with pytest.raises(ValueError):
        plane_existence(0)


def test_plane_existence_agrees_with_bruck_ryser_oracle():
    for s in range(2, 200):
        st_ = plane_existence(s)
        if s % 4 in (1, 2) and not two_squares_by_factoring(s):
            assert st_.status == RULED_OUT
        elif is_prime_power(s):
            assert st_.status == EXISTS


def test_almost_plane_screen_order10():
    st_ = almost_plane_screen(10)
    assert st_.status == POSSIBLY_EXISTS
    assert st_.witness == (1, 1, 3)
    x, y, z = st_.witness
    assert 11 * x * x - 2 * y * y == z * z


def test_almost_plane_screen_small_orders():
    possible = [s for s in range(2, 30) if almost_plane_screen(s).status == POSSIBLY_EXISTS]
    assert possible == [2, 3, 5, 8, 10, 15, 17, 24, 26]


def test_almost_plane_screen_inconclusive_with_tiny_bound():
    # 18x^2 + 2y^2 = z^2 first solves at (1, 3, 6)
    assert almost_plane_screen(17, bound=2).status == INCONCLUSIVE
    assert almost_plane_screen(17).witness == (1, 3, 6)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(-30, 30).filter(bool))
def test_ternary_solutions_are_valid_and_minimal(a, c):
    sol = ternary_solution(a, c, bound=40)
    brute = [
        (x, y)
        for n in range(1, 41)
        for x, y in [(i, n) for i in range(n + 1)] + [(n, j) for j in range(n)]
        if a * x * x + c * y * y >= 0 and math.isqrt(a * x * x + c * y * y) ** 2 == a * x * x + c * y * y
    ]
    if sol is None:
        assert brute == []
    else:
        x, y, z = sol
        assert (x, y) == brute[0]
        assert a * x * x + c * y * y == z * z and z >= 0


def test_ternary_rejects_overflowing_scan():
    with pytest.raises(ValueError):
        ternary_solution(10**9, 1, bound=10**5)
