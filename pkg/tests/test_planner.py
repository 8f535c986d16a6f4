import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atac.bounds import new_bound
from atac.constructions import projective_plane
from atac.errors import AtacError, CoverageViolated
from atac.planner import (
    FAMILY_ORDER,
    apportion,
    assign_sized,
    best_known,
    best_known_design,
    build,
    catalog,
    check_coverage,
    plan,
)
from atac.search import TABLE

import helpers


@pytest.mark.parametrize(
    "m,name,limit",
    [
        (1, "single-point", F(1)),
        (3, "projective(1)", F(2, 3)),
        (7, "projective(2)", F(3, 7)),
        (12, "affine(3)", F(1, 3)),
        (13, "projective(3)", F(4, 13)),
        (28, "hjelmslev(2)", F(3, 14)),
        (30, "affine(5)", F(1, 5)),
        (117, "hjelmslev(3)", F(4, 39)),
    ],
)
def test_best_known(m, name, limit):
    e = best_known(m)
    assert e.describe() == name
    assert e.limit == limit


def test_best_known_reproduces_table():
    for m, lim in TABLE.items():
        assert best_known(m).limit == lim


def test_best_known_is_monotone_and_above_lower_bound():
    prev = None
    for m in range(2, 140):
        lim = best_known(m).limit
        assert new_bound(m) <= lim
        if prev is not None:
            assert lim <= prev
        prev = lim


def test_catalog_tie_order():
    # at m = 6 four families reach 1/2; the earliest in the tie order wins
    entries = [e for e in catalog(6) if e.limit == F(1, 2)]
    assert {e.family for e in entries} == {"affine", "almost-projective", "transversal", "search-witness"}
    assert best_known(6).describe() == "affine(2)"
    assert list(FAMILY_ORDER).index("projective") == 0


@pytest.mark.parametrize("m", [2, 4, 6, 9, 11, 20, 28])
def test_best_known_design_certified(m):
    kd = best_known_design(m)
    assert kd.design.b == m
    assert kd.certificate.limit == kd.limit == best_known(m).limit


def test_catalog_closed_forms_match_lp():
    from atac.lp import data_limit

    for e in catalog(40):
        if e.family in ("hjelmslev",) and e.params[0] > 2:
            continue
        assert data_limit(build(e)).limit == e.limit, e.describe()


def test_catalog_rejects_no_machines():
    with pytest.raises(AtacError):
        catalog(0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 500), st.lists(st.integers(0, 20), min_size=1, max_size=12).filter(any))
def test_apportion_properties(n, raw):
    w = [F(x, sum(raw)) for x in raw]
    counts = apportion(n, w)
    assert sum(counts) == n
    for c, wi in zip(counts, w):
        assert math.floor(n * wi) <= c <= math.ceil(n * wi)
        if wi == 0:
            assert c == 0


def test_apportion_ties_go_first():
    assert apportion(1, [F(1, 2), F(1, 2)]) == [1, 0]
    assert apportion(5, [F(2, 5), F(1, 5), F(1, 5), F(1, 5)]) == [2, 1, 1, 1]


def test_assign_sized_skips_zero_weight_and_balances(pencil):
    w = [F(0), F(1, 3), F(1, 3), F(1, 3)]
    items = [(f"i{j}", s) for j, s in enumerate([5, 4, 3, 3, 2, 1])]
    out = assign_sized(items, pencil, w)
    assert 0 not in out.values()
    loads = [sum(s for name, s in items if out[name] == p) for p in range(4)]
    assert loads == [0, 6, 6, 6]


def test_plan_seven_by_seventy():
    man = plan(7, n=70)
    assert man.source == "projective(2)"
    assert man.limit == man.achieved_max_load == F(3, 7)
    assert all(len(items) == 30 for _, items, _ in man.machines)
    check_coverage(man)


def test_plan_more_groups_than_items():
    man = plan(3, n=2)
    assert len(man.empty_groups) == 1
    assert sorted(load for _, _, load in man.machines) == [F(1, 2), F(1, 2), F(1)]


def test_plan_achieved_load_approaches_limit():
    man = plan(4, n=5)
    assert man.achieved_max_load == man.limit == F(3, 5)
    man = plan(4, n=7)
    assert man.achieved_max_load >= man.limit
    assert man.achieved_max_load - man.limit <= F(2, 7)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 13), st.integers(1, 60))
def test_plan_always_covers(m, n):
    man = plan(m, n=n)
    check_coverage(man)
    assert sum(1 for _ in man.groups) == n
    assert man.achieved_max_load >= man.limit or n == 0


def test_plan_sized_items():
    items = [("a", 7), ("b", 5), ("c", 3), ("d", 3), ("e", 1)]
    man = plan(7, items=items)
    check_coverage(man)
    total = sum(s for _, s in items)
    for blk, its, load in man.machines:
        assert load == F(sum(dict(items)[i] for i in its), total)


def test_plan_with_given_design(five_point):
    man = plan(5, n=9, design=five_point)
    assert man.source == "inline"
    assert man.limit == F(5, 9)
    assert man.achieved_max_load == F(5, 9)


def test_plan_errors(fano):
    with pytest.raises(AtacError):
        plan(7)
    with pytest.raises(AtacError):
        plan(7, n=3, items=[("a", 1)])
    with pytest.raises(AtacError):
        plan(7, n=0)
    with pytest.raises(AtacError):
        plan(8, n=3, design=fano)
    with pytest.raises(AtacError):
        plan(7, items=[])
    with pytest.raises(AtacError):
        plan(7, items=[("a", 0)])
    with pytest.raises(AtacError):
        plan(7, items=[("a", 1), ("a", 2)])


def test_check_coverage_catches_tampering():
    man = plan(7, n=14)
    blk, items, load = man.machines[0]
    victim = items[0]
    man.machines[0] = (blk, items[1:], load)
    with pytest.raises((AtacError, CoverageViolated)):
        check_coverage(man)


def test_check_coverage_catches_missing_item():
    man = plan(7, n=7)
    lost = next(iter(man.groups))
    man.machines = [(b, [i for i in its if i != lost], load) for b, its, load in man.machines]
    with pytest.raises(CoverageViolated):
        check_coverage(man)


def test_manifest_dict_shape():
    d = plan(3, n=4).to_dict()
    assert set(d) == {"design", "groups", "machines", "limit", "achieved_max_load", "empty_groups"}
    assert d["design"]["source"] == "projective(1)"
    assert d["limit"] == "2/3"
    assert all(set(m) == {"block", "items", "load"} for m in d["machines"])


def test_every_pair_shares_a_machine_brute_force():
    man = plan(6, n=25)
    machines = [set(its) for _, its, _ in man.machines]
    for a, b in itertools.combinations(man.groups, 2):
        assert any(a in s and b in s for s in machines)
