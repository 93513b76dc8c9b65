import time

import pytest

import catalog
from characteristic import center, is_abelian, quotient, sylow_subgroup
from classify import (classify, is_in_class_X, non_p_subnormal_classes, p_subnormal, prime_index_subgroups,
                      sylow_tower_supersolvable)
from conftest import subgroup
from finite_group import is_normal
from order400 import COMPLEMENT_ORDER, search_order400_family
from structure import is_schmidt, minimal_non_class
from subgroup_lattice import build_lattice
from verification import intersection_failure


def test_alternating_groups(a5, a4):
    assert p_subnormal(a5, subgroup(a5, "(1 2 3),(1 2)(3 4)")).indices == (5,)
    assert not p_subnormal(a4, subgroup(a4, "(1 2 3)"))
    _, _, meet = intersection_failure(a5)
    assert meet.order == 3
    assert not p_subnormal(a5, meet)


def test_e49_s3_is_minimal_non_supersolvable(e49_s3):
    assert minimal_non_class(e49_s3, "U")
    flags = classify(e49_s3).class_flags()
    assert flags["wU"] and not flags["U"]
    orders = {node.order for node in build_lattice(e49_s3).nodes}
    assert {14, 21} <= orders


def test_schmidt_groups_outside_class_x(e25_z3, a4):
    assert is_schmidt(e25_z3)
    assert sylow_tower_supersolvable(e25_z3)
    assert not is_in_class_X(e25_z3)
    assert is_schmidt(a4)
    assert not classify(a4).supersolvable
    assert not is_in_class_X(a4)


def test_strict_containments_among_small_groups(e49_s3, e25_z3):
    flags = classify(e49_s3).class_flags()
    assert flags["wU"] and not flags["U"]
    flags = classify(e25_z3).class_flags()
    assert flags["D"] and not flags["X"]


def test_psl2_13_has_no_subgroup_of_prime_index():
    group = catalog.psl2(13)
    assert prime_index_subgroups(group, group.whole(), group.trivial()) == ()
    result = p_subnormal(group, sylow_subgroup(group, 13))
    assert not result
    assert result.descended == (group.whole(),)


@pytest.mark.slow
def test_center_of_sl2_13():
    started = time.perf_counter()
    group = catalog.sl2(13)
    assert group.order == 2184
    central = center(group)
    assert central.order == 2
    assert is_normal(group, central)
    assert not p_subnormal(group, central)
    psl = quotient(group, central)
    assert psl.order == 1092
    assert not p_subnormal(psl, psl.trivial())
    report = classify(group)
    assert not report.w_supersolvable and not report.class_x and not report.tower
    assert classify(group) is report
    assert time.perf_counter() - started < 600


@pytest.mark.slow
def test_order400_family():
    classes = search_order400_family()
    assert len(classes) == 3
    assert len({family_class.fingerprint for family_class in classes}) == 3
    for family_class in classes:
        for member in family_class.members:
            assert member.group.order == 400
            assert minimal_non_class(member.group, "U")
            assert member.report.class_x
            assert not member.report.w_supersolvable
            sylow_2 = sylow_subgroup(member.group, 2)
            assert sylow_2.order == COMPLEMENT_ORDER
            assert not is_abelian(member.group, within=sylow_2)
            blocked = non_p_subnormal_classes(member.group)
            assert [(handle.order, size) for handle, size in blocked] == [(COMPLEMENT_ORDER, 25)]
            assert not is_normal(member.group, blocked[0][0])
