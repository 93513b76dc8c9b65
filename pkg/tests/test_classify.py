import pytest

import catalog
from classify import (ascend_closure, classify, is_in_class_X, is_supersolvable, is_w_supersolvable,
                      non_p_subnormal_classes, p_subnormal, prime_index_covers, prime_index_subgroups,
                      structural_flags, sylow_tower_supersolvable)
from conftest import subgroup
from errors import NotASubgroup
from subgroup_lattice import build_lattice


def test_point_stabilizer_is_p_subnormal(a5):
    result = p_subnormal(a5, subgroup(a5, "(1 2 3),(1 2)(3 4)"))
    assert result
    assert result.indices == (5,)
    assert result.validate()


def test_three_cycle_is_not_p_subnormal_in_a4(a4):
    three_cycle = subgroup(a4, "(1 2 3)")
    result = p_subnormal(a4, three_cycle)
    assert not result
    assert result.subgroup == three_cycle
    assert result.reachable == (three_cycle,)
    assert result.descended == (a4.whole(),)


def test_whole_group_has_empty_chain(s4):
    result = p_subnormal(s4, s4.whole())
    assert result.chain == (s4.whole(),)
    assert result.indices == ()


def test_shortest_chain_in_s4(s4):
    result = p_subnormal(s4, subgroup(s4, "(1 2 3 4)"))
    assert [node.order for node in result.chain] == [4, 8, 24]
    assert result.indices == (2, 3)


def test_normal_subgroup_goes_through_the_quotient(s4):
    v4 = subgroup(s4, "(1 2)(3 4),(1 3)(2 4)")
    result = p_subnormal(s4, v4)
    assert result.chain[0] == v4
    assert sorted(result.indices) == [2, 3]
    assert result.validate()


def test_trivial_subgroup(s4, a5):
    assert sorted(p_subnormal(s4, s4.trivial()).indices) == [2, 2, 2, 3]
    # 1 < Z2 < V4 < A4 < A5
    assert sorted(p_subnormal(a5, a5.trivial()).indices) == [2, 2, 3, 5]
    assert not p_subnormal(a5, subgroup(a5, "(1 2 3)"))


def test_p_subnormal_rejects_foreign_subgroups(s4, a4):
    with pytest.raises(NotASubgroup):
        p_subnormal(s4, subgroup(a4, "(1 2 3)"))


def test_prime_index_covers(s4):
    covers = prime_index_covers(s4, subgroup(s4, "(1 2 3)"))
    assert [cover.order for cover in covers] == [6]
    assert prime_index_covers(s4, s4.whole()) == ()


def test_prime_index_subgroups(s4, a5):
    below = prime_index_subgroups(s4, s4.whole(), s4.trivial())
    assert [node.order for node in below] == [8, 8, 8, 12]
    assert [node.order for node in prime_index_subgroups(a5, a5.whole(), a5.trivial())] == [12] * 5
    four_cycle = subgroup(s4, "(1 2 3 4)")
    assert [node.order for node in prime_index_subgroups(s4, s4.whole(), four_cycle)] == [8]
    assert prime_index_subgroups(s4, four_cycle, four_cycle) == ()


def test_descent_agrees_with_the_upward_closure(s4, a5):
    for group in (s4, a5):
        for node in build_lattice(group).nodes:
            result = p_subnormal(group, node)
            assert bool(result) == any(reached.is_whole() for reached in ascend_closure(group, node))
            assert not result or result.validate()


def test_classify_is_memoised(s3):
    assert classify(s3) is classify(s3)


def test_non_p_subnormal_classes(a4, s4):
    assert [(handle.order, size) for handle, size in non_p_subnormal_classes(a4)] == [(3, 4)]
    assert [(handle.order, size) for handle, size in non_p_subnormal_classes(s4)] == [(3, 4), (6, 4)]
    assert non_p_subnormal_classes(catalog.dihedral(12)) == []


def test_supersolvability(s3, a4, e49_s3):
    certificate = is_supersolvable(s3)
    assert certificate
    assert set(certificate.indices) == {2, 3}
    certificate = is_supersolvable(a4)
    assert not certificate
    assert certificate.offending.order == 3
    assert not is_supersolvable(e49_s3)


def test_structural_flags(a5, s4):
    assert structural_flags(a5).to_dict() == {"solvable": False, "nilpotent": False, "biprimary": False,
                                              "perfect": True}
    assert structural_flags(catalog.cyclic(12)).to_dict() == {"solvable": True, "nilpotent": True, "biprimary": True,
                                                              "perfect": False}
    flags = structural_flags(s4)
    assert flags.solvable and flags.biprimary and not flags.nilpotent


def test_sylow_tower(e25_z3, a5):
    tower = sylow_tower_supersolvable(e25_z3)
    assert [member.order for member in tower.series] == [1, 25, 75]
    assert tower.primes == (5, 3)
    assert tower.factor_orders == (25, 3)
    failure = sylow_tower_supersolvable(a5)
    assert not failure
    assert failure.prime == 5
    assert failure.sylow.order == 5
    d8 = catalog.dihedral(8)
    assert [member.order for member in sylow_tower_supersolvable(d8).series] == [1, 8]


def test_w_supersolvable(e49_s3, e25_z3):
    check = is_w_supersolvable(e49_s3)
    assert check
    assert all(witness.validate() for _, witness in check.witnesses)
    failed = is_w_supersolvable(e25_z3)
    assert not failed
    assert failed.obstruction.subgroup.order == 3


def test_class_x(e25_z3, s4, q8):
    assert not is_in_class_X(e25_z3)
    check = is_in_class_X(s4)
    assert not check
    assert check.obstruction.subgroup.order == 3
    assert is_in_class_X(q8)


def test_classify_e49_s3(e49_s3):
    report = classify(e49_s3)
    assert report.class_flags() == {"U": False, "wU": True, "X": True, "D": True, "solvable": True,
                                    "nilpotent": False}
    assert set(report.counterexamples) == {"U"}
    assert report.implications_hold()


def test_classify_a5(a5):
    report = classify(a5)
    assert not any(report.class_flags().values())
    assert report.counterexamples["U"].is_whole()
    assert report.counterexamples["D"].order == 5
    assert report.supersolvability is None


@pytest.mark.parametrize("builder", [lambda: catalog.sym(3), lambda: catalog.alt(4), lambda: catalog.q8(),
                                     lambda: catalog.dihedral(12), lambda: catalog.cyclic(30), catalog.e25_z3])
def test_class_implications(builder):
    report = classify(builder())
    assert report.implications_hold()
