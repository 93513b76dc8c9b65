from collections import Counter

import pytest
from sympy.combinatorics import Permutation as SympyPermutation, PermutationGroup

import catalog
from config import configure
from conftest import subgroup
from errors import CapExceeded, InvalidPermutation, NotASubgroup
from finite_group import FiniteGroup, coset_action, core_of, group_from_generators, is_member, is_normal, order
from permutation import parse_generator_list, parse_permutation


def test_orders_from_generators():
    assert order(group_from_generators(3, parse_generator_list("(1 2),(1 2 3)", 3))) == 6
    assert order(group_from_generators(5, parse_generator_list("(1 2 3 4 5),(1 2 3)", 5))) == 60
    assert order(group_from_generators(4, parse_generator_list("(1 2),(1 2 3 4)", 4))) == 24


def test_order_matches_sympy():
    generators = parse_generator_list("(1 2 3 4 5 6),(1 2)(3 5)", 6)
    group = FiniteGroup(6, generators)
    oracle = PermutationGroup([SympyPermutation(list(generator.images)) for generator in generators])
    assert group.order == oracle.order()


def test_membership(a4):
    assert not is_member(a4, parse_permutation("(1 2)", 4))
    assert is_member(a4, parse_permutation("(1 2)(3 4)", 4))
    with pytest.raises(InvalidPermutation):
        is_member(a4, parse_permutation("(1 2)", 5))


def test_generator_degree_mismatch():
    with pytest.raises(InvalidPermutation):
        FiniteGroup(4, [parse_permutation("(1 2)", 3)])


def test_element_cap():
    configure(cap_elements=10)
    with pytest.raises(CapExceeded):
        catalog.sym(4).order


def test_per_group_cap_overrides_settings():
    group = FiniteGroup(5, parse_generator_list("(1 2 3 4 5),(1 2)", 5), cap=100)
    with pytest.raises(CapExceeded):
        group.order


def test_words_replay_to_elements(s4):
    for position in range(s4.order):
        product = parse_permutation("()", 4)
        for generator in s4.word(position):
            product = product * s4.generators[generator]
        assert product == s4.element(position)


def test_element_orders(s4):
    assert Counter(s4.element_orders) == {1: 1, 2: 9, 3: 8, 4: 6}


def test_conjugacy_classes(s4):
    assert sorted(len(members) for members in s4.conjugacy_classes()) == [1, 3, 6, 6, 8]


def test_coset_action_of_point_stabilizer(a5):
    action = coset_action(a5, subgroup(a5, "(1 2 3),(1 2)(3 4)"))
    assert action.image.degree == 5
    assert action.image.order == 60
    assert action.kernel.is_trivial()


def test_coset_action_on_whole_group(s4):
    action = coset_action(s4, s4.whole())
    assert action.image.degree == 1
    assert action.image.order == 1
    assert action.kernel == s4.whole()


def test_coset_action_recovers_natural_action(s4):
    action = coset_action(s4, subgroup(s4, "(1 2),(1 2 3)"))
    assert action.image.degree == 4
    assert action.image.order == 24
    assert action.kernel.is_trivial()


def test_coset_action_preimage_contains_kernel(s4):
    v4 = subgroup(s4, "(1 2)(3 4),(1 3)(2 4)")
    action = coset_action(s4, v4)
    assert action.image.order == 6
    image = action.image_of(subgroup(s4, "(1 2 3)"))
    assert image.order == 3
    assert action.preimage(image).order == 12


def test_core(a5, s4):
    assert core_of(a5, subgroup(a5, "(1 2 3),(1 2)(3 4)")).is_trivial()
    v4 = subgroup(s4, "(1 2)(3 4),(1 3)(2 4)")
    assert core_of(s4, v4) == v4
    assert core_of(s4, subgroup(s4, "(1 2 3 4),(1 3)")) == v4


def test_is_normal(a4):
    assert is_normal(a4, subgroup(a4, "(1 2)(3 4),(1 3)(2 4)"))
    assert not is_normal(a4, subgroup(a4, "(1 2 3)"))


def test_subgroup_algebra(s4):
    first = subgroup(s4, "(1 2 3 4),(1 3)")
    second = subgroup(s4, "(1 2 4 3),(1 4)")
    assert first.order == second.order == 8
    assert first.intersection(second).order == 4
    assert first.join(second).is_whole()
    assert first.intersection(second) < first
    assert s4.trivial() <= first


def test_subgroup_from_bits_rejects_non_subgroups(s3):
    element = s3.element_orders.index(3)
    with pytest.raises(NotASubgroup):
        s3.subgroup_from_bits(1 | 1 << element)
    with pytest.raises(NotASubgroup):
        s3.subgroup_from_bits(1 << element)


def test_lift_between_groups_on_the_same_points(s4, a4):
    v4 = subgroup(a4, "(1 2)(3 4),(1 3)(2 4)")
    lifted = s4.lift(v4)
    assert lifted.ambient is s4
    assert lifted.order == 4
    assert lifted.as_group().order == 4


def test_extend_with_limit(s4):
    assert s4.extend(s4.trivial(), [s4.index_of(parse_permutation("(1 2 3 4)", 4))], limit=3) is None
