import random

import pytest

import catalog
from config import configure
from finite_group import FiniteGroup
from fingerprint import fingerprint, histogram
from permutation import Permutation


def test_histogram():
    assert histogram([3, 1, 3, 2]) == ((1, 1), (2, 1), (3, 2))


def test_distinguishes_cyclic_from_elementary_abelian():
    assert fingerprint(catalog.cyclic(4)) != fingerprint(catalog.elem_abelian(2, 2))


def test_equal_for_isomorphic_groups():
    assert fingerprint(catalog.sym(3)) == fingerprint(catalog.dihedral(6))
    assert fingerprint(catalog.sym(3)) == fingerprint(catalog.named_group("s3"))


def test_fields(s4, q8):
    print_s4 = fingerprint(s4)
    assert print_s4.order == 24
    assert print_s4.center_order == 1
    assert print_s4.derived_orders == (24, 12, 4, 1)
    assert print_s4.subgroup_orders == ((1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1))
    assert print_s4.normal_subgroup_orders == ((1, 1), (4, 1), (12, 1), (24, 1))
    assert dict(print_s4.sylow_element_orders)[3] == ((1, 1), (3, 2))
    assert fingerprint(q8).center_order == 2


def test_d8_and_q8_differ():
    assert fingerprint(catalog.dihedral(8)) != fingerprint(catalog.q8())


def test_without_lattice():
    configure(cap_lattice_order=10)
    result = fingerprint(catalog.sym(4))
    assert result.subgroup_orders is None
    assert result.to_dict()["subgroup_orders"] is None
    assert result.to_dict()["element_orders"] == [[1, 1], [2, 9], [3, 8], [4, 6]]


def _relabelled(group: FiniteGroup, generator: random.Random) -> FiniteGroup:
    """The same group on shuffled points, with its generators reordered and one redundant generator added."""
    points = list(range(group.degree))
    generator.shuffle(points)
    relabel = Permutation(tuple(points))
    conjugated = [relabel.inverse() * element * relabel for element in reversed(group.generators)]
    if len(conjugated) > 1:
        conjugated.append(conjugated[0] * conjugated[1])
    return FiniteGroup(group.degree, conjugated)


@pytest.mark.parametrize("name", ["s4", "a4", "a5", "q8", "d8", "e25_z3", "e49_s3"])
def test_invariant_under_relabelling(name):
    group = catalog.named_group(name)
    expected = fingerprint(group)
    generator = random.Random(7)
    for _ in range(3):
        relabelled = _relabelled(group, generator)
        assert relabelled.order == group.order
        assert fingerprint(relabelled) == expected


def test_invariant_under_relabelling_dihedral():
    group = catalog.dihedral(12)
    relabelled = _relabelled(group, random.Random(11))
    assert fingerprint(relabelled) == fingerprint(group)
    assert fingerprint(relabelled) != fingerprint(catalog.cyclic(12))
