from collections import Counter

import pytest

import catalog
from errors import InvalidParameter, NotInvertible, UnknownBuiltin
from finite_field import (as_matrix, general_linear, generated_matrices, inverse, is_irreducible, matrix_order,
                          multiply, projective_points)


@pytest.mark.parametrize("builtin, parameter", [("sym", 4), ("sym", 5), ("alt", 4), ("alt", 5), ("sl2", 3),
                                                ("sl2", 5), ("psl2", 5), ("psl2", 7)])
def test_family_orders_match_theory(builtin, parameter):
    group = getattr(catalog, builtin)(parameter)
    assert group.order == catalog.expected_order(builtin, parameter)


def test_expected_order():
    assert catalog.expected_order("sl2", 13) == 2184
    assert catalog.expected_order("psl2", 13) == 1092
    assert catalog.expected_order("alt", 1) == 1
    with pytest.raises(UnknownBuiltin):
        catalog.expected_order("cyclic", 3)


def test_small_families():
    assert catalog.sym(1).order == 1
    assert catalog.alt(2).order == 1
    assert catalog.cyclic(1).order == 1
    assert catalog.dihedral(6).order == 6
    assert catalog.elem_abelian(2, 3).order == 8
    assert catalog.direct_product(catalog.sym(3), catalog.cyclic(2)).order == 12


@pytest.mark.parametrize("constructor, arguments", [
    (catalog.dihedral, (5,)),
    (catalog.dihedral, (4,)),
    (catalog.elem_abelian, (4, 2)),
    (catalog.cyclic, (0,)),
    (catalog.sl2, (9,)),
])
def test_invalid_parameters(constructor, arguments):
    with pytest.raises(InvalidParameter):
        constructor(*arguments)


def test_fixtures(e25_z3, e49_s3, q8):
    assert e25_z3.order == 75
    assert e25_z3.degree == 25
    assert e49_s3.order == 294
    assert Counter(q8.element_orders) == {1: 1, 2: 1, 4: 6}


def test_named_groups():
    assert catalog.named_group("S4").order == 24
    assert catalog.named_group("d8").order == 8
    with pytest.raises(UnknownBuiltin):
        catalog.named_group("m11")


def test_irreducible_s3():
    a, b = catalog.find_irreducible_s3(7)
    assert matrix_order(a, 7) == 3
    assert matrix_order(b, 7) == 2
    assert multiply(multiply(b, a, 7), b, 7) == inverse(a, 7)
    assert is_irreducible([a, b], 7)
    assert catalog.find_irreducible_s3(7) == (a, b)


def test_affine_rejects_bad_matrices():
    with pytest.raises(NotInvertible):
        catalog.affine(5, 2, [((1, 2), (2, 4))])
    with pytest.raises(InvalidParameter):
        catalog.affine(5, 2, [((1,),)])
    with pytest.raises(InvalidParameter):
        catalog.affine(5, 2, [((5, 0), (0, 1))])


def test_matrix_arithmetic():
    companion = ((0, 4), (1, 4))
    assert matrix_order(companion, 5) == 3
    assert inverse(((1, 1), (0, 1)), 5) == ((1, 4), (0, 1))
    with pytest.raises(NotInvertible):
        inverse(((1, 2), (2, 4)), 5)
    with pytest.raises(NotInvertible):
        matrix_order(((0, 0), (0, 0)), 5)


def test_as_matrix():
    assert as_matrix([[1, 0], [0, 1]], 3) == ((1, 0), (0, 1))
    with pytest.raises(InvalidParameter):
        as_matrix([[1, 0, 0], [0, 1]], 3)
    with pytest.raises(InvalidParameter):
        as_matrix([[1]], 4)


def test_general_linear():
    assert len(general_linear(2)) == 6
    assert len(general_linear(3)) == 48
    assert len(general_linear(5)) == 480


def test_generated_matrices():
    assert len(generated_matrices([((0, 4), (1, 4))], 5)) == 3
    assert generated_matrices([((0, 4), (1, 4))], 5, limit=2) is None


def test_irreducibility():
    assert is_irreducible([((0, 4), (1, 4))], 5)
    assert not is_irreducible([((1, 1), (0, 1))], 5)
    assert len(projective_points(5)) == 6
    with pytest.raises(InvalidParameter):
        is_irreducible([((1, 0, 0), (0, 1, 0), (0, 0, 1))], 5)
