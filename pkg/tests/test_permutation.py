import pytest

from errors import InvalidPermutation, ParseError
from permutation import Permutation, format_permutation, parse_generator_list, parse_permutation


def test_parse_cycles():
    permutation = parse_permutation("(1 2 3)(4 5)", 5)
    assert [image + 1 for image in permutation.images] == [2, 3, 1, 5, 4]
    assert permutation.order() == 6


def test_parse_identity():
    assert parse_permutation("()", 4) == Permutation.identity(4)
    assert parse_permutation("()", 4).is_identity()


def test_parse_accepts_commas_inside_cycles():
    assert parse_permutation("(1,2,3)", 3) == parse_permutation("(1 2 3)", 3)


@pytest.mark.parametrize("text", ["(1 2 7)", "(1 2 1)", "1 2 3", "(1 2", "(0 1)", ""])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_permutation(text, 5)


def test_format_round_trip():
    for text in ["(1 2 3)(4 5)", "(1 5)", "()", "(1 2 3 4 5)"]:
        assert format_permutation(parse_permutation(text, 5)) == text


def test_product_acts_left_to_right():
    first = parse_permutation("(1 2)", 3)
    second = parse_permutation("(2 3)", 3)
    assert str(first * second) == "(1 3 2)"
    assert str(second * first) == "(1 2 3)"
    assert (first * first.inverse()).is_identity()


def test_product_degree_mismatch():
    with pytest.raises(InvalidPermutation):
        Permutation.identity(3) * Permutation.identity(4)


def test_images_must_be_a_bijection():
    with pytest.raises(InvalidPermutation):
        Permutation((0, 0, 1))


def test_generator_list():
    generators = parse_generator_list("(1 2 3),(1 2)(4 5)", 5)
    assert [str(generator) for generator in generators] == ["(1 2 3)", "(1 2)(4 5)"]
    with pytest.raises(ParseError):
        parse_generator_list("  ", 5)
