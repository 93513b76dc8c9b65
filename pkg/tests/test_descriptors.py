import pytest

from descriptors import GroupDescriptor, build, find_brackets, parse_descriptor
from errors import ParseError, UnknownBuiltin


@pytest.mark.parametrize("text, kind, name", [
    ("builtin:e49_s3", "named", "e49_s3"),
    ("sym:4", "family", "sym"),
    ("builtin:sym:4", "family", "sym"),
    ("elem_abelian:5,2", "family", "elem_abelian"),
    ("affine:5,2:[[0,4],[1,4]]", "affine", "affine"),
])
def test_parse_kinds(text, kind, name):
    descriptor = parse_descriptor(text)
    assert descriptor.kind == kind
    assert descriptor.name == name


@pytest.mark.parametrize("text", [
    "builtin:a5",
    "cyclic:12",
    "elem_abelian:2,3",
    "affine:3,2:[[0,2],[1,0]]",
    "gens:3:(1 2),(1 2 3)",
    "product:builtin:s3|cyclic:2",
])
def test_str_round_trip(text):
    assert str(parse_descriptor(text)) == text
    assert parse_descriptor(str(parse_descriptor(text))) == parse_descriptor(text)


def test_explicit_generators_are_normalized():
    descriptor = parse_descriptor("gens: 4 : (1,2), (4 3)")
    assert descriptor.degree == 4
    assert descriptor.generators == ("(1 2)", "(3 4)")
    assert str(descriptor) == "gens:4:(1 2),(3 4)"


def test_several_matrices():
    descriptor = parse_descriptor("affine:7,2:[[0,6],[1,6]];[[0,1],[1,0]]")
    assert descriptor.matrices == (((0, 6), (1, 6)), ((0, 1), (1, 0)))
    nested = parse_descriptor("affine:7,2:[[[0,6],[1,6]],[[0,1],[1,0]]]")
    assert nested.matrices == descriptor.matrices


def test_find_brackets():
    assert find_brackets("[[0,4],[1,4]];[[1,0],[0,1]]") == ["[[0,4],[1,4]]", "[[1,0],[0,1]]"]
    assert find_brackets("no brackets") == []


@pytest.mark.parametrize("text", [
    "",
    "sym",
    "sym:x",
    "sym:4,5",
    "elem_abelian:5",
    "affine:5:[[0,4],[1,4]]",
    "affine:5,2:[[0,4],[1,4]",
    "affine:5,2:[[0,4],[1,\"a\"]]",
    "gens:3:(1 4)",
    "gens:3",
    "file:",
    "product:builtin:s3",
    "unknown:3",
])
def test_malformed_descriptors(text):
    with pytest.raises(ParseError):
        parse_descriptor(text)


@pytest.mark.parametrize("text, order", [
    ("builtin:s4", 24),
    ("alt:5", 60),
    ("cyclic:12", 12),
    ("dihedral:10", 10),
    ("elem_abelian:3,2", 9),
    ("affine:5,2:[[0,4],[1,4]]", 75),
    ("gens:4:(1 2 3 4),(1 3)", 8),
    ("product:builtin:s3|cyclic:2", 12),
    ("product:cyclic:2|cyclic:3|cyclic:5", 30),
])
def test_build(text, order):
    assert build(text).order == order


def test_build_psl2_13():
    group = build("builtin:psl2_13")
    assert group.degree == 14
    assert group.order == 1092


def test_build_is_deterministic():
    first = build("builtin:e49_s3")
    second = build(GroupDescriptor("named", name="e49_s3"))
    assert first.generators == second.generators


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        build("builtin:monster")


def test_build_from_file(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text('{"degree": 3, "generators": ["(1 2)", "(1 2 3)"], "name": "S3"}', encoding="utf-8")
    group = build(f"file:{path}")
    assert group.order == 6
    assert group.name == "S3"
