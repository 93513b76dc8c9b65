from json import JSONDecodeError, dumps, load
from typing import Optional

from errors import ParseError
from finite_group import FiniteGroup
from permutation import format_permutation, parse_permutation

GROUP_FILE_FIELDS = {"degree", "generators", "name"}


def group_from_json(data: dict, source: str = "<group file>") -> FiniteGroup:
    """
    Builds a group from the file format: {"degree": n, "generators": ["(1 2)", ...], "name": optional}.
    """
    if not isinstance(data, dict):
        raise ParseError(f"{source}: expected a JSON object")
    unknown = set(data) - GROUP_FILE_FIELDS
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {', '.join(sorted(unknown))}")
    degree = data.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise ParseError(f"{source}: degree must be an integer >= 1, got {degree!r}")
    generators = data.get("generators")
    if not isinstance(generators, list) or not generators or not all(isinstance(text, str) for text in generators):
        raise ParseError(f"{source}: generators must be a nonempty array of cycle-notation strings")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"{source}: name must be a string")
    return FiniteGroup(degree, [parse_permutation(text, degree) for text in generators], name)


def group_to_json(group: FiniteGroup) -> dict:
    data = {"degree": group.degree, "generators": [format_permutation(generator) for generator in group.generators]}
    if group.name is not None:
        data["name"] = group.name
    return data


def load_group(path: str) -> FiniteGroup:
    try:
        with open(path, encoding="utf-8") as file:
            data = load(file)
    except (JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: not valid UTF-8 JSON: {e}")
    return group_from_json(data, path)


def save_group(group: FiniteGroup, path: str, name: Optional[str] = None):
    """Writes the canonical form: two-space indentation, fields in file-format order, trailing newline."""
    data = group_to_json(group)
    if name is not None:
        data["name"] = name
    with open(path, "w", encoding="utf-8") as file:
        file.write(dumps(data, indent=2, ensure_ascii=False) + "\n")
