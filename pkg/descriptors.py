from dataclasses import dataclass
from json import JSONDecodeError, loads
from typing import Optional, Union

from regex import compile

import catalog
from errors import ParseError
from finite_group import FiniteGroup
from group_files import load_group
from permutation import parse_generator_list

# A balanced bracket literal, e.g. "[[0,4],[1,4]]"
bracket_pattern = compile(r"\[(?:[^\[\]]|(?R))*\]")

# "sym:4", "elem_abelian:5,2", "affine:5,2:[[0,4],[1,4]]", "builtin:e49_s3", "gens:3:(1 2),(1 2 3)"
descriptor_pattern = compile(r"^\s*(?P<kind>[a-z][a-z0-9_]*)\s*:\s*(?P<rest>.*?)\s*$")

integer_list_pattern = compile(r"^\d+(?:\s*,\s*\d+)*$")

FAMILIES = {
    "sym": (catalog.sym, 1),
    "alt": (catalog.alt, 1),
    "cyclic": (catalog.cyclic, 1),
    "dihedral": (catalog.dihedral, 1),
    "elem_abelian": (catalog.elem_abelian, 2),
    "sl2": (catalog.sl2, 1),
    "psl2": (catalog.psl2, 1),
}

Matrices = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class GroupDescriptor:
    """
    How to construct a group: a builtin (named fixture or parametrized family), explicit generators,
    a group file, or a direct product of other descriptors.
    """
    kind: str
    name: Optional[str] = None
    parameters: tuple[int, ...] = ()
    matrices: Matrices = ()
    degree: Optional[int] = None
    generators: tuple[str, ...] = ()
    path: Optional[str] = None
    factors: tuple["GroupDescriptor", ...] = ()

    def __str__(self):
        if self.kind == "named":
            return f"builtin:{self.name}"
        if self.kind == "family":
            return f"{self.name}:{','.join(map(str, self.parameters))}"
        if self.kind == "affine":
            matrices = ";".join(str([list(row) for row in matrix]).replace(" ", "") for matrix in self.matrices)
            return f"affine:{self.parameters[0]},{self.parameters[1]}:{matrices}"
        if self.kind == "explicit":
            return f"gens:{self.degree}:{','.join(self.generators)}"
        if self.kind == "file":
            return f"file:{self.path}"
        return "product:" + "|".join(str(factor) for factor in self.factors)


def find_brackets(text: str) -> list[str]:
    """
    Finds the top-level bracket literals in the given text.
    :return: Each balanced "[...]" group, in order.
    """
    return [match.group(0) for match in bracket_pattern.finditer(text)]


def _parse_matrices(text: str) -> Matrices:
    literals = find_brackets(text)
    leftover = bracket_pattern.sub("", text).replace(";", "").strip()
    if not literals or leftover:
        raise ParseError(f"Malformed matrix list: {text!r}")
    matrices = []
    for literal in literals:
        try:
            value = loads(literal)
        except JSONDecodeError as e:
            raise ParseError(f"Malformed matrix literal {literal!r}: {e}")
        # One matrix is a list of rows; several may be given as one list of matrices
        candidates = value if value and isinstance(value[0], list) and value[0] and isinstance(value[0][0], list) \
            else [value]
        for candidate in candidates:
            if not isinstance(candidate, list) or not all(isinstance(row, list) and
                                                          all(isinstance(entry, int) for entry in row)
                                                          for row in candidate):
                raise ParseError(f"Matrix {candidate!r} must be a list of integer rows")
            matrices.append(tuple(tuple(row) for row in candidate))
    return tuple(matrices)


def _parse_integers(text: str) -> tuple[int, ...]:
    if not integer_list_pattern.match(text):
        raise ParseError(f"Expected comma-separated integers, got {text!r}")
    return tuple(int(token) for token in text.split(","))


def parse_descriptor(text: str) -> GroupDescriptor:
    match = descriptor_pattern.match(text)
    if not match:
        raise ParseError(f"Malformed group descriptor: {text!r}")
    kind, rest = match.group("kind"), match.group("rest")
    if kind == "builtin":
        if ":" in rest:
            # "builtin:sym:4" is accepted as a spelling of "sym:4"
            return parse_descriptor(rest)
        return GroupDescriptor("named", name=rest)
    if kind in FAMILIES:
        parameters = _parse_integers(rest)
        if len(parameters) != FAMILIES[kind][1]:
            raise ParseError(f"{kind} takes {FAMILIES[kind][1]} parameter(s), got {len(parameters)}")
        return GroupDescriptor("family", name=kind, parameters=parameters)
    if kind == "affine":
        head, _, matrices = rest.partition(":")
        parameters = _parse_integers(head.strip())
        if len(parameters) != 2:
            raise ParseError(f"affine takes a prime and a dimension, got {head!r}")
        return GroupDescriptor("affine", name=kind, parameters=parameters, matrices=_parse_matrices(matrices))
    if kind == "gens":
        head, _, generators = rest.partition(":")
        degree = _parse_integers(head.strip())
        if len(degree) != 1:
            raise ParseError(f"gens takes one degree, got {head!r}")
        # Validate eagerly so malformed descriptors fail at parse time
        permutations = parse_generator_list(generators, degree[0])
        return GroupDescriptor("explicit", degree=degree[0], generators=tuple(map(str, permutations)))
    if kind == "file":
        if not rest:
            raise ParseError("file descriptor needs a path")
        return GroupDescriptor("file", path=rest)
    if kind == "product":
        parts = [part for part in rest.split("|") if part.strip()]
        if len(parts) < 2:
            raise ParseError(f"product needs at least two factors separated by '|', got {rest!r}")
        return GroupDescriptor("product", factors=tuple(parse_descriptor(part) for part in parts))
    raise ParseError(f"Unknown descriptor kind {kind!r} in {text!r}")


def build(descriptor: Union[GroupDescriptor, str]) -> FiniteGroup:
    """
    Constructs the group a descriptor names. Construction is deterministic.
    """
    if isinstance(descriptor, str):
        descriptor = parse_descriptor(descriptor)
    if descriptor.kind == "named":
        return catalog.named_group(descriptor.name)
    if descriptor.kind == "family":
        constructor, _ = FAMILIES[descriptor.name]
        return constructor(*descriptor.parameters)
    if descriptor.kind == "affine":
        return catalog.affine(descriptor.parameters[0], descriptor.parameters[1], descriptor.matrices,
                              name=str(descriptor))
    if descriptor.kind == "explicit":
        return FiniteGroup(descriptor.degree, parse_generator_list(",".join(descriptor.generators), descriptor.degree),
                           str(descriptor))
    if descriptor.kind == "file":
        return load_group(descriptor.path)
    return catalog.direct_product(*(build(factor) for factor in descriptor.factors), name=str(descriptor))
