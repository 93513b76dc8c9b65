from dataclasses import dataclass
from math import lcm

from regex import compile

from errors import ParseError, InvalidPermutation

# Whole-string shape of disjoint-cycle notation: "()" or one or more "(a b c)" groups
cycle_notation_pattern = compile(r"^\s*(?:\(\s*\)|(?:\(\s*\d+(?:\s*,?\s*\d+)*\s*\)\s*)+)\s*$")

# A single cycle, e.g. "(1 2 3)" or "(1,2,3)"
cycle_pattern = compile(r"\(\s*([\d\s,]*?)\s*\)")

# Top-level separator of a generator list: the comma between ")" and "("
generator_separator_pattern = compile(r"(?<=\))\s*,\s*(?=\()")


def compose_images(first: tuple[int, ...], second: tuple[int, ...]) -> tuple[int, ...]:
    """Apply `first`, then `second`."""
    return tuple(map(second.__getitem__, first))


def invert_images(images: tuple[int, ...]) -> tuple[int, ...]:
    inverse = [0] * len(images)
    for point, image in enumerate(images):
        inverse[image] = point
    return tuple(inverse)


def images_order(images: tuple[int, ...]) -> int:
    """Order of a permutation given by its images: the lcm of its cycle lengths."""
    seen = [False] * len(images)
    lengths = []
    for start in range(len(images)):
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            point = images[point]
            length += 1
        if length > 1:
            lengths.append(length)
    return lcm(*lengths)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., degree - 1}, acting on the right."""
    images: tuple[int, ...]

    def __post_init__(self):
        if not self.images:
            raise InvalidPermutation("A permutation needs at least one point")
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidPermutation(f"Images {self.images} are not a bijection")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise InvalidPermutation(f"Cannot compose degree {self.degree} with degree {other.degree}")
        return Permutation(compose_images(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(invert_images(self.images))

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles with 0-based points, each starting at its smallest point."""
        seen = [False] * self.degree
        cycles = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            if len(cycle) > 1:
                cycles.append(tuple(cycle))
        return cycles

    def order(self) -> int:
        return images_order(self.images)

    def __str__(self):
        return format_permutation(self)


def format_permutation(permutation: Permutation) -> str:
    """
    Formats a permutation in 1-based disjoint-cycle notation.
    :param permutation: The permutation to format.
    :return: e.g. "(1 2 3)(4 5)", or "()" for the identity.
    """
    cycles = permutation.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(point + 1) for point in cycle) + ")" for cycle in cycles)


def parse_permutation(text: str, degree: int) -> Permutation:
    """
    Parses 1-based disjoint-cycle notation.
    :param text: The cycle notation, e.g. "(1 2 3)(4 5)". The identity is "()".
    :param degree: The number of points the permutation acts on.
    :return: The parsed permutation.
    """
    if degree < 1:
        raise ParseError(f"Degree must be positive, got {degree}")
    if not cycle_notation_pattern.match(text):
        raise ParseError(f"Malformed cycle notation: {text!r}")
    images = list(range(degree))
    used = set()
    for match in cycle_pattern.finditer(text):
        points = [int(token) for token in match.group(1).replace(",", " ").split()]
        for point in points:
            if point < 1 or point > degree:
                raise ParseError(f"Point {point} is outside 1..{degree} in {text!r}")
            if point in used:
                raise ParseError(f"Point {point} repeated in {text!r}")
            used.add(point)
        for position, point in enumerate(points):
            images[point - 1] = points[(position + 1) % len(points)] - 1
    return Permutation(tuple(images))


def parse_generator_list(text: str, degree: int) -> list[Permutation]:
    """
    Parses a comma-separated list of permutations, e.g. "(1 2 3),(1 2)(4 5)".
    """
    parts = [part for part in generator_separator_pattern.split(text.strip()) if part.strip()]
    if not parts:
        raise ParseError("Empty generator list")
    return [parse_permutation(part, degree) for part in parts]
