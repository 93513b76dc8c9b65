import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from sympy import primefactors

from config import settings
from errors import CapExceeded, InvalidPermutation, NotASubgroup
from permutation import Permutation, compose_images, invert_images, images_order, format_permutation

_FLAG_DIGITS = bytes.maketrans(b"\x00\x01", b"01")


def bits_from_flags(flags: bytearray) -> int:
    """Packs a 0/1 bytearray (one byte per element) into an integer bitset."""
    if not flags:
        return 0
    return int(bytes(flags[::-1]).translate(_FLAG_DIGITS), 2)


def bits_from_indices(indices: Iterable[int]) -> int:
    bits = 0
    for index in indices:
        bits |= 1 << index
    return bits


def indices_from_bits(bits: int) -> list[int]:
    digits = bin(bits)[:1:-1]
    return [position for position, digit in enumerate(digits) if digit == "1"]


@dataclass(frozen=True)
class ElementTable:
    elements: tuple[tuple[int, ...], ...]
    index: dict[tuple[int, ...], int]
    # Breadth-first provenance: element i = element parents[i] * generator via[i]
    parents: tuple[int, ...]
    via: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def word(self, position: int) -> list[int]:
        """
        The generator word that reached an element during enumeration.
        :return: Generator positions, applied left to right; empty for the identity.
        """
        word = []
        while position > 0:
            word.append(self.via[position])
            position = self.parents[position]
        return word[::-1]


class FiniteGroup:
    """
    A permutation group given by generators. The element table is enumerated lazily,
    breadth-first from the identity, multiplying by the generators in their given order.
    """

    def __init__(self, degree: int, generators: list[Permutation], name: Optional[str] = None,
                 cap: Optional[int] = None):
        if degree < 1:
            raise InvalidPermutation(f"Degree must be positive, got {degree}")
        if not generators:
            raise InvalidPermutation("A group needs at least one generator")
        for generator in generators:
            if not isinstance(generator, Permutation) or generator.degree != degree:
                raise InvalidPermutation(f"Generator {generator} does not have degree {degree}")
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        # Element cap for this group only; defaults to the configured cap
        self.cap = cap
        self._lock = threading.RLock()
        self._table: Optional[ElementTable] = None
        self._inverses: Optional[tuple[int, ...]] = None
        self._element_orders: Optional[tuple[int, ...]] = None
        self._conjugation_maps: dict[int, tuple[int, ...]] = {}

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, degree={self.degree})"

    @property
    def label(self) -> str:
        return self.name or f"group of degree {self.degree}"

    @property
    def table(self) -> ElementTable:
        with self._lock:
            if self._table is None:
                self._table = self._enumerate()
            return self._table

    def _enumerate(self) -> ElementTable:
        cap = self.cap or settings.cap_elements
        identity = tuple(range(self.degree))
        elements = [identity]
        index = {identity: 0}
        parents = [-1]
        via = [-1]
        generator_images = [generator.images for generator in self.generators]
        position = 0
        while position < len(elements):
            current = elements[position]
            for generator_position, images in enumerate(generator_images):
                product = compose_images(current, images)
                if product in index:
                    continue
                if len(elements) >= cap:
                    raise CapExceeded(f"Order of {self.label}", cap)
                index[product] = len(elements)
                elements.append(product)
                parents.append(position)
                via.append(generator_position)
            position += 1
        logging.debug(f"Enumerated {len(elements)} elements of {self.label}")
        return ElementTable(tuple(elements), index, tuple(parents), tuple(via))

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(primefactors(self.order))

    def element(self, position: int) -> Permutation:
        return Permutation(self.table.elements[position])

    def index_of(self, permutation: Permutation) -> int:
        if permutation.degree != self.degree:
            raise InvalidPermutation(f"{permutation} has degree {permutation.degree}, expected {self.degree}")
        position = self.table.index.get(permutation.images)
        if position is None:
            raise NotASubgroup(f"{permutation} is not an element of {self.label}")
        return position

    def is_member(self, permutation: Permutation) -> bool:
        if permutation.degree != self.degree:
            raise InvalidPermutation(f"{permutation} has degree {permutation.degree}, expected {self.degree}")
        return permutation.images in self.table.index

    def word(self, position: int) -> list[int]:
        return self.table.word(position)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(dict.fromkeys(self.table.index[generator.images] for generator in self.generators))

    def multiply(self, left: int, right: int) -> int:
        table = self.table
        return table.index[compose_images(table.elements[left], table.elements[right])]

    def inverse(self, position: int) -> int:
        with self._lock:
            if self._inverses is None:
                table = self.table
                self._inverses = tuple(table.index[invert_images(element)] for element in table.elements)
        return self._inverses[position]

    def conjugate(self, position: int, by: int) -> int:
        """by^-1 * x * by"""
        return self.multiply(self.multiply(self.inverse(by), position), by)

    def power(self, position: int, exponent: int) -> int:
        result = 0
        while exponent:
            if exponent & 1:
                result = self.multiply(result, position)
            position = self.multiply(position, position)
            exponent >>= 1
        return result

    def commutator(self, left: int, right: int) -> int:
        """[a, b] = a^-1 b^-1 a b"""
        return self.multiply(self.multiply(self.inverse(left), self.inverse(right)), self.multiply(left, right))

    @property
    def element_orders(self) -> tuple[int, ...]:
        with self._lock:
            if self._element_orders is None:
                self._element_orders = tuple(images_order(element) for element in self.table.elements)
            return self._element_orders

    def conjugation_map(self, by: int) -> tuple[int, ...]:
        """Images of every element under conjugation by one element."""
        with self._lock:
            mapping = self._conjugation_maps.get(by)
            if mapping is None:
                mapping = tuple(self.conjugate(position, by) for position in range(self.order))
                self._conjugation_maps[by] = mapping
            return mapping

    def conjugate_bits(self, bits: int, by: int) -> int:
        if by in self._conjugation_maps:
            mapping = self._conjugation_maps[by]
            return bits_from_indices(mapping[position] for position in indices_from_bits(bits))
        return bits_from_indices(self.conjugate(position, by) for position in indices_from_bits(bits))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Element conjugacy classes, each sorted, listed by smallest member."""
        maps = [self.conjugation_map(generator) for generator in self.generator_indices]
        seen = bytearray(self.order)
        classes = []
        for start in range(self.order):
            if seen[start]:
                continue
            seen[start] = 1
            orbit = [start]
            for position in orbit:
                for mapping in maps:
                    image = mapping[position]
                    if not seen[image]:
                        seen[image] = 1
                        orbit.append(image)
            classes.append(tuple(sorted(orbit)))
        return classes

    def whole(self) -> "SubgroupHandle":
        return SubgroupHandle(self, (1 << self.order) - 1, self.generator_indices)

    def trivial(self) -> "SubgroupHandle":
        return SubgroupHandle(self, 1, ())

    def extend(self, base: "SubgroupHandle", new_generators: Iterable[int],
               limit: Optional[int] = None) -> Optional["SubgroupHandle"]:
        """
        Generates <base, new_generators> as a union of right cosets of `base`.
        :param base: A subgroup of this group.
        :param new_generators: Element indices to adjoin.
        :param limit: Give up (returning None) once the result is known to exceed this order.
        :return: The generated subgroup, or None when `limit` was exceeded.
        """
        added = []
        for generator in new_generators:
            if not base.bits >> generator & 1 and generator not in added:
                added.append(generator)
        if not added:
            return base
        table = self.table
        elements, lookup = table.elements, table.index
        order = len(elements)
        # Lagrange: a subset bigger than |G| / (smallest prime) can only close to G
        cutoff = order // self.prime_divisors[0]
        base_members = base.indices
        members = bytearray(order)
        for position in base_members:
            members[position] = 1
        size = len(base_members)
        generator_images = [elements[generator] for generator in base.generators + tuple(added)]
        representatives = [elements[0]]
        for representative in representatives:
            for generator in generator_images:
                candidate = compose_images(representative, generator)
                if members[lookup[candidate]]:
                    continue
                for position in base_members:
                    members[lookup[compose_images(elements[position], candidate)]] = 1
                size += len(base_members)
                representatives.append(candidate)
                if limit is not None and size > limit:
                    return None
                if size > cutoff:
                    return self.whole()
        return SubgroupHandle(self, bits_from_flags(members), base.generators + tuple(added))

    def subgroup(self, generators: Iterable[int]) -> "SubgroupHandle":
        return self.extend(self.trivial(), generators)

    def subgroup_from_permutations(self, permutations: Iterable[Permutation]) -> "SubgroupHandle":
        return self.subgroup([self.index_of(permutation) for permutation in permutations])

    def subgroup_from_bits(self, bits: int) -> "SubgroupHandle":
        """
        Recovers a generating set for a member bitset, picking generators greedily in index order.
        Raises NotASubgroup when the bitset is not closed.
        """
        if not bits & 1:
            raise NotASubgroup("Member set does not contain the identity")
        if bits.bit_length() > self.order:
            raise NotASubgroup("Member set reaches outside the ambient group")
        target = bits.bit_count()
        handle = self.trivial()
        for position in indices_from_bits(bits):
            if handle.order == target:
                break
            if handle.bits >> position & 1:
                continue
            handle = self.extend(handle, [position])
            if handle.bits & ~bits:
                raise NotASubgroup("Member set is not closed under multiplication")
        return handle

    def lift(self, handle: "SubgroupHandle") -> "SubgroupHandle":
        """Maps a subgroup of another group on the same points into this group."""
        return self.subgroup_from_permutations(handle.generator_permutations())


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    ambient: FiniteGroup
    bits: int
    generators: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, SubgroupHandle):
            return False
        return self.ambient is other.ambient and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.ambient), self.bits))

    def __le__(self, other: "SubgroupHandle") -> bool:
        return self.ambient is other.ambient and not self.bits & ~other.bits

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self <= other and self.bits != other.bits

    def __contains__(self, position: int) -> bool:
        return bool(self.bits >> position & 1)

    def __repr__(self):
        return f"SubgroupHandle(order={self.order}, generators={self.describe()})"

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return tuple(indices_from_bits(self.bits))

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_whole(self) -> bool:
        return self.order == self.ambient.order

    def index_in(self, other: "SubgroupHandle") -> int:
        return other.order // self.order

    def intersection(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return self.ambient.subgroup_from_bits(self.bits & other.bits)

    def join(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return self.ambient.extend(self, other.generators)

    def conjugate(self, by: int) -> "SubgroupHandle":
        return self.ambient.subgroup_from_bits(self.ambient.conjugate_bits(self.bits, by))

    def generator_permutations(self) -> list[Permutation]:
        return [self.ambient.element(generator) for generator in self.generators]

    def describe(self) -> list[str]:
        """Generators in cycle notation."""
        return [format_permutation(permutation) for permutation in self.generator_permutations()]

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """This subgroup as a group in its own right, on the same points."""
        generators = self.generator_permutations() or [Permutation.identity(self.ambient.degree)]
        return FiniteGroup(self.ambient.degree, generators, name)

    def element_orders(self) -> list[int]:
        orders = self.ambient.element_orders
        return [orders[position] for position in self.indices]


@dataclass(frozen=True)
class CosetActionResult:
    ambient: FiniteGroup
    subgroup: SubgroupHandle
    image: FiniteGroup
    kernel: SubgroupHandle
    representatives: tuple[int, ...]
    coset_of: tuple[int, ...]

    def project(self, position: int) -> Permutation:
        """The permutation induced on the cosets by one ambient element."""
        multiply = self.ambient.multiply
        return Permutation(tuple(self.coset_of[multiply(representative, position)]
                                 for representative in self.representatives))

    @cached_property
    def image_positions(self) -> tuple[int, ...]:
        """Image of every ambient element, replayed along its generator word."""
        table = self.ambient.table
        image = self.image
        # image.generators[k] is the action of ambient.generators[k]
        generator_images = [image.table.index[generator.images] for generator in image.generators]
        positions = [0] * len(table)
        for position in range(1, len(table)):
            positions[position] = image.multiply(positions[table.parents[position]], generator_images[table.via[position]])
        return tuple(positions)

    @cached_property
    def lifts(self) -> dict[int, int]:
        """One ambient preimage per image element."""
        lifts = {}
        for position, image_position in enumerate(self.image_positions):
            lifts.setdefault(image_position, position)
        return lifts

    def image_of(self, handle: SubgroupHandle) -> SubgroupHandle:
        return self.image.subgroup(self.image_positions[generator] for generator in handle.generators)

    def preimage(self, handle: SubgroupHandle) -> SubgroupHandle:
        """The full preimage of a subgroup of the image; it contains the kernel."""
        return self.ambient.extend(self.kernel, [self.lifts[generator] for generator in handle.generators])


def group_from_generators(degree: int, generators: list[Permutation], name: Optional[str] = None) -> FiniteGroup:
    return FiniteGroup(degree, generators, name)


def order(group: FiniteGroup) -> int:
    return group.order


def is_member(group: FiniteGroup, permutation: Permutation) -> bool:
    return group.is_member(permutation)


def check_subgroup(group: FiniteGroup, handle: SubgroupHandle):
    if handle.ambient is not group:
        raise NotASubgroup(f"Subgroup belongs to {handle.ambient.label}, not {group.label}")


def is_normal(group: FiniteGroup, handle: SubgroupHandle, within: Optional[SubgroupHandle] = None) -> bool:
    """
    Whether `handle` is normalized by `within` (default: the whole group).
    """
    check_subgroup(group, handle)
    within = within or group.whole()
    return all(group.conjugate(generator, by) in handle
               for by in within.generators for generator in handle.generators)


def core_of(group: FiniteGroup, handle: SubgroupHandle) -> SubgroupHandle:
    """
    The largest normal subgroup of `group` inside `handle`: the intersection of its conjugates.
    """
    check_subgroup(group, handle)
    orbit = conjugate_orbit(group, handle.bits)
    core = handle.bits
    for bits in orbit:
        core &= bits
    return group.subgroup_from_bits(core)


def conjugate_orbit(group: FiniteGroup, bits: int) -> list[int]:
    """Member bitsets of all conjugates of a subgroup, in discovery order."""
    orbit = [bits]
    seen = {bits}
    for current in orbit:
        for generator in group.generator_indices:
            image = group.conjugate_bits(current, generator)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return orbit


def coset_action(group: FiniteGroup, handle: SubgroupHandle) -> CosetActionResult:
    """
    The action of `group` on the right cosets of `handle`.
    :return: The image on |G : H| points, the kernel (the core of H) and the coset data.
    """
    check_subgroup(group, handle)
    if handle.bits & ~group.whole().bits or not handle.bits & 1:
        raise NotASubgroup(f"Member set is not a subgroup of {group.label}")
    coset_of = [-1] * group.order
    representatives = []
    for position in range(group.order):
        if coset_of[position] >= 0:
            continue
        coset = len(representatives)
        representatives.append(position)
        for member in handle.indices:
            coset_of[group.multiply(member, position)] = coset
    if len(representatives) * handle.order != group.order:
        raise NotASubgroup(f"Member set does not partition {group.label} into cosets")
    degree = len(representatives)
    action = []
    for generator in group.generators:
        generator = group.table.index[generator.images]
        action.append(Permutation(tuple(coset_of[group.multiply(representative, generator)]
                                        for representative in representatives)))
    image = FiniteGroup(degree, action, f"{group.label} on {degree} cosets")
    return CosetActionResult(group, handle, image, core_of(group, handle), tuple(representatives), tuple(coset_of))
