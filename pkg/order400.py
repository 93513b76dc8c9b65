import logging
import threading
from dataclasses import dataclass

from cachetools import LRUCache, cached

from catalog import affine
from characteristic import is_abelian, sylow_subgroup
from classify import ClassMembershipReport, classify
from descriptors import GroupDescriptor
from finite_field import Matrix2, general_linear, generated_matrices, inverse, is_irreducible, matrix_order, multiply
from finite_group import FiniteGroup
from fingerprint import Fingerprint, fingerprint
from structure import minimal_non_class

PRIME = 5
COMPLEMENT_ORDER = 16
GENERATOR_ORDER = 4

search_cache = LRUCache(maxsize=4)
search_cache_lock = threading.Lock()


@dataclass(frozen=True)
class Order400Member:
    group: FiniteGroup
    generators: tuple[Matrix2, Matrix2]
    fingerprint: Fingerprint
    report: ClassMembershipReport

    @property
    def sylow_2_abelian(self) -> bool:
        return is_abelian(self.group, within=sylow_subgroup(self.group, 2))


@dataclass(frozen=True)
class Order400Class:
    """Members sharing one fingerprint; counted as one isomorphism type."""
    fingerprint: Fingerprint
    members: tuple[Order400Member, ...]

    @property
    def representative(self) -> Order400Member:
        return self.members[0]


def _conjugation_key(elements: frozenset, conjugators: list[tuple[Matrix2, Matrix2]]) -> tuple:
    """The smallest sorted element list over all GL(2, 5)-conjugates of a matrix group."""
    best = None
    for conjugator, conjugator_inverse in conjugators:
        image = tuple(sorted(multiply(multiply(conjugator_inverse, element, PRIME), conjugator, PRIME)
                             for element in elements))
        if best is None or image < best:
            best = image
    return best


def complement_candidates() -> list[tuple[Matrix2, Matrix2]]:
    """
    Irreducible T <= GL(2, 5) of order 16 generated by two elements of order 4, one generating pair
    per GL(2, 5)-conjugacy class. A reducible T fixes a line and would make E_25 T supersolvable.
    """
    general = general_linear(PRIME)
    order_four = [matrix for matrix in general if matrix_order(matrix, PRIME) == GENERATOR_ORDER]
    logging.info(f"GL(2,{PRIME}): {len(general)} elements, {len(order_four)} of order {GENERATOR_ORDER}")
    subgroups = {}
    for position, first in enumerate(order_four):
        for second in order_four[position + 1:]:
            elements = generated_matrices([first, second], PRIME, limit=COMPLEMENT_ORDER)
            if elements is None or len(elements) != COMPLEMENT_ORDER:
                continue
            subgroups.setdefault(frozenset(elements), (first, second))
    logging.info(f"{len(subgroups)} subgroups of order {COMPLEMENT_ORDER} generated by two elements of order 4")
    conjugators = [(matrix, inverse(matrix, PRIME)) for matrix in general]
    classes = {}
    for elements, pair in subgroups.items():
        if not is_irreducible(list(pair), PRIME):
            continue
        key = _conjugation_key(elements, conjugators)
        if key not in classes or pair < classes[key]:
            classes[key] = pair
    logging.info(f"{len(classes)} conjugacy classes of irreducible candidates")
    return sorted(classes.values())


@cached(search_cache, key=lambda: ("order400", PRIME), lock=search_cache_lock)
def search_order400_family() -> list[Order400Class]:
    """
    Builds E_25 T for every candidate T, keeps the minimal non-supersolvable groups and groups them
    by fingerprint.
    """
    grouped: dict[Fingerprint, list[Order400Member]] = {}
    for pair in complement_candidates():
        descriptor = GroupDescriptor("affine", name="affine", parameters=(PRIME, 2), matrices=pair)
        group = affine(PRIME, 2, list(pair), name=str(descriptor))
        if not minimal_non_class(group, "U"):
            logging.info(f"{group.label} is not minimal non-supersolvable, dropped")
            continue
        member = Order400Member(group, pair, fingerprint(group), classify(group))
        grouped.setdefault(member.fingerprint, []).append(member)
    classes = [Order400Class(key, tuple(members)) for key, members in grouped.items()]
    logging.info(f"Order 400 search: {sum(len(item.members) for item in classes)} groups in {len(classes)} "
                 f"fingerprint classes")
    return classes
