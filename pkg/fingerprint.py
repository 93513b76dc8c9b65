import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from characteristic import center, derived_series, sylow_subgroup
from errors import CapExceeded
from finite_group import FiniteGroup
from subgroup_lattice import build_lattice

Histogram = tuple[tuple[int, int], ...]


def histogram(values) -> Histogram:
    """(value, multiplicity) pairs sorted by value."""
    return tuple(sorted(Counter(values).items()))


@dataclass(frozen=True)
class Fingerprint:
    """
    Isomorphism invariants. Different fingerprints prove non-isomorphism; equal ones are only a heuristic.
    """
    order: int
    element_orders: Histogram
    class_sizes: Histogram
    center_order: int
    derived_orders: tuple[int, ...]
    # Element orders of one Sylow p-subgroup, per prime
    sylow_element_orders: tuple[tuple[int, Histogram], ...]
    # Absent when the lattice is over the cap
    subgroup_orders: Optional[Histogram] = None
    normal_subgroup_orders: Optional[Histogram] = None

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "element_orders": [list(pair) for pair in self.element_orders],
            "class_sizes": [list(pair) for pair in self.class_sizes],
            "center_order": self.center_order,
            "derived_orders": list(self.derived_orders),
            "sylow_element_orders": [[prime, [list(pair) for pair in orders]]
                                     for prime, orders in self.sylow_element_orders],
            "subgroup_orders": None if self.subgroup_orders is None else [list(pair) for pair in self.subgroup_orders],
            "normal_subgroup_orders": None if self.normal_subgroup_orders is None
            else [list(pair) for pair in self.normal_subgroup_orders],
        }


def fingerprint(group: FiniteGroup) -> Fingerprint:
    subgroup_orders = normal_orders = None
    try:
        lattice = build_lattice(group)
        subgroup_orders = histogram(node.order for node in lattice.nodes)
        normal_orders = histogram(lattice.nodes[position].order for position in lattice.normal_positions())
    except CapExceeded as e:
        logging.warning(f"Fingerprint of {group.label} without subgroup counts: {e}")
    return Fingerprint(
        order=group.order,
        element_orders=histogram(group.element_orders),
        class_sizes=histogram(len(members) for members in group.conjugacy_classes()),
        center_order=center(group).order,
        derived_orders=tuple(term.order for term in derived_series(group)),
        sylow_element_orders=tuple((prime, histogram(sylow_subgroup(group, prime).element_orders()))
                                   for prime in group.prime_divisors),
        subgroup_orders=subgroup_orders,
        normal_subgroup_orders=normal_orders,
    )
