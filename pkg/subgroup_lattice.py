import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import networkx as nx
from cachetools import LRUCache, cached
from cachetools.keys import hashkey
from sympy import isprime, primefactors

from characteristic import normal_closure
from config import settings
from errors import CapExceeded, NotNormal
from finite_group import FiniteGroup, SubgroupHandle, check_subgroup, conjugate_orbit, is_normal


@dataclass(frozen=True)
class Lattice:
    """
    Subgroups of `ambient` (or, with `base`, the interval [base, ambient]), numbered by (order, bitset).
    Covers are the minimal strict containments between nodes.
    """
    ambient: FiniteGroup
    nodes: tuple[SubgroupHandle, ...]
    lower_covers: tuple[tuple[int, ...], ...]
    upper_covers: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    base: Optional[SubgroupHandle] = None

    def __len__(self):
        return len(self.nodes)

    @cached_property
    def positions(self) -> dict[int, int]:
        return {node.bits: position for position, node in enumerate(self.nodes)}

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        owner = [0] * len(self.nodes)
        for class_position, members in enumerate(self.classes):
            for member in members:
                owner[member] = class_position
        return tuple(owner)

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    @property
    def bottom(self) -> int:
        return 0

    def position_of(self, handle: SubgroupHandle) -> int:
        position = self.positions.get(handle.bits)
        if position is None or handle.ambient is not self.ambient:
            raise KeyError(f"Subgroup of order {handle.order} is not a node of this lattice")
        return position

    def edge_index(self, lower: int, upper: int) -> int:
        return self.nodes[upper].order // self.nodes[lower].order

    def edges(self) -> list[tuple[int, int, int, bool]]:
        """(lower, upper, index, prime) for every cover."""
        return [(lower, upper, self.edge_index(lower, upper), isprime(self.edge_index(lower, upper)))
                for upper, covers in enumerate(self.lower_covers) for lower in covers]

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        for lower, upper, index, prime in self.edges():
            graph.add_edge(lower, upper, index=index, prime=prime)
        return graph

    @cached_property
    def prime_graph(self) -> nx.DiGraph:
        return nx.subgraph_view(self.graph, filter_edge=lambda lower, upper: self.graph.edges[lower, upper]["prime"])

    def prime_chain(self, start: int, end: Optional[int] = None) -> Optional[list[int]]:
        """Shortest ascending path of prime-index covers, or None."""
        end = self.top if end is None else end
        try:
            return nx.shortest_path(self.prime_graph, start, end)
        except nx.NetworkXNoPath:
            return None

    def contains(self, lower: int, upper: int) -> bool:
        return self.nodes[lower] <= self.nodes[upper]

    def below(self, position: int) -> list[int]:
        """Nodes contained in a node, itself included."""
        bits = self.nodes[position].bits
        return [other for other in range(position + 1) if not self.nodes[other].bits & ~bits]

    def above(self, position: int) -> list[int]:
        bits = self.nodes[position].bits
        return [other for other in range(position, len(self.nodes)) if not bits & ~self.nodes[other].bits]

    def maximal_subgroups(self, position: Optional[int] = None) -> list[SubgroupHandle]:
        position = self.top if position is None else position
        return [self.nodes[lower] for lower in self.lower_covers[position]]

    def is_supersolvable_node(self, position: int) -> bool:
        """Huppert: all maximal subgroups of the node have prime index (full lattices only)."""
        return all(isprime(self.edge_index(lower, position)) for lower in self.lower_covers[position])

    def is_normal_node(self, position: int) -> bool:
        """Normal in the ambient group (full lattices only)."""
        return len(self.classes[self.class_of[position]]) == 1

    def normal_positions(self) -> list[int]:
        return [position for position in range(len(self.nodes)) if self.is_normal_node(position)]

    def is_supersolvable_quotient(self, position: int) -> bool:
        """G/N is supersolvable iff every maximal subgroup of G containing N has prime index."""
        bits = self.nodes[position].bits
        return all(isprime(self.edge_index(lower, self.top)) for lower in self.lower_covers[self.top]
                   if not bits & ~self.nodes[lower].bits)

    def normal_between(self, lower: int, upper: int) -> list[int]:
        """Normal nodes strictly between two nodes."""
        return [position for position in self.normal_positions()
                if position not in (lower, upper) and self.contains(lower, position) and self.contains(position, upper)]

    def stats(self) -> dict:
        return {
            "nodes": len(self.nodes),
            "classes": len(self.classes),
            "max_chain_length": nx.dag_longest_path_length(self.graph),
        }


@dataclass(frozen=True)
class ChiefSeries:
    members: tuple[SubgroupHandle, ...]
    factor_orders: tuple[int, ...]
    # Number of factors below `through` (None when no `through` was requested)
    through_length: Optional[int] = None

    @property
    def factors_below_through(self) -> tuple[int, ...]:
        return self.factor_orders[:self.through_length or 0]

    @property
    def factors_above_through(self) -> tuple[int, ...]:
        return self.factor_orders[self.through_length or 0:]


def _cyclic_atoms(group: FiniteGroup) -> list[SubgroupHandle]:
    orders = group.element_orders
    done = bytearray(group.order)
    done[0] = 1
    atoms = []
    for element in range(group.order):
        if done[element]:
            continue
        atom = group.subgroup([element])
        for member in atom.indices:
            if orders[member] == orders[element]:
                done[member] = 1
        atoms.append(atom)
    return atoms


def _overgroup_atoms(group: FiniteGroup, base: SubgroupHandle) -> list[tuple[int, SubgroupHandle]]:
    tried = bytearray(group.order)
    for member in base.indices:
        tried[member] = 1
    atoms = {}
    for element in range(group.order):
        if tried[element]:
            continue
        for member in base.indices:
            tried[group.multiply(member, element)] = 1
        atom = group.extend(base, [element])
        atoms.setdefault(atom.bits, (element, atom))
    return list(atoms.values())


def _join_closure(group: FiniteGroup, bottom: SubgroupHandle,
                  atoms: list[tuple[int, SubgroupHandle]]) -> dict[int, SubgroupHandle]:
    cap = settings.cap_lattice
    nodes = {bottom.bits: bottom}
    for _, atom in atoms:
        nodes.setdefault(atom.bits, atom)
    frontier = [atom for _, atom in atoms]
    while frontier:
        fresh = []
        for node in frontier:
            for generator, atom in atoms:
                if generator in node or not node.bits & ~atom.bits:
                    continue
                joined = group.extend(node, [generator])
                if joined.bits in nodes:
                    continue
                nodes[joined.bits] = joined
                fresh.append(joined)
                if len(nodes) > cap:
                    raise CapExceeded(f"Subgroup lattice of {group.label}", cap)
        logging.debug(f"Join closure of {group.label}: {len(nodes)} nodes, {len(fresh)} new")
        frontier = fresh
    return nodes


def _covers(nodes: list[SubgroupHandle]) -> list[tuple[int, ...]]:
    lower_covers = []
    for upper, node in enumerate(nodes):
        below = [lower for lower in range(upper)
                 if nodes[lower].order < node.order and node.order % nodes[lower].order == 0
                 and not nodes[lower].bits & ~node.bits]
        covers = []
        for lower in reversed(below):
            bits = nodes[lower].bits
            if any(not bits & ~nodes[cover].bits for cover in covers):
                continue
            covers.append(lower)
        lower_covers.append(tuple(sorted(covers)))
    return lower_covers


def _conjugacy_classes(group: FiniteGroup, nodes: list[SubgroupHandle], positions: dict[int, int]) -> list[tuple[int, ...]]:
    for generator in group.generator_indices:
        group.conjugation_map(generator)
    assigned = [False] * len(nodes)
    classes = []
    for position, node in enumerate(nodes):
        if assigned[position]:
            continue
        members = sorted(positions[bits] for bits in conjugate_orbit(group, node.bits) if bits in positions)
        for member in members:
            assigned[member] = True
        classes.append(tuple(members))
    return classes


@cached(LRUCache(maxsize=32), key=lambda group, base_bits: hashkey(group, base_bits), lock=threading.Lock())
def _build(group: FiniteGroup, base_bits: Optional[int]) -> Lattice:
    span = group.order if base_bits is None else group.order // base_bits.bit_count()
    if span > settings.cap_lattice_order:
        raise CapExceeded(f"Lattice span {span} of {group.label}", settings.cap_lattice_order)
    if base_bits is None:
        bottom = group.trivial()
        atoms = [(atom.generators[0], atom) for atom in _cyclic_atoms(group)]
    else:
        bottom = group.subgroup_from_bits(base_bits)
        atoms = _overgroup_atoms(group, bottom)
    nodes = sorted(_join_closure(group, bottom, atoms).values(), key=lambda node: (node.order, node.bits))
    positions = {node.bits: position for position, node in enumerate(nodes)}
    lower_covers = _covers(nodes)
    upper_covers = [[] for _ in nodes]
    for upper, covers in enumerate(lower_covers):
        for lower in covers:
            upper_covers[lower].append(upper)
    classes = _conjugacy_classes(group, nodes, positions)
    logging.info(f"Lattice of {group.label}{' over a base' if base_bits else ''}: "
                 f"{len(nodes)} subgroups in {len(classes)} classes")
    return Lattice(group, tuple(nodes), tuple(lower_covers), tuple(tuple(covers) for covers in upper_covers),
                   tuple(classes), None if base_bits is None else bottom)


def build_lattice(group: FiniteGroup, base: Optional[SubgroupHandle] = None) -> Lattice:
    """
    The subgroup lattice of `group`, or the interval [base, group] when `base` is given.
    Nodes are the join-closure of the cyclic subgroups (resp. of the groups <base, g>).
    """
    if base is not None:
        check_subgroup(group, base)
    return _build(group, None if base is None else base.bits)


def maximal_subgroups(group: FiniteGroup) -> list[SubgroupHandle]:
    return build_lattice(group).maximal_subgroups()


def frattini(group: FiniteGroup) -> SubgroupHandle:
    """The intersection of all maximal subgroups."""
    maximals = maximal_subgroups(group)
    if not maximals:
        return group.trivial()
    bits = maximals[0].bits
    for maximal in maximals[1:]:
        bits &= maximal.bits
    return group.subgroup_from_bits(bits)


def _minimal_normal_step(group: FiniteGroup, current: SubgroupHandle, limit_bits: int,
                         representatives: list[int]) -> SubgroupHandle:
    best = None
    for representative in representatives:
        if representative in current or not limit_bits >> representative & 1:
            continue
        candidate = normal_closure(group, current.generators + (representative,))
        if best is None or candidate.order < best.order:
            best = candidate
    return best


def chief_series(group: FiniteGroup, through: Optional[SubgroupHandle] = None) -> ChiefSeries:
    """
    A chief series of `group`, built from the bottom by repeatedly adjoining a minimal normal
    subgroup of the current quotient; with `through`, the series first climbs to it.
    """
    if through is not None:
        check_subgroup(group, through)
        if not is_normal(group, through):
            raise NotNormal(f"Subgroup of order {through.order} is not normal in {group.label}")
    representatives = [members[0] for members in group.conjugacy_classes()]
    current = group.trivial()
    members = [current]
    through_length = None
    if through is not None:
        while current != through:
            current = _minimal_normal_step(group, current, through.bits, representatives)
            members.append(current)
        through_length = len(members) - 1
    whole_bits = group.whole().bits
    while not current.is_whole():
        current = _minimal_normal_step(group, current, whole_bits, representatives)
        members.append(current)
    factor_orders = tuple(upper.order // lower.order for lower, upper in zip(members, members[1:]))
    return ChiefSeries(tuple(members), factor_orders, through_length)


def cyclic_primary_subgroup_reps(group: FiniteGroup) -> list[SubgroupHandle]:
    """
    One subgroup <g> per conjugacy class, over the elements g of prime-power order > 1.
    """
    for generator in group.generator_indices:
        group.conjugation_map(generator)
    orders = group.element_orders
    seen_bits = set()
    representatives = []
    for element in range(1, group.order):
        if len(primefactors(orders[element])) != 1:
            continue
        cyclic = group.subgroup([element])
        if cyclic.bits in seen_bits:
            continue
        seen_bits.update(conjugate_orbit(group, cyclic.bits))
        representatives.append(cyclic)
    return sorted(representatives, key=lambda handle: handle.order)

