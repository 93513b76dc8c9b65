import logging
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Union

from cachetools import LRUCache, cached
from cachetools.keys import hashkey
from sympy import isprime, primefactors

from characteristic import (derived_series, derived_subgroup, is_nilpotent, is_solvable, p_part, quotient_action,
                            sylow_subgroup)
from config import settings
from finite_group import FiniteGroup, SubgroupHandle, check_subgroup, is_normal
from subgroup_lattice import build_lattice, chief_series, cyclic_primary_subgroup_reps

cover_cache = LRUCache(maxsize=65_536)
cover_cache_lock = threading.Lock()
descent_cache = LRUCache(maxsize=65_536)
descent_cache_lock = threading.Lock()
report_cache = LRUCache(maxsize=256)
report_cache_lock = threading.Lock()


@dataclass(frozen=True)
class PChainWitness:
    """H = H_0 < H_1 < ... < H_n = G with every |H_i : H_(i-1)| prime."""
    chain: tuple[SubgroupHandle, ...]
    indices: tuple[int, ...]

    def __bool__(self):
        return True

    def validate(self) -> bool:
        """Recomputes containments and indices from the member sets."""
        if not self.chain or not self.chain[-1].is_whole():
            return False
        if len(self.indices) != len(self.chain) - 1:
            return False
        for lower, upper, index in zip(self.chain, self.chain[1:], self.indices):
            if not lower < upper or upper.order != lower.order * index or not isprime(index):
                return False
        return True


@dataclass(frozen=True)
class NotPSubnormal:
    subgroup: SubgroupHandle
    # Every overgroup of `subgroup` that G reaches by prime-index descents; none of them is `subgroup`
    descended: tuple[SubgroupHandle, ...] = ()

    def __bool__(self):
        return False

    @cached_property
    def reachable(self) -> tuple[SubgroupHandle, ...]:
        """Every subgroup reachable upwards from `subgroup` by prime-index steps; none of them is G."""
        return ascend_closure(self.subgroup.ambient, self.subgroup)


def _sylow_conjugates(group: FiniteGroup, upper: SubgroupHandle, prime: int) -> list[SubgroupHandle]:
    sylow = sylow_subgroup(group, prime, within=upper)
    orbit = [sylow]
    seen = {sylow.bits}
    for current in orbit:
        for by in upper.generators:
            bits = group.conjugate_bits(current.bits, by)
            if bits not in seen:
                seen.add(bits)
                orbit.append(SubgroupHandle(group, bits, tuple(group.conjugate(generator, by)
                                                              for generator in current.generators)))
    return orbit


def _grow_p_part(group: FiniteGroup, upper: SubgroupHandle, bases: Iterable[SubgroupHandle], prime: int,
                 target: int) -> list[SubgroupHandle]:
    """Subgroups of order `target` inside `upper` reached from `bases` by adjoining p-elements."""
    orders = group.element_orders
    p_elements = [element for element in upper.indices
                  if orders[element] > 1 and p_part(orders[element], prime) == orders[element]]
    frontier = list(bases)
    seen = {base.bits for base in frontier}
    found = []
    for base in frontier:
        if base.order == target:
            found.append(base)
            continue
        tried = bytearray(group.order)
        for element in p_elements:
            if tried[element] or element in base:
                continue
            # <base, bx> = <base, x>
            for member in base.indices:
                tried[group.multiply(member, element)] = 1
            candidate = group.extend(base, [element], limit=target)
            if candidate is None or target % candidate.order or candidate.bits in seen:
                continue
            seen.add(candidate.bits)
            frontier.append(candidate)
    return found


@cached(descent_cache, key=lambda group, upper, lower: hashkey(group, upper.bits, lower.bits), lock=descent_cache_lock)
def prime_index_subgroups(group: FiniteGroup, upper: SubgroupHandle,
                          lower: SubgroupHandle) -> tuple[SubgroupHandle, ...]:
    """
    The subgroups K with lower <= K < upper and |upper : K| prime, sorted by (order, bits).
    A subgroup of index p contains a Sylow q-subgroup of `upper` for every prime q != p, so candidates
    grow from `lower` by whole Sylow subgroups, then by p-elements, and are dropped once they
    outgrow |upper| / p.
    """
    found = []
    for prime in primefactors(upper.order // lower.order):
        target = upper.order // prime
        candidates = {lower.bits: lower}
        for other in primefactors(upper.order):
            if other == prime:
                continue
            full = p_part(upper.order, other)
            sylows = None
            grown = {}
            for base in candidates.values():
                if p_part(base.order, other) == full:
                    grown.setdefault(base.bits, base)
                    continue
                sylows = sylows or _sylow_conjugates(group, upper, other)
                for sylow in sylows:
                    joined = group.extend(base, sylow.generators, limit=target)
                    if joined is not None and not target % joined.order:
                        grown.setdefault(joined.bits, joined)
            candidates = grown
        found.extend(_grow_p_part(group, upper, candidates.values(), prime, target))
    return tuple(sorted(found, key=lambda subgroup: (subgroup.order, subgroup.bits)))


def _descend(group: FiniteGroup, upper: SubgroupHandle, handle: SubgroupHandle, dead: dict[int, SubgroupHandle],
             ) -> Optional[list[SubgroupHandle]]:
    """A prime-index chain from `handle` up to `upper`, listed top first; `dead` collects the failures."""
    if upper == handle:
        return [handle]
    if upper.bits in dead:
        return None
    for below in prime_index_subgroups(group, upper, handle):
        tail = _descend(group, below, handle, dead)
        if tail is not None:
            return [upper] + tail
    dead[upper.bits] = upper
    return None


def _decide(group: FiniteGroup, handle: SubgroupHandle) -> Union[PChainWitness, NotPSubnormal]:
    dead = {}
    chain = _descend(group, group.whole(), handle, dead)
    if chain is None:
        logging.debug(f"No prime-index descent from {group.label} to order {handle.order}: {len(dead)} dead ends")
        return NotPSubnormal(handle, tuple(sorted(dead.values(), key=lambda node: (node.order, node.bits))))
    chain.reverse()
    indices = tuple(upper.order // lower.order for lower, upper in zip(chain, chain[1:]))
    return PChainWitness(tuple(chain), indices)


@cached(cover_cache, key=lambda group, handle: hashkey(group, handle.bits), lock=cover_cache_lock)
def prime_index_covers(group: FiniteGroup, handle: SubgroupHandle) -> tuple[SubgroupHandle, ...]:
    """
    The overgroups M of `handle` with |M : handle| prime, sorted by (order, bits).
    Each candidate <handle, g> is abandoned as soon as it outgrows the largest admissible index.
    """
    if handle.is_whole():
        return ()
    largest = max(primefactors(group.order // handle.order))
    limit = handle.order * largest
    tried = bytearray(group.order)
    for member in handle.indices:
        tried[member] = 1
    covers = []
    for element in range(group.order):
        if tried[element]:
            continue
        for member in handle.indices:
            tried[group.multiply(member, element)] = 1
        candidate = group.extend(handle, [element], limit=limit)
        if candidate is None or not isprime(candidate.order // handle.order):
            continue
        covers.append(candidate)
        for member in candidate.indices:
            tried[member] = 1
    return tuple(sorted(covers, key=lambda cover: (cover.order, cover.bits)))


def ascend_closure(group: FiniteGroup, start: SubgroupHandle) -> tuple[SubgroupHandle, ...]:
    """
    Everything reachable from `start` by prime-index steps upwards, breadth-first. This walks the whole
    solvable part of [H, G] and is only computed on demand for reporting.
    """
    reached = {start.bits: start}
    queue = [start]
    for node in queue:
        for cover in prime_index_covers(group, node):
            if cover.bits not in reached:
                reached[cover.bits] = cover
                queue.append(cover)
    return tuple(queue)


def p_subnormal(group: FiniteGroup, handle: SubgroupHandle) -> Union[PChainWitness, NotPSubnormal]:
    """
    Decides top-down: H is P-subnormal in G iff H = G or H is P-subnormal in some subgroup of prime
    index in G that contains H. Every such chain has as many steps as |G : H| has prime factors.
    :return: A chain witness, or the obstruction (the dead ends of the descent).
    """
    check_subgroup(group, handle)
    if handle.is_whole() or handle.is_trivial() or not is_normal(group, handle):
        return _decide(group, handle)
    # Chains above a normal H are the preimages of chains above 1 in G/H
    action = quotient_action(group, handle)
    logging.debug(f"Deciding a normal subgroup of order {handle.order} in {action.image.label}")
    result = _decide(action.image, action.image.trivial())
    if result:
        chain = tuple(action.preimage(node) for node in result.chain)
        return PChainWitness(chain, result.indices)
    return NotPSubnormal(handle, tuple(action.preimage(node) for node in result.descended))


def non_p_subnormal_classes(group: FiniteGroup) -> list[tuple[SubgroupHandle, int]]:
    """(representative, class size) for each conjugacy class of subgroups that is not P-subnormal."""
    lattice = build_lattice(group)
    result = []
    for members in lattice.classes:
        representative = lattice.nodes[members[0]]
        if not p_subnormal(group, representative):
            result.append((representative, len(members)))
    return result


@dataclass(frozen=True)
class SupersolvabilityCertificate:
    holds: bool
    # Index of every maximal subgroup, in lattice order
    indices: tuple[int, ...]
    offending: Optional[SubgroupHandle] = None

    def __bool__(self):
        return self.holds


def is_supersolvable(group: FiniteGroup) -> SupersolvabilityCertificate:
    """Huppert: G is supersolvable iff every maximal subgroup has prime index."""
    lattice = build_lattice(group)
    maximals = lattice.maximal_subgroups()
    indices = tuple(maximal.index_in(group.whole()) for maximal in maximals)
    offending = next((maximal for maximal, index in zip(maximals, indices) if not isprime(index)), None)
    certificate = SupersolvabilityCertificate(offending is None, indices, offending)
    if settings.debug and is_solvable(group):
        factors = chief_series(group).factor_orders
        assert certificate.holds == all(isprime(order) for order in factors), \
            f"Huppert and chief factors {factors} disagree for {group.label}"
    return certificate


@dataclass(frozen=True)
class StructuralFlags:
    solvable: bool
    nilpotent: bool
    biprimary: bool
    perfect: bool

    def to_dict(self) -> dict:
        return {"solvable": self.solvable, "nilpotent": self.nilpotent,
                "biprimary": self.biprimary, "perfect": self.perfect}


def structural_flags(group: FiniteGroup) -> StructuralFlags:
    whole = group.whole()
    return StructuralFlags(
        solvable=derived_series(group)[-1].is_trivial(),
        nilpotent=is_nilpotent(group),
        biprimary=len(group.prime_divisors) == 2,
        perfect=group.order > 1 and derived_subgroup(group) == whole,
    )


@dataclass(frozen=True)
class SylowTowerWitness:
    """1 = G_0 < G_1 < ... < G_k = G, normal in G, adding Sylow subgroups for descending primes."""
    series: tuple[SubgroupHandle, ...]
    primes: tuple[int, ...]
    factor_orders: tuple[int, ...]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NoTower:
    prime: int
    # A Sylow subgroup whose product with the series so far is not normal
    sylow: SubgroupHandle
    series: tuple[SubgroupHandle, ...]

    def __bool__(self):
        return False


def sylow_tower_supersolvable(group: FiniteGroup) -> Union[SylowTowerWitness, NoTower]:
    """
    Climbs the primes from the largest down: the Sylow p-subgroup of G/N is normal iff
    N P is a normal subgroup of G of order |N| |P|, so no quotient is ever built.
    """
    current = group.trivial()
    series = [current]
    primes = tuple(sorted(group.prime_divisors, reverse=True))
    for prime in primes:
        sylow = sylow_subgroup(group, prime)
        candidate = current.join(sylow)
        if candidate.order != current.order * sylow.order or not is_normal(group, candidate):
            logging.debug(f"{group.label} has no Sylow tower: stuck at prime {prime}")
            return NoTower(prime, sylow, tuple(series))
        current = candidate
        series.append(current)
    factor_orders = tuple(upper.order // lower.order for lower, upper in zip(series, series[1:]))
    return SylowTowerWitness(tuple(series), primes, factor_orders)


@dataclass(frozen=True)
class MembershipCheck:
    """The outcome of running p_subnormal over a family of subgroups, stopping at the first failure."""
    holds: bool
    witnesses: tuple[tuple[SubgroupHandle, PChainWitness], ...] = ()
    obstruction: Optional[NotPSubnormal] = None

    def __bool__(self):
        return self.holds


def _check_all(group: FiniteGroup, subgroups: list[SubgroupHandle]) -> MembershipCheck:
    witnesses = []
    for subgroup in subgroups:
        result = p_subnormal(group, subgroup)
        if not result:
            return MembershipCheck(False, tuple(witnesses), result)
        witnesses.append((subgroup, result))
    return MembershipCheck(True, tuple(witnesses))


def is_w_supersolvable(group: FiniteGroup) -> MembershipCheck:
    """Every Sylow subgroup is P-subnormal."""
    return _check_all(group, [sylow_subgroup(group, prime) for prime in group.prime_divisors])


def is_in_class_X(group: FiniteGroup) -> MembershipCheck:
    """
    Every cyclic subgroup of prime-power order is P-subnormal. Conjugates of a P-subnormal
    subgroup are P-subnormal, so one representative per conjugacy class is enough.
    """
    return _check_all(group, cyclic_primary_subgroup_reps(group))


@dataclass(frozen=True)
class ClassMembershipReport:
    group: FiniteGroup
    supersolvable: bool
    w_supersolvable: bool
    class_x: bool
    tower: bool
    flags: StructuralFlags
    tower_witness: Union[SylowTowerWitness, NoTower]
    sylow_check: MembershipCheck
    primary_cyclic_check: MembershipCheck
    supersolvability: Optional[SupersolvabilityCertificate] = None
    # First failing subgroup per failed class, keyed "U", "wU", "X", "D"
    counterexamples: dict[str, SubgroupHandle] = field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.flags.solvable

    @property
    def nilpotent(self) -> bool:
        return self.flags.nilpotent

    def class_flags(self) -> dict[str, bool]:
        return {"U": self.supersolvable, "wU": self.w_supersolvable, "X": self.class_x, "D": self.tower,
                "solvable": self.solvable, "nilpotent": self.nilpotent}

    def implications_hold(self) -> bool:
        """U => wU => X => D => solvable, and nilpotent => U."""
        chain = [self.supersolvable, self.w_supersolvable, self.class_x, self.tower, self.solvable]
        return all(not stronger or weaker for stronger, weaker in zip(chain, chain[1:])) \
            and (not self.nilpotent or self.supersolvable)


@cached(report_cache, lock=report_cache_lock)
def classify(group: FiniteGroup) -> ClassMembershipReport:
    flags = structural_flags(group)
    tower = sylow_tower_supersolvable(group)
    sylow_check = is_w_supersolvable(group)
    primary_cyclic_check = is_in_class_X(group)
    counterexamples = {}
    certificate = None
    if flags.solvable:
        certificate = is_supersolvable(group)
        supersolvable = certificate.holds
        if not supersolvable:
            counterexamples["U"] = certificate.offending
    else:
        supersolvable = False
        counterexamples["U"] = derived_series(group)[-1]
    if not sylow_check:
        counterexamples["wU"] = sylow_check.obstruction.subgroup
    if not primary_cyclic_check:
        counterexamples["X"] = primary_cyclic_check.obstruction.subgroup
    if not tower:
        counterexamples["D"] = tower.sylow
    report = ClassMembershipReport(group, supersolvable, sylow_check.holds, primary_cyclic_check.holds, bool(tower),
                                   flags, tower, sylow_check, primary_cyclic_check, certificate, counterexamples)
    logging.info(f"Classified {group.label} (order {group.order}): "
                 + ", ".join(f"{name}={value}" for name, value in report.class_flags().items()))
    if not report.implications_hold():
        logging.error(f"Class implications violated for {group.label}: {report.class_flags()}")
    return report
