import logging
from typing import Iterable, Optional, Union

from sympy import factorint

from errors import NotNormal, NoSuchPrime
from finite_group import (FiniteGroup, SubgroupHandle, CosetActionResult, check_subgroup, coset_action, core_of,
                          is_normal, bits_from_indices)

NON_SOLVABLE = "non-solvable"


def p_part(number: int, prime: int) -> int:
    return prime ** factorint(number).get(prime, 0)


def is_prime_power(number: int) -> bool:
    return len(factorint(number)) == 1


def quotient_action(group: FiniteGroup, normal: SubgroupHandle) -> CosetActionResult:
    """
    G/N as the action of G on the cosets of N; the projection and preimage maps come along.
    """
    check_subgroup(group, normal)
    if not is_normal(group, normal):
        raise NotNormal(f"Subgroup of order {normal.order} is not normal in {group.label}")
    return coset_action(group, normal)


def quotient(group: FiniteGroup, normal: SubgroupHandle) -> FiniteGroup:
    """
    A faithful permutation representation of G/N on |G : N| points (G itself for trivial N).
    """
    if normal.is_trivial():
        check_subgroup(group, normal)
        return group
    return quotient_action(group, normal).image


def normal_closure(group: FiniteGroup, seeds: Union[SubgroupHandle, Iterable[int]],
                   within: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    """
    The smallest subgroup containing `seeds` that is normalized by `within` (default: the whole group).
    :param seeds: A subgroup or a collection of element indices.
    """
    within = within or group.whole()
    generators = list(seeds.generators if isinstance(seeds, SubgroupHandle) else seeds)
    closure = group.subgroup(generators)
    queue = list(closure.generators)
    for element in queue:
        for by in within.generators:
            image = group.conjugate(element, by)
            if image not in closure:
                closure = group.extend(closure, [image])
                queue.append(image)
    return closure


def normalizer(group: FiniteGroup, handle: SubgroupHandle, within: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    """{g in within : H^g = H}"""
    check_subgroup(group, handle)
    within = within or group.whole()
    members = [element for element in within.indices
               if all(group.conjugate(generator, element) in handle for generator in handle.generators)]
    return group.subgroup_from_bits(bits_from_indices(members))


def center(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    within = within or group.whole()
    multiply = group.multiply
    members = [element for element in within.indices
               if all(multiply(element, generator) == multiply(generator, element) for generator in within.generators)]
    return group.subgroup_from_bits(bits_from_indices(members))


def derived_subgroup(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    """The commutator subgroup of `within` (default: the whole group)."""
    within = within or group.whole()
    generators = within.generators
    commutators = [group.commutator(left, right) for left in generators for right in generators if left < right]
    return normal_closure(group, commutators, within=within)


def derived_series(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> list[SubgroupHandle]:
    """G, G', G'', ... down to the first repeated term (kept once)."""
    series = [within or group.whole()]
    while True:
        following = derived_subgroup(group, within=series[-1])
        if following == series[-1]:
            return series
        series.append(following)


def derived_length(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> Union[int, str]:
    series = derived_series(group, within)
    if not series[-1].is_trivial():
        return NON_SOLVABLE
    return len(series) - 1


def is_solvable(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> bool:
    return derived_series(group, within)[-1].is_trivial()


def is_abelian(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> bool:
    within = within or group.whole()
    multiply = group.multiply
    return all(multiply(left, right) == multiply(right, left)
               for left in within.generators for right in within.generators)


def is_nilpotent(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> bool:
    """
    Every Sylow subgroup is normal, tested as: for each prime p the elements of p-power order
    number exactly the p-part of the order (that count singles out a unique Sylow p-subgroup).
    """
    within = within or group.whole()
    orders = within.element_orders()
    for prime, exponent in factorint(within.order).items():
        count = sum(1 for element_order in orders if p_part(element_order, prime) == element_order)
        if count != prime ** exponent:
            return False
    return True


def is_cyclic(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> bool:
    within = within or group.whole()
    return max(within.element_orders()) == within.order


def sylow_subgroup(group: FiniteGroup, prime: int, within: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    """
    A Sylow p-subgroup, grown one factor p at a time inside normalizers: while |H| is below the
    p-part, adjoin some x in N(H) \\ H with x^p in H.
    """
    within = within or group.whole()
    target = p_part(within.order, prime)
    if target == 1:
        raise NoSuchPrime(f"{prime} does not divide the order {within.order}")
    current = group.trivial()
    while current.order < target:
        ambient = normalizer(group, current, within=within)
        for element in ambient.indices:
            if element in current:
                continue
            if group.power(element, prime) in current:
                current = group.extend(current, [element])
                break
        else:
            raise RuntimeError(f"No p-element extends a {prime}-subgroup of order {current.order}")
    return current


def o_p(group: FiniteGroup, prime: int) -> SubgroupHandle:
    """The largest normal p-subgroup; trivial when p does not divide |G|."""
    if group.order % prime:
        return group.trivial()
    return core_of(group, sylow_subgroup(group, prime))


def fitting(group: FiniteGroup) -> SubgroupHandle:
    result = group.trivial()
    for prime in group.prime_divisors:
        result = result.join(o_p(group, prime))
    return result


def is_subnormal(group: FiniteGroup, handle: SubgroupHandle) -> bool:
    """
    Descends K_0 = G, K_{i+1} = normal closure of H in K_i; H is subnormal iff this reaches H.
    """
    check_subgroup(group, handle)
    current = group.whole()
    while current != handle:
        following = normal_closure(group, handle, within=current)
        if following == current:
            logging.debug(f"Normal closure chain stalls at order {current.order}")
            return False
        current = following
    return True


def is_elementary_abelian(group: FiniteGroup, within: Optional[SubgroupHandle] = None) -> bool:
    within = within or group.whole()
    if within.is_trivial():
        return True
    if not is_prime_power(within.order) or not is_abelian(group, within):
        return False
    prime = next(iter(factorint(within.order)))
    return all(element_order in (1, prime) for element_order in within.element_orders())


def p_group_frattini(group: FiniteGroup, handle: SubgroupHandle) -> SubgroupHandle:
    """Burnside: for a p-group P, the Frattini subgroup is P' P^p."""
    check_subgroup(group, handle)
    if handle.is_trivial():
        return handle
    if not is_prime_power(handle.order):
        raise NoSuchPrime(f"Order {handle.order} is not a prime power")
    prime = next(iter(factorint(handle.order)))
    powers = {group.power(element, prime) for element in handle.indices}
    return group.extend(derived_subgroup(group, within=handle), sorted(powers))


def normal_subgroups(group: FiniteGroup) -> list[SubgroupHandle]:
    """
    All normal subgroups, sorted by (order, bits): joins of normal closures of conjugacy class representatives.
    """
    atoms = {}
    for members in group.conjugacy_classes():
        closure = normal_closure(group, [members[0]])
        atoms.setdefault(closure.bits, closure)
    found = dict(atoms)
    frontier = list(atoms.values())
    while frontier:
        fresh = []
        for node in frontier:
            for atom in atoms.values():
                if not atom.bits & ~node.bits:
                    continue
                joined = node.join(atom)
                if joined.bits not in found:
                    found[joined.bits] = joined
                    fresh.append(joined)
        frontier = fresh
    return sorted(found.values(), key=lambda node: (node.order, node.bits))
