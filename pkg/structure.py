import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from sympy import isprime, n_order

from characteristic import (center, derived_subgroup, is_abelian, is_cyclic, is_elementary_abelian, is_nilpotent,
                            is_prime_power, is_solvable, normalizer, p_group_frattini, quotient, sylow_subgroup)
from classify import is_in_class_X, is_supersolvable, sylow_tower_supersolvable
from errors import InvalidParameter
from finite_group import FiniteGroup, SubgroupHandle, is_normal
from subgroup_lattice import build_lattice, chief_series, frattini

CLASSES = ("U", "X")


@dataclass(frozen=True)
class NotSchmidt:
    reason: str
    witness: Optional[SubgroupHandle] = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class SchmidtReport:
    """S = [P]<y> with P the normal Sylow p-subgroup and <y> a cyclic Sylow q-subgroup."""
    p: int
    q: int
    sylow_p: SubgroupHandle
    y: int
    m: int
    # Structure checks 1-6, keyed by item
    checks: dict[int, bool] = field(default_factory=dict)

    def __bool__(self):
        return True

    @property
    def all_checks_hold(self) -> bool:
        return len(self.checks) == 6 and all(self.checks.values())


def _sylow_normalizer_witness(group: FiniteGroup, outside: Callable[[SubgroupHandle], bool]) -> Optional[SubgroupHandle]:
    """
    A proper Sylow normalizer failing the class test, found without building a lattice.
    """
    for prime in group.prime_divisors:
        candidate = normalizer(group, sylow_subgroup(group, prime))
        if not candidate.is_whole() and outside(candidate):
            return candidate
    return None


def _proper_subgroup_nilpotent(handle: SubgroupHandle) -> bool:
    return is_nilpotent(handle.ambient, within=handle)


def _proper_subgroup_supersolvable(handle: SubgroupHandle) -> bool:
    subgroup = handle.as_group()
    return is_solvable(subgroup) and is_supersolvable(subgroup).holds


def _proper_subgroup_in_x(handle: SubgroupHandle) -> bool:
    return is_in_class_X(handle.as_group()).holds


def is_schmidt(group: FiniteGroup) -> Union[SchmidtReport, NotSchmidt]:
    """
    Schmidt: non-nilpotent with every maximal subgroup nilpotent. A recognized group comes
    with its [P]<y> decomposition and the six standard structure checks.
    """
    if is_nilpotent(group):
        return NotSchmidt("nilpotent")
    witness = _sylow_normalizer_witness(group, lambda handle: not _proper_subgroup_nilpotent(handle))
    if witness is None:
        witness = next((maximal for maximal in build_lattice(group).maximal_subgroups()
                        if not _proper_subgroup_nilpotent(maximal)), None)
    if witness is not None:
        return NotSchmidt("a maximal subgroup is not nilpotent", witness)
    return _schmidt_report(group)


def _schmidt_report(group: FiniteGroup) -> SchmidtReport:
    primes = group.prime_divisors
    sylows = {prime: sylow_subgroup(group, prime) for prime in primes}
    normal_primes = [prime for prime in primes if is_normal(group, sylows[prime])]
    p = normal_primes[0] if normal_primes else primes[0]
    q = next((prime for prime in primes if prime != p), p)
    sylow_p, sylow_q = sylows[p], sylows[q]
    orders = group.element_orders
    y = max(sylow_q.indices, key=lambda element: (orders[element], -element))
    y_power = group.power(y, q)
    checks = {}

    centre = center(group)
    checks[1] = (len(primes) == 2 and len(normal_primes) == 1 and orders[y] == sylow_q.order
                 and not is_normal(group, sylow_q) and y_power in centre)
    m = n_order(p, q) if p != q else 0

    derived_p = derived_subgroup(group, within=sylow_p)
    checks[2] = sylow_p.order // derived_p.order == p ** m
    abelian = derived_p.is_trivial()

    lattice = build_lattice(group)
    p_position = lattice.position_of(sylow_p)
    if abelian:
        checks[3] = (is_elementary_abelian(group, sylow_p) and sylow_p.order == p ** m
                     and not lattice.normal_between(lattice.bottom, p_position))
    else:
        checks[3] = True

    frattini_p = p_group_frattini(group, sylow_p)
    if abelian:
        checks[4] = True
    else:
        centre_p = center(group, within=sylow_p)
        checks[4] = centre_p == derived_p == frattini_p and sylow_p.order // centre_p.order == p ** m

    frattini_s = frattini(group)
    central_power = group.subgroup([y_power])
    checks[5] = (centre == frattini_s
                 and frattini_p.join(central_power) == frattini_s
                 and frattini_p.order * central_power.order == frattini_s.order
                 and derived_subgroup(group) == sylow_p
                 and derived_p == frattini_p)

    proper_normals = [lattice.nodes[position] for position in lattice.normal_positions() if position != lattice.top]
    checks[6] = all(y not in normal and (sylow_p <= normal or normal <= frattini_s) for normal in proper_normals)

    report = SchmidtReport(p, q, sylow_p, y, m, checks)
    if not report.all_checks_hold:
        logging.warning(f"Schmidt structure checks failing for {group.label}: {checks}")
    return report


@dataclass(frozen=True)
class MinimalNonUReport:
    prime: Optional[int]
    sylow_p: Optional[SubgroupHandle]
    residual: SubgroupHandle
    solvable_few_primes: bool
    tower_unless_schmidt: bool
    residual_is_unique_normal_sylow: bool
    frattini_quotient_large: bool
    chief_factor_over_frattini: bool
    frattini_embedded: bool
    complement_shape: bool
    non_prime_maximals_conjugate: bool

    def checks(self) -> dict[str, bool]:
        return {
            "solvable_few_primes": self.solvable_few_primes,
            "tower_unless_schmidt": self.tower_unless_schmidt,
            "residual_is_unique_normal_sylow": self.residual_is_unique_normal_sylow,
            "frattini_quotient_large": self.frattini_quotient_large,
            "chief_factor_over_frattini": self.chief_factor_over_frattini,
            "frattini_embedded": self.frattini_embedded,
            "complement_shape": self.complement_shape,
            "non_prime_maximals_conjugate": self.non_prime_maximals_conjugate,
        }

    @property
    def all_checks_hold(self) -> bool:
        return all(self.checks().values())


@dataclass(frozen=True)
class MinimalNonXShape:
    """Biprimary, minimal non-supersolvable, with a cyclic non-normal Sylow subgroup."""
    biprimary: bool
    minimal_non_u: bool
    non_normal_sylow_cyclic: bool

    @property
    def holds(self) -> bool:
        return self.biprimary and self.minimal_non_u and self.non_normal_sylow_cyclic


@dataclass(frozen=True)
class MinimalNonClassResult:
    holds: bool
    target: str
    # A maximal subgroup outside the class, when that is why `holds` is false
    witness: Optional[SubgroupHandle] = None
    report: Union[MinimalNonUReport, MinimalNonXShape, None] = None

    def __bool__(self):
        return self.holds


def _is_quotient_minimal_non_abelian_or_primary_cyclic(group: FiniteGroup) -> bool:
    if is_cyclic(group):
        return group.order == 1 or is_prime_power(group.order)
    if is_abelian(group):
        return False
    return all(is_abelian(group, within=maximal) for maximal in build_lattice(group).maximal_subgroups())


def _minimal_non_u_report(group: FiniteGroup) -> MinimalNonUReport:
    lattice = build_lattice(group)
    whole = group.whole()
    primes = group.prime_divisors
    solvable = is_solvable(group)
    schmidt = bool(is_schmidt(group))
    tower = bool(sylow_tower_supersolvable(group))

    residual_bits = whole.bits
    for position in lattice.normal_positions():
        if lattice.is_supersolvable_quotient(position):
            residual_bits &= lattice.nodes[position].bits
    residual = group.subgroup_from_bits(residual_bits)

    sylows = {prime: sylow_subgroup(group, prime) for prime in primes}
    normal_primes = [prime for prime in primes if is_normal(group, sylows[prime])]
    if len(normal_primes) != 1:
        return MinimalNonUReport(None, None, residual, solvable and len(primes) <= 3, schmidt or tower,
                                 False, False, False, False, False, False)
    prime = normal_primes[0]
    sylow_p = sylows[prime]

    frattini_p = p_group_frattini(group, sylow_p)
    frattini_g = frattini(group)
    above = sylow_p.join(frattini_g)
    chief_factor = (above != frattini_g and
                    not lattice.normal_between(lattice.position_of(frattini_g), lattice.position_of(above)))
    factors = chief_series(group, through=frattini_p).factors_below_through
    embedded = all(isprime(order) for order in factors)

    complement_order = group.order // sylow_p.order
    complement = next((node for node in lattice.nodes if node.order == complement_order
                       and node.intersection(sylow_p).is_trivial()), None)
    if complement is None:
        shape = conjugate = False
    else:
        complement_group = complement.as_group()
        reduced = quotient(complement_group, complement_group.lift(complement.intersection(frattini_g)))
        shape = _is_quotient_minimal_non_abelian_or_primary_cyclic(reduced)
        target = lattice.position_of(frattini_p.join(complement))
        conjugate = all(lattice.class_of[lattice.position_of(maximal)] == lattice.class_of[target]
                        for maximal in lattice.maximal_subgroups() if not isprime(maximal.index_in(whole)))

    return MinimalNonUReport(
        prime=prime,
        sylow_p=sylow_p,
        residual=residual,
        solvable_few_primes=solvable and len(primes) <= 3,
        tower_unless_schmidt=schmidt or tower,
        residual_is_unique_normal_sylow=residual == sylow_p,
        frattini_quotient_large=sylow_p.order // frattini_p.order > prime,
        chief_factor_over_frattini=chief_factor,
        frattini_embedded=embedded,
        complement_shape=shape,
        non_prime_maximals_conjugate=conjugate,
    )


def non_normal_sylows(group: FiniteGroup) -> list[SubgroupHandle]:
    result = []
    for prime in group.prime_divisors:
        sylow = sylow_subgroup(group, prime)
        if not is_normal(group, sylow):
            result.append(sylow)
    return result


def has_cyclic_non_normal_sylow_shape(group: FiniteGroup) -> bool:
    """Biprimary, and every non-normal Sylow subgroup is cyclic (there is at least one)."""
    outsiders = non_normal_sylows(group)
    return (len(group.prime_divisors) == 2 and bool(outsiders)
            and all(is_cyclic(group, within=sylow) for sylow in outsiders))


def minimal_non_class(group: FiniteGroup, target: str) -> MinimalNonClassResult:
    """
    G is outside the class and every maximal subgroup is inside. Both classes are closed under
    subgroups, so the maximal subgroups stand in for all proper subgroups.
    :param target: "U" (supersolvable) or "X" (P-subnormal primary cyclic subgroups).
    """
    if target not in CLASSES:
        raise InvalidParameter(f"Unknown class {target!r}, expected one of {CLASSES}")
    if target == "U":
        member = is_solvable(group) and is_supersolvable(group).holds
        inside = _proper_subgroup_supersolvable
    else:
        member = is_in_class_X(group).holds
        inside = _proper_subgroup_in_x
    if member:
        return MinimalNonClassResult(False, target)
    witness = _sylow_normalizer_witness(group, lambda handle: not inside(handle))
    if witness is None:
        lattice = build_lattice(group)
        for position in lattice.lower_covers[lattice.top]:
            maximal = lattice.nodes[position]
            supersolvable = lattice.is_supersolvable_node(position) and is_solvable(group, within=maximal)
            if (target == "U" and not supersolvable) or (target == "X" and not supersolvable and not inside(maximal)):
                witness = maximal
                break
    if witness is not None:
        return MinimalNonClassResult(False, target, witness)
    if target == "U":
        report = _minimal_non_u_report(group)
    else:
        report = MinimalNonXShape(
            biprimary=len(group.prime_divisors) == 2,
            minimal_non_u=minimal_non_class(group, "U").holds,
            non_normal_sylow_cyclic=has_cyclic_non_normal_sylow_shape(group),
        )
    logging.info(f"{group.label} is minimal non-{target}")
    return MinimalNonClassResult(True, target, None, report)


@dataclass(frozen=True)
class OutsideXCriterion:
    """For a minimal non-supersolvable group: outside X iff biprimary with a cyclic non-normal Sylow subgroup."""
    outside_x: bool
    cyclic_non_normal_shape: bool

    @property
    def holds(self) -> bool:
        return self.outside_x == self.cyclic_non_normal_shape


def outside_x_criterion(group: FiniteGroup) -> OutsideXCriterion:
    return OutsideXCriterion(not is_in_class_X(group).holds, has_cyclic_non_normal_sylow_shape(group))
