import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional

from sympy import isprime, primefactors

from characteristic import (derived_length, is_cyclic, is_solvable, is_subnormal, normal_subgroups,
                            normalizer, o_p, p_group_frattini, quotient, quotient_action, sylow_subgroup)
from classify import ClassMembershipReport, PChainWitness, classify, is_in_class_X, is_supersolvable, p_subnormal
from config import settings
from corpus import Corpus, CorpusEntry
from errors import CapExceeded, GroupToolkitError
from finite_group import FiniteGroup, SubgroupHandle, bits_from_indices, coset_action, is_normal
from job_queue import run_jobs
from structure import MinimalNonXShape, is_schmidt, minimal_non_class, outside_x_criterion
from subgroup_lattice import Lattice, build_lattice, frattini

# Groups up to this order are cross-checked against the brute-force oracles
ORACLE_MAX_ORDER = 64


@dataclass(frozen=True)
class TheoremPart:
    """
    One biconditional of the main theorem on one group. `left` is the class membership side,
    `right` the structural side; for the minimal non-X shape `applicable` says whether G is minimal non-X.
    """
    part: int
    applicable: bool
    left: bool
    right: bool
    witness: Optional[SubgroupHandle] = None

    @property
    def agrees(self) -> bool:
        if not self.applicable:
            return True
        if self.part == 4:
            return self.right
        return self.left == self.right


@dataclass(frozen=True)
class TheoremCheck:
    group: FiniteGroup
    parts: tuple[TheoremPart, ...]

    @property
    def agrees(self) -> bool:
        return all(part.agrees for part in self.parts)

    def part(self, number: int) -> TheoremPart:
        return next(part for part in self.parts if part.part == number)


def non_supersolvable_biprimary(group: FiniteGroup, lattice: Lattice,
                                cyclic_sylow_only: bool = False) -> Optional[SubgroupHandle]:
    """
    The smallest biprimary subgroup that is not supersolvable (one per conjugacy class), or None.
    With `cyclic_sylow_only`, only subgroups having a cyclic Sylow subgroup count.
    """
    for members in lattice.classes:
        position = members[0]
        node = lattice.nodes[position]
        primes = primefactors(node.order)
        if len(primes) != 2:
            continue
        if cyclic_sylow_only and not any(is_cyclic(group, within=sylow_subgroup(group, prime, within=node))
                                         for prime in primes):
            continue
        # Biprimary groups are solvable, so Huppert applies to the node's own maximal subgroups
        if not lattice.is_supersolvable_node(position):
            return node
    return None


def _membership_part(part: int, member, tower, group: FiniteGroup, cyclic_sylow_only: bool) -> TheoremPart:
    offending = None
    if tower:
        offending = non_supersolvable_biprimary(group, build_lattice(group), cyclic_sylow_only)
        right = offending is None
    else:
        right = False
    left = member.holds
    witness = None
    if left and not right:
        witness = offending if offending is not None else tower.sylow
    elif right and not left:
        witness = member.obstruction.subgroup
    return TheoremPart(part, True, left, right, witness)


def verify_theorem(group: FiniteGroup) -> TheoremCheck:
    """
    Both sides of each biconditional computed independently:
    w-supersolvable <=> tower and every biprimary subgroup supersolvable;
    in X <=> tower and every biprimary subgroup with a cyclic Sylow subgroup supersolvable;
    minimal non-X => biprimary minimal non-supersolvable with cyclic non-normal Sylow subgroups.
    """
    report = classify(group)
    tower = report.tower_witness
    parts = [
        _membership_part(1, report.sylow_check, tower, group, False),
        _membership_part(3, report.primary_cyclic_check, tower, group, True),
    ]
    minimal = minimal_non_class(group, "X")
    if minimal:
        shape: MinimalNonXShape = minimal.report
        parts.append(TheoremPart(4, True, True, shape.holds, None if shape.holds else group.whole()))
    else:
        parts.append(TheoremPart(4, False, False, False))
    check = TheoremCheck(group, tuple(parts))
    if not check.agrees:
        logging.error(f"Theorem disagreement on {group.label}: "
                      + ", ".join(f"part {part.part}: {part.left} vs {part.right}" for part in parts if not part.agrees))
    return check


def intersection_failure(group: FiniteGroup) -> Optional[tuple[SubgroupHandle, int, SubgroupHandle]]:
    """
    A P-subnormal maximal subgroup H of prime index and an x with H and H^x P-subnormal but
    H n H^x not. Returns (H, x, H n H^x) or None.
    """
    lattice = build_lattice(group)
    whole = group.whole()
    for maximal in lattice.maximal_subgroups():
        if not p_subnormal(group, maximal):
            continue
        seen = {maximal.bits}
        for x in range(group.order):
            conjugate = maximal.conjugate(x)
            if conjugate.bits in seen:
                continue
            seen.add(conjugate.bits)
            meet = maximal.intersection(conjugate)
            if not p_subnormal(group, meet):
                logging.info(f"{group.label}: a subgroup of index {maximal.index_in(whole)} meets its conjugate "
                             f"in order {meet.order}, which is not P-subnormal")
                return maximal, x, meet
    return None


def _generated(group: FiniteGroup, generators: Iterable[int]) -> int:
    """Member bitset of <generators>, multiplied out element by element."""
    generators = tuple(generators)
    members = [0]
    seen = {0}
    for element in members:
        for generator in generators:
            product = group.multiply(element, generator)
            if product not in seen:
                seen.add(product)
                members.append(product)
    return bits_from_indices(members)


def subgroups_by_joins(group: FiniteGroup) -> set[int]:
    """
    Every subgroup as a member bitset: the cyclic subgroups, closed under joining with one more cyclic
    subgroup. Each join is multiplied out from generators, with no coset bookkeeping.
    """
    cyclic = {}
    for element in range(group.order):
        cyclic.setdefault(_generated(group, [element]), element)
    found = {bits: (element,) for bits, element in cyclic.items()}
    queue = list(found)
    for bits in queue:
        for cyclic_bits, element in cyclic.items():
            if not cyclic_bits & ~bits:
                continue
            generators = found[bits] + (element,)
            joined = _generated(group, generators)
            if joined not in found:
                found[joined] = generators
                queue.append(joined)
    return set(found)


def oracle_prime_distances(subgroups: Iterable[int]) -> dict[int, Optional[int]]:
    """
    For every subgroup (a member bitset), the number of steps of some chain up to the whole group in
    which every index is prime, or None. Tries every larger subgroup as the next step.
    """
    ordered = sorted(subgroups, key=lambda bits: bits.bit_count(), reverse=True)
    distances = {ordered[0]: 0}
    for position in range(1, len(ordered)):
        bits = ordered[position]
        order = bits.bit_count()
        distances[bits] = next((distances[above] + 1 for above in ordered[:position]
                                if distances[above] is not None and not bits & ~above
                                and isprime(above.bit_count() // order)), None)
    return distances


def sample_subgroups(group: FiniteGroup, generator: random.Random, count: int) -> list[SubgroupHandle]:
    """
    One Sylow subgroup per prime, then `count` subgroups generated by one or two random elements.
    """
    result = {}
    for prime in group.prime_divisors:
        sylow = sylow_subgroup(group, prime)
        result.setdefault(sylow.bits, sylow)
    for _ in range(count):
        chosen = [generator.randrange(group.order) for _ in range(generator.randint(1, 2))]
        handle = group.subgroup(chosen)
        result.setdefault(handle.bits, handle)
    return list(result.values())


def sample_p_subgroups(group: FiniteGroup, generator: random.Random, prime: int, count: int) -> list[SubgroupHandle]:
    """The Sylow p-subgroup and random conjugates of subgroups generated inside it."""
    sylow = sylow_subgroup(group, prime)
    members = sylow.indices
    result = {sylow.bits: sylow}
    for _ in range(count):
        chosen = [generator.choice(members) for _ in range(generator.randint(1, 2))]
        handle = group.subgroup(chosen).conjugate(generator.randrange(group.order))
        result.setdefault(handle.bits, handle)
    return list(result.values())


@dataclass(frozen=True)
class Outcome:
    holds: bool
    detail: str
    subgroups: tuple[SubgroupHandle, ...] = ()


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    # {"group", "detail", "subgroups"} for the first failure in corpus order
    counterexample: Optional[dict] = None
    skipped_groups: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, label: str, outcome: Outcome):
        if outcome.holds:
            self.passed += 1
            return
        self.failed += 1
        if self.counterexample is None:
            self.counterexample = {
                "group": label,
                "detail": outcome.detail,
                "subgroups": [handle.describe() for handle in outcome.subgroups],
            }

    def skip(self, label: str, reason: str):
        self.skipped += 1
        self.skipped_groups.append({"group": label, "reason": reason})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "counterexample": self.counterexample,
            "skipped_groups": self.skipped_groups,
        }


class GroupContext:
    """Lazily computed facts about one corpus group, shared by its suites."""

    def __init__(self, label: str, group: FiniteGroup, seed: int):
        self.label = label
        self.group = group
        self.seed = seed

    def rng(self, suite: str) -> random.Random:
        # String seeds hash deterministically, independent of PYTHONHASHSEED and scheduling
        return random.Random(f"{self.seed}:{self.label}:{suite}")

    @cached_property
    def report(self) -> ClassMembershipReport:
        return classify(self.group)

    @cached_property
    def solvable(self) -> bool:
        return is_solvable(self.group)

    @cached_property
    def lattice(self) -> Lattice:
        return build_lattice(self.group)

    @cached_property
    def oracle_subgroups(self) -> set[int]:
        return subgroups_by_joins(self.group)

    @cached_property
    def normals(self) -> list[SubgroupHandle]:
        """Proper nontrivial normal subgroups."""
        return [normal for normal in normal_subgroups(self.group) if not normal.is_trivial() and not normal.is_whole()]

    def sampled_normals(self, suite: str, count: int = 3) -> list[SubgroupHandle]:
        normals = self.normals
        if len(normals) <= count:
            return normals
        return sorted(self.rng(f"{suite}:normals").sample(normals, count), key=lambda normal: (normal.order, normal.bits))

    def samples(self, suite: str) -> list[SubgroupHandle]:
        return sample_subgroups(self.group, self.rng(suite), settings.sample_size)

    def p_subnormal_samples(self, suite: str) -> list[tuple[SubgroupHandle, PChainWitness]]:
        result = []
        for handle in self.samples(suite):
            witness = p_subnormal(self.group, handle)
            if witness:
                result.append((handle, witness))
        return result

    @cached_property
    def minimal_non_u(self):
        return minimal_non_class(self.group, "U")

    @cached_property
    def schmidt(self):
        return is_schmidt(self.group)

    @cached_property
    def theorem(self) -> TheoremCheck:
        return verify_theorem(self.group)


GroupSuite = Callable[[GroupContext], Iterable[Outcome]]

GROUP_SUITES: dict[str, GroupSuite] = {}


def suite(name: str):
    def register(function: GroupSuite) -> GroupSuite:
        GROUP_SUITES[name] = function
        return function
    return register


def _in_x(group: FiniteGroup) -> bool:
    return is_in_class_X(group).holds


def _supersolvable(group: FiniteGroup) -> bool:
    return is_solvable(group) and is_supersolvable(group).holds


@suite("prime_index_core_quotient")
def _prime_index_core_quotient(context: GroupContext) -> Iterator[Outcome]:
    if not context.solvable:
        return
    group = context.group
    for maximal in context.lattice.maximal_subgroups():
        index = maximal.index_in(group.whole())
        if not isprime(index):
            continue
        image = coset_action(group, maximal).image
        yield Outcome(_supersolvable(image), f"G/Core(H) for H of index {index} is not supersolvable", (maximal,))


@suite("supersolvable_subgroups_p_subnormal")
def _supersolvable_subgroups_p_subnormal(context: GroupContext) -> Iterator[Outcome]:
    if not context.report.supersolvable:
        return
    for handle in context.samples("supersolvable_subgroups_p_subnormal"):
        yield Outcome(bool(p_subnormal(context.group, handle)), "subgroup of a supersolvable group is not P-subnormal",
                      (handle,))


@suite("normal_intersection_and_image")
def _normal_intersection_and_image(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    for handle, _ in context.p_subnormal_samples("normal_intersection_and_image"):
        for normal in context.sampled_normals("normal_intersection_and_image"):
            inner_group = normal.as_group()
            meet = inner_group.lift(handle.intersection(normal))
            yield Outcome(bool(p_subnormal(inner_group, meet)), "H n N is not P-subnormal in N", (handle, normal))
            action = quotient_action(group, normal)
            yield Outcome(bool(p_subnormal(action.image, action.image_of(handle))),
                          "HN/N is not P-subnormal in G/N", (handle, normal))


@suite("lift_through_quotient")
def _lift_through_quotient(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    for normal in context.sampled_normals("lift_through_quotient"):
        action = quotient_action(group, normal)
        for image_subgroup in sample_subgroups(action.image, context.rng("lift_through_quotient"), 3):
            preimage = action.preimage(image_subgroup)
            upstairs = bool(p_subnormal(group, preimage))
            downstairs = bool(p_subnormal(action.image, image_subgroup))
            yield Outcome(upstairs == downstairs, f"H/N P-subnormal in G/N is {downstairs} but H in G is {upstairs}",
                          (preimage, normal))


@suite("transitivity")
def _transitivity(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    generator = context.rng("transitivity:inner")
    for middle, outer_witness in context.p_subnormal_samples("transitivity"):
        middle_group = middle.as_group()
        for inner in sample_subgroups(middle_group, generator, 2):
            inner_witness = p_subnormal(middle_group, inner)
            if not inner_witness:
                continue
            chain = tuple(group.lift(node) for node in inner_witness.chain) + outer_witness.chain[1:]
            composed = PChainWitness(chain, inner_witness.indices + outer_witness.indices)
            lifted = group.lift(inner)
            yield Outcome(composed.validate() and chain[0] == lifted and bool(p_subnormal(group, lifted)),
                          "composed chain witness does not validate", (lifted, middle))


@suite("conjugation")
def _conjugation(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    generator = context.rng("conjugation:elements")
    for handle, _ in context.p_subnormal_samples("conjugation"):
        conjugate = handle.conjugate(generator.randrange(group.order))
        yield Outcome(bool(p_subnormal(group, conjugate)), "a conjugate of a P-subnormal subgroup is not P-subnormal",
                      (handle, conjugate))


@suite("solvable_intersection_with_subgroup")
def _solvable_intersection_with_subgroup(context: GroupContext) -> Iterator[Outcome]:
    if not context.solvable:
        return
    others = context.samples("solvable_intersection_with_subgroup:others")
    for handle, _ in context.p_subnormal_samples("solvable_intersection_with_subgroup"):
        for other in others:
            other_group = other.as_group()
            meet = other_group.lift(handle.intersection(other))
            yield Outcome(bool(p_subnormal(other_group, meet)), "H n K is not P-subnormal in K", (handle, other))


@suite("solvable_intersection_of_pair")
def _solvable_intersection_of_pair(context: GroupContext) -> Iterator[Outcome]:
    if not context.solvable:
        return
    handles = [handle for handle, _ in context.p_subnormal_samples("solvable_intersection_of_pair")]
    for first, second in combinations(handles, 2):
        meet = first.intersection(second)
        yield Outcome(bool(p_subnormal(context.group, meet)), "H1 n H2 is not P-subnormal", (first, second))


@suite("subnormal_implies_p_subnormal")
def _subnormal_implies_p_subnormal(context: GroupContext) -> Iterator[Outcome]:
    if not context.solvable:
        return
    group = context.group
    for handle in context.samples("subnormal_implies_p_subnormal") + context.normals:
        if is_subnormal(group, handle):
            yield Outcome(bool(p_subnormal(group, handle)), "subnormal subgroup is not P-subnormal", (handle,))


@suite("p_subgroup_subnormal_iff_in_o_p")
def _p_subgroup_subnormal_iff_in_o_p(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    generator = context.rng("p_subgroup_subnormal_iff_in_o_p")
    for prime in group.prime_divisors:
        largest_normal = o_p(group, prime)
        for handle in sample_p_subgroups(group, generator, prime, 3):
            subnormal = is_subnormal(group, handle)
            yield Outcome(subnormal == (handle <= largest_normal),
                          f"{prime}-subgroup subnormal={subnormal} disagrees with containment in O_{prime}", (handle,))


@suite("p_power_normalizer_index_subnormal")
def _p_power_normalizer_index_subnormal(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    generator = context.rng("p_power_normalizer_index_subnormal")
    for prime in group.prime_divisors:
        for handle in sample_p_subgroups(group, generator, prime, 3):
            index = normalizer(group, handle).index_in(group.whole())
            if primefactors(index) not in ([], [prime]):
                continue
            yield Outcome(is_subnormal(group, handle), f"normalizer index {index} is a power of {prime}, "
                                                       f"yet the subgroup is not subnormal", (handle,))


@suite("largest_prime_p_subnormal_is_subnormal")
def _largest_prime_p_subnormal_is_subnormal(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    if group.order == 1:
        return
    prime = group.prime_divisors[-1]
    for handle in sample_p_subgroups(group, context.rng("largest_prime_p_subnormal_is_subnormal"), prime, 4):
        if p_subnormal(group, handle):
            yield Outcome(is_subnormal(group, handle), f"P-subnormal {prime}-subgroup is not subnormal", (handle,))


@suite("w_supersolvable_has_tower")
def _w_supersolvable_has_tower(context: GroupContext) -> Iterator[Outcome]:
    report = context.report
    if report.w_supersolvable:
        yield Outcome(report.tower, "w-supersolvable group without a Sylow tower")


@suite("class_x_has_tower")
def _class_x_has_tower(context: GroupContext) -> Iterator[Outcome]:
    report = context.report
    if report.class_x:
        yield Outcome(report.tower, "group in X without a Sylow tower")


@suite("minimal_non_u_three_primes_w_supersolvable")
def _minimal_non_u_three_primes(context: GroupContext) -> Iterator[Outcome]:
    if context.minimal_non_u and len(context.group.prime_divisors) == 3:
        yield Outcome(context.report.w_supersolvable, "minimal non-supersolvable with three primes is not w-supersolvable")


@suite("minimal_non_u_outside_wu_iff_biprimary")
def _minimal_non_u_outside_wu(context: GroupContext) -> Iterator[Outcome]:
    if context.minimal_non_u:
        outside = not context.report.w_supersolvable
        biprimary = len(context.group.prime_divisors) == 2
        yield Outcome(outside == biprimary, f"minimal non-supersolvable: outside wU={outside}, biprimary={biprimary}")


@suite("frattini_quotient_derived_length")
def _frattini_quotient_derived_length(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    if group.order == 1 or not context.report.w_supersolvable:
        return
    length = derived_length(quotient(group, frattini(group)))
    yield Outcome(isinstance(length, int) and length <= len(group.prime_divisors),
                  f"derived length {length} of G/Phi(G) exceeds {len(group.prime_divisors)} primes")


@suite("primary_cyclic_inherited_by_normal_and_quotient")
def _primary_cyclic_inherited(context: GroupContext) -> Iterator[Outcome]:
    if not context.report.class_x:
        return
    for normal in context.sampled_normals("primary_cyclic_inherited_by_normal_and_quotient"):
        yield Outcome(_in_x(normal.as_group()), "normal subgroup of a group in X is outside X", (normal,))
        yield Outcome(_in_x(quotient(context.group, normal)), "quotient of a group in X is outside X", (normal,))


@suite("class_containments")
def _class_containments(context: GroupContext) -> Iterator[Outcome]:
    report = context.report
    yield Outcome(report.implications_hold(), f"class implications violated: {report.class_flags()}")


@suite("chain_witnesses_validate")
def _chain_witnesses_validate(context: GroupContext) -> Iterator[Outcome]:
    report = context.report
    for subgroup, witness in report.sylow_check.witnesses + report.primary_cyclic_check.witnesses:
        yield Outcome(witness.validate() and witness.chain[0] == subgroup, "chain witness does not validate",
                      (subgroup,))


@suite("normal_sylow_frattini")
def _normal_sylow_frattini(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    frattini_g = None
    for prime in group.prime_divisors:
        sylow = sylow_subgroup(group, prime)
        if not is_normal(group, sylow):
            continue
        frattini_g = frattini_g or frattini(group)
        yield Outcome(p_group_frattini(group, sylow) == frattini_g.intersection(sylow),
                      f"Phi(P) differs from Phi(G) n P for the normal Sylow {prime}-subgroup", (sylow,))


@suite("non_solvable_intersection_failure")
def _non_solvable_intersection_failure(context: GroupContext) -> Iterator[Outcome]:
    if context.solvable:
        return
    found = intersection_failure(context.group)
    if found is not None:
        maximal, _, meet = found
        yield Outcome(True, "", (maximal, meet))


@suite("biprimary_sylows_p_subnormal_supersolvable")
def _biprimary_sylows(context: GroupContext) -> Iterator[Outcome]:
    report = context.report
    if len(context.group.prime_divisors) == 2 and report.w_supersolvable:
        yield Outcome(report.supersolvable, "biprimary with P-subnormal Sylow subgroups is not supersolvable")


@suite("schmidt_structure")
def _schmidt_structure(context: GroupContext) -> Iterator[Outcome]:
    report = context.schmidt
    if report:
        failing = [item for item, holds in report.checks.items() if not holds]
        yield Outcome(report.all_checks_hold, f"Schmidt checks failing: {failing}", (report.sylow_p,))


@suite("minimal_non_u_structure")
def _minimal_non_u_structure(context: GroupContext) -> Iterator[Outcome]:
    result = context.minimal_non_u
    if result:
        failing = [name for name, holds in result.report.checks().items() if not holds]
        yield Outcome(result.report.all_checks_hold, f"minimal non-supersolvable checks failing: {failing}")


@suite("minimal_non_u_outside_x_criterion")
def _minimal_non_u_outside_x(context: GroupContext) -> Iterator[Outcome]:
    if context.minimal_non_u:
        criterion = outside_x_criterion(context.group)
        yield Outcome(criterion.holds, f"outside X={criterion.outside_x} but cyclic non-normal Sylow shape="
                                       f"{criterion.cyclic_non_normal_shape}")


@suite("non_supersolvable_schmidt_outside_x")
def _non_supersolvable_schmidt(context: GroupContext) -> Iterator[Outcome]:
    if context.schmidt and not context.report.supersolvable:
        yield Outcome(not context.report.class_x, "non-supersolvable Schmidt group lies in X")


def _theorem_part_outcome(context: GroupContext, number: int) -> Iterator[Outcome]:
    part = context.theorem.part(number)
    if part.applicable:
        yield Outcome(part.agrees, f"sides disagree: {part.left} vs {part.right}",
                      () if part.witness is None else (part.witness,))


@suite("theorem_w_supersolvable_criterion")
def _theorem_w_supersolvable(context: GroupContext) -> Iterator[Outcome]:
    return _theorem_part_outcome(context, 1)


@suite("theorem_class_x_criterion")
def _theorem_class_x(context: GroupContext) -> Iterator[Outcome]:
    return _theorem_part_outcome(context, 3)


@suite("theorem_minimal_non_x_shape")
def _theorem_minimal_non_x(context: GroupContext) -> Iterator[Outcome]:
    return _theorem_part_outcome(context, 4)


@suite("class_x_subgroup_closed")
def _class_x_subgroup_closed(context: GroupContext) -> Iterator[Outcome]:
    if not context.report.class_x:
        return
    for handle in context.samples("class_x_subgroup_closed"):
        if not handle.is_whole():
            yield Outcome(_in_x(handle.as_group()), "subgroup of a group in X is outside X", (handle,))


@suite("class_x_quotient_closed")
def _class_x_quotient_closed(context: GroupContext) -> Iterator[Outcome]:
    if not context.report.class_x:
        return
    for normal in context.sampled_normals("class_x_quotient_closed"):
        yield Outcome(_in_x(quotient(context.group, normal)), "quotient of a group in X is outside X", (normal,))


@suite("class_x_subdirect_closed")
def _class_x_subdirect_closed(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    for first, second in combinations(context.normals, 2):
        if not first.intersection(second).is_trivial():
            continue
        if _in_x(quotient(group, first)) and _in_x(quotient(group, second)):
            yield Outcome(context.report.class_x, "G/N1 and G/N2 in X with N1 n N2 = 1, yet G is outside X",
                          (first, second))


@suite("class_x_frattini_saturated")
def _class_x_frattini_saturated(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    frattini_g = frattini(group)
    if frattini_g.is_trivial():
        return
    if _in_x(quotient(group, frattini_g)):
        yield Outcome(context.report.class_x, "G/Phi(G) in X, yet G is outside X", (frattini_g,))


@suite("p_subnormal_oracle")
def _p_subnormal_oracle(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    if group.order > ORACLE_MAX_ORDER:
        return
    distances = oracle_prime_distances(context.oracle_subgroups)
    lattice = context.lattice
    for members in lattice.classes:
        node = lattice.nodes[members[0]]
        result = p_subnormal(group, node)
        expected = distances.get(node.bits)
        found = len(result.indices) if result else None
        yield Outcome(found == expected and (not result or result.validate()),
                      f"chain length {found}, oracle {expected}", (node,))


@suite("lattice_count_oracle")
def _lattice_count_oracle(context: GroupContext) -> Iterator[Outcome]:
    group = context.group
    if group.order > ORACLE_MAX_ORDER:
        return
    expected = context.oracle_subgroups
    found = {node.bits for node in context.lattice.nodes}
    yield Outcome(found == expected, f"lattice has {len(found)} subgroups, join closure {len(expected)}")


@dataclass(frozen=True)
class GroupRun:
    label: str
    # suite name -> outcomes, or the skip reason
    outcomes: dict[str, list[Outcome]]
    skips: dict[str, str]
    class_flags: Optional[dict[str, bool]] = None


def run_group_suites(entry: CorpusEntry, seed: int, names: Optional[Iterable[str]] = None) -> GroupRun:
    context = GroupContext(entry.label, entry.group, seed)
    outcomes = {}
    skips = {}
    for name in names or GROUP_SUITES:
        try:
            outcomes[name] = list(GROUP_SUITES[name](context))
        except CapExceeded as e:
            logging.info(f"{name} skipped on {entry.label}: {e}")
            skips[name] = str(e)
        except GroupToolkitError as e:
            logging.error(f"{name} raised on {entry.label}: {e}")
            outcomes[name] = [Outcome(False, f"{type(e).__name__}: {e}")]
    try:
        flags = context.report.class_flags()
    except CapExceeded:
        flags = None
    return GroupRun(entry.label, outcomes, skips, flags)


def _strictness_outcomes(runs: list[GroupRun]) -> list[tuple[str, Outcome]]:
    """U < wU < X < D: one corpus group witnessing each strict containment."""
    witnesses = []
    for inner, outer in (("U", "wU"), ("wU", "X"), ("X", "D")):
        found = next((run.label for run in runs if run.class_flags and run.class_flags[outer]
                      and not run.class_flags[inner]), None)
        witnesses.append((found or "corpus", Outcome(found is not None, f"no corpus group in {outer} outside {inner}")))
    return witnesses


def verify_lemmas(corpus: Corpus, names: Optional[list[str]] = None, jobs: Optional[int] = None) -> list[SuiteResult]:
    """
    Runs every group suite on every corpus group (in parallel under `jobs`), then the corpus-level
    checks. Results are assembled in corpus order, so they do not depend on scheduling.
    """
    names = names or list(GROUP_SUITES)
    seed = settings.seed
    runs = run_jobs([lambda entry=entry: run_group_suites(entry, seed, names) for entry in corpus.entries],
                    jobs or settings.jobs)
    results = {name: SuiteResult(name) for name in names}
    for run in runs:
        for name in names:
            if name in run.skips:
                results[name].skip(run.label, run.skips[name])
                continue
            for outcome in run.outcomes.get(name, []):
                results[name].record(run.label, outcome)
    for skip in corpus.skips:
        for result in results.values():
            result.skip(skip.label, skip.reason)

    strict = SuiteResult("class_containments_strict")
    for label, outcome in _strictness_outcomes(runs):
        if outcome.holds or corpus.spec.include_order400:
            strict.record(label, outcome)
        else:
            # Only the order-400 family is guaranteed to separate wU from X
            strict.skip(label, f"{outcome.detail}, and the order-400 family is not in this corpus")
    suites = list(results.values()) + [strict]
    non_solvable_runs = [run for run in runs if run.class_flags and not run.class_flags["solvable"]]
    if "non_solvable_intersection_failure" in results and non_solvable_runs \
            and not results["non_solvable_intersection_failure"].passed:
        results["non_solvable_intersection_failure"].record(
            "corpus", Outcome(False, "no non-solvable corpus group has P-subnormal subgroups with a non-P-subnormal "
                                     "intersection"))
    for result in suites:
        if not result.ok:
            logging.error(f"Suite {result.name} failed: {result.counterexample}")
    logging.info(f"Verified {len(corpus)} groups: {sum(result.passed for result in suites)} checks passed, "
                 f"{sum(result.failed for result in suites)} failed, {sum(result.skipped for result in suites)} skipped")
    return suites
