import random

import pytest

import catalog
from config import configure
from conftest import subgroup
from corpus import CorpusSpec, RandomSampling, build_corpus
from classify import p_subnormal
from subgroup_lattice import build_lattice
from verification import (GROUP_SUITES, ORACLE_MAX_ORDER, Outcome, SuiteResult, intersection_failure,
                          oracle_prime_distances, sample_subgroups, subgroups_by_joins, verify_lemmas, verify_theorem)

SMALL_SUITES = ["class_containments", "chain_witnesses_validate", "p_subnormal_oracle", "lattice_count_oracle",
                "non_solvable_intersection_failure", "schmidt_structure", "w_supersolvable_has_tower",
                "theorem_class_x_criterion", "conjugation", "lift_through_quotient"]


def _small_corpus(*descriptors: str):
    return build_corpus(CorpusSpec(seed=7, descriptors=descriptors,
                                   random=RandomSampling(degrees=(4,), per_degree=2), include_order400=False))


def test_theorem_on_e49_s3(e49_s3):
    check = verify_theorem(e49_s3)
    assert check.agrees
    assert check.part(1).left and check.part(1).right
    assert check.part(3).left and check.part(3).right
    assert not check.part(4).applicable


def test_theorem_on_e25_z3(e25_z3):
    check = verify_theorem(e25_z3)
    assert check.agrees
    part = check.part(3)
    assert not part.left and not part.right
    assert check.part(4).applicable and check.part(4).right


def test_intersection_of_p_subnormal_subgroups(a5):
    maximal, x, meet = intersection_failure(a5)
    assert maximal.order == 12
    assert bool(p_subnormal(a5, maximal))
    assert bool(p_subnormal(a5, maximal.conjugate(x)))
    assert meet.order == 3
    assert not p_subnormal(a5, meet)


def test_no_intersection_failure_in_supersolvable_group(s3):
    assert intersection_failure(s3) is None


def test_p_subnormal_matches_oracle(s4, a5):
    for group in (s4, a5):
        distances = oracle_prime_distances(subgroups_by_joins(group))
        for node in build_lattice(group).nodes:
            result = p_subnormal(group, node)
            assert (len(result.indices) if result else None) == distances[node.bits]


def test_oracle_values(s4):
    distances = oracle_prime_distances(subgroups_by_joins(s4))
    assert distances[subgroup(s4, "(1 2 3 4)").bits] == 2
    assert distances[subgroup(s4, "(1 2 3)").bits] is None
    assert distances[s4.trivial().bits] == 4
    assert distances[s4.whole().bits] == 0


@pytest.mark.parametrize("builder, count", [
    (lambda: catalog.sym(4), 30),
    (lambda: catalog.alt(5), 59),
    (lambda: catalog.dihedral(8), 10),
    (catalog.q8, 6),
    (lambda: catalog.cyclic(12), 6),
])
def test_join_closure_counts(builder, count):
    group = builder()
    found = subgroups_by_joins(group)
    assert len(found) == count
    assert found == {node.bits for node in build_lattice(group).nodes}


def test_sampling_is_seeded(s4):
    first = [handle.bits for handle in sample_subgroups(s4, random.Random("seed"), 5)]
    second = [handle.bits for handle in sample_subgroups(s4, random.Random("seed"), 5)]
    assert first == second
    assert {8, 3} <= {bits.bit_count() for bits in first}


def test_suite_result_keeps_first_counterexample(s3):
    result = SuiteResult("example")
    result.record("g1", Outcome(True, ""))
    result.record("g2", Outcome(False, "first", (s3.whole(),)))
    result.record("g3", Outcome(False, "second"))
    result.skip("g4", "too large")
    assert not result.ok
    assert result.to_dict() == {
        "name": "example",
        "passed": 1,
        "failed": 2,
        "skipped": 1,
        "counterexample": {"group": "g2", "detail": "first", "subgroups": [["(1 2)", "(1 2 3)"]]},
        "skipped_groups": [{"group": "g4", "reason": "too large"}],
    }


def test_every_suite_is_registered():
    assert len(GROUP_SUITES) == 36
    assert set(SMALL_SUITES) <= set(GROUP_SUITES)


def test_verify_small_corpus():
    corpus = _small_corpus("builtin:s3", "builtin:a4", "builtin:s4", "builtin:a5", "builtin:d8", "builtin:e25_z3")
    results = {result.name: result for result in verify_lemmas(corpus, SMALL_SUITES)}
    for name in SMALL_SUITES:
        assert results[name].ok, results[name].counterexample
    assert results["non_solvable_intersection_failure"].passed == 1
    assert results["schmidt_structure"].passed >= 3
    small = [group for group in corpus.groups if group.order <= ORACLE_MAX_ORDER]
    assert results["lattice_count_oracle"].passed == len(small)


def test_verify_is_independent_of_jobs():
    corpus = _small_corpus("builtin:s4", "builtin:a4", "cyclic:12", "builtin:q8")
    sequential = [result.to_dict() for result in verify_lemmas(corpus, SMALL_SUITES, jobs=1)]
    threaded = [result.to_dict() for result in verify_lemmas(corpus, SMALL_SUITES, jobs=3)]
    assert sequential == threaded


def test_oversize_lattices_are_skipped():
    configure(cap_lattice_order=20)
    corpus = _small_corpus("builtin:s4", "builtin:s3")
    results = {result.name: result for result in verify_lemmas(corpus, ["lattice_count_oracle"])}
    assert results["lattice_count_oracle"].skipped >= 1
    assert results["lattice_count_oracle"].skipped_groups[0]["group"] == "builtin:s4"
    assert results["lattice_count_oracle"].ok


def test_strictness_without_the_order400_family():
    corpus = _small_corpus("builtin:s3", "builtin:e49_s3", "builtin:e25_z3")
    strict = verify_lemmas(corpus, ["class_containments"])[-1]
    assert strict.name == "class_containments_strict"
    assert (strict.passed, strict.failed, strict.skipped) == (2, 0, 1)
    assert "order-400" in strict.skipped_groups[0]["reason"]
