from dataclasses import asdict

import pytest

import catalog
from config import configure, settings
from permutation import parse_generator_list


@pytest.fixture(autouse=True)
def restore_settings():
    """`configure` mutates the shared settings; put them back after every test."""
    saved = asdict(settings)
    yield
    configure(**saved)


def subgroup(group, generators: str):
    """A subgroup of `group` from 1-based cycle notation, e.g. "(1 2 3),(1 2)(3 4)"."""
    return group.subgroup_from_permutations(parse_generator_list(generators, group.degree))


@pytest.fixture
def s3():
    return catalog.sym(3)


@pytest.fixture
def s4():
    return catalog.sym(4)


@pytest.fixture
def a4():
    return catalog.alt(4)


@pytest.fixture
def a5():
    return catalog.alt(5)


@pytest.fixture
def q8():
    return catalog.q8()


@pytest.fixture
def e25_z3():
    return catalog.e25_z3()


@pytest.fixture
def e49_s3():
    return catalog.e49_s3()
