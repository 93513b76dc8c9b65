import logging
import os
import random
from dataclasses import dataclass, field
from json import JSONDecodeError, load
from typing import Optional

from config import settings
from descriptors import GroupDescriptor, build, parse_descriptor
from errors import CapExceeded, ParseError
from finite_group import FiniteGroup
from order400 import search_order400_family
from permutation import Permutation

DEFAULT_CORPUS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "default_corpus.json")

CORPUS_FIELDS = {"seed", "descriptors", "random", "order400"}
RANDOM_FIELDS = {"degrees", "generators", "per_degree", "max_order"}


@dataclass(frozen=True)
class RandomSampling:
    """Seeded random subgroups of sym(n): `per_degree` draws of `generators` permutations per degree."""
    # Two random permutations of 7 or 8 points almost always generate A_n or S_n
    degrees: tuple[int, ...] = (4, 5, 6)
    generators: int = 2
    per_degree: int = 5
    # Draws generating a larger group are recorded as skips
    max_order: int = 1000


@dataclass(frozen=True)
class CorpusSpec:
    seed: int
    descriptors: tuple[str, ...]
    random: RandomSampling = field(default_factory=RandomSampling)
    include_order400: bool = True


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    # A descriptor string that rebuilds the group
    descriptor: str
    group: FiniteGroup


@dataclass(frozen=True)
class CorpusSkip:
    label: str
    reason: str

    def to_dict(self) -> dict:
        return {"group": self.label, "reason": self.reason}


@dataclass(frozen=True)
class Corpus:
    spec: CorpusSpec
    entries: tuple[CorpusEntry, ...]
    skips: tuple[CorpusSkip, ...] = ()

    @property
    def groups(self) -> list[FiniteGroup]:
        return [entry.group for entry in self.entries]

    def __len__(self):
        return len(self.entries)


def _positive_int(value, name: str, source: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"{source}: {name} must be a positive integer, got {value!r}")
    return value


def spec_from_json(data: dict, source: str = "<corpus spec>") -> CorpusSpec:
    """
    Reads {"seed": int, "descriptors": [str], "random": {...}?, "order400": bool?}; descriptors are
    validated eagerly.
    """
    if not isinstance(data, dict):
        raise ParseError(f"{source}: expected a JSON object")
    unknown = set(data) - CORPUS_FIELDS
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {', '.join(sorted(unknown))}")
    seed = data.get("seed", settings.seed)
    if isinstance(seed, str):
        try:
            seed = int(seed, 0)
        except ValueError:
            raise ParseError(f"{source}: seed {seed!r} is not an integer")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ParseError(f"{source}: seed must be an integer")
    descriptors = data.get("descriptors", [])
    if not isinstance(descriptors, list) or not all(isinstance(text, str) for text in descriptors):
        raise ParseError(f"{source}: descriptors must be an array of strings")
    for text in descriptors:
        parse_descriptor(text)
    sampling = RandomSampling()
    raw = data.get("random")
    if raw is not None:
        if not isinstance(raw, dict) or set(raw) - RANDOM_FIELDS:
            raise ParseError(f"{source}: random must be an object with fields {', '.join(sorted(RANDOM_FIELDS))}")
        degrees = raw.get("degrees", list(sampling.degrees))
        if not isinstance(degrees, list) or any(not isinstance(degree, int) or not 2 <= degree <= 8
                                                for degree in degrees):
            raise ParseError(f"{source}: random degrees must be integers between 2 and 8")
        generators = _positive_int(raw.get("generators", sampling.generators), "random generators", source)
        if generators > 3:
            raise ParseError(f"{source}: at most 3 random generators, got {generators}")
        sampling = RandomSampling(tuple(degrees), generators,
                                  _positive_int(raw.get("per_degree", sampling.per_degree), "per_degree", source),
                                  _positive_int(raw.get("max_order", sampling.max_order), "max_order", source))
    order400 = data.get("order400", True)
    if not isinstance(order400, bool):
        raise ParseError(f"{source}: order400 must be true or false")
    return CorpusSpec(seed, tuple(descriptors), sampling, order400)


def load_spec(path: str) -> CorpusSpec:
    try:
        with open(path, encoding="utf-8") as file:
            data = load(file)
    except (JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: not valid UTF-8 JSON: {e}")
    return spec_from_json(data, path)


def default_spec() -> CorpusSpec:
    return load_spec(DEFAULT_CORPUS_PATH)


def _random_permutations(generator: random.Random, degree: int, count: int) -> list[Permutation]:
    permutations = []
    for _ in range(count):
        images = list(range(degree))
        generator.shuffle(images)
        permutations.append(Permutation(tuple(images)))
    return permutations


def _sized(group: FiniteGroup) -> Optional[str]:
    """Forces enumeration; the cap message when the group is too large, else None."""
    try:
        group.order
    except CapExceeded as e:
        return str(e)
    return None


def build_corpus(spec: Optional[CorpusSpec] = None) -> Corpus:
    """
    Groups in spec order: the descriptors, then the random draws (degree by degree), then one
    representative per fingerprint class of the order-400 family. Same spec, same corpus.
    """
    spec = spec or default_spec()
    entries = []
    skips = []
    for text in spec.descriptors:
        try:
            group = build(text)
        except CapExceeded as e:
            skips.append(CorpusSkip(text, str(e)))
            continue
        reason = _sized(group)
        if reason:
            logging.warning(f"Corpus: skipping {text}: {reason}")
            skips.append(CorpusSkip(text, reason))
            continue
        entries.append(CorpusEntry(text, text, group))

    generator = random.Random(spec.seed)
    for degree in spec.random.degrees:
        for draw in range(spec.random.per_degree):
            permutations = _random_permutations(generator, degree, spec.random.generators)
            descriptor = GroupDescriptor("explicit", degree=degree, generators=tuple(map(str, permutations)))
            label = f"random:{degree}.{draw}"
            group = FiniteGroup(degree, permutations, str(descriptor), cap=spec.random.max_order)
            reason = _sized(group)
            if reason:
                logging.info(f"Corpus: {label} ({descriptor}) is larger than {spec.random.max_order}, skipped")
                skips.append(CorpusSkip(label, reason))
                continue
            entries.append(CorpusEntry(label, str(descriptor), group))

    if spec.include_order400:
        for position, family_class in enumerate(search_order400_family()):
            group = family_class.representative.group
            entries.append(CorpusEntry(f"order400:{position}", group.label, group))

    logging.info(f"Corpus: {len(entries)} groups, {len(skips)} skipped")
    return Corpus(spec, tuple(entries), tuple(skips))
