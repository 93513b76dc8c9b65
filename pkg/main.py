import logging
import sys
import time
from argparse import ArgumentParser, Namespace
from traceback import print_exc
from typing import Optional

from characteristic import sylow_subgroup
from classify import classify, non_p_subnormal_classes, p_subnormal, sylow_tower_supersolvable
from config import configure, settings
from corpus import CorpusSkip, build_corpus, default_spec, load_spec
from descriptors import build, parse_descriptor
from errors import CapExceeded, GroupToolkitError
from job_queue import run_jobs
from order400 import COMPLEMENT_ORDER, PRIME, search_order400_family
from permutation import parse_generator_list
from report_format import FORMATS, ReportBundle, chain_to_json, render, report_to_json, subgroup_to_json, tower_to_json
from verification import Outcome, SuiteResult, verify_lemmas

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP_EXCEEDED = 3

ORDER400_CLASS_COUNT = 3


def _parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--cap-elements", type=int, help="Largest group to enumerate (default 20000)")
    common.add_argument("--cap-lattice", type=int, help="Largest subgroup lattice, in nodes (default 200000)")
    common.add_argument("--cap-lattice-order", type=int,
                        help="Largest group order (or interval index) to build a lattice for (default 2184)")
    common.add_argument("--seed", type=lambda text: int(text, 0), help="Sampling seed (default 0xC0FFEE)")
    common.add_argument("--format", choices=FORMATS, default="json", dest="output_format")
    common.add_argument("--skip-oversize", action="store_true", default=None,
                        help="Record groups over a cap as skipped instead of failing")
    common.add_argument("--jobs", type=int, help="Worker threads for per-group work; results do not depend on it")
    common.add_argument("--timings", action="store_true", help="Include timings in JSON output")

    parser = ArgumentParser(prog="main.py", description="P-subnormality and supersolvability toolkit")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("classify", "Class memberships of one group"),
                            ("tower", "Ordered Sylow tower of supersolvable type, or where it fails")):
        command = commands.add_parser(name, parents=[common], help=help_text)
        command.add_argument("descriptor")
    chain = commands.add_parser("chain", parents=[common], help="Shortest prime-index chain from a subgroup")
    chain.add_argument("descriptor")
    chain.add_argument("--subgroup", required=True, help='Generators in cycle notation, e.g. "(1 2 3),(1 2)(4 5)"')
    for name, help_text in (("survey", "Classify every corpus group"),
                            ("verify", "Run the property suites on the corpus")):
        command = commands.add_parser(name, parents=[common], help=help_text)
        command.add_argument("--corpus", default="default", help="Corpus spec file, or 'default'")
    commands.add_parser("search400", parents=[common], help="Rebuild the minimal non-supersolvable groups of order 400")
    return parser


def _load_corpus(path: str):
    return build_corpus(default_spec() if path == "default" else load_spec(path))


def _classify_command(arguments: Namespace, bundle: ReportBundle):
    descriptor = parse_descriptor(arguments.descriptor)
    bundle.groups.append(report_to_json(str(descriptor), classify(build(descriptor))))


def _chain_command(arguments: Namespace, bundle: ReportBundle):
    descriptor = parse_descriptor(arguments.descriptor)
    group = build(descriptor)
    subgroup = group.subgroup_from_permutations(parse_generator_list(arguments.subgroup, group.degree))
    bundle.results.append({"kind": "chain", "group": str(descriptor), **chain_to_json(p_subnormal(group, subgroup))})


def _tower_command(arguments: Namespace, bundle: ReportBundle):
    descriptor = parse_descriptor(arguments.descriptor)
    bundle.results.append({"kind": "tower", "group": str(descriptor),
                           **tower_to_json(sylow_tower_supersolvable(build(descriptor)))})


def _survey_command(arguments: Namespace, bundle: ReportBundle):
    corpus = _load_corpus(arguments.corpus)
    bundle.skips.extend(skip.to_dict() for skip in corpus.skips)

    def survey_entry(entry):
        try:
            return report_to_json(entry.label, classify(entry.group))
        except CapExceeded as e:
            if not settings.skip_oversize:
                raise
            return CorpusSkip(entry.label, str(e))

    for result in run_jobs([lambda entry=entry: survey_entry(entry) for entry in corpus.entries], settings.jobs):
        if isinstance(result, CorpusSkip):
            bundle.skips.append(result.to_dict())
        else:
            bundle.groups.append(result)


def _verify_command(arguments: Namespace, bundle: ReportBundle):
    corpus = _load_corpus(arguments.corpus)
    bundle.skips.extend(skip.to_dict() for skip in corpus.skips)
    bundle.suites.extend(result.to_dict() for result in verify_lemmas(corpus, jobs=settings.jobs))


def _search400_command(arguments: Namespace, bundle: ReportBundle):
    classes = search_order400_family()
    suite = SuiteResult("order400_family")
    suite.record("order400", Outcome(len(classes) == ORDER400_CLASS_COUNT,
                                     f"{len(classes)} fingerprint classes, expected {ORDER400_CLASS_COUNT}"))
    for position, family_class in enumerate(classes):
        representative = family_class.representative
        blocked = non_p_subnormal_classes(representative.group)
        bundle.groups.append(report_to_json(representative.group.label, representative.report))
        bundle.results.append({
            "kind": "order400_class",
            "class": position,
            "members": [member.group.label for member in family_class.members],
            "fingerprint": family_class.fingerprint.to_dict(),
            "non_p_subnormal": [{"subgroup": subgroup_to_json(handle), "class_size": size} for handle, size in blocked],
        })
        # Only the complements of E_25 fail, and they form one class of 25 conjugates
        shapes = [(handle.order, size) for handle, size in blocked]
        suite.record(representative.group.label, Outcome(shapes == [(COMPLEMENT_ORDER, PRIME ** 2)],
                                                         f"non-P-subnormal classes (order, size): {shapes}",
                                                         tuple(handle for handle, _ in blocked)))
        for member in family_class.members:
            sylow_2 = sylow_subgroup(member.group, 2)
            suite.record(member.group.label, Outcome(
                member.report.class_x and not member.report.w_supersolvable and not member.sylow_2_abelian
                and sylow_2.order == COMPLEMENT_ORDER,
                f"expected X, not wU and a non-abelian Sylow 2-subgroup of order {COMPLEMENT_ORDER}", (sylow_2,)))
    bundle.suites.append(suite.to_dict())


COMMANDS = {
    "classify": _classify_command,
    "chain": _chain_command,
    "tower": _tower_command,
    "survey": _survey_command,
    "verify": _verify_command,
    "search400": _search400_command,
}


def main(argv: Optional[list[str]] = None) -> int:
    arguments = _parser().parse_args(argv)
    configure(cap_elements=arguments.cap_elements, cap_lattice=arguments.cap_lattice,
              cap_lattice_order=arguments.cap_lattice_order, seed=arguments.seed, jobs=arguments.jobs,
              skip_oversize=arguments.skip_oversize)
    logging.basicConfig(level=logging.DEBUG if settings.debug else logging.INFO)

    bundle = ReportBundle(arguments.command, settings.echo())
    started = time.perf_counter()
    try:
        COMMANDS[arguments.command](arguments, bundle)
    except CapExceeded as e:
        if not settings.skip_oversize:
            logging.error(f"{e}; rerun with --skip-oversize or a larger cap")
            if settings.debug:
                print_exc()
            return EXIT_CAP_EXCEEDED
        logging.warning(f"Skipped: {e}")
        bundle.skips.append({"group": getattr(arguments, "descriptor", arguments.command), "reason": str(e)})
    except (GroupToolkitError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        if settings.debug:
            print_exc()
        return EXIT_USAGE
    if arguments.timings or arguments.output_format == "text":
        bundle.timings = {"total": round(time.perf_counter() - started, 3)}

    sys.stdout.write(render(bundle, arguments.output_format))
    return EXIT_SUITE_FAILURE if bundle.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
