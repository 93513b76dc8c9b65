from dataclasses import dataclass, field
from json import dumps, loads
from typing import Optional, Union

from classify import ClassMembershipReport, NotPSubnormal, NoTower, PChainWitness, SylowTowerWitness
from errors import ParseError
from finite_group import SubgroupHandle
from format_duration import format_duration

TOOL_VERSION = "0.1.0"
REPORT_FORMAT_VERSION = "v1"
FORMATS = ("json", "tsv", "text")
FLAG_COLUMNS = ("U", "wU", "X", "D", "solvable", "nilpotent")
TSV_HEADER = "\t".join(("group", "order") + FLAG_COLUMNS)


def subgroup_to_json(handle: SubgroupHandle) -> dict:
    """Subgroups serialize as generator lists in cycle notation, never as element lists."""
    return {"order": handle.order, "generators": handle.describe()}


def chain_to_json(result: Union[PChainWitness, NotPSubnormal]) -> dict:
    if result:
        return {
            "p_subnormal": True,
            "chain": [subgroup_to_json(node) for node in result.chain],
            "indices": list(result.indices),
        }
    return {
        "p_subnormal": False,
        "subgroup": subgroup_to_json(result.subgroup),
        "reachable_orders": sorted(node.order for node in result.reachable),
    }


def tower_to_json(result: Union[SylowTowerWitness, NoTower]) -> dict:
    if result:
        return {
            "tower": True,
            "series": [subgroup_to_json(node) for node in result.series],
            "primes": list(result.primes),
            "factor_orders": list(result.factor_orders),
        }
    return {"tower": False, "prime": result.prime, "sylow": subgroup_to_json(result.sylow)}


def report_to_json(label: str, report: ClassMembershipReport) -> dict:
    group = report.group
    return {
        "group": label,
        "order": group.order,
        "degree": group.degree,
        "flags": report.class_flags(),
        "structure": report.flags.to_dict(),
        "tower": tower_to_json(report.tower_witness),
        "sylow_witnesses": [{"subgroup": subgroup_to_json(subgroup), **chain_to_json(witness)}
                            for subgroup, witness in report.sylow_check.witnesses],
        "primary_cyclic_witnesses": [{"subgroup": subgroup_to_json(subgroup), **chain_to_json(witness)}
                                     for subgroup, witness in report.primary_cyclic_check.witnesses],
        "maximal_indices": None if report.supersolvability is None else list(report.supersolvability.indices),
        "counterexamples": {name: subgroup_to_json(handle) for name, handle in report.counterexamples.items()},
    }


@dataclass
class ReportBundle:
    command: str
    config: dict
    groups: list[dict] = field(default_factory=list)
    suites: list[dict] = field(default_factory=list)
    skips: list[dict] = field(default_factory=list)
    # Command-specific payloads (chain, tower, theorem, search results)
    results: list[dict] = field(default_factory=list)
    timings: Optional[dict] = None
    version: str = TOOL_VERSION

    @property
    def failed(self) -> bool:
        return any(suite["failed"] for suite in self.suites)

    def to_json(self) -> dict:
        data = {
            "version": self.version,
            "format": REPORT_FORMAT_VERSION,
            "command": self.command,
            "config": self.config,
            "groups": self.groups,
            "suites": self.suites,
            "skips": self.skips,
            "results": self.results,
        }
        if self.timings is not None:
            data["timings"] = self.timings
        return data

    @classmethod
    def from_json(cls, data: dict) -> "ReportBundle":
        if not isinstance(data, dict) or data.get("format") != REPORT_FORMAT_VERSION:
            raise ParseError(f"Not a {REPORT_FORMAT_VERSION} report bundle")
        return cls(command=data["command"], config=data["config"], groups=data["groups"], suites=data["suites"],
                   skips=data["skips"], results=data["results"], timings=data.get("timings"),
                   version=data["version"])


def parse_bundle(text: str) -> ReportBundle:
    return ReportBundle.from_json(loads(text))


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _render_tsv(bundle: ReportBundle) -> str:
    lines = [TSV_HEADER]
    for entry in bundle.groups:
        flags = entry["flags"]
        lines.append("\t".join([entry["group"], str(entry["order"])] + [_flag(flags[column]) for column in FLAG_COLUMNS]))
    return "\n".join(lines) + "\n"


def _generators(subgroup: dict) -> str:
    return "<" + ", ".join(subgroup["generators"]) + ">"


def _render_chain(result: dict) -> list[str]:
    if result["p_subnormal"]:
        orders = " < ".join(str(node["order"]) for node in result["chain"])
        lines = [f"    chain (orders {orders}), indices {result['indices']}"]
        lines += [f"      {_generators(node)}" for node in result["chain"]]
        return lines
    return [f"    not P-subnormal: {_generators(result['subgroup'])}; reachable orders {result['reachable_orders']}"]


def _render_tower(result: dict) -> list[str]:
    if result["tower"]:
        orders = " < ".join(str(node["order"]) for node in result["series"])
        return [f"  tower: {orders} (primes {' > '.join(map(str, result['primes']))})"]
    return [f"  no tower: Sylow {result['prime']}-subgroup {_generators(result['sylow'])} does not extend the series"]


def _render_group(entry: dict) -> list[str]:
    lines = [f"{entry['group']} (order {entry['order']}, degree {entry['degree']})",
             "  " + "  ".join(f"{column}: {_flag(entry['flags'][column])}" for column in FLAG_COLUMNS)]
    lines += _render_tower(entry["tower"])
    for key, title in (("sylow_witnesses", "Sylow"), ("primary_cyclic_witnesses", "primary cyclic")):
        for witness in entry[key]:
            lines.append(f"  {title} {_generators(witness['subgroup'])}:")
            lines += _render_chain(witness)
    for name, subgroup in entry["counterexamples"].items():
        lines.append(f"  not {name}: witnessed by {_generators(subgroup)} (order {subgroup['order']})")
    return lines


def _render_text(bundle: ReportBundle) -> str:
    lines = [f"{bundle.command} (version {bundle.version}, seed {bundle.config.get('seed')})"]
    for entry in bundle.groups:
        lines += _render_group(entry)
    for result in bundle.results:
        kind = result.get("kind")
        lines.append(f"{kind}: {result.get('group', '')}")
        if "p_subnormal" in result:
            lines += _render_chain(result)
        elif "tower" in result:
            lines += _render_tower(result)
        else:
            lines += [f"  {key}: {value}" for key, value in result.items() if key not in ("kind", "group")]
    for suite in bundle.suites:
        status = "ok" if not suite["failed"] else "FAILED"
        lines.append(f"{suite['name']}: {status} ({suite['passed']} passed, {suite['failed']} failed, "
                     f"{suite['skipped']} skipped)")
        if suite["counterexample"]:
            counterexample = suite["counterexample"]
            lines.append(f"  first counterexample in {counterexample['group']}: {counterexample['detail']}")
            lines += [f"    <{', '.join(generators)}>" for generators in counterexample["subgroups"]]
    for skip in bundle.skips:
        lines.append(f"skipped {skip['group']}: {skip['reason']}")
    if bundle.timings:
        lines += [f"time {name}: {format_duration(seconds)}" for name, seconds in bundle.timings.items()]
    return "\n".join(lines) + "\n"


def render(bundle: ReportBundle, output_format: str = "json") -> str:
    """
    :param output_format: "json" (canonical, fixed key order), "tsv" (one row per group) or "text".
    """
    if output_format == "json":
        return dumps(bundle.to_json(), indent=2, ensure_ascii=False) + "\n"
    if output_format == "tsv":
        return _render_tsv(bundle)
    if output_format == "text":
        return _render_text(bundle)
    raise ValueError(f"Unknown format {output_format!r}, expected one of {FORMATS}")
