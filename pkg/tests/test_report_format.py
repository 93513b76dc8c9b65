import json

import pytest

from classify import classify, p_subnormal, sylow_tower_supersolvable
from conftest import subgroup
from errors import ParseError
from report_format import (TSV_HEADER, ReportBundle, chain_to_json, parse_bundle, render, report_to_json,
                           tower_to_json)


def _bundle(group, label: str) -> ReportBundle:
    bundle = ReportBundle("classify", {"seed": 7})
    bundle.groups.append(report_to_json(label, classify(group)))
    return bundle


def test_chain_to_json(a5):
    result = chain_to_json(p_subnormal(a5, subgroup(a5, "(1 2 3),(1 2)(3 4)")))
    assert result["p_subnormal"]
    assert [node["order"] for node in result["chain"]] == [12, 60]
    assert result["indices"] == [5]
    failure = chain_to_json(p_subnormal(a5, subgroup(a5, "(1 2 3)")))
    assert failure["p_subnormal"] is False
    assert failure["subgroup"]["generators"] == ["(1 2 3)"]


def test_tower_to_json(a5, e25_z3):
    assert tower_to_json(sylow_tower_supersolvable(e25_z3))["primes"] == [5, 3]
    failure = tower_to_json(sylow_tower_supersolvable(a5))
    assert failure == {"tower": False, "prime": 5, "sylow": failure["sylow"]}
    assert failure["sylow"]["order"] == 5


def test_report_to_json(e49_s3):
    entry = report_to_json("builtin:e49_s3", classify(e49_s3))
    assert entry["order"] == 294
    assert entry["flags"] == {"U": False, "wU": True, "X": True, "D": True, "solvable": True, "nilpotent": False}
    assert list(entry["counterexamples"]) == ["U"]
    assert all(witness["p_subnormal"] for witness in entry["sylow_witnesses"])


def test_json_round_trip(s3):
    bundle = _bundle(s3, "builtin:s3")
    text = render(bundle)
    data = json.loads(text)
    assert list(data) == ["version", "format", "command", "config", "groups", "suites", "skips", "results"]
    assert parse_bundle(text) == bundle


def test_timings_only_when_requested(s3):
    bundle = _bundle(s3, "builtin:s3")
    bundle.timings = {"total": 0.5}
    assert json.loads(render(bundle))["timings"] == {"total": 0.5}


def test_empty_survey():
    data = json.loads(render(ReportBundle("survey", {})))
    assert data["groups"] == [] and data["suites"] == []
    assert not ReportBundle("survey", {}).failed


def test_tsv(s3, a5):
    bundle = _bundle(s3, "builtin:s3")
    bundle.groups.append(report_to_json("builtin:a5", classify(a5)))
    lines = render(bundle, "tsv").splitlines()
    assert lines[0] == TSV_HEADER == "group\torder\tU\twU\tX\tD\tsolvable\tnilpotent"
    assert lines[1] == "builtin:s3\t6\ttrue\ttrue\ttrue\ttrue\ttrue\tfalse"
    assert lines[2] == "builtin:a5\t60\tfalse\tfalse\tfalse\tfalse\tfalse\tfalse"


def test_text(s3):
    bundle = _bundle(s3, "builtin:s3")
    bundle.suites.append({"name": "example", "passed": 1, "failed": 1, "skipped": 0,
                          "counterexample": {"group": "g", "detail": "broken", "subgroups": [["(1 2)"]]},
                          "skipped_groups": []})
    bundle.timings = {"total": 125}
    text = render(bundle, "text")
    assert text.startswith("classify (version 0.1.0, seed 7)\n")
    assert "builtin:s3 (order 6, degree 3)" in text
    assert "example: FAILED (1 passed, 1 failed, 0 skipped)" in text
    assert "    <(1 2)>" in text
    assert "time total: 2m 5s" in text
    assert bundle.failed


def test_unknown_format():
    with pytest.raises(ValueError):
        render(ReportBundle("survey", {}), "xml")


def test_parse_rejects_other_formats():
    with pytest.raises(ParseError):
        parse_bundle('{"format": "v0"}')
