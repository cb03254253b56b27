import json
import pathlib

import pytest

import cstnu

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"

BRANCHING = {
    "letters": ["A"],
    "timepoints": [{"id": "Z"}, {"id": "P"}, {"id": "X", "label": "A"}],
    "observations": {"A": "P"},
    "constraints": [
        {"from": "Z", "to": "P", "delta": 2},
        {"from": "P", "to": "Z", "delta": -1},
        {"from": "X", "to": "P", "delta": "-1/1000", "label": "A"},
        {"from": "Z", "to": "X", "delta": 9, "label": "A"},
    ],
}


def test_labels():
    universe = {str(l) for l in cstnu.enumerate_universe("AB")}
    assert universe == {"[]", "A", "B", "!A", "!B", "AB", "A!B", "!AB", "!A!B"}
    a, nb = cstnu.Label("A"), cstnu.Label("!B")
    assert a.con(nb)
    assert str(a.conjoin(nb)) == "A!B"
    assert a.conjoin(cstnu.Label("!A")) is None
    assert cstnu.Label("AB").sub(a)
    with pytest.raises(cstnu.ParseError):
        cstnu.Label("A!A")


def test_validate_and_project():
    net = cstnu.network_from_dict(BRANCHING)
    assert net.kind == "CSTN"
    assert cstnu.validate(net)["ok"]
    stn = cstnu.project(net, "A=1")
    assert [t["id"] for t in stn["timepoints"]] == ["Z", "P", "X"]
    bad = dict(BRANCHING, constraints=BRANCHING["constraints"] + [{"from": "Z", "to": "X", "delta": 1}])
    report = cstnu.validate(cstnu.network_from_dict(bad))
    assert not report["ok"] and report["violations"][0]["condition"] == "WD1"


def test_check_dc_round_trip():
    net = cstnu.network_from_dict(BRANCHING)
    result = cstnu.check_dc(net)
    assert result["verdict"] == "controllable"
    check = cstnu.verify_strategy(net, result["strategy"])
    assert check["viable"] and check["dynamic_star"] and check["dynamic"]


def test_propagate_and_solve():
    stn = cstnu.network_from_dict({
        "timepoints": [{"id": "A"}, {"id": "B"}, {"id": "C"}],
        "constraints": [
            {"from": "A", "to": "B", "delta": "5/2"},
            {"from": "B", "to": "C", "delta": 1},
            {"from": "C", "to": "A", "delta": -1},
        ],
    })
    assert cstnu.solve(stn)["consistent"]
    result = cstnu.propagate(stn)
    assert result["fixpoint"] and not result["refuted"]
    bounds = {(c["from"], c["to"]): cstnu.to_fraction(c["delta"]) for c in result["constraints"]}
    assert bounds[("A", "C")] == cstnu.to_fraction("7/2")


def test_workflow_fixture():
    net, mapping = cstnu.compile_workflow((DATA / "emergency.wf").read_text())
    assert cstnu.validate(net)["ok"]
    assert mapping["T1"]["start"] == "T1_S"
    assert cstnu.check_dc(net)["verdict"] == "controllable"


def test_errors():
    with pytest.raises(cstnu.ParseError):
        cstnu.Network.from_json("{oops")
    net = cstnu.network_from_dict(BRANCHING)
    with pytest.raises(cstnu.Error):
        cstnu.project(net, "B=1")
    with pytest.raises(cstnu.ParseError):
        cstnu.compile_workflow("task T [4,2]\n")
