import pytest

import trivalent as tv
import trivalent.verify as verify_mod
from trivalent.search import CensusReport

GENUS_ONE = [
    ("loop_with_leg", tv.loop_with_leg),
    ("cycle1", lambda: tv.cycle_with_legs(1)),
    ("cycle2", lambda: tv.cycle_with_legs(2)),
    ("cycle3", lambda: tv.cycle_with_legs(3)),
]
GENUS_TWO = [("theta", tv.theta), ("dumbbell", tv.dumbbell)]


@pytest.mark.parametrize("p", (5, 7, 11))
@pytest.mark.parametrize("name,build", GENUS_ONE + GENUS_TWO)
def test_p048_passes_on_corpus(name, build, p):
    report = tv.verify_p048(build(), p)
    assert report.applicable and report.passed
    assert report.witness == ()


@pytest.mark.parametrize("p", (5, 7, 11))
@pytest.mark.parametrize("name,build", GENUS_ONE)
def test_p048_structure_passes_on_genus_one(name, build, p):
    report = tv.verify_p048_structure(build(), p)
    assert report.applicable and report.passed


def test_p048_not_applicable_at_genus_zero():
    report = tv.verify_p048(tv.tripod(), 7)
    assert not report.applicable and report.passed
    for name, build in GENUS_TWO + [("tripod", tv.tripod)]:
        structure = tv.verify_p048_structure(build(), 7)
        assert not structure.applicable


@pytest.mark.parametrize("p", (5, 7, 11, 13))
@pytest.mark.parametrize(
    "build",
    [tv.tripod, tv.theta, tv.dumbbell, tv.loop_with_leg,
     lambda: tv.cycle_with_legs(2), tv.figure_tree],
)
def test_miura_verifier_passes(build, p):
    report = tv.verify_miura(build(), p)
    assert report.passed
    assert report.theorem == "miura"


def test_figure_vector():
    report = tv.verify_figure_vector()
    assert report.passed and report.applicable
    assert "0, 4, 4, 1, 3, 2, 1" in report.observed


def test_report_json_shape():
    obj = tv.verify_p048(tv.loop_with_leg(), 5).to_json_obj()
    assert obj["theorem"] == "p048"
    assert obj["inputs"]["type"] == {"g": 1, "r": 1}
    assert obj["passed"] is True
    assert obj["witness"] == []


def test_failure_carries_witness(monkeypatch):
    # force a count disagreement to exercise the reporting path
    monkeypatch.setattr(
        verify_mod, "count", lambda m, q: CensusReport(99, "backtracking")
    )
    report = tv.verify_p048(tv.theta(), 5)
    assert not report.passed
    assert report.witness


def test_miura_failure_carries_witness(monkeypatch):
    def broken(m, a):
        raise RuntimeError("induced failure")

    monkeypatch.setattr(verify_mod, "miura_transform", broken)
    report = tv.verify_miura(tv.loop_with_leg(), 5)
    assert not report.passed
    assert report.witness and "induced failure" in report.witness[0]["error"]
    # the witness numbering replays through the public predicates
    from trivalent.numbering import numbering_from_json_obj

    replayed = numbering_from_json_obj(report.witness[0]["numbering"])
    assert tv.is_strict(tv.loop_with_leg(), replayed)


def test_structure_check_details():
    # spell the structural claims out on one known case
    p = 7
    m = tv.cycle_with_legs(2)
    loop = tv.reduced_loop(m, "v1")
    loop_edges = {b[0] for b in loop}
    assert loop_edges == {"c1", "c2"}
    constants = []
    for a in tv.enumerate_numberings(m, tv.EnumerationQuery(p, "strict")):
        c = a.values[loop[0]]
        constants.append(c)
        for b in loop:
            assert a.values[b] == c
            assert a.values[m.graph.partner(b)] == p - c
        assert tv.exponent_of(m, a) == (p - 1, p - 1)
    assert sorted(constants) == list(range(1, p))


def test_off_loop_multiset():
    # lollipop: self-loop at v0, stem to v1, two legs at v1; v1 is off the loop
    from trivalent.semigraph import OPEN, Edge, MarkedSemiGraph, SemiGraph

    m = MarkedSemiGraph(
        SemiGraph(
            ("v0", "v1"),
            (Edge("loop", ("v0", "v0")), Edge("mid", ("v0", "v1")),
             Edge("x", ("v1", OPEN)), Edge("y", ("v1", OPEN))),
        ),
        ("x", "y"),
    )
    p = 11
    report = tv.verify_p048_structure(m, p)
    assert report.applicable and report.passed
    for a in tv.enumerate_numberings(m, tv.EnumerationQuery(p, "strict")):
        ms = sorted(a.values[b] for b in m.graph.branches_at["v1"])
        assert ms == [1, 1, p - 1]
    assert tv.verify_p048(m, p).passed
