import json
from fractions import Fraction

import pytest

from ilmt.verify import BATTERIES, SUITES, Check, VerifyReport, run_suite


def test_every_suite_maps_to_batteries():
    assert set(SUITES) == {
        "motifs", "quasirandom", "diameter", "connectivity", "domination",
        "cops", "coloring", "universality", "distinguish", "all",
    }
    for batteries in SUITES.values():
        assert all(b in BATTERIES for b in batteries)
    assert len(SUITES["all"]) == len(BATTERIES)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_report_json_shape():
    rep = VerifyReport("x", [Check("c", "a", "i", Fraction(1, 3), [Fraction(2, 4)], True), Check("d", "a", "j", 1, 2, False)])
    doc = rep.to_json(timing=False)
    assert doc["summary"] == {"total": 2, "passed": 1, "failed": 1}
    assert doc["checks"][0]["expected"] == {"num": 1, "den": 3}
    assert doc["checks"][0]["observed"] == [{"num": 1, "den": 2}]
    assert "seconds" not in doc["checks"][0]
    json.dumps(rep.to_json())
    assert not rep.ok and len(rep.failures) == 1


def test_quasirandom_suite_is_green():
    rep = run_suite("quasirandom")
    assert rep.ok, [c.instance for c in rep.failures]


def test_coloring_suite_reproduces_trio_deltas():
    rep = run_suite("coloring")
    deltas = [c for c in rep.checks if c.claim == "0-step chi delta"]
    assert [c.observed["delta"] for c in deltas] == [0, 1, 2]
    assert rep.ok
