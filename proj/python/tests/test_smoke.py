from pathlib import Path

import pytest

import obsel

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def test_exact_prob():
    third = obsel.ExactProb(1, 3)
    assert str(third) == "1/3"
    assert third == obsel.ExactProb.parse("2/6")
    assert float(third * obsel.ExactProb(3)) == 1.0


def test_doomsday_file():
    doc = obsel.parse_scenario((SCENARIOS / "doomsday.scn").read_text())
    assert doc.rule == obsel.Rule.SSA_MINUS_SIA
    post = doc.scenario.posterior(doc.rule, doc.class_name)
    assert post.exact[post.names.index("doom-late")] == "1/1001"
    assert post.odds("doom-late", "doom-soon") == "1/1000"
    assert [stage[0] for stage in post.ledger] == ["SSA: |D|/|C|"]


def test_round_trip():
    text = (SCENARIOS / "sleeping_beauty.scn").read_text()
    doc = obsel.parse_scenario(text)
    again = obsel.parse_scenario(obsel.serialize_scenario(doc))
    assert again.scenario.names == doc.scenario.names
    post = again.scenario.posterior(obsel.Rule.FNC, "wakenings", fnc_limit=True)
    assert post.exact == ["1/3", "2/3"]


def test_errors():
    with pytest.raises(obsel.ParseError, match="line 1"):
        obsel.parse_scenario("[nonsense]\n")
    with pytest.raises(obsel.Error):
        obsel.parse_rule("bayes")
    with pytest.raises(obsel.Error):
        obsel.run_entry("no_such_entry")


def test_catalog():
    assert "sleeping_beauty" in obsel.catalog_names()
    outputs = dict(obsel.run_entry("sleeping_beauty", {"rule": "ssa"}))
    assert outputs["P(Heads)"].startswith("1/2")
    passed, total = obsel.check_catalog()
    assert passed == total > 0


def test_fermi_is_reproducible():
    a = obsel.fermi(V=1.0, samples=2000, seed=3)
    b = obsel.fermi(V=1.0, samples=2000, seed=3, threads=2)
    assert a == b
    assert a["accepted"] == 2000
    assert 0.0 < a["acceptance_rate"] < 1.0
