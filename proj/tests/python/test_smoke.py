import math
from fractions import Fraction

import pytest

import sicbell


def test_catalog():
    assert sicbell.catalog_names() == ["yo13", "ks18", "ks21"]
    yo = sicbell.catalog_set("yo13")
    assert yo.size == 13
    assert yo.dimension == 3
    assert sorted(yo.weights).count("2") == 4
    assert len(sicbell.edges(yo)) == 24
    assert all(ok for _, ok, _ in sicbell.verify_set(yo))
    assert not sicbell.ks_colorable(sicbell.catalog_set("ks18"))
    with pytest.raises(ValueError):
        sicbell.catalog_set("nope")


def test_json_round_trip():
    ks21 = sicbell.catalog_set("ks21")
    doc = ks21.to_json()
    back = sicbell.SicSet.from_json(doc)
    assert back.vectors == ks21.vectors
    assert back.contexts == ks21.contexts


def test_bounds():
    report = sicbell.bounds(sicbell.catalog_set("ks18"))
    assert report["alpha"] == 4
    assert report["theta"] == pytest.approx(4.5, abs=1e-6)
    weight, witness = sicbell.independence_number([2, Fraction(3, 2), 1], [(0, 1)])
    assert weight == "3"
    assert witness == [0, 2]
    assert sicbell.lovasz_theta([1] * 5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]) == pytest.approx(math.sqrt(5))


def test_quantum_values():
    yo = sicbell.catalog_set("yo13")
    assert sicbell.bell_value(yo) == pytest.approx(35 / 3, abs=1e-10)
    v = sicbell.fit_visibility(11.573, yo)
    assert 0.9 < v < 1.0
    assert sicbell.bell_value(yo, visibility=v) == pytest.approx(11.573, abs=1e-10)
    probs = sicbell.probabilities(yo)
    assert len(probs) == 61
    assert probs[0][2] == pytest.approx(1 / 3)


def test_filter():
    amps = [math.sqrt(0.5), math.sqrt(0.3), math.sqrt(0.2)]
    out, transmissions, success = sicbell.procrustean_filter(amps)
    assert success == pytest.approx(0.6)
    assert all(a == pytest.approx(1 / math.sqrt(3)) for a in out)
    assert len(transmissions) == 3


def test_simulate_is_deterministic():
    cfg = {"set": "ks21", "plan": {"pair_rate": 1000, "integration_time": 1, "seed": 3}, "bootstrap_replicates": 50}
    a = sicbell.simulate(cfg)
    b = sicbell.simulate(cfg)
    assert a == b
    assert a["report"]["sigma"] > 0
    with pytest.raises(ValueError):
        sicbell.simulate({"noise": {"visibility": 3}})


def test_cli():
    code, out, _ = sicbell.run_cli(["catalog", "yo13"])
    assert code == 0
    assert "24 edges" in out
    code, _, err = sicbell.run_cli(["catalog", "missing.json"])
    assert code == 1
    assert err
