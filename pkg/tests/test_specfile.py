import json

import pytest

from pdcauchy import catalog
from pdcauchy.checker import CheckConfig
from pdcauchy.distribution import DensityAtom, DiracAtom, Distribution
from pdcauchy.errors import SpecError
from pdcauchy.specfile import distribution_records, load_spec, parse_spec


def test_minimal_spec_defaults():
    out = parse_spec({"distribution": [{"type": "dirac"}]})
    assert out["distribution"] == Distribution.of(DiracAtom())
    assert out["config"] == CheckConfig()
    assert out["mode"] == "theorem13" and out["options"] == {}


def test_sum_groups_scale_and_modulate():
    doc = {"distribution": [
        {"type": "density", "kind": "gaussian", "sigma": 1.0},
        {"sum": [{"type": "dirac", "location": 1.0, "weight": [2, 0]},
                 {"sum": [{"type": "density", "kind": "cosine", "b": 2.0}], "weight": [0, 1]}],
         "weight": [0.5, 0], "modulation": 3.0}]}
    F = parse_spec(doc)["distribution"]
    assert F.atoms[0] == DensityAtom("gaussian", 1.0)
    assert F.atoms[1] == DiracAtom(1.0, weight=1.0, modulation=3.0)
    assert F.atoms[2] == DensityAtom("cosine", 2.0, weight=0.5j, modulation=3.0)


@pytest.mark.parametrize("doc, fragment", [
    ({}, "distribution"),
    ({"distribution": [{"type": "dirac", "foo": 1}]}, "foo"),
    ({"distribution": [], "extra": 1}, "extra"),
    ({"distribution": [{"type": "density", "kind": "gauss", "sigma": 1}]}, "gauss"),
    ({"distribution": [{"type": "density", "kind": "gaussian"}]}, "sigma"),
    ({"distribution": [{"type": "density", "kind": "gaussian", "sigma": 1, "lam": 2}]}, "lam"),
    ({"distribution": [{"type": "dirac", "weight": [1]}]}, "weight"),
    ({"distribution": [], "check": {"modulations": [1, 1]}}, "differ"),
    ({"distribution": [], "check": {"grid": {"y_min": 2, "y_max": 1}}}, "y_min"),
    ({"distribution": [], "check": {"tol": {"rel": 0, "abs": 0}}}, "zero"),
    ({"distribution": [], "mode": "fast"}, "fast"),
    ({"distribution": [{"type": "density", "kind": "laplace", "lam": -1}]}, "lam"),
])
def test_invalid_specs(doc, fragment):
    with pytest.raises(SpecError, match=fragment):
        parse_spec(doc)


def test_records_roundtrip(fixture):
    F = fixture.distribution
    assert parse_spec({"distribution": distribution_records(F)})["distribution"] == F


def test_load_spec_reports_bad_json(tmp_path):
    p = tmp_path / "x.spec"
    p.write_text("{not json")
    with pytest.raises(SpecError, match="JSON"):
        load_spec(str(p))
    p.write_text(json.dumps({"distribution": [{"type": "dirac"}], "check": {"n": 2}}))
    assert load_spec(str(p))["config"].n == 2
