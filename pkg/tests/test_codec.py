import json
import random
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regiongen import geometric_mixture, mixed_model, random_mixed, random_region

from nba_lab import FamilyError, GeometryError, ModelError, make_Tm_eps
from nba_lab.catalog import MODELS
from nba_lab.codec import (
    canonical_json,
    digest,
    model_from_json,
    model_to_json,
    region_from_json,
    region_to_json,
    set_from_json,
    set_to_json,
)

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = {name: json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text()) for name in ("region", "model", "set", "result")}
seeds = st.integers(min_value=0, max_value=10**6)


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(SCHEMAS[name])


@pytest.mark.parametrize("name", sorted(MODELS))
def test_model_roundtrip(name):
    model = MODELS[name]()
    obj = model_to_json(model)
    jsonschema.validate(obj, SCHEMAS["model"])
    assert model_from_json(json.loads(canonical_json(obj))) == model


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_region_roundtrip(seed):
    region = random_region(random.Random(seed))
    obj = region_to_json(region)
    jsonschema.validate(obj, SCHEMAS["region"])
    back = region_from_json(json.loads(canonical_json(obj)))
    assert back == region and canonical_json(region_to_json(back)) == canonical_json(obj)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_set_roundtrip(seed):
    model = geometric_mixture() if seed % 2 else mixed_model()
    s = random_mixed(random.Random(seed), model)
    obj = set_to_json(s)
    jsonschema.validate(obj, SCHEMAS["set"])
    assert set_from_json(obj, model) == s


def test_fixtures_validate():
    for path in sorted((ROOT / "demos" / "data").glob("*.json")):
        obj = json.loads(path.read_text())
        schema = SCHEMAS["model"] if obj.get("kind") in ("lebesgue", "atomic", "mixture", "zero") else SCHEMAS["set"]
        jsonschema.validate(obj, schema)


def test_rational_strings_are_canonical():
    obj = region_to_json(make_Tm_eps(2, "1/64"))
    text = canonical_json(obj)
    assert "0.0" not in text and '"2/4"' not in text
    assert digest(obj) == digest(json.loads(text))


@pytest.mark.parametrize(
    "obj, exc",
    [
        ({"dim": 2, "primitives": [{"kind": "box", "intervals": [["0", "1"]]}]}, GeometryError),
        ({"dim": 2, "primitives": [{"kind": "box", "intervals": [[0, "1"], ["0", "1"]]}]}, GeometryError),
        ({"dim": 2, "primitives": [{"kind": "blob"}]}, GeometryError),
        ({"dim": 2, "primitives": [{"kind": "box", "intervals": [["0.5", "1"], ["0", "1"]]}]}, GeometryError),
    ],
)
def test_bad_regions(obj, exc):
    with pytest.raises(exc):
        region_from_json(obj)


def test_bad_models():
    with pytest.raises(ModelError):
        model_from_json({"kind": "lebesgue"})
    with pytest.raises(ModelError):
        model_from_json({"kind": "atomic", "universe": {"explicit": [{"id": "a", "weight": "0"}]}})
    with pytest.raises(ModelError):
        model_from_json({"kind": "weird"})
    with pytest.raises(FamilyError):
        set_from_json({"kind": "atoms", "mode": "finite", "ids": ["1"]}, MODELS["leb_unit"]())
