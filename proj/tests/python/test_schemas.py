import json
import os
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

import sgehom

ROOT = Path(__file__).resolve().parents[2]
EXAMPLES = Path(os.environ.get("SGEHOM_EXAMPLES_DIR", ROOT / "examples_data"))


def schema(name):
    s = json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(s)
    return jsonschema.Draft202012Validator(s)


def kind_of(doc):
    if "tensor" in doc:
        return "tensor"
    return "problem" if "C1" in doc else "shapes"


COMMAND = {"problem": sgehom.verify_energy, "shapes": sgehom.geometry, "tensor": sgehom.check_pd}
EXAMPLE_FILES = sorted(EXAMPLES.glob("*.json"))


def test_examples_present():
    assert len(EXAMPLE_FILES) >= 10


@pytest.mark.parametrize("path", EXAMPLE_FILES, ids=lambda p: p.stem)
def test_example_matches_input_schema(path):
    doc = json.loads(path.read_text())
    schema(kind_of(doc)).validate(doc)


@pytest.mark.parametrize("path", EXAMPLE_FILES, ids=lambda p: p.stem)
def test_report_matches_report_schema(path):
    doc = json.loads(path.read_text())
    try:
        result = COMMAND[kind_of(doc)](doc)
    except sgehom.Error:
        pytest.skip("input rejected by semantic checks")
    schema("report").validate(result.report)


def test_homogenize_report_matches_report_schema():
    result = sgehom.homogenize(EXAMPLES / "soft_spheres_3d.json")
    schema("report").validate(result.report)


def test_schema_rejects_unknown_key_and_conflicts():
    problem = schema("problem")
    doc = json.loads((EXAMPLES / "soft_spheres_3d.json").read_text())
    assert problem.is_valid(doc)
    assert not problem.is_valid({**doc, "extra": 1})
    assert not problem.is_valid({**doc, "C_eq": doc["C1"]})
    assert not problem.is_valid({k: v for k, v in doc.items() if k != "f"})
