import json

import pytest

from minsetplus.errors import DatasetError
from minsetplus.generator import GenerationSpec, generate_individuals, random_knowledge_base
from minsetplus.io import (
    infer_variables,
    kb_from_json,
    kb_to_json,
    read_individuals,
    read_kb,
    write_individuals,
    write_kb,
)


def test_kb_round_trip(tmp_path):
    kb = random_knowledge_base(4, 6, seed=1, n_categorical=2)
    write_kb(kb, tmp_path / "kb.json", {"seed": 1})
    back = read_kb(tmp_path / "kb.json")
    assert kb_to_json(back) == kb_to_json(kb)
    assert json.loads((tmp_path / "kb.json").read_text())["metadata"] == {"seed": 1}


def test_singletons_written_as_pairs():
    doc = {"variables": [{"name": "x", "type": "numeric", "domain": [0, 9]}],
           "objects": [{"name": "a", "values": {"x": [[3, 3]]}}]}
    assert kb_to_json(kb_from_json(doc))["objects"][0]["values"]["x"] == [[3.0, 3.0]]


@pytest.mark.parametrize("doc,field", [
    ({"objects": []}, "variables"),
    ({"variables": [{"name": "x", "domain": [0, 1]}], "objects": []}, "type"),
    ({"variables": [{"name": "x", "type": "numeric", "domain": [0, 1]}],
      "objects": [{"values": {}}]}, "name"),
    ({"variables": [{"name": "x", "type": "numeric", "domain": [0, 1]}],
      "objects": [{"name": "a", "values": {"y": [[0, 1]]}}]}, "unknown"),
    ({"variables": [{"name": "x", "type": "numeric", "domain": [0, 1]}],
      "objects": [{"name": "a", "values": {"x": [0, 1]}}]}, "x"),
])
def test_malformed_documents_name_the_field(doc, field):
    with pytest.raises(DatasetError, match=field):
        kb_from_json(doc)


def test_individuals_round_trip(tmp_path):
    kb = random_knowledge_base(3, 5, seed=2, n_categorical=2)
    t = generate_individuals(kb, GenerationSpec(seed=0, counts=4))
    write_individuals(t, tmp_path / "t.csv")
    back = read_individuals(tmp_path / "t.csv", kb.variables)
    assert back.rows == t.rows and back.clusters == t.clusters and back.ids == t.ids
    write_individuals(t, tmp_path / "u.csv", with_ids=False)
    assert read_individuals(tmp_path / "u.csv", kb.variables).rows == t.rows


def test_missing_cells_and_errors(tmp_path, data_dir):
    p = tmp_path / "m.csv"
    p.write_text("height,cluster\n150,a\n,a\n")
    kb = read_kb(data_dir / "hair_height.json")
    variables = infer_variables(p)
    t = read_individuals(p, variables)
    assert t.rows[1] == (None,)
    p.write_text("height,group\n1,a\n")
    with pytest.raises(DatasetError, match="cluster"):
        read_individuals(p, variables)
    p.write_text("weight,cluster\n1,a\n")
    with pytest.raises(DatasetError, match="unknown"):
        read_individuals(p, kb.variables)


def test_infer_variables(data_dir):
    (v,) = infer_variables(data_dir / "heights.csv")
    assert v.kind == "numeric" and v.domain == (150.0, 190.0)
    hair, height = infer_variables(data_dir / "people.csv")
    assert hair.domain == ("black", "brown", "grey")
    (v,) = infer_variables(data_dir / "heights.csv", {"height": {"type": "numeric", "domain": [0, 300]}})
    assert v.domain == (0, 300)
