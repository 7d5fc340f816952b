import json

import pytest

from qtetra.cartan import ValuedQuiver
from qtetra.cluster import CharacterContext, Seed
from qtetra.serialize import EXAMPLES, dumps, load_example, load_quiver


@pytest.mark.parametrize("name", EXAMPLES)
def test_examples_consistent(name):
    ex = load_example(name)
    q = ValuedQuiver.from_json(ex["quiver"])
    assert ex["name"] == name
    seed = Seed.from_json(ex["seed"])
    ctx = CharacterContext(q, ex["character"]["word"], ex["character"]["Btilde"])
    assert seed.btilde == ctx.btilde and seed.lam == ctx.lam


def test_dumps_is_stable_json():
    obj = {"b": [1, 2], "a": {"m": [[1, 0], [0, 1]], "s": "x"}}
    text = dumps(obj)
    assert json.loads(text) == obj
    assert "[1, 2]" in text and text.endswith("\n")
    assert dumps(obj) == text


def test_overrides_and_errors(tmp_path):
    data = load_example("a2")
    data["description"] = "override"
    (tmp_path / "a2.json").write_text(dumps(data))
    assert load_example("a2", tmp_path)["description"] == "override"
    assert load_example("b2", tmp_path)["name"] == "b2"
    with pytest.raises(ValueError):
        load_example("e8")
    qf = tmp_path / "q.json"
    qf.write_text(json.dumps(data["quiver"]))
    assert load_quiver(str(qf)) == load_quiver("a2")
