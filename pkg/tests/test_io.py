import json

import pytest

from esakia import catalog, io
from esakia.cli import bundled_paths
from esakia.errors import StructureError
from esakia.io import InputError


@pytest.mark.parametrize("path", bundled_paths(), ids=lambda p: p.rsplit("/", 1)[-1])
def test_bundled_files_round_trip_bit_exactly(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    assert io.dump(io.parse(io.loads(text))) == text


def test_bundled_files_match_the_catalog():
    names = {p.rsplit("/", 1)[-1][:-5] for p in bundled_paths()}
    assert names == set(catalog.bundled())
    for name, obj in catalog.bundled().items():
        assert io.parse(json.loads(io.dump(obj))) == obj, name


def test_output_is_one_top_level_key_per_line():
    text = io.dump(catalog.bundled()["c3"])
    lines = text.splitlines()
    assert lines[0] == "{" and lines[-1] == "}"
    assert [l.split('"')[1] for l in lines[1:-1]] == ["kind", "poset"]


def test_parse_error_reports_line_and_column():
    with pytest.raises(InputError) as e:
        io.loads('{\n "kind": ,\n}')
    assert "line 2 column" in str(e.value)


def test_unknown_field_is_rejected_with_path():
    data = {"kind": "poset", "size": 2, "leq": [], "colour": "red"}
    with pytest.raises(StructureError) as e:
        io.parse(data)
    assert "colour" in str(e.value)


def test_kind_mismatch():
    with pytest.raises(StructureError):
        io.parse({"kind": "poset", "size": 1, "leq": []}, "fanspace")


def test_antisymmetry_violation_is_rejected():
    with pytest.raises(StructureError):
        io.parse({"kind": "poset", "size": 2, "leq": [[0, 1], [1, 0]]})


def test_semantic_error_carries_structure_path():
    data = json.loads(io.dump(catalog.bundled()["x4"]))
    data["tails"][0]["below"] = [7]
    with pytest.raises(StructureError) as e:
        io.parse(data)
    assert "tails[0].below" in str(e.value)


def test_negative_index_path():
    with pytest.raises(StructureError) as e:
        io.parse({"kind": "poset", "size": 2, "leq": [[0, -1]]})
    assert "leq[0]" in str(e.value)


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(StructureError):
        io.load(str(tmp_path / "absent.json"))


def test_leq_is_closed_on_load():
    P = io.parse({"kind": "poset", "size": 3, "leq": [[0, 1], [1, 2]]})
    assert P.leq(0, 2)
