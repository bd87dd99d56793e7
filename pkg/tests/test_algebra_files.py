import json

import pytest

from algebra import build_algebra
from algebra_files import (bundled_path, load_algebra, load_split_extension, module_from_spec,
                           presentation_from_file, presentation_to_file, read_json, write_algebra_file)
from checks import CORPUS
from errors import FieldError, PresentationError
from exactlin import field_tag


@pytest.mark.parametrize("name", CORPUS)
def test_bundled_files_round_trip(bundled, name):
    A = bundled(name)
    data = presentation_to_file(A.presentation)
    assert data == read_json(bundled_path(name))
    assert build_algebra(presentation_from_file(data)).dim == A.dim


def test_write_and_reload(bundled, tmp_path):
    A = bundled("commutative_square")
    target = tmp_path / "square.json"
    write_algebra_file(A.presentation, target)
    assert load_algebra(target).dim == A.dim


def test_prime_fields(tmp_path):
    data = read_json(bundled_path("cycle2_nakayama"))
    data["field"] = "Fp:3"
    target = tmp_path / "cycle2_f3.json"
    target.write_text(json.dumps(data), encoding="utf-8")
    A = load_algebra(target, field="Fp:3")
    assert field_tag(A.field) == "Fp:3"
    assert A.dim == 4


def test_field_must_match_the_file():
    with pytest.raises(FieldError):
        load_algebra(bundled_path("triangle_path"), field="Fp:5")


@pytest.mark.parametrize("data", [
    {"vertices": ["1"]},
    {"vertices": ["1"], "arrows": [], "weights": []},
    {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1"}]},
    {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
])
def test_malformed_algebra_files(data):
    with pytest.raises(PresentationError):
        presentation_from_file(data)


def test_files_must_hold_objects(tmp_path):
    target = tmp_path / "list.json"
    target.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(PresentationError):
        read_json(target)


def test_split_extension_files(bundled, tmp_path):
    C = bundled("cycle2_nakayama")
    ext = load_split_extension(bundled_path("cycle2_doubled_split"), C)
    assert ext.E.dim == 4
    broken = tmp_path / "broken_split.json"
    broken.write_text(json.dumps({"algebra": "cycle2_doubled.json", "section": {}}), encoding="utf-8")
    with pytest.raises(PresentationError):
        load_split_extension(broken, C)


def test_module_specs(bundled):
    C = bundled("triangle_zero_relation")
    assert module_from_spec("regular", C).dim == 6
    assert module_from_spec(" dual ", C).dim == 6
    assert module_from_spec("ext:2", C).dim == 4
    split = module_from_spec(f"file:{bundled_path('cycle2_doubled_split')}", bundled("cycle2_nakayama"))
    assert split.dim == 4


@pytest.mark.parametrize("spec", ["ext:x", "ext:-1", "bogus", ""])
def test_bad_module_specs(bundled, spec):
    with pytest.raises(PresentationError):
        module_from_spec(spec, bundled("triangle_path"))
