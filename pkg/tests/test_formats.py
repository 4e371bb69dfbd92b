import json

import numpy as np
import pytest

from tetrahedron.errors import InputError
from tetrahedron.formats import (
    RunReport,
    fixture_path,
    format_arrangement,
    format_tensor,
    parse_arrangement,
    parse_golden,
    parse_tensor,
    read_arrangement,
    read_tensor,
    tensor_to_object,
)
from tetrahedron.geometry import vertices
from tetrahedron.tensors import ComplexTensor, random_tensor
from tetrahedron.verify import PairwiseR, RepFamily, YbeMatrix


@pytest.mark.parametrize("kind,legs", [("S", 3), ("Stilde", 3), ("Q", 2)])
def test_tensor_round_trip(rng, kind, legs):
    t = random_tensor(rng, 2, legs)
    back = tensor_to_object(parse_tensor(format_tensor(kind, t.data, m=2)))
    assert isinstance(back, ComplexTensor)
    assert np.array_equal(back.data, t.data)


def test_r_round_trip(rng):
    r = rng.normal(size=(9, 9)) + 0j
    back = tensor_to_object(parse_tensor(format_tensor("R", r, d=3)))
    assert isinstance(back, YbeMatrix) and np.array_equal(back.entries, r)


def test_family_and_pairwise_kinds():
    text = "format tetra-tensor/1\nkind M\nd 2\nn 2\nentry 1,0 1 2.5 0\n"
    fam = tensor_to_object(parse_tensor(text))
    assert isinstance(fam, RepFamily) and fam.matrices[1][0, 1] == 2.5
    text = "format tetra-tensor/1\nkind Rset\nm 1\nn 2\nentry 2,0,1,0 0,1 1 0\n"
    pr = tensor_to_object(parse_tensor(text))
    assert isinstance(pr, PairwiseR) and pr.tensors["23"][0][2, 1] == 1


def test_comments_and_blank_lines():
    text = "# hello\nformat tetra-tensor/1\n\nkind Q # two legs\nm 1\nentry 0,0 0,0 1 0\n"
    assert tensor_to_object(parse_tensor(text)).data[0, 0] == 1


@pytest.mark.parametrize("text,needle", [
    ("kind S\nm 2\n", "format"),
    ("format tetra-tensor/2\nkind S\nm 2\n", "unsupported"),
    ("format tetra-tensor/1\nkind X\nm 2\n", "kind"),
    ("format tetra-tensor/1\nkind S\n", "needs m"),
    ("format tetra-tensor/1\nm 2\n", "missing 'kind'"),
    ("format tetra-tensor/1\nkind S\nm 0\n", "positive"),
    ("format tetra-tensor/1\nkind S\nm 2\nentry 0,0,2 0,0,0 1 0\n", "out of range"),
    ("format tetra-tensor/1\nkind S\nm 2\nentry 0,0 0,0,0 1 0\n", "indices"),
    ("format tetra-tensor/1\nkind S\nm 2\nentry 0,0,0 0,0,0 x 0\n", "number"),
    ("format tetra-tensor/1\nkind S\nm 2\nentry 0,0,0 0,0,0 nan 0\n", "non-finite"),
    ("format tetra-tensor/1\nkind S\nm 2\nentry 0,0,0 0,0,0 1 0\nentry 0,0,0 0,0,0 1 0\n", "duplicate"),
    ("format tetra-tensor/1\nkind S\nm 2\nbogus 1\n", "unknown keyword"),
])
def test_malformed_tensor(text, needle):
    with pytest.raises(InputError, match=needle):
        parse_tensor(text)


def test_read_tensor_kind_and_missing(tmp_path):
    p = tmp_path / "q.txt"
    p.write_text(format_tensor("Q", np.eye(4), m=2))
    with pytest.raises(InputError, match="expected kind"):
        read_tensor(p, ("S",))
    with pytest.raises(InputError, match="cannot read"):
        read_tensor(tmp_path / "nope.txt")


def test_format_tensor_shape_check():
    with pytest.raises(InputError):
        format_tensor("S", np.eye(4), m=2)
    with pytest.raises(InputError):
        format_tensor("M", np.eye(4), d=2, n=2)


def test_arrangement_round_trip():
    af = read_arrangement(fixture_path("four_lines.arr"))
    again = parse_arrangement(format_arrangement(af.arrangement, af.directions))
    assert again.directions == af.directions
    assert [(v.x, v.y) for v in vertices(again.arrangement)] == [(v.x, v.y) for v in vertices(af.arrangement)]


@pytest.mark.parametrize("text", [
    "format tetra-arrangement/1\nline 1 1 0 0\n",
    "format tetra-arrangement/1\nline 1 1 0\nline 2 0 1 0\nline 3 1 1 0\nline 4 1 2 3\n",
    "format tetra-arrangement/1\nline 1 1 0 0\nline 1 0 1 0\nline 3 1 1 1\nline 4 1 2 3\n",
    "format tetra-arrangement/1\nline 1 1 0 0\nline 2 0 1 0\nline 3 1 1 1\nline 4 1 2 3\ndirection a 1\n",
])
def test_malformed_arrangement(text):
    with pytest.raises(InputError):
        parse_arrangement(text)


def test_golden_parse():
    g = parse_golden("# format tetra-golden/1\n# note\n1,6 : S(12)(13)(23) = Q(12)(34)\n")
    assert g == {"1,6": ("S(12)(13)(23)", "Q(12)(34)")}
    with pytest.raises(InputError, match="header"):
        parse_golden("1,6 : a = b\n")
    with pytest.raises(InputError, match="expected"):
        parse_golden("# format tetra-golden/1\njunk\n")
    with pytest.raises(InputError, match="duplicate"):
        parse_golden("# format tetra-golden/1\n1 : a = b\n1 : a = b\n")


def test_report_text_and_json():
    rep = RunReport("demo", "0.0", info={"seed": 1})
    rep.add("first", True, residual=np.float64(1e-13))
    rep.add("second", False)
    text = rep.to_text()
    assert "PASS  first" in text and "FAIL  second" in text
    assert text.rstrip().endswith("overall: FAIL")
    doc = json.loads(rep.to_json())
    assert doc["format"] == "tetra-report/1" and doc["pass"] is False
    assert doc["results"][0]["residual"] == 1e-13
