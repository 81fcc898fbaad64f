import json

import numpy as np
import pytest
from hypothesis import given

from conftest import metric_spaces
from metricglue.diagrams import star_diagram
from metricglue.generators import c_expansive_diagram
from metricglue.homtensor import internal_hom
from metricglue.io import (FormatError, dumps, glue_diagram_from_json, glue_diagram_to_json,
                           hom_to_json, map_from_json, map_to_json, pairs_from_json, pairs_to_json,
                           partition_from_json, partition_to_json, read_json,
                           space_diagram_from_json, space_diagram_to_json, space_from_json,
                           space_to_json)
from metricglue.gluing import EquivRelation
from metricglue.morphisms import PointMap
from metricglue.numerics import INF
from metricglue.pathconvex import PairSet
from metricglue.space import two_point



@given(metric_spaces())
def test_space_round_trip(x):
    text = dumps(space_to_json(x))
    assert space_from_json(json.loads(text)) == x


def test_space_spells_inf():
    obj = space_to_json(two_point(INF))
    assert obj["dist"][0][1] == "inf"


def test_map_round_trip():
    f = PointMap(two_point(1), two_point(2), {"x0": "x1", "x1": "x1"})
    assert map_from_json(json.loads(dumps(map_to_json(f)))) == f


def test_partition_round_trip():
    rel = EquivRelation("abc", [["c", "a"], ["b"]])
    assert partition_from_json(partition_to_json(rel), "abc") == rel


def test_glue_and_space_diagram_round_trip():
    glue = c_expansive_diagram(np.random.default_rng(3), 0.5)
    again = glue_diagram_from_json(json.loads(dumps(glue_diagram_to_json(glue))))
    assert again.hub == glue.hub and again.arms == glue.arms
    star = star_diagram(glue)
    back = space_diagram_from_json(json.loads(dumps(space_diagram_to_json(star))))
    assert back.graph == star.graph and dict(back.maps) == dict(star.maps)


def test_pairs_round_trip():
    s = PairSet([("b", "a"), ("c", "a")])
    assert pairs_from_json(pairs_to_json(s)) == s


def test_hom_json_lists_catalog():
    obj = hom_to_json(internal_hom(two_point(INF), two_point(1)))
    assert len(obj["points"]) == 4
    assert obj["catalog"]["h0"] == {"x0": "x0", "x1": "x0"}


def test_space_by_file_reference(tmp_path):
    (tmp_path / "x.json").write_text(dumps(space_to_json(two_point(1))))
    doc = {"hub": "x.json", "arms": [{"target": "x.json", "map": {"x0": "x0", "x1": "x1"}}]}
    glue = glue_diagram_from_json(doc, tmp_path)
    assert glue.hub == two_point(1)


@pytest.mark.parametrize("obj", [
    {"points": ["a"]},
    {"points": ["a", "b"], "dist": [[0, 1]]},
    {"points": ["a", "b"], "dist": [[0, "far"], ["far", 0]]},
    [1, 2],
])
def test_bad_space_documents(obj):
    with pytest.raises(FormatError):
        space_from_json(obj)


def test_bad_partition():
    with pytest.raises(FormatError):
        partition_from_json({"blocks": [["a"]]}, ["a", "b"])


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(FormatError):
        read_json(p)


def test_dumps_refuses_nan():
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})
