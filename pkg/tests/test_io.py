import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bhpc.catalog import GeneratorConfig, builtin, generate_pipeline, mutate, names
from bhpc.errors import DimensionMismatch, ParseError, ValidationError
from bhpc.glinalg import EvenMap
from bhpc.grading import FiniteAbelianGroup, sign_multiplier
from bhpc.io import (
    OperatorFile,
    dump_algebra,
    dump_operator,
    dumps_algebra,
    dumps_operator,
    load_algebra,
    load_operator,
    loads_algebra,
    loads_operator,
    parse_algebra,
)
from bhpc.scalars import GF, QQ


@pytest.mark.parametrize("name", names())
def test_builtin_round_trip(name, field):
    B = builtin(name, field).bundle
    text = dumps_algebra(B, {"name": name})
    doc = loads_algebra(text)
    assert doc.bundle == B and doc.meta == {"name": name}
    assert dumps_algebra(doc.bundle, doc.meta) == text


def test_file_round_trip(tmp_path):
    B = builtin("dual_numbers").bundle
    path = tmp_path / "d.json"
    dump_algebra(B, path, {"name": "dual_numbers", "provenance": ["dual_numbers"]})
    assert parse_algebra(path).dim == 2
    assert load_algebra(path).meta["provenance"] == ["dual_numbers"]


def test_scalars_are_strings():
    doc = json.loads(dumps_algebra(builtin("lie_only_zero_mu").bundle))
    assert all(isinstance(c[3], str) for c in doc["bracket"])
    assert any("/" in row_entry for row in doc["alpha"] for row_entry in row)


def base_doc():
    return json.loads(dumps_algebra(builtin("kz2_commutator").bundle))


def test_degree_violating_entry():
    doc = base_doc()
    doc["mu"].append([0, 1, 0, "1"])
    with pytest.raises(ValidationError) as info:
        loads_algebra(json.dumps(doc))
    assert info.value.law == "evenness" and info.value.witness == (0, 1, 0)


def test_noncommuting_maps_rejected_eagerly():
    doc = json.loads(dumps_algebra(builtin("kxk").bundle))
    doc["alpha"] = [["1", "1"], ["0", "1"]]
    doc["beta"] = [["1", "0"], ["0", "2"]]
    with pytest.raises(ValidationError):
        loads_algebra(json.dumps(doc))


def test_bad_bicharacter_rejected():
    doc = base_doc()
    doc["bicharacter"] = {"kind": "table", "table": [["1", "1"], ["1", "1/2"]]}
    with pytest.raises((ValidationError, ParseError)):
        loads_algebra(json.dumps(doc))


def test_parse_error_carries_line():
    text = dumps_algebra(builtin("kz2_commutator").bundle)
    broken = text.replace('"2"]', '2.0]')
    with pytest.raises(ParseError) as info:
        loads_algebra(broken)
    assert info.value.line == text.splitlines().index('  "bracket": [') + 1
    with pytest.raises(ParseError) as info:
        loads_algebra("{\n  \"format\": \n")
    assert info.value.line is not None


@pytest.mark.parametrize("mutation", [
    lambda d: d.pop("basis"),
    lambda d: d.update(field={"kind": "prime", "p": 8}),
    lambda d: d.update(group={"orders": [0]}),
    lambda d: d.update(basis=[[0], [5]]),
    lambda d: d.update(alpha=[["1"]]),
    lambda d: d.update(mu=[[0, 0, 9, "1"]]),
    lambda d: d.update(format="something-else"),
])
def test_malformed_documents(mutation):
    doc = base_doc()
    mutation(doc)
    with pytest.raises((ParseError, ValidationError)):
        loads_algebra(json.dumps(doc))


def test_missing_product_means_zero():
    doc = base_doc()
    doc.pop("bracket")
    assert loads_algebra(json.dumps(doc)).bundle.bracket.is_zero()


def test_mutated_bundle_still_serializes():
    B = mutate(builtin("dual_numbers").bundle, 0)
    assert loads_algebra(dumps_algebra(B)).bundle == B


@settings(max_examples=25)
@given(seed=st.integers(0, 2**32), field=st.sampled_from([QQ, GF(7), GF(11)]),
       orders=st.sampled_from([(2,), (3,), (2, 2)]))
def test_generated_round_trip(seed, field, orders):
    B = generate_pipeline(GeneratorConfig(seed=seed, orders=orders, field=field, base="auto", max_dim=6)).bundle
    text = dumps_algebra(B)
    assert dumps_algebra(loads_algebra(text).bundle) == text


# -- operator files --------------------------------------------------------------

def test_operator_round_trip(tmp_path):
    entry = builtin("dual_numbers")
    w = entry.operators["rota_baxter_nilpotent"]
    op = OperatorFile("rota_baxter", w.map, weight=QQ.coerce(-2))
    path = tmp_path / "r.json"
    dump_operator(op, QQ, path)
    back = load_operator(path, entry.bundle)
    assert back.matrix == w.map and back.weight == -2
    assert back.witness().kind == "rota_baxter"
    assert dumps_operator(back, QQ) == path.read_text()


def test_averaging_operator_exponents():
    P = builtin("kz2_twisted").bundle
    op = OperatorFile("centroid", P.alpha, k=1, l=0)
    back = loads_operator(dumps_operator(op, QQ), P)
    assert (back.k, back.l) == (1, 0)


def test_multiplier_file():
    P = builtin("kz2xz2_commutator").bundle
    sigma = sign_multiplier(FiniteAbelianGroup((2, 2)), QQ, [(0, 1)])
    op = OperatorFile("multiplier", sigma)
    back = loads_operator(dumps_operator(op, QQ), P)
    assert np.array_equal(back.matrix.table, sigma.table)
    with pytest.raises(ValueError):
        back.witness()


def test_operator_dimension_mismatch():
    D = builtin("dual_numbers").bundle
    text = dumps_operator(OperatorFile("map", EvenMap.identity(D.space)), QQ)
    with pytest.raises(DimensionMismatch):
        loads_operator(text, builtin("kz2xz2_commutator").bundle)


def test_operator_unknown_kind():
    D = builtin("dual_numbers").bundle
    text = dumps_operator(OperatorFile("map", EvenMap.identity(D.space)), QQ).replace('"map"', '"other"')
    with pytest.raises(ParseError):
        loads_operator(text, D)
