import json

import pytest

from leibniz_lab.blocks import CanonicalBlock, canonical_block_matrix
from leibniz_lab.classify import (
    dim3_solvable_table,
    load_reference_table,
    nilpotent_table,
    solvable_dim1_table,
)
from leibniz_lab.errors import MalformedFile
from leibniz_lab.formats import (
    algebra_to_doc,
    doc_to_algebra,
    dumps_canonical,
    load_algebra,
    load_matrix,
    store_algebra,
    store_matrix,
)
from leibniz_lab.scalars import Scalar


def test_algebra_round_trip_objects():
    for entry in nilpotent_table(5):
        text = store_algebra(entry.algebra, blocks=[b.name for b in entry.blocks])
        doc = load_algebra(text)
        assert doc.algebra == entry.algebra
        assert doc.blocks == tuple(b.name for b in entry.blocks)
        assert store_algebra(doc.algebra, blocks=doc.blocks) == text


def test_algebra_round_trip_byte_exact_fixtures():
    import importlib.resources as res

    for name in (
        "nilpotent_dim4.json",
        "nilpotent_dim5.json",
        "nilpotent_dim6.json",
        "nilpotent_dim7.json",
        "solvable_dim2.json",
        "solvable_dim3.json",
    ):
        text = res.files("leibniz_lab").joinpath("fixtures").joinpath(name).read_text()
        docs = json.loads(text)
        rebuilt = dumps_canonical(
            [algebra_to_doc(doc_to_algebra(d).algebra) for d in docs]
        )
        assert rebuilt == text


def test_solvable_tables_round_trip():
    for entry in solvable_dim1_table() + dim3_solvable_table():
        text = store_algebra(entry.algebra)
        assert load_algebra(text).algebra == entry.algebra
        assert store_algebra(load_algebra(text).algebra) == text


def test_matrix_round_trip():
    c = Scalar.param("c")
    M = canonical_block_matrix(CanonicalBlock("B", 4, c))
    text = store_matrix(M)
    assert load_matrix(text) == M
    assert store_matrix(load_matrix(text)) == text
    assert load_matrix("0,1;c,0") == canonical_block_matrix(CanonicalBlock("B", 2, c))


def test_matrix_empty():
    assert load_matrix("") == ()
    assert store_matrix(()) == "\n"


def test_malformed_json_has_location():
    with pytest.raises(MalformedFile) as err:
        load_algebra('{"dim": 2,\n  "products": [}')
    assert err.value.line == 2


def test_malformed_matrix_entry_position():
    with pytest.raises(MalformedFile) as err:
        load_matrix("0,1;c,^")
    assert err.value.line == 2 and err.value.column == 2


def test_bad_indices_rejected():
    with pytest.raises(MalformedFile):
        doc_to_algebra({"dim": 2, "products": [{"left": 3, "right": 1, "result": [[1, "1"]]}]})
    with pytest.raises(MalformedFile):
        doc_to_algebra({"dim": 0, "products": []})


def test_reference_loader():
    refs = load_reference_table(4)
    assert len(refs) == 6
    assert refs[0].algebra.label == "reference-dim4-item1"
