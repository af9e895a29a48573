"""
FIBRA - Documents: parsing, label rendering, conversion to and from domain objects.
"""

import json

import pytest

from bundles import trivial_bundle, verify_bundle
from core import store
from core.catalog import example, example_names, example_role
from core.errors import DocumentError, InvalidObjectError, NotContinuousError, UnknownPointError
from finspace import product
from functorcat import natural_iso
from grothendieck import groth


def test_render_label_joins_tuples():
    assert store.render_label("a") == "a"
    assert store.render_label(("0", "b")) == "0∣b"
    assert store.render_label((("0", "a"), "x")) == "(0∣a)∣x"


def test_space_document_lists_closure(X3):
    doc = store.space_to_doc(X3, name="X")
    assert doc.points == ["a", "b", "c"]
    assert ("b", "a") in doc.leq_closure
    assert ("b", "c") in doc.leq_closure and ("c", "b") in doc.leq_closure
    assert doc.opens is None
    assert store.space_from_doc(doc) == X3


def test_dump_opens(S):
    doc = store.space_to_doc(S, dump_opens=True)
    assert doc.opens == [[], ["0"], ["0", "1"]]


def test_dump_document_is_utf8_json(S, X3):
    text = store.dump_document(store.space_to_doc(product(S, X3)))
    assert "0∣a" in text
    payload = json.loads(text)
    assert payload["kind"] == "space"
    assert "opens" not in payload


def test_parse_errors_are_document_errors():
    with pytest.raises(DocumentError):
        store.parse_document("{not json")
    with pytest.raises(DocumentError):
        store.parse_document(json.dumps({"kind": "torus"}))
    with pytest.raises(DocumentError):
        store.parse_document(json.dumps({"kind": "space"}))


def test_read_missing_file(tmp_path):
    with pytest.raises(DocumentError):
        store.read_document(tmp_path / "absent.json")


def test_expect_checks_kind(S):
    doc = store.space_to_doc(S)
    assert store.expect(doc, "space") is doc
    with pytest.raises(DocumentError):
        store.expect(doc, "functor", "bundle")


def test_map_document_rejects_bad_points(write_doc, S):
    space = {"kind": "space", "points": ["0", "1"], "leq": [["0", "1"]]}
    bad = {"kind": "map", "domain": space, "codomain": space, "map": {"0": "0", "1": "z"}}
    with pytest.raises(UnknownPointError):
        store.from_document(store.read_document(write_doc("bad.json", bad)))
    partial = {"kind": "map", "domain": space, "codomain": space, "map": {"0": "0"}}
    with pytest.raises(UnknownPointError):
        store.from_document(store.parse_document(json.dumps(partial)))
    swapped = {"kind": "map", "domain": space, "codomain": space, "map": {"0": "1", "1": "0"}}
    with pytest.raises(NotContinuousError):
        store.from_document(store.parse_document(json.dumps(swapped)))


def test_functor_document_from_covering_arrows(F3):
    doc = store.functor_to_doc(F3)
    assert [(a.source, a.target) for a in doc.arrows] == [("0", "1")]
    payload = json.loads(store.dump_document(doc))
    assert payload["arrows"][0]["from"] == "0"
    D = store.from_document(store.parse_document(json.dumps(payload)))
    assert natural_iso(D, F3) is not None
    assert D.arrow_at("0", "1").image == F3.arrow_at("0", "1").image


def test_functor_document_needs_every_object(F3):
    payload = json.loads(store.dump_document(store.functor_to_doc(F3)))
    del payload["objects"]["1"]
    with pytest.raises(UnknownPointError):
        store.from_document(store.parse_document(json.dumps(payload)))
    payload = json.loads(store.dump_document(store.functor_to_doc(F3)))
    payload["objects"]["7"] = payload["objects"]["0"]
    with pytest.raises(UnknownPointError):
        store.from_document(store.parse_document(json.dumps(payload)))


def test_group_elements_keyed_by_pairs(SS0, aut_ss0):
    D = example_role("ss0", "functor")
    doc = store.functor_to_doc(D, group=aut_ss0)
    assert doc.group_elements["b∣d"] != aut_ss0.identity
    assert doc.group_elements["a∣c"] == aut_ss0.identity


def test_groth_document_loads_as_projection(F2, X3):
    G = groth(F2)
    doc = store.groth_to_doc(G)
    assert doc.tags["1∣c"] == ("1", "c")
    p = store.from_document(store.parse_document(store.dump_document(doc)))
    assert p.image == G.projection.image
    assert verify_bundle(p, X3) is not None


def test_bundle_document_keeps_trivializations(SS0, X3):
    bundle = trivial_bundle(SS0, X3)
    doc = store.bundle_to_doc(bundle)
    assert set(doc.trivializations) == {"a", "b", "c", "d"}
    loaded = store.from_document(store.parse_document(store.dump_document(doc)))
    assert loaded.verified
    assert len(loaded.total) == 12


def test_bundle_document_rejects_bad_witness(S, X3):
    payload = json.loads(store.dump_document(store.bundle_to_doc(trivial_bundle(S, X3))))
    # send every point of U_0 x F to the same place
    witness = payload["trivializations"]["0"]
    first = next(iter(witness.values()))
    payload["trivializations"]["0"] = {k: first for k in witness}
    with pytest.raises(InvalidObjectError):
        store.from_document(store.parse_document(json.dumps(payload)))


def test_bundle_document_without_witnesses_is_a_candidate(S, X3):
    payload = json.loads(store.dump_document(store.bundle_to_doc(trivial_bundle(S, X3))))
    del payload["trivializations"]
    loaded = store.from_document(store.parse_document(json.dumps(payload)))
    assert not loaded.verified


@pytest.mark.parametrize("name", example_names())
def test_every_example_object_has_a_document(name):
    for role, obj in example(name).items():
        doc = store.to_document(obj, name=f"{name}/{role}")
        assert store.parse_document(store.dump_document(doc)).kind == doc.kind


def test_report_document():
    doc = store.report("verify", False, ["not a fiber bundle with this fiber"], seed=3)
    payload = json.loads(store.dump_document(doc))
    assert payload == {
        "kind": "report",
        "command": "verify",
        "ok": False,
        "problems": ["not a fiber bundle with this fiber"],
        "details": {"seed": 3},
    }
