import numpy as np
import pytest

from corpus import dt_ni
from nipr.docio import document_of, jsonable, load_document, parse_document, save_document
from nipr.poly import RationalScalar
from nipr.ratmat import RationalMatrix
from nipr.realization import StateSpace, minimal_realization


def test_tfm_round_trip(tmp_path):
    rng = np.random.default_rng(71)
    G = dt_ni(rng, m=2, nterms=2)
    path = tmp_path / "g.json"
    save_document(document_of(G, name="g"), path)
    doc = load_document(path)
    assert doc["name"] == "g"
    assert doc["form"] == "tfm"
    back = parse_document(doc)
    assert isinstance(back, RationalMatrix)
    assert G.equals(back)


def test_ss_round_trip(tmp_path):
    rng = np.random.default_rng(72)
    ss = minimal_realization(dt_ni(rng, m=2, nterms=2))
    path = tmp_path / "ss.json"
    save_document(document_of(ss, name="ss", meta={"k": "v"}), path)
    doc = load_document(path)
    assert doc["meta"] == {"k": "v"}
    back = parse_document(doc)
    assert isinstance(back, StateSpace)
    for f in "ABCD":
        assert np.allclose(getattr(ss, f), getattr(back, f))
    assert back.domain == ss.domain


def test_jsonable_conversions():
    out = jsonable({
        "b": np.bool_(True),
        "f": np.float64(1.5),
        "i": np.int64(3),
        "c": 1.0 + 2.0j,
        "cr": 4.0 + 0.0j,
        "arr": np.eye(2),
    })
    assert out["b"] is True
    assert out["f"] == 1.5 and isinstance(out["f"], float)
    assert out["i"] == 3 and isinstance(out["i"], int)
    assert out["c"] == {"re": 1.0, "im": 2.0}
    assert out["cr"] == 4.0
    assert out["arr"] == [[1.0, 0.0], [0.0, 1.0]]


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x",\n  broken\n}\n')
    with pytest.raises(ValueError, match=r"line 2"):
        load_document(path)


def test_bad_domain_and_form():
    with pytest.raises(ValueError, match="domain"):
        parse_document({"domain": "laplace", "form": "tfm"})
    with pytest.raises(ValueError, match="form"):
        parse_document({"domain": "ct", "form": "nope"})


def test_serialize_rejects_other_types():
    with pytest.raises(TypeError):
        document_of(object())


def test_static_ss_document():
    ss = StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)),
                    np.array([[2.0]]), "dt")
    doc = document_of(ss)
    back = parse_document(doc)
    assert back.order == 0
    assert back.D[0, 0] == 2.0


def test_number_round_trip_is_lossless(tmp_path):
    g = RationalMatrix([[RationalScalar([1.0 / 3.0, np.pi], [1e-17, 1.0])]], "ct")
    path = tmp_path / "num.json"
    save_document(document_of(g), path)
    back = parse_document(load_document(path))
    assert back.entries[0][0].num[1] == np.pi
    assert back.entries[0][0].den[0] == 1e-17
