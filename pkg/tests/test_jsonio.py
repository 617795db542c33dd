"""Presentation and homomorphism file schemas."""

import json

import pytest

from skewpbw.jsonio import (
    SchemaError,
    homspec_from_json,
    load_homspec,
    load_presentation,
    presentation_from_json,
    presentation_to_json,
    ring_from_json,
    ring_to_json,
)
from skewpbw.rings import LaurentRing, PolyRing, PrimeField, QQ


def test_ring_round_trips():
    rings = [
        QQ,
        PrimeField(7),
        PolyRing(QQ, ("t", "u")),
        LaurentRing(QQ, "q"),
        PolyRing(LaurentRing(QQ, "q"), ("b", "c")),
    ]
    for ring in rings:
        assert ring_from_json(ring_to_json(ring)) == ring


def test_ring_schema_errors():
    with pytest.raises(SchemaError):
        ring_from_json({"kind": "galois"})
    with pytest.raises(SchemaError):
        ring_from_json({"kind": "rationals", "p": 5})
    with pytest.raises(SchemaError):
        ring_from_json({"kind": "laurent", "base": {"kind": "rationals"}, "vars": ["q", "p"]})


def test_presentation_round_trip(catalog_entries):
    for name, P in catalog_entries:
        blob = json.dumps(presentation_to_json(P))
        Q = presentation_from_json(json.loads(blob))
        assert Q.fingerprint == P.fingerprint, name


def test_unknown_keys_rejected(quantum_plane):
    obj = presentation_to_json(quantum_plane)
    obj["extra"] = 1
    with pytest.raises(SchemaError):
        presentation_from_json(obj)
    obj = presentation_to_json(quantum_plane)
    obj["relations"][0]["q"] = "typo"
    with pytest.raises(SchemaError):
        presentation_from_json(obj)


def test_relation_index_validation(quantum_plane):
    obj = presentation_to_json(quantum_plane)
    obj["relations"][0]["i"] = 2
    obj["relations"][0]["j"] = 1
    with pytest.raises(SchemaError):
        presentation_from_json(obj)
    obj = presentation_to_json(quantum_plane)
    obj["relations"].append(dict(obj["relations"][0]))
    with pytest.raises(SchemaError):
        presentation_from_json(obj)


def test_minimal_presentation_defaults():
    P = presentation_from_json({"ring": {"kind": "rationals"}, "vars": ["x1", "x2"]})
    assert P.c_of(0, 1) == QQ.one()
    assert not P.d_of(0, 1)
    assert P.sigma[0].is_identity()
    assert P.delta[0].is_zero_map()


def test_load_presentation_catalog_token():
    P = load_presentation("catalog:weyl1")
    assert P.n == 2
    with pytest.raises(KeyError):
        load_presentation("catalog:unknown")


def test_load_presentation_file(tmp_path, quantum_plane):
    path = tmp_path / "qp.json"
    path.write_text(json.dumps(presentation_to_json(quantum_plane)))
    P = load_presentation(str(path))
    assert P.fingerprint == quantum_plane.fingerprint


def test_homspec_load(tmp_path):
    spec_obj = {
        "source": "catalog:u_heisenberg",
        "target": "catalog:weyl1",
        "phi": {},
        "y": ["x2", "x1", "1"],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec_obj))
    spec = load_homspec(str(path))
    assert spec.source.n == 3 and spec.target.n == 2


def test_homspec_relative_presentation_path(tmp_path, quantum_plane):
    pres = tmp_path / "qp.json"
    pres.write_text(json.dumps(presentation_to_json(quantum_plane)))
    spec_obj = {
        "source": "qp.json",
        "target": "qp.json",
        "phi": {"q": "q"},
        "y": ["x1", "x2"],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec_obj))
    spec = load_homspec(str(path))
    assert spec.source.fingerprint == quantum_plane.fingerprint


def test_homspec_schema_errors(tmp_path):
    with pytest.raises(SchemaError):
        homspec_from_json({"source": "catalog:weyl1", "target": "catalog:weyl1"})
    with pytest.raises(SchemaError):
        homspec_from_json(
            {"source": "catalog:weyl1", "target": "catalog:weyl1", "y": ["x1", "x2"], "zz": 0}
        )


def test_sigma_delta_round_trip_with_maps():
    obj = {
        "ring": {
            "kind": "poly",
            "base": {"kind": "laurent", "base": {"kind": "rationals"}, "vars": ["q"]},
            "vars": ["t"],
        },
        "vars": ["u"],
        "sigma": [{"t": "q*t"}],
        "delta": [{"t": "1"}],
        "relations": [],
    }
    P = presentation_from_json(obj)
    ring = P.ring
    q = ring.generator("q")
    t = ring.generator("t")
    assert P.sigma[0].apply(t) == q * t
    assert P.delta[0].apply(t) == ring.one()
    blob = presentation_to_json(P)
    assert presentation_from_json(blob).fingerprint == P.fingerprint
