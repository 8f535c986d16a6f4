import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from atac import io
from atac.errors import AtacError, CertificateError, InvalidWeighting
from atac.lp import data_limit, verify_certificate

import helpers


@settings(max_examples=60, deadline=None)
@given(helpers.designs(max_points=8, max_blocks=8))
def test_design_round_trip(d):
    assert io.design_from_dict(json.loads(json.dumps(io.design_to_dict(d)))) == d


@settings(max_examples=40, deadline=None)
@given(helpers.designs(max_points=8, max_blocks=8))
def test_certificate_round_trip(d):
    cert = data_limit(d)
    back = io.certificate_from_dict(json.loads(json.dumps(io.certificate_to_dict(cert))))
    assert back.limit == cert.limit
    assert back.weighting == cert.weighting
    assert tuple(back.transversal) == tuple(cert.transversal)
    assert verify_certificate(d, back)


def test_weighting_round_trip(five_point):
    data = io.weighting_to_dict(helpers.FIVE_WEIGHTS)
    assert data["1"] == "1/3"
    assert io.weighting_from_dict(five_point, data) == helpers.FIVE_WEIGHTS


def test_weighting_rejects_negative(five_point):
    data = io.weighting_to_dict(helpers.FIVE_WEIGHTS)
    data["1"] = "-1/3"
    with pytest.raises(InvalidWeighting):
        io.weighting_from_dict(five_point, data)


def test_design_needs_fields():
    with pytest.raises(AtacError):
        io.design_from_dict({"points": ["a"]})
    with pytest.raises(AtacError):
        io.design_from_dict({"points": ["a", "b"], "blocks": [["a"], ["b"]]})


def test_certificate_needs_fields():
    with pytest.raises(CertificateError):
        io.certificate_from_dict({"limit": "1/2"})


def test_floats_refused():
    with pytest.raises(AtacError):
        io.certificate_from_dict({"limit": 0.5, "weighting": {}, "transversal": []})


def test_files(tmp_path, fano):
    path = tmp_path / "d.json"
    io.write_json(path, fano.to_dict())
    assert io.load_design(path) == fano
    bundle = tmp_path / "b.json"
    io.write_json(bundle, {"design": fano.to_dict(), **io.certificate_to_dict(data_limit(fano))})
    assert io.load_design(bundle) == fano
    assert io.certificate_from_dict(io.read_json(bundle)).limit == F(3, 7)


def test_read_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(AtacError, match="invalid JSON"):
        io.read_json(bad)
    with pytest.raises(AtacError):
        io.read_json(tmp_path / "missing.json")
