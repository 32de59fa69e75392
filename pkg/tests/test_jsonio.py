import json

import numpy as np
import pytest

from chanfact import (
    ChoiMatrix,
    FactorAlgebra,
    FactorizationCertificate,
    KrausChannel,
    LmiPoint,
    LmiSystem,
    SchemaError,
    choi_from_kraus,
    hm_example,
)
from chanfact import jsonio
from helpers import complex_gaussian, random_tp_channel


def test_dumps_formats():
    doc = {"a": True, "b": 3, "c": 0.1, "d": "x", "e": [1.5, None]}
    text = jsonio.dumps(doc)
    assert text == '{"a":true,"b":3,"c":0.10000000000000001,"d":"x","e":[1.5,null]}'
    assert json.loads(text) == {"a": True, "b": 3, "c": 0.1, "d": "x", "e": [1.5, None]}


def test_dumps_floats_roundtrip_bit_exactly():
    rng = np.random.default_rng(60)
    for value in rng.standard_normal(50):
        assert json.loads(jsonio.dumps(float(value))) == value


def test_dumps_rejects_non_finite():
    with pytest.raises(ValueError):
        jsonio.dumps(float("inf"))


def test_matrix_roundtrip_is_exact():
    rng = np.random.default_rng(61)
    m = complex_gaussian(rng, (3, 2))
    doc = json.loads(jsonio.dumps(jsonio.matrix_to_json(m)))
    assert np.array_equal(jsonio.matrix_from_json(doc), m)


def test_matrix_schema_errors():
    with pytest.raises(SchemaError):
        jsonio.matrix_from_json({"rows": 1, "cols": 1})
    with pytest.raises(SchemaError):
        jsonio.matrix_from_json({"rows": 1, "cols": 1, "data": [[[1.0]]]})
    with pytest.raises(SchemaError):
        jsonio.matrix_from_json({"rows": 2, "cols": 1, "data": [[[1.0, 0.0]]]})
    with pytest.raises(SchemaError):
        jsonio.matrix_from_json({"rows": 0, "cols": 1, "data": []})


def test_channel_roundtrip():
    rng = np.random.default_rng(62)
    k = random_tp_channel(rng, 3, 2)
    doc = json.loads(jsonio.dumps(jsonio.channel_to_json(k)))
    k2 = jsonio.channel_from_json(doc)
    assert k2.num_kraus == k.num_kraus
    for a, b in zip(k2.operators, k.operators):
        assert np.array_equal(a, b)
    with pytest.raises(SchemaError):
        jsonio.channel_from_json({"dim_in": 2, "dim_out": 2, "kraus": []})
    bad = jsonio.channel_to_json(k)
    bad["dim_out"] = 5
    with pytest.raises(SchemaError):
        jsonio.channel_from_json(bad)


def test_choi_roundtrip():
    rng = np.random.default_rng(63)
    c = choi_from_kraus(random_tp_channel(rng, 2, 2))
    doc = json.loads(jsonio.dumps(jsonio.choi_to_json(c)))
    c2 = jsonio.choi_from_json(doc)
    assert np.array_equal(c2.matrix, c.matrix)
    with pytest.raises(SchemaError):
        jsonio.choi_from_json({"dim_in": 2, "dim_out": 2, "matrix": jsonio.matrix_to_json(np.eye(3))})


def test_correlation_and_gram_serialization():
    hm = hm_example()
    doc = json.loads(jsonio.dumps(jsonio.correlation_to_json(hm.c.matrix)))
    assert np.array_equal(jsonio.correlation_matrix_from_json(doc), hm.c.matrix)
    gram_doc = json.loads(jsonio.dumps(jsonio.gram_to_json(hm.w)))
    assert gram_doc["n"] == 6 and gram_doc["p"] == 3
    restored = [jsonio.vector_from_json(v, "w") for v in gram_doc["vectors"]]
    for a, b in zip(restored, hm.w.vectors):
        assert np.array_equal(a, b)


def test_lmi_and_point_roundtrip():
    hm = hm_example()
    s = LmiSystem(3, hm.z)
    doc = json.loads(jsonio.dumps(jsonio.lmi_to_json(s)))
    s2 = jsonio.lmi_from_json(doc)
    assert s2.p == 3 and s2.d == 3
    for a, b in zip(s2.z, s.z):
        assert np.array_equal(a, b)
    point = LmiPoint(2, (np.eye(2, dtype=complex),))
    doc = json.loads(jsonio.dumps(jsonio.point_to_json(point)))
    p2 = jsonio.point_from_json(doc)
    assert np.array_equal(p2.a[0], point.a[0])


def test_lmi_and_point_require_hermitian_entries():
    bad = jsonio.matrix_to_json(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(SchemaError):
        jsonio.lmi_from_json({"p": 2, "z": [bad]})
    with pytest.raises(SchemaError):
        jsonio.point_from_json({"k": 2, "a": [bad]})


def test_algebra_roundtrip_and_validation():
    algebra = FactorAlgebra(((2, 0.25), (3, 0.75)))
    doc = json.loads(jsonio.dumps(jsonio.algebra_to_json(algebra)))
    assert jsonio.algebra_from_json(doc).factors == algebra.factors
    with pytest.raises(SchemaError):
        jsonio.algebra_from_json({"factors": [{"dim": 2, "weight": 0.5}]})
    with pytest.raises(SchemaError):
        jsonio.algebra_from_json({"factors": [{"dim": 2, "weight": -1.0}, {"dim": 1, "weight": 2.0}]})


def test_certificate_roundtrip():
    algebra = FactorAlgebra(((2, 0.5), (1, 0.5)))
    elements = (
        (np.eye(2, dtype=complex), np.array([[1.0 + 0j]])),
        (1j * np.eye(2, dtype=complex), np.array([[-1.0 + 0j]])),
    )
    cert = FactorizationCertificate(algebra, elements)
    doc = json.loads(jsonio.dumps(jsonio.certificate_to_json(cert)))
    cert2 = jsonio.certificate_from_json(doc)
    assert cert2.algebra.factors == algebra.factors
    for e1, e2 in zip(cert2.elements, cert.elements):
        for b1, b2 in zip(e1, e2):
            assert np.array_equal(b1, b2)
    trimmed = jsonio.certificate_to_json(cert)
    trimmed["v"][0] = trimmed["v"][0][:1]
    with pytest.raises(SchemaError):
        jsonio.certificate_from_json(trimmed)


def test_serialization_is_deterministic():
    rng = np.random.default_rng(64)
    k = random_tp_channel(rng, 2, 2)
    text1 = jsonio.dumps(jsonio.channel_to_json(k))
    text2 = jsonio.dumps(jsonio.channel_to_json(KrausChannel(tuple(k.operators))))
    assert text1 == text2
