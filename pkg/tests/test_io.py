import json
from fractions import Fraction
from importlib import resources

import pytest

from figmod import io as fio
from figmod.exactla import QQ, FieldSpec
from figmod.figmodules import realize
from figmod import invariants as inv


def data_path(name):
    return resources.files("figmod") / "data" / name


def test_parse_field():
    assert fio.parse_field("Q") is QQ or fio.parse_field("Q") == QQ
    assert fio.parse_field("Fp:5") == FieldSpec(5)
    assert fio.parse_field(["Fp", 3]) == FieldSpec(3)
    for bad in ("R", "Fp:4", ["Fp"], 7):
        with pytest.raises(fio.ParseError):
            fio.parse_field(bad)


def test_parse_group():
    assert fio.parse_group("Z2").order == 2
    assert fio.parse_group([[0, 1], [1, 0]]).order == 2
    with pytest.raises(fio.ParseError):
        fio.parse_group("Z5")
    with pytest.raises(fio.ParseError):
        fio.parse_group([[0, 1], [1, 1]])


def test_load_bundled_descriptions():
    for name in ("t0", "m0", "m1", "m0_plus_m1", "depth1_kernel", "z2_sign"):
        pres, truncation = fio.load_description(str(data_path(name + ".json")))
        assert truncation == 8
        realized = realize(pres, truncation)
        assert realized.module.validate() == []


def test_parse_description_errors():
    base = {"field": "Q", "group": "trivial", "truncation": 4,
            "generators": [{"degree": 0}]}
    for mutate in (
            lambda d: d.pop("field"),
            lambda d: d.update(truncation=-1),
            lambda d: d.update(generators=[{"degree": -2}]),
            lambda d: d.update(relations=[{"degree": 1, "terms": [
                {"gen": 5, "inj": [], "dec": [], "coeff": [1]}]}]),
            lambda d: d.update(relations=[{"degree": 1, "terms": [
                {"gen": 0, "inj": [0, 0], "dec": [0, 0], "coeff": [1]}]}]),
    ):
        doc = json.loads(json.dumps(base))
        mutate(doc)
        with pytest.raises(fio.ParseError):
            fio.parse_description(doc)


def test_description_roundtrip():
    pres, _ = inv.random_presentation(9)
    doc = fio.description_dict(pres, 6)
    pres2, truncation = fio.parse_description(doc)
    assert truncation == 6
    assert realize(pres, 6).module.dims() == realize(pres2, 6).module.dims()


def test_explicit_action_parsing():
    pres, _ = fio.load_description(str(data_path("z2_sign.json")))
    g = pres.generators[0]
    assert g.degree == 1 and g.dim == 1
    assert g.gen_mats[0].rows[0][0] == QQ.of(-1)


def test_jsonable_conversions():
    out = fio.jsonable({"a": float("inf"), "b": float("-inf"),
                        "c": Fraction(3, 4), "d": Fraction(2, 1),
                        "e": (1, 2), "f": None})
    assert out == {"a": "inf", "b": "-inf", "c": "3/4", "d": 2,
                   "e": [1, 2], "f": None}
    with pytest.raises(ValueError):
        fio.jsonable(object())


def test_report_json_is_canonical():
    report = inv.analyze(
        realize(*fio.load_description(str(data_path("t0.json")))))
    b1 = fio.report_json(report)
    b2 = fio.report_json(inv.analyze(
        realize(*fio.load_description(str(data_path("t0.json"))))))
    assert b1 == b2
    assert b1.endswith(b"\n")
    json.loads(b1)


def test_report_text_renders():
    pres, truncation = fio.load_description(str(data_path("m1.json")))
    report = inv.analyze(realize(pres, truncation))
    text = fio.report_text(report)
    assert "hilbert_polynomial" in text
    assert "certified" in text
