import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsalgebra import codec
from hsalgebra.cylinder import CylFn
from hsalgebra.errors import ParseError
from hsalgebra.fredholm import build_basis, build_F_Gamma
from hsalgebra.khomology import HomT
from hsalgebra.operators import ToeplitzSymbol, Window, build_shift


def test_hom_round_trip():
    phi = HomT(2, {3: 2, 5: -1})
    text = codec.dumps(phi)
    assert json.loads(text)["coeffs"] == [{"y": 3, "phi": 2}, {"y": 5, "phi": -1}]
    assert codec.loads("homt", text) == phi


def test_hom_rejects_non_member():
    with pytest.raises(ParseError) as err:
        codec.loads("homt", {"s": 2, "coeffs": [{"y": 4, "phi": 1}]})
    assert err.value.field == "coeffs[0].y"


def test_hom_rejects_duplicates():
    with pytest.raises(ParseError):
        codec.loads("homt", {"s": 2, "coeffs": [{"y": 3, "phi": 1}, {"y": 3, "phi": 1}]})


def test_rational_cylfn_round_trip():
    f = CylFn(3, 1, (0, Fraction(1, 2), Fraction(-7, 3)), "rat", "units")
    doc = json.loads(codec.dumps(f))
    assert doc["values"] == ["0/1", "1/2", "-7/3"]
    g = codec.loads("cylfn", doc)
    assert g == f and (g.ring, g.domain) == ("rat", "units")


@pytest.mark.parametrize("doc,field", [
    ({"s": 2, "level": 1, "ring": "rat", "domain": "full", "values": ["1/0", "1"]}, "values[0]"),
    ({"s": 2, "level": 1, "ring": "int", "domain": "full"}, "values"),
    ({"s": "2", "level": 1, "ring": "int", "domain": "full", "values": ["0", "1"]}, "s"),
])
def test_cylfn_schema_errors_name_field(doc, field):
    with pytest.raises(ParseError) as err:
        codec.loads("cylfn", doc)
    assert err.value.field == field


def test_bad_json_document():
    with pytest.raises(ParseError):
        codec.loads("homt", "{not json")


def test_toeplitz_round_trip():
    sym = ToeplitzSymbol({-2: Fraction(3, 4), 1: 5})
    assert codec.loads("toeplitz", codec.dumps(sym)) == sym


def test_truncop_round_trip_with_tuple_labels():
    _, F, _ = build_F_Gamma(build_basis(HomT(3, {2: 1, 7: -2}), 1))
    back = codec.loads("truncop", codec.dumps(F))
    assert back.rows == F.rows and back.cols == F.cols
    assert back.entries() == F.entries() and back.safe_cols == F.safe_cols


def test_truncop_round_trip_keeps_safe_columns():
    V, _ = build_shift(Window(8), 2)
    back = codec.loads("truncop", codec.dumps(V))
    assert back.safe_cols == V.safe_cols and back.entries() == V.entries()


@given(st.sampled_from([2, 3]), st.integers(0, 3), st.data())
def test_cylfn_round_trip_property(s, level, data):
    vals = tuple(data.draw(st.fractions(-9, 9, max_denominator=7)) for _ in range(s**level))
    f = CylFn(s, level, vals, "rat")
    assert codec.loads("cylfn", codec.dumps(f)).values == f.values
