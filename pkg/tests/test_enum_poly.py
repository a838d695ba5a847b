from fractions import Fraction

import pytest

from qwe.errors import InputValidationError
from qwe.polynomials import EnumPoly, WeightScheme, weight_list


def test_from_coefficients_and_weight_list(sl):
    a = EnumPoly.from_coefficients(sl, [1, 0, 0, 0, 15], 4)
    assert a.coefficient((4, 0)) == 1
    assert a.coefficient((0, 4)) == 15
    assert a.homogeneous_degree() == 4
    assert weight_list(a) == [1, 0, 0, 0, 15]
    with pytest.raises(InputValidationError):
        EnumPoly.from_coefficients(sl, [1, 2, 3], 1)
    with pytest.raises(InputValidationError):
        EnumPoly.from_coefficients(WeightScheme("double"), [1], 1)


def test_weight_list_keeps_trailing_zero_weights(sl):
    a = EnumPoly.from_coefficients(sl, [1, 0, 0, 0, 15, 0], 5)
    assert weight_list(a) == [1, 0, 0, 0, 15, 0]
    assert a.to_csv() == "1,0,0,0,15,0\n"
    assert weight_list(a.dehomogenize()) == [1, 0, 0, 0, 15]
    assert weight_list(a.dehomogenize(), n=6) == [1, 0, 0, 0, 15, 0, 0]


def test_ring_operations(sl):
    w = EnumPoly.variable(sl, "w")
    z = EnumPoly.variable(sl, "z")
    square = (w + z) ** 2
    assert square == w * w + 2 * w * z + z * z
    assert (square - square).terms == {}
    assert square.scale(Fraction(1, 2)).coefficient((1, 1)) == 1
    assert (square / 2).coefficient((2, 0)) == Fraction(1, 2)
    assert square.evaluate({"z": 1}) == 4
    assert square.evaluate([2, 3]) == 25


def test_homogenize_round_trip(sl):
    a = EnumPoly.from_coefficients(sl, [1, 0, 3], 2)
    bare = a.dehomogenize()
    assert bare.homogeneous_degree() is None
    assert bare.homogenize(2) == a
    assert bare.homogenize(5).homogeneous_degree() == 5
    with pytest.raises(InputValidationError):
        bare.homogenize(1)


def test_double_scheme_groups():
    scheme = WeightScheme("double")
    assert scheme.variables == ("w", "x", "y", "z")
    # one X site and one Z site: x*y * w*z
    poly = EnumPoly.monomial(scheme, (1, 1, 1, 1), 3) + EnumPoly.monomial(scheme, (2, 0, 2, 0))
    assert poly.homogeneous_degree() == 2
    assert poly.coefficient_matrix() == [[1, 0, 0], [0, 3, 0], [0, 0, 0]]
    assert poly.to_csv() == "1,0,0\n0,3,0\n0,0,0\n"


def test_scheme_mismatch_and_bad_exponents(sl):
    other = WeightScheme("complete")
    with pytest.raises(InputValidationError):
        EnumPoly.constant(sl) + EnumPoly.constant(other)
    with pytest.raises(InputValidationError):
        EnumPoly(sl, {(1, 2, 3): 1})
    with pytest.raises(InputValidationError):
        EnumPoly(sl, {(-1, 2): 1})


def test_json_document(sl):
    a = EnumPoly.from_coefficients(sl, [1, 0, Fraction(3, 2)], 2)
    document = a.to_json()
    assert document["variables"] == ["w", "z"]
    assert {"exp": [0, 2], "coeff": "3/2"} in document["terms"]
    assert EnumPoly.from_json(document) == a
    with pytest.raises(InputValidationError):
        EnumPoly.from_json({"scheme": "nonsense", "terms": []})


def test_scheme_variables():
    assert WeightScheme("refined-double", 3).variables == ("x0", "x1", "x2", "z0", "z1", "z2")
    assert len(WeightScheme("complete", 3).variables) == 9
    assert WeightScheme("sl").kind.value == "shor-laflamme"
    with pytest.raises(InputValidationError):
        WeightScheme("shor-laflamme", 4)
