import cmath
from fractions import Fraction

import pytest

from qwe.algebra import CyclotomicNumber, as_rational, root_of_unity, tidy
from qwe.errors import ConsistencyError, NonRationalCoefficientError


@pytest.mark.parametrize("order", [8, 12, 20])
def test_roots_multiply_by_adding_exponents(order):
    for k in range(order):
        for j in range(order):
            product = CyclotomicNumber.root(order, k) * CyclotomicNumber.root(order, j)
            assert product == CyclotomicNumber.root(order, k + j)


@pytest.mark.parametrize("order", [8, 12, 20])
def test_roots_sum_to_zero(order):
    total = sum(root_of_unity(order, k) for k in range(order))
    assert total == 0


def test_root_of_unity_shortcuts():
    assert root_of_unity(8, 0) == 1
    assert root_of_unity(8, 4) == -1
    assert isinstance(root_of_unity(8, 4), int)
    i = root_of_unity(8, 2)
    assert not i.is_rational()
    assert i * i == -1


@pytest.mark.parametrize("order", [8, 12])
def test_conjugate_and_complex_value(order):
    for k in range(order):
        value = CyclotomicNumber.root(order, k) * 3 + Fraction(1, 2)
        expected = 3 * cmath.exp(2j * cmath.pi * k / order) + 0.5
        assert abs(value.to_complex() - expected) < 1e-12
        assert abs(value.conjugate().to_complex() - expected.conjugate()) < 1e-12


def test_rational_snapping():
    i = root_of_unity(12, 3)
    assert tidy(i * i) == -1
    assert as_rational(Fraction(4, 2)) == 2
    with pytest.raises(NonRationalCoefficientError):
        i.to_rational()
    assert tidy(i) is i


def test_fields_do_not_mix():
    with pytest.raises(ConsistencyError):
        CyclotomicNumber.root(8, 1) + CyclotomicNumber.root(12, 1)


def test_division_by_rational():
    value = CyclotomicNumber.root(8, 1) * 4
    assert value / 4 == CyclotomicNumber.root(8, 1)
