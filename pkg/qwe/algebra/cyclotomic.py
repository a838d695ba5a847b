"""Exact arithmetic in cyclotomic fields Q(ζ_N).

Elements are coefficient vectors in the power basis 1, ζ, …, ζ^{φ(N)−1},
reduced modulo the N-th cyclotomic polynomial.
"""
import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import sympy

from ..errors import ConsistencyError, NonRationalCoefficientError

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _modulus(order: int) -> Tuple[int, ...]:
    """Coefficients of Φ_N, lowest degree first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(order, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(values: list, order: int) -> Tuple[Fraction, ...]:
    modulus = _modulus(order)
    degree = len(modulus) - 1
    for i in range(len(values) - 1, degree - 1, -1):
        c = values[i]
        if c:
            shift = i - degree
            for j in range(degree):
                if modulus[j]:
                    values[shift + j] -= c * modulus[j]
            values[i] = 0
    head = values[:degree] + [0] * (degree - len(values))
    return tuple(Fraction(v) for v in head)


@lru_cache(maxsize=None)
def _power_table(order: int) -> Tuple[Tuple[Fraction, ...], ...]:
    table = []
    for k in range(order):
        values = [0] * (k + 1)
        values[k] = 1
        table.append(_reduce(values, order))
    return tuple(table)


class CyclotomicNumber:
    """An element of Q(ζ_N) with ζ_N = exp(2πi/N)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = _reduce(list(coeffs), order)

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple[Fraction, ...]) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def root(cls, order: int, k: int) -> "CyclotomicNumber":
        return cls._raw(order, _power_table(order)[k % order])

    @classmethod
    def rational(cls, order: int, value: Rational) -> "CyclotomicNumber":
        degree = len(_modulus(order)) - 1
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (degree - 1))

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise ConsistencyError(
                    f"Cannot mix Q(ζ_{self.order}) and Q(ζ_{other.order}) elements"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber._raw(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] += a * b
        return CyclotomicNumber._raw(self.order, _reduce(product, self.order))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber._raw(
                self.order, tuple(a / other for a in self.coeffs)
            )
        return NotImplemented

    def conjugate(self) -> "CyclotomicNumber":
        table = _power_table(self.order)
        result = [Fraction(0)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if a:
                for i, t in enumerate(table[(-k) % self.order]):
                    if t:
                        result[i] += a * t
        return CyclotomicNumber._raw(self.order, tuple(result))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise NonRationalCoefficientError(f"Coefficient {self!r} is not rational")
        value = self.coeffs[0]
        return value.numerator if value.denominator == 1 else value

    def to_complex(self) -> complex:
        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(a) * zeta**k for k, a in enumerate(self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = [f"{a}*ζ{self.order}^{k}" for k, a in enumerate(self.coeffs) if a]
        return "(" + (" + ".join(terms) or "0") + ")"


def root_of_unity(order: int, k: int):
    """exp(2πik/N) as an exact scalar: a plain int when it is ±1."""
    k %= order
    if k == 0:
        return 1
    if 2 * k == order:
        return -1
    return CyclotomicNumber.root(order, k)


def as_rational(value) -> Rational:
    """Snap an exact scalar to int/Fraction, raising when it is not rational."""
    if isinstance(value, CyclotomicNumber):
        return value.to_rational()
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def conjugate(value):
    if isinstance(value, CyclotomicNumber):
        return value.conjugate()
    return value


def tidy(value):
    """Collapse an exact scalar to int/Fraction when it is rational; leave it otherwise."""
    if isinstance(value, CyclotomicNumber):
        return value.to_rational() if value.is_rational() else value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value
