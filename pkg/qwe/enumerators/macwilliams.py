"""MacWilliams transforms for every weight scheme, and the single-site condition they rest on."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional

from ..algebra.cyclotomic import root_of_unity, tidy
from ..algebra.pauli import PauliString, basis_element, dagger, mul
from ..errors import InputValidationError
from ..polynomials.enum_poly import EnumPoly, substitute_linear
from ..polynomials.schemes import SchemeKind, WeightScheme
from .tensor import TensorEnumerator, psi_transform

logger = logging.getLogger(__name__)

LinearForms = Dict[str, Dict[str, object]]


def zeta(q: int, k: int):
    """ζ^k = exp(2πik/q), kept in the 4q-th cyclotomic field used everywhere else."""
    return root_of_unity(4 * q, 4 * k)


def _omega(q: int, d: int, e: int) -> int:
    a, b = divmod(d, q)
    c, f = divmod(e, q)
    return (b * c - a * f) % q


@dataclass(frozen=True)
class MWTransform:
    """Variable images Φ(u) as linear forms, times (1/√q)^root_q_power per variable.

    The √q factors are never materialized: a homogeneous input of degree n picks
    up q^{-root_q_power·site_degree·n/2} overall, which is an integer power of q.
    """

    scheme: WeightScheme
    images: LinearForms = field(compare=False)
    root_q_power: int = 0

    def scale_exponent(self, degree: int) -> int:
        total = self.root_q_power * self.scheme.site_degree * degree
        if total % 2:
            raise InputValidationError(f"Transform of {self.scheme} leaves a √q factor at degree {degree}")
        return total // 2

    def apply(self, poly: EnumPoly, rational: bool = True) -> EnumPoly:
        if poly.scheme != self.scheme:
            raise InputValidationError(f"Transform for {self.scheme} applied to {poly.scheme}")
        degree = poly.homogeneous_degree()
        if degree is None:
            raise InputValidationError(f"MacWilliams transform needs a homogeneous polynomial in {self.scheme}")
        image = substitute_linear(poly, self.images, self.scheme)
        image = image.scale(Fraction(1, self.scheme.q ** self.scale_exponent(degree)))
        image = image.map_coefficients(tidy)
        return image.rationalized() if rational else image

    def image_polynomial(self, variable: str) -> EnumPoly:
        terms = {}
        for name, coeff in self.images[variable].items():
            exps = [0] * self.scheme.size
            exps[self.scheme.index(name)] = 1
            terms[tuple(exps)] = coeff
        return EnumPoly(self.scheme, terms)


def scalar_transform(q: int = 2) -> MWTransform:
    """w ↦ (w + (q²−1)z)/q, z ↦ (w − z)/q."""
    scheme = WeightScheme(SchemeKind.SHOR_LAFLAMME, q)
    images = {
        "w": {"w": Fraction(1, q), "z": Fraction(q * q - 1, q)},
        "z": {"w": Fraction(1, q), "z": Fraction(-1, q)},
    }
    return MWTransform(scheme, images)


def double_transform(q: int = 2) -> MWTransform:
    """(w, x, y, z) ↦ (y + (q−1)x, w − z, w + (q−1)z, y − x), each over √q."""
    scheme = WeightScheme(SchemeKind.DOUBLE, q)
    images = {
        "w": {"y": 1, "x": q - 1},
        "x": {"w": 1, "z": -1},
        "y": {"w": 1, "z": q - 1},
        "z": {"y": 1, "x": -1},
    }
    return MWTransform(scheme, images, root_q_power=1)


def refined_double_transform(q: int = 2) -> MWTransform:
    """x_a ↦ Σ_d ζ^{−ad} z_d and z_b ↦ Σ_c ζ^{bc} x_c, each over √q."""
    scheme = WeightScheme(SchemeKind.REFINED_DOUBLE, q)
    images: LinearForms = {}
    for a in range(q):
        images[f"x{a}"] = {f"z{d}": zeta(q, -a * d) for d in range(q)}
    for b in range(q):
        images[f"z{b}"] = {f"x{c}": zeta(q, b * c) for c in range(q)}
    return MWTransform(scheme, images, root_q_power=1)


def complete_transform(q: int = 2) -> MWTransform:
    """u_D ↦ (1/q) Σ_E ζ^{ω(D,E)} u_E."""
    scheme = WeightScheme(SchemeKind.COMPLETE, q)
    names = scheme.variables
    images = {
        names[d]: {names[e]: zeta(q, _omega(q, d, e)) * Fraction(1, q) for e in range(q * q)}
        for d in range(q * q)
    }
    return MWTransform(scheme, images)


_TRANSFORMS = {
    SchemeKind.SHOR_LAFLAMME: scalar_transform,
    SchemeKind.DOUBLE: double_transform,
    SchemeKind.REFINED_DOUBLE: refined_double_transform,
    SchemeKind.COMPLETE: complete_transform,
}


@lru_cache(maxsize=None)
def transform_for(scheme: WeightScheme) -> MWTransform:
    return _TRANSFORMS[scheme.kind](scheme.q)


def _checked(poly: EnumPoly, kind: SchemeKind, n: Optional[int]) -> MWTransform:
    if poly.scheme.kind is not kind:
        raise InputValidationError(f"Expected a {kind.value} polynomial, got {poly.scheme}")
    if n is not None and poly and poly.homogeneous_degree() != n:
        raise InputValidationError(f"Polynomial is not homogeneous of degree {n}")
    return transform_for(poly.scheme)


def mw_scalar(a: EnumPoly, n: Optional[int] = None) -> EnumPoly:
    return _checked(a, SchemeKind.SHOR_LAFLAMME, n).apply(a)


def mw_double(c: EnumPoly, n: Optional[int] = None) -> EnumPoly:
    return _checked(c, SchemeKind.DOUBLE, n).apply(c)


def mw_refined_double(e: EnumPoly, n: Optional[int] = None) -> EnumPoly:
    return _checked(e, SchemeKind.REFINED_DOUBLE, n).apply(e)


def mw_complete(e: EnumPoly, n: Optional[int] = None) -> EnumPoly:
    return _checked(e, SchemeKind.COMPLETE, n).apply(e)


def verify_phi_condition(scheme: WeightScheme, transform: Optional[MWTransform] = None) -> bool:
    """Check Φ(u)^{wt(D,D')} = q^{-2} Σ_{E,E'} Tr(E†D E' D'†) u^{wt(E,E')} on one site."""
    transform = transform or transform_for(scheme)
    q = scheme.q
    codes = range(q * q)
    basis = [basis_element(PauliString.from_codes(q, (c,))) for c in codes]
    images = [transform.image_polynomial(v) for v in scheme.variables]
    site_scale = Fraction(1, q ** transform.scale_exponent(1))

    for d in codes:
        for d2 in codes:
            weight = scheme.weight(d, d2)
            if weight is None:
                lhs = EnumPoly.zero(scheme)
            else:
                lhs = EnumPoly.constant(scheme, site_scale)
                for image, e in zip(images, weight):
                    if e:
                        lhs = lhs * image**e
            rhs = EnumPoly.zero(scheme)
            for e in codes:
                for e2 in codes:
                    w = scheme.weight(e, e2)
                    if w is None:
                        continue
                    product = mul(mul(mul(dagger(basis[e]), basis[d]), basis[e2]), dagger(basis[d2]))
                    if not product.pauli.is_identity():
                        continue
                    trace = root_of_unity(4 * q, product.phase) * q
                    rhs = rhs + EnumPoly.monomial(scheme, w, trace * Fraction(1, q * q))
            if lhs.map_coefficients(tidy) != rhs.map_coefficients(tidy):
                logger.debug(f"Condition fails for {scheme} at D={d}, D'={d2}: {lhs} != {rhs}")
                return False
    return True


def tensor_macwilliams(
    t: TensorEnumerator, transform: Optional[MWTransform] = None, max_rank: int = 6
) -> TensorEnumerator:
    """B^{(J)} = Ψ[A^{(J)}(Φ)]: substitute in every coefficient, then Ψ on the open legs."""
    transform = transform or transform_for(t.scheme)
    substituted = t.map_polynomials(lambda p: transform.apply(p, rational=False))
    return psi_transform(substituted, max_rank)


def _monomial(scheme: WeightScheme, *names: str) -> EnumPoly:
    exps = [0] * scheme.size
    for name in names:
        exps[scheme.index(name)] += 1
    return EnumPoly.monomial(scheme, exps)


def collapse(poly: EnumPoly, target_kind: "SchemeKind | str") -> EnumPoly:
    """Coarsen a finer enumerator: complete → refined/double/scalar, refined → double."""
    target_kind = SchemeKind.parse(target_kind)
    source = poly.scheme
    q = source.q
    if source.kind is target_kind:
        return poly
    target = WeightScheme(target_kind, q)
    images: Dict[str, EnumPoly] = {}
    if source.kind is SchemeKind.COMPLETE:
        for code, name in enumerate(source.variables):
            a, b = divmod(code, q)
            if target_kind is SchemeKind.SHOR_LAFLAMME:
                images[name] = _monomial(target, "w" if code == 0 else "z")
            elif target_kind is SchemeKind.DOUBLE:
                images[name] = _monomial(target, "x" if a else "y", "z" if b else "w")
            else:
                images[name] = _monomial(target, f"x{a}", f"z{b}")
    elif source.kind is SchemeKind.REFINED_DOUBLE and target_kind is SchemeKind.DOUBLE:
        for a in range(q):
            images[f"x{a}"] = _monomial(target, "x" if a else "y")
            images[f"z{a}"] = _monomial(target, "z" if a else "w")
    else:
        raise InputValidationError(f"No collapse from {source.kind.value} to {target_kind.value}")
    return poly.substitute(images, target)
