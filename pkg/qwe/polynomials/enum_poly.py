"""Sparse exact multivariate polynomials over a weight scheme's variables."""
import csv
import io
import logging
from fractions import Fraction
from operator import add
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..algebra.cyclotomic import CyclotomicNumber, as_rational
from ..errors import InputValidationError
from .schemes import SchemeKind, WeightScheme

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Terms = Dict[Exponents, object]


def _accumulate(terms: Terms, exps: Exponents, coeff) -> None:
    total = terms.get(exps, 0) + coeff
    if total:
        terms[exps] = total
    else:
        terms.pop(exps, None)


def poly_mul(left: Mapping[Exponents, object], right: Mapping[Exponents, object]) -> Terms:
    result: Terms = {}
    for e1, c1 in left.items():
        for e2, c2 in right.items():
            _accumulate(result, tuple(map(add, e1, e2)), c1 * c2)
    return result


class EnumPoly:
    """Polynomial Σ c_e u^e with exact (rational or cyclotomic) coefficients."""

    __slots__ = ("scheme", "terms")

    def __init__(self, scheme: WeightScheme, terms: Optional[Mapping[Exponents, object]] = None):
        self.scheme = scheme
        clean: Terms = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != scheme.size:
                raise InputValidationError(
                    f"Exponent vector {exps} does not match {scheme} ({scheme.size} variables)"
                )
            if any(e < 0 for e in exps):
                raise InputValidationError(f"Negative exponent in {exps}")
            if coeff:
                _accumulate(clean, exps, coeff)
        self.terms = clean

    @classmethod
    def _wrap(cls, scheme: WeightScheme, terms: Terms) -> "EnumPoly":
        obj = cls.__new__(cls)
        obj.scheme = scheme
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, scheme: WeightScheme) -> "EnumPoly":
        return cls._wrap(scheme, {})

    @classmethod
    def constant(cls, scheme: WeightScheme, value=1) -> "EnumPoly":
        return cls(scheme, {(0,) * scheme.size: value})

    @classmethod
    def monomial(cls, scheme: WeightScheme, exps: Sequence[int], coeff=1) -> "EnumPoly":
        return cls(scheme, {tuple(exps): coeff})

    @classmethod
    def variable(cls, scheme: WeightScheme, name: str) -> "EnumPoly":
        exps = [0] * scheme.size
        exps[scheme.index(name)] = 1
        return cls(scheme, {tuple(exps): 1})

    @classmethod
    def from_coefficients(cls, scheme: WeightScheme, coefficients: Sequence, n: int) -> "EnumPoly":
        """Shor-Laflamme A(w, z) from a weight list [A_0, A_1, …]."""
        if scheme.kind is not SchemeKind.SHOR_LAFLAMME:
            raise InputValidationError("Weight lists describe Shor-Laflamme polynomials only")
        if len(coefficients) > n + 1:
            raise InputValidationError(f"{len(coefficients)} coefficients exceed degree {n}")
        return cls(scheme, {(n - d, d): c for d, c in enumerate(coefficients)})

    # ring operations

    def _check_scheme(self, other: "EnumPoly") -> None:
        if self.scheme != other.scheme:
            raise InputValidationError(f"Scheme mismatch: {self.scheme} vs {other.scheme}")

    def __add__(self, other):
        if not isinstance(other, EnumPoly):
            return self + EnumPoly.constant(self.scheme, other)
        self._check_scheme(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            _accumulate(terms, exps, coeff)
        return EnumPoly._wrap(self.scheme, terms)

    __radd__ = __add__

    def __neg__(self):
        return EnumPoly._wrap(self.scheme, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, EnumPoly):
            self._check_scheme(other)
            return EnumPoly._wrap(self.scheme, poly_mul(self.terms, other.terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor) -> "EnumPoly":
        if not factor:
            return EnumPoly.zero(self.scheme)
        terms = {}
        for exps, coeff in self.terms.items():
            value = coeff * factor
            if value:
                terms[exps] = value
        return EnumPoly._wrap(self.scheme, terms)

    def __truediv__(self, divisor) -> "EnumPoly":
        return self.scale(Fraction(1) / Fraction(divisor))

    def __pow__(self, exponent: int) -> "EnumPoly":
        result = EnumPoly.constant(self.scheme, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, EnumPoly):
            return self.scheme == other.scheme and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == EnumPoly.constant(self.scheme, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.scheme, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> List[Tuple[Exponents, object]]:
        return sorted(self.terms.items())

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def constant_term(self):
        """Coefficient of the all-identity monomial (weight zero)."""
        skip = {h for h, _ in self.scheme.homogenizers}
        total = 0
        for exps, coeff in self.terms.items():
            if not any(e for i, e in enumerate(exps) if i not in skip):
                total = total + coeff
        return total

    def _weight_key(self, exps: Exponents):
        skip = {h for h, _ in self.scheme.homogenizers}
        return (sum(e for i, e in enumerate(exps) if i not in skip), exps)

    # degree bookkeeping

    def group_degrees(self, exps: Exponents) -> Tuple[int, ...]:
        return tuple(exps[h] + sum(exps[i] for i in group) for h, group in self.scheme.homogenizers)

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree n of every homogenizing group, or None if mixed."""
        degrees = {self.group_degrees(e) for e in self.terms}
        if len(degrees) != 1:
            return None if degrees else 0
        (degree,) = degrees
        return degree[0] if len(set(degree)) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def homogenize(self, n: int) -> "EnumPoly":
        """A(z) ↦ A(w, z) = w^n A(z/w), groupwise for multi-group schemes."""
        terms: Terms = {}
        for exps, coeff in self.dehomogenize().terms.items():
            new = list(exps)
            for h, group in self.scheme.homogenizers:
                used = sum(exps[i] for i in group)
                if used > n:
                    raise InputValidationError(f"Degree bound {n} below actual degree {used}")
                new[h] = n - used
            _accumulate(terms, tuple(new), coeff)
        return EnumPoly._wrap(self.scheme, terms)

    def dehomogenize(self) -> "EnumPoly":
        terms: Terms = {}
        for exps, coeff in self.terms.items():
            new = list(exps)
            for h, _ in self.scheme.homogenizers:
                new[h] = 0
            _accumulate(terms, tuple(new), coeff)
        return EnumPoly._wrap(self.scheme, terms)

    def evaluate(self, point: Union[Mapping[str, object], Sequence]):
        if isinstance(point, Mapping):
            values = [point.get(v, 1 if i in {h for h, _ in self.scheme.homogenizers} else None)
                      for i, v in enumerate(self.scheme.variables)]
        else:
            values = list(point)
        if len(values) != self.scheme.size or any(v is None for v in values):
            raise InputValidationError(f"Evaluation point must assign all of {self.scheme.variables}")
        values = [Fraction(v) if isinstance(v, (int, str)) else v for v in values]
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for value, e in zip(values, exps):
                if e:
                    term = term * value**e
            total = total + term
        return as_rational(total) if not isinstance(total, CyclotomicNumber) or total.is_rational() else total

    # coefficient handling

    def map_coefficients(self, fn) -> "EnumPoly":
        return EnumPoly(self.scheme, {e: fn(c) for e, c in self.terms.items()})

    def rationalized(self) -> "EnumPoly":
        """Snap cyclotomic coefficients to rationals (NonRationalCoefficientError otherwise)."""
        return EnumPoly._wrap(self.scheme, {e: as_rational(c) for e, c in self.terms.items()})

    def is_rational(self) -> bool:
        return all(not isinstance(c, CyclotomicNumber) or c.is_rational() for c in self.terms.values())

    def substitute(self, images: Mapping[str, "EnumPoly"], target: Optional[WeightScheme] = None) -> "EnumPoly":
        """General substitution of every variable by a polynomial in `target`."""
        target = target or self.scheme
        parts = [images[v].terms for v in self.scheme.variables]
        cache: Dict[Tuple[int, int], Terms] = {}

        def power(i: int, e: int) -> Terms:
            if (i, e) not in cache:
                cache[(i, e)] = {(0,) * target.size: 1} if e == 0 else poly_mul(power(i, e - 1), parts[i])
            return cache[(i, e)]

        result: Terms = {}
        for exps, coeff in self.terms.items():
            term: Terms = {(0,) * target.size: coeff}
            for i, e in enumerate(exps):
                if e:
                    term = poly_mul(term, power(i, e))
            for k, c in term.items():
                _accumulate(result, k, c)
        return EnumPoly._wrap(target, result)

    # serialization

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme.kind.value,
            "q": self.scheme.q,
            "variables": list(self.scheme.variables),
            "terms": [{"exp": list(e), "coeff": str(as_rational(c))} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, document: Mapping) -> "EnumPoly":
        try:
            scheme = WeightScheme(SchemeKind.parse(document["scheme"]), int(document.get("q", 2)))
            terms = {tuple(t["exp"]): Fraction(str(t["coeff"])) for t in document["terms"]}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputValidationError(f"Malformed polynomial document: {e}") from e
        return cls(scheme, terms).rationalized()

    def coefficient_matrix(self, n: Optional[int] = None) -> List[List]:
        """C[d_x][d_z] for double enumerators, [A_d] as one row for Shor-Laflamme.

        Rows run over degrees 0..n, with n the homogeneous degree unless given.
        """
        kind = self.scheme.kind
        if n is None:
            n = self.homogeneous_degree()
        if kind is SchemeKind.DOUBLE:
            ix, iz = 1, 3
            size_x = max([e[ix] for e in self.terms] + [n or 0]) + 1
            size_z = max([e[iz] for e in self.terms] + [n or 0]) + 1
            matrix = [[0] * size_z for _ in range(size_x)]
            for exps, coeff in self.dehomogenize().terms.items():
                matrix[exps[ix]][exps[iz]] = as_rational(coeff)
            return matrix
        if kind is SchemeKind.SHOR_LAFLAMME:
            size = max([e[1] for e in self.terms] + [n or 0]) + 1
            row = [0] * size
            for exps, coeff in self.dehomogenize().terms.items():
                row[exps[1]] = as_rational(coeff)
            return [row]
        raise InputValidationError(f"No coefficient matrix for scheme {self.scheme}")

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in self.coefficient_matrix():
            writer.writerow([str(c) for c in row])
        return buffer.getvalue()

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in sorted(self.terms.items(), key=self._weight_key):
            monomial = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.scheme.variables, exps) if e
            )
            if not monomial:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{coeff}*{monomial}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"EnumPoly({self.scheme}, {self})"


def weight_list(poly: EnumPoly, n: Optional[int] = None) -> List:
    """[A_0, …, A_n] of a Shor-Laflamme polynomial (homogeneous or not)."""
    return poly.coefficient_matrix(n)[0]


def substitute_linear(
    poly: EnumPoly,
    mapping: Mapping[str, Mapping[str, object]],
    target: Optional[WeightScheme] = None,
    require_homogeneous: bool = True,
) -> EnumPoly:
    """Replace each variable by a linear form and expand exactly.

    Variables whose images live on disjoint target variables are expanded
    block by block, which keeps bidegree transforms cubic in the degree.
    """
    target = target or poly.scheme
    if require_homogeneous and not poly.is_homogeneous():
        raise InputValidationError("Linear substitution requires a homogeneous polynomial")
    missing = [v for v in poly.scheme.variables if v not in mapping]
    if missing:
        raise InputValidationError(f"Substitution map misses variables {missing}")

    images: List[Terms] = []
    for v in poly.scheme.variables:
        form: Terms = {}
        for name, coeff in mapping[v].items():
            exps = [0] * target.size
            exps[target.index(name)] = 1
            if coeff:
                _accumulate(form, tuple(exps), coeff)
        images.append(form)

    blocks = _independent_blocks(images)
    unit = (0,) * target.size
    cache: Dict[Tuple[int, int], Terms] = {}

    def power(i: int, e: int) -> Terms:
        key = (i, e)
        if key not in cache:
            cache[key] = {unit: 1} if e == 0 else poly_mul(power(i, e - 1), images[i])
        return cache[key]

    def monomial_image(exps: Exponents, sources: Iterable[int]) -> Terms:
        result: Terms = {unit: 1}
        for i in sources:
            if exps[i]:
                result = poly_mul(result, power(i, exps[i]))
        return result

    def expand(terms: List[Tuple[Exponents, object]], remaining: List[List[int]]) -> Terms:
        if len(remaining) == 1:
            result: Terms = {}
            for exps, coeff in terms:
                for k, c in monomial_image(exps, remaining[0]).items():
                    _accumulate(result, k, coeff * c)
            return result
        head, rest = remaining[0], [i for block in remaining[1:] for i in block]
        groups: Dict[Exponents, List[Tuple[Exponents, object]]] = {}
        for exps, coeff in terms:
            groups.setdefault(tuple(exps[i] for i in rest), []).append((exps, coeff))
        result = {}
        for members in groups.values():
            inner = expand(members, [head])
            outer = monomial_image(members[0][0], rest)
            for k, c in poly_mul(inner, outer).items():
                _accumulate(result, k, c)
        return result

    expanded = expand(list(poly.terms.items()), blocks) if poly.terms else {}
    logger.debug(f"Linear substitution: {len(poly)} terms -> {len(expanded)} terms, blocks={blocks}")
    return EnumPoly._wrap(target, expanded)


def _independent_blocks(images: List[Terms]) -> List[List[int]]:
    """Group source variables whose images share target variables."""
    supports = [{i for exps in form for i, e in enumerate(exps) if e} for form in images]
    blocks: List[Tuple[List[int], set]] = []
    for i, support in enumerate(supports):
        merged_sources, merged_support = [i], set(support)
        keep = []
        for sources, block_support in blocks:
            if block_support & merged_support:
                merged_sources += sources
                merged_support |= block_support
            else:
                keep.append((sources, block_support))
        blocks = keep + [(sorted(merged_sources), merged_support)]
    return [sources for sources, _ in blocks]
