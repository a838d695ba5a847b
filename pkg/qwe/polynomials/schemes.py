from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple

from ..algebra.pauli import check_dimension
from ..errors import InputValidationError


class SchemeKind(str, Enum):
    SHOR_LAFLAMME = "shor-laflamme"
    DOUBLE = "double"
    REFINED_DOUBLE = "refined-double"
    COMPLETE = "complete"

    @classmethod
    def parse(cls, value: "str | SchemeKind") -> "SchemeKind":
        if isinstance(value, SchemeKind):
            return value
        normalized = str(value).strip().lower().replace("_", "-")
        aliases = {"scalar": "shor-laflamme", "sl": "shor-laflamme"}
        normalized = aliases.get(normalized, normalized)
        try:
            return cls(normalized)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise InputValidationError(f"Unknown weight scheme {value!r} (choose from {choices})")


@dataclass(frozen=True)
class WeightScheme:
    """Variables and single-site weight monomials of one enumerator family.

    Shor-Laflamme uses (w, z); double uses (w, x, y, z) with I→wy, X→xy,
    Y→xz, Z→wz; refined double uses x_a z_b for X^a Z^b; complete uses one
    variable u_ab per single-site operator.
    """

    kind: SchemeKind
    q: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind.parse(self.kind))
        check_dimension(self.q)

    @cached_property
    def variables(self) -> Tuple[str, ...]:
        q = self.q
        if self.kind is SchemeKind.SHOR_LAFLAMME:
            return ("w", "z")
        if self.kind is SchemeKind.DOUBLE:
            return ("w", "x", "y", "z")
        if self.kind is SchemeKind.REFINED_DOUBLE:
            return tuple(f"x{a}" for a in range(q)) + tuple(f"z{b}" for b in range(q))
        return tuple(f"u{a}{b}" for a in range(q) for b in range(q))

    @property
    def size(self) -> int:
        return len(self.variables)

    def index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise InputValidationError(f"Variable {variable!r} not in scheme {self.kind.value}")

    @cached_property
    def site_monomials(self) -> Tuple[Tuple[int, ...], ...]:
        """Exponent vector of wt(E, E) for each single-site code a*q + b."""
        q = self.q
        monomials = []
        for code in range(q * q):
            a, b = divmod(code, q)
            exps = [0] * self.size
            if self.kind is SchemeKind.SHOR_LAFLAMME:
                exps[0 if code == 0 else 1] = 1
            elif self.kind is SchemeKind.DOUBLE:
                exps[1 if a else 2] += 1
                exps[3 if b else 0] += 1
            elif self.kind is SchemeKind.REFINED_DOUBLE:
                exps[a] += 1
                exps[q + b] += 1
            else:
                exps[code] = 1
            monomials.append(tuple(exps))
        return tuple(monomials)

    def weight(self, code: int, other: Optional[int] = None) -> Optional[Tuple[int, ...]]:
        """wt(E, E') on one site; None stands for ⊥ (off-diagonal)."""
        if other is not None and other != code:
            return None
        return self.site_monomials[code]

    @cached_property
    def homogenizers(self) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
        """(homogenizing variable, variables it balances) per degree group."""
        q = self.q
        if self.kind is SchemeKind.SHOR_LAFLAMME:
            return ((0, (1,)),)
        if self.kind is SchemeKind.DOUBLE:
            return ((2, (1,)), (0, (3,)))
        if self.kind is SchemeKind.REFINED_DOUBLE:
            return ((0, tuple(range(1, q))), (q, tuple(range(q + 1, 2 * q))))
        return ((0, tuple(range(1, q * q))),)

    @property
    def site_degree(self) -> int:
        return len(self.homogenizers)

    def identity_monomial(self, n: int) -> Tuple[int, ...]:
        exps = [0] * self.size
        for h, _ in self.homogenizers:
            exps[h] = n
        return tuple(exps)

    def __str__(self):
        return f"{self.kind.value}(q={self.q})"
