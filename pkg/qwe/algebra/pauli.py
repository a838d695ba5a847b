"""Generalized Pauli operators X^a Z^b on n qudits of prime dimension q.

Phases are exponents of r = exp(2πi/4q); ζ = exp(2πi/q) = r^4. Per site the
normal form is X^a Z^b with X|j> = |j+1> and Z|j> = ζ^j |j>, so ZX = ζ XZ.
"""
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..errors import InputValidationError


@lru_cache(maxsize=None)
def check_dimension(q: int) -> int:
    if not isinstance(q, int) or q < 2 or not sympy.isprime(q):
        raise InputValidationError(f"Local dimension must be a prime >= 2, got {q!r}")
    return q


@dataclass(frozen=True)
class PauliString:
    """Unsigned Pauli string X^{x_1}Z^{z_1} ⊗ … ⊗ X^{x_n}Z^{z_n}."""

    q: int
    x: Tuple[int, ...]
    z: Tuple[int, ...]

    def __post_init__(self):
        check_dimension(self.q)
        if len(self.x) != len(self.z):
            raise InputValidationError("x and z exponent vectors differ in length")
        object.__setattr__(self, "x", tuple(int(a) % self.q for a in self.x))
        object.__setattr__(self, "z", tuple(int(b) % self.q for b in self.z))

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def identity(cls, q: int, n: int) -> "PauliString":
        return cls(q, (0,) * n, (0,) * n)

    @classmethod
    def from_codes(cls, q: int, codes: Sequence[int]) -> "PauliString":
        return cls(q, tuple(c // q for c in codes), tuple(c % q for c in codes))

    def codes(self) -> Tuple[int, ...]:
        """Per-site packed digits a*q + b."""
        q = self.q
        return tuple(a * q + b for a, b in zip(self.x, self.z))

    def restrict(self, sites: Iterable[int]) -> "PauliString":
        sites = list(sites)
        return PauliString(self.q, tuple(self.x[i] for i in sites), tuple(self.z[i] for i in sites))

    def is_identity(self) -> bool:
        return not any(self.x) and not any(self.z)

    def __str__(self):
        return format_sites(self.q, self.x, self.z)


@dataclass(frozen=True)
class PhasedPauli:
    """r^phase · P for an unsigned Pauli string P."""

    pauli: PauliString
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", int(self.phase) % (4 * self.pauli.q))

    @property
    def q(self) -> int:
        return self.pauli.q

    @property
    def n(self) -> int:
        return self.pauli.n

    @property
    def x(self) -> Tuple[int, ...]:
        return self.pauli.x

    @property
    def z(self) -> Tuple[int, ...]:
        return self.pauli.z

    @classmethod
    def identity(cls, q: int, n: int) -> "PhasedPauli":
        return cls(PauliString.identity(q, n), 0)

    def __str__(self):
        return format_pauli(self)


def _check_pair(p: PauliString, other: PauliString):
    if p.q != other.q:
        raise InputValidationError(f"Local dimension mismatch: {p.q} vs {other.q}")
    if p.n != other.n:
        raise InputValidationError(f"Length mismatch: {p.n} vs {other.n}")


def mul(p: PhasedPauli, other: PhasedPauli) -> PhasedPauli:
    """Normal-form product; moving Z^b past X^a contributes ζ^{ab}."""
    _check_pair(p.pauli, other.pauli)
    q = p.q
    swap = sum(b1 * a2 for b1, a2 in zip(p.z, other.x))
    product = PauliString(
        q,
        tuple(a1 + a2 for a1, a2 in zip(p.x, other.x)),
        tuple(b1 + b2 for b1, b2 in zip(p.z, other.z)),
    )
    return PhasedPauli(product, p.phase + other.phase + 4 * swap)


def power(p: PhasedPauli, exponent: int) -> PhasedPauli:
    result = PhasedPauli.identity(p.q, p.n)
    for _ in range(exponent % (4 * p.q)):
        result = mul(result, p)
    return result


def omega(e: PauliString, f: PauliString) -> int:
    """Exponent w of ζ with EF = ζ^w FE, i.e. Σ (a'b − ab') mod q."""
    _check_pair(e, f)
    return sum(b1 * a2 - a1 * b2 for a1, b1, a2, b2 in zip(e.x, e.z, f.x, f.z)) % e.q


def dagger(p: PhasedPauli) -> PhasedPauli:
    q = p.q
    swap = sum(a * b for a, b in zip(p.x, p.z))
    inverse = PauliString(q, tuple(-a for a in p.x), tuple(-b for b in p.z))
    return PhasedPauli(inverse, -p.phase + 4 * swap)


def conj_star(p: PhasedPauli) -> PhasedPauli:
    """Entrywise complex conjugate in the computational basis."""
    return PhasedPauli(PauliString(p.q, p.x, tuple(-b for b in p.z)), -p.phase)


def trace_inner(e: PhasedPauli, f: PhasedPauli) -> Optional[int]:
    """Tr(E†F)/q^n as a phase exponent, or None when it vanishes."""
    _check_pair(e.pauli, f.pauli)
    if e.pauli != f.pauli:
        return None
    return (f.phase - e.phase) % (4 * e.q)


def tensor(*paulis: PhasedPauli) -> PhasedPauli:
    q = paulis[0].q
    x: Tuple[int, ...] = ()
    z: Tuple[int, ...] = ()
    phase = 0
    for p in paulis:
        if p.q != q:
            raise InputValidationError("Cannot tensor Paulis of different local dimension")
        x += p.x
        z += p.z
        phase += p.phase
    return PhasedPauli(PauliString(q, x, z), phase)


def weight(p: PauliString) -> int:
    return sum(1 for a, b in zip(p.x, p.z) if a or b)


def weight_x(p: PauliString) -> int:
    return sum(1 for a in p.x if a)


def weight_z(p: PauliString) -> int:
    return sum(1 for b in p.z if b)


# Reference phases of the enumerator basis: Hermitian for q=2 (Y = iXZ),
# Weyl operators ζ^{-ab/2} X^a Z^b for odd q.


def reference_phase(q: int, a: int, b: int) -> int:
    if q == 2:
        return (2 * a * b) % 8
    half = (q + 1) // 2
    return (-4 * a * b * half) % (4 * q)


def basis_element(p: PauliString) -> PhasedPauli:
    q = p.q
    return PhasedPauli(p, sum(reference_phase(q, a, b) for a, b in zip(p.x, p.z)))


def basis_phase(p: PhasedPauli) -> int:
    """Phase of p relative to the basis element with the same unsigned part."""
    return (p.phase - basis_element(p.pauli).phase) % (4 * p.q)


@lru_cache(maxsize=None)
def site_trace_table(q: int) -> Tuple[Tuple[Optional[int], ...], ...]:
    """τ[c][c'] = Tr(B_c^T B_c')/q for single-site basis elements, as phase exponents."""
    table = []
    for c in range(q * q):
        bj = basis_element(PauliString.from_codes(q, (c,)))
        row = []
        for c2 in range(q * q):
            bk = basis_element(PauliString.from_codes(q, (c2,)))
            row.append(trace_inner(conj_star(bj), bk))
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def site_partner(q: int) -> Tuple[int, ...]:
    """Code of the unique basis element a leg must carry to trace against c."""
    return tuple((c // q) * q + (-(c % q)) % q for c in range(q * q))


# Text form


_PHASE_Q2 = {"+1": 0, "+": 0, "1": 0, "-1": 4, "-": 4, "+i": 2, "i": 2, "-i": 6}
_TOKEN = re.compile(r"^(?:I|X(\d*)(?:Z(\d*))?|Z(\d*))$")


def _parse_phase_token(q: int, token: str) -> Optional[int]:
    if q == 2 and token in _PHASE_Q2:
        return _PHASE_Q2[token]
    if token in ("+1", "+", "1"):
        return 0
    if token in ("-1", "-"):
        return 2 * q
    match = re.fullmatch(r"([wr])(-?\d+)", token)
    if match:
        k = int(match.group(2))
        return 4 * k if match.group(1) == "w" else k
    return None


def parse_pauli(text: str, q: int = 2) -> PhasedPauli:
    """Parse "XZZXI", "-i XYZ" (q=2) or "w1 X1Z2 I Z1" (q>2)."""
    check_dimension(q)
    tokens = text.split()
    if not tokens:
        raise InputValidationError("Empty Pauli string")
    phase = 0
    leading = _parse_phase_token(q, tokens[0])
    if leading is not None and len(tokens) > 1:
        phase = leading
        tokens = tokens[1:]
    elif q == 2:
        # glued sign: "-XZZX", "+iXYZ"
        prefix = re.match(r"^([+-]i?)(?=[IXYZ])", tokens[0])
        if prefix:
            phase = _PHASE_Q2[prefix.group(1)]
            tokens[0] = tokens[0][len(prefix.group(1)):]

    xs, zs = [], []
    if q == 2:
        letters = "".join(tokens)
        for ch in letters:
            if ch not in "IXYZ":
                raise InputValidationError(f"Unknown Pauli letter {ch!r} in {text!r}")
            a = 1 if ch in "XY" else 0
            b = 1 if ch in "ZY" else 0
            if ch == "Y":
                phase += 2
            xs.append(a)
            zs.append(b)
    else:
        for token in tokens:
            match = _TOKEN.match(token)
            if not match:
                raise InputValidationError(f"Bad qudit Pauli token {token!r} in {text!r}")
            if token == "I":
                a = b = 0
            elif token.startswith("X"):
                a = int(match.group(1) or 1)
                b = 0 if match.group(2) is None else int(match.group(2) or 1)
            else:
                a = 0
                b = int(match.group(3) or 1)
            xs.append(a)
            zs.append(b)
    return PhasedPauli(PauliString(q, tuple(xs), tuple(zs)), phase)


def format_sites(q: int, xs: Sequence[int], zs: Sequence[int]) -> str:
    if q == 2:
        return "".join("IZXY"[2 * a + b] for a, b in zip(xs, zs))
    tokens = []
    for a, b in zip(xs, zs):
        if not a and not b:
            tokens.append("I")
        else:
            tokens.append((f"X{a}" if a else "") + (f"Z{b}" if b else ""))
    return " ".join(tokens)


def format_phase(q: int, phase: int) -> str:
    phase %= 4 * q
    if q == 2 and phase % 2 == 0:
        return {0: "+1", 2: "+i", 4: "-1", 6: "-i"}[phase]
    if phase == 0:
        return "+1"
    if phase % 4 == 0:
        return f"w{phase // 4}"
    return f"r{phase}"


def format_pauli(p: PhasedPauli) -> str:
    """Inverse of parse_pauli; q=2 phases are relative to the Y-letter form."""
    phase = p.phase
    if p.q == 2:
        phase -= 2 * sum(a * b for a, b in zip(p.x, p.z))
    return f"{format_phase(p.q, phase)} {format_sites(p.q, p.x, p.z)}"


# Dense matrices


def site_matrices(q: int) -> Tuple[np.ndarray, np.ndarray]:
    shift = np.roll(np.eye(q, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(q) / q))
    return shift, clock


def to_matrix(p: PhasedPauli) -> np.ndarray:
    shift, clock = site_matrices(p.q)
    result = np.array([[1.0 + 0j]])
    for a, b in zip(p.x, p.z):
        site = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        result = np.kron(result, site)
    return np.exp(2j * np.pi * p.phase / (4 * p.q)) * result
