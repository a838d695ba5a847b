import numpy as np
import pytest

from qwe.algebra import (
    PauliString,
    PhasedPauli,
    SingleSiteClifford,
    basis_element,
    dagger,
    format_pauli,
    hadamard,
    mul,
    omega,
    parse_pauli,
    phase_gate,
    power,
    site_partner,
    to_matrix,
    trace_inner,
    weight,
)
from qwe.errors import InputValidationError


def _random_pauli(rng, q, n):
    x = tuple(int(v) for v in rng.integers(0, q, size=n))
    z = tuple(int(v) for v in rng.integers(0, q, size=n))
    return PhasedPauli(PauliString(q, x, z), int(rng.integers(0, 4 * q)))


def test_parse_qubit_letters():
    p = parse_pauli("XYZI")
    assert p.x == (1, 1, 0, 0)
    assert p.z == (0, 1, 1, 0)
    # Y = iXZ
    assert p.phase == 2
    assert weight(p.pauli) == 3


def test_parse_signs_and_format():
    assert parse_pauli("-XZZX").phase == 4
    assert parse_pauli("-i XX").phase == 6
    assert format_pauli(parse_pauli("-1 XYZ")) == "-1 XYZ"
    assert format_pauli(parse_pauli("+i ZZ")) == "+i ZZ"


def test_parse_qudit_tokens():
    p = parse_pauli("w1 X1Z2 I Z1", q=3)
    assert p.x == (1, 0, 0)
    assert p.z == (2, 0, 1)
    assert p.phase == 4
    with pytest.raises(InputValidationError):
        parse_pauli("X1 Q", q=3)
    with pytest.raises(InputValidationError):
        parse_pauli("XQ")
    with pytest.raises(InputValidationError):
        parse_pauli("")


def test_qubit_anticommutation():
    x, z = parse_pauli("X"), parse_pauli("Z")
    xz, zx = mul(x, z), mul(z, x)
    assert xz.pauli == zx.pauli
    assert (zx.phase - xz.phase) % 8 == 4
    assert omega(x.pauli, z.pauli) == 1
    assert omega(parse_pauli("XX").pauli, parse_pauli("ZZ").pauli) == 0


@pytest.mark.parametrize("q", [2, 3, 5])
def test_mul_matches_matrices(q):
    rng = np.random.default_rng(q)
    for _ in range(10):
        p, o = _random_pauli(rng, q, 2), _random_pauli(rng, q, 2)
        assert np.allclose(to_matrix(mul(p, o)), to_matrix(p) @ to_matrix(o))
        assert np.allclose(to_matrix(dagger(p)), to_matrix(p).conj().T)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_omega_matches_matrices(q):
    rng = np.random.default_rng(10 + q)
    zeta = np.exp(2j * np.pi / q)
    for _ in range(10):
        e, f = _random_pauli(rng, q, 3), _random_pauli(rng, q, 3)
        w = omega(e.pauli, f.pauli)
        assert np.allclose(to_matrix(e) @ to_matrix(f), zeta**w * to_matrix(f) @ to_matrix(e))
        assert w == (-omega(f.pauli, e.pauli)) % q


@pytest.mark.parametrize("q", [2, 3, 5])
def test_basis_elements_have_order_q(q):
    for a in range(q):
        for b in range(q):
            element = basis_element(PauliString(q, (a,), (b,)))
            assert power(element, q) == PhasedPauli.identity(q, 1)


def test_qubit_basis_is_hermitian():
    for code in range(4):
        matrix = to_matrix(basis_element(PauliString.from_codes(2, (code,))))
        assert np.allclose(matrix, matrix.conj().T)


def test_trace_inner():
    y = basis_element(PauliString(2, (1,), (1,)))
    assert trace_inner(y, y) == 0
    assert trace_inner(y, parse_pauli("X")) is None
    minus_y = PhasedPauli(y.pauli, y.phase + 4)
    assert trace_inner(y, minus_y) == 4


@pytest.mark.parametrize("q", [2, 3])
def test_site_partner_is_transpose_partner(q):
    # tracing B_c against B_c' on a Σ|ii⟩ pair is nonzero only for c' = partner(c)
    partner = site_partner(q)
    for c in range(q * q):
        matrix = to_matrix(basis_element(PauliString.from_codes(q, (c,))))
        for c2 in range(q * q):
            other = to_matrix(basis_element(PauliString.from_codes(q, (c2,))))
            nonzero = abs(np.trace(matrix.T @ other)) > 1e-9
            assert nonzero == (c2 == partner[c])


@pytest.mark.parametrize("q", [2, 3])
def test_clifford_inverse(q):
    for gate in (hadamard(q), phase_gate(q)):
        inverse = gate.inverse()
        for a in range(q):
            for b in range(q):
                p = basis_element(PauliString(q, (a,), (b,)))
                assert inverse.conjugate(gate.conjugate(p)) == p


def test_hadamard_matrix_action():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    gate = hadamard(2)
    for code in range(4):
        p = basis_element(PauliString.from_codes(2, (code,)))
        assert np.allclose(to_matrix(gate.conjugate(p)), h @ to_matrix(p) @ h.conj().T)


def test_clifford_rejects_non_symplectic_images():
    with pytest.raises(InputValidationError):
        SingleSiteClifford.from_text("X", "X")
