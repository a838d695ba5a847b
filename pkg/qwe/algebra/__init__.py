from .cyclotomic import CyclotomicNumber, as_rational, conjugate, root_of_unity, tidy
from .clifford import SingleSiteClifford, hadamard, phase_gate
from .pauli import (
    PauliString,
    PhasedPauli,
    basis_element,
    basis_phase,
    check_dimension,
    conj_star,
    dagger,
    format_pauli,
    mul,
    omega,
    parse_pauli,
    power,
    reference_phase,
    site_partner,
    site_trace_table,
    tensor,
    to_matrix,
    trace_inner,
    weight,
    weight_x,
    weight_z,
)

__all__ = [
    "SingleSiteClifford",
    "hadamard",
    "phase_gate",
    "CyclotomicNumber",
    "as_rational",
    "conjugate",
    "root_of_unity",
    "tidy",
    "PauliString",
    "PhasedPauli",
    "basis_element",
    "basis_phase",
    "check_dimension",
    "conj_star",
    "dagger",
    "format_pauli",
    "mul",
    "omega",
    "parse_pauli",
    "power",
    "reference_phase",
    "site_partner",
    "site_trace_table",
    "tensor",
    "to_matrix",
    "trace_inner",
    "weight",
    "weight_x",
    "weight_z",
]
