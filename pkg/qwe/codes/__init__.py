from .builders import (
    bell_chain,
    expand_builder,
    planar_surface_checks,
    planar_surface_code,
    planar_surface_network,
    random_code,
    random_stabilizer_state,
    random_two_lego_network,
    spider_group,
    strip_network,
)
from .library import (
    document_from_group,
    group_from_document,
    list_bundled,
    load_code,
    load_code_document,
    load_network_document,
    parse_code_document,
    parse_network_document,
    read_code_file,
    read_network_file,
)
from .stabilizer import (
    DEFAULT_GROUP_CAP,
    LogicalFrame,
    StabilizerGroup,
    apply_clifford,
    cap_sites,
    encoding_state,
    enumerate_group,
    logical_operators,
    normalizer_basis,
    symplectic_matrix,
    validate_frame,
)

__all__ = [
    "bell_chain",
    "expand_builder",
    "planar_surface_checks",
    "planar_surface_code",
    "planar_surface_network",
    "random_code",
    "random_stabilizer_state",
    "random_two_lego_network",
    "spider_group",
    "strip_network",
    "document_from_group",
    "group_from_document",
    "list_bundled",
    "load_code",
    "load_code_document",
    "load_network_document",
    "parse_code_document",
    "parse_network_document",
    "read_code_file",
    "read_network_file",
    "DEFAULT_GROUP_CAP",
    "LogicalFrame",
    "StabilizerGroup",
    "apply_clifford",
    "cap_sites",
    "encoding_state",
    "enumerate_group",
    "logical_operators",
    "normalizer_basis",
    "symplectic_matrix",
    "validate_frame",
]
