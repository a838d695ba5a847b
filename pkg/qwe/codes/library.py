"""Code documents: parsing into stabilizer groups and the bundled code/network library."""
import json
import logging
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import ValidationError

from ..algebra.pauli import PhasedPauli, format_pauli, parse_pauli
from ..errors import InputValidationError
from ..models import CodeDocument, NetworkDocument
from .stabilizer import LogicalFrame, StabilizerGroup, validate_frame

logger = logging.getLogger(__name__)

_DATA = "qwe.data"


def _parse_text(text: str, q: int, n: int, where: str) -> PhasedPauli:
    pauli = parse_pauli(text, q)
    if pauli.n != n:
        raise InputValidationError(f"{where}: {text!r} acts on {pauli.n} sites, code has n={n}")
    return pauli


def group_from_document(document: CodeDocument) -> Tuple[StabilizerGroup, Optional[LogicalFrame]]:
    """Stabilizer group and optional logical frame described by a code document."""
    q, n = document.q, document.n
    generators = []
    for i, entry in enumerate(document.stabilizers):
        generators.append(_parse_text(f"{entry.phase} {entry.paulis}", q, n, f"stabilizers[{i}]"))
    group = StabilizerGroup(q, n, tuple(generators))
    frame = None
    if document.logical is not None:
        xs = tuple(_parse_text(p.x, q, n, f"logical[{i}].x") for i, p in enumerate(document.logical))
        zs = tuple(_parse_text(p.z, q, n, f"logical[{i}].z") for i, p in enumerate(document.logical))
        frame = validate_frame(group, LogicalFrame(xs, zs))
    logger.debug(f"Parsed code {document.name or '<unnamed>'}: {group}")
    return group, frame


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item.get("loc", ()))
        parts.append(f"{location or '<root>'}: {item.get('msg')}")
    return "; ".join(parts)


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputValidationError(f"{source}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def parse_code_document(data: Union[str, dict], source: str = "<code>") -> CodeDocument:
    if isinstance(data, str):
        data = _load_json(data, source)
    try:
        return CodeDocument.model_validate(data)
    except ValidationError as e:
        raise InputValidationError(f"{source}: {_validation_message(e)}") from e


def parse_network_document(data: Union[str, dict], source: str = "<network>") -> NetworkDocument:
    if isinstance(data, str):
        data = _load_json(data, source)
    try:
        return NetworkDocument.model_validate(data)
    except ValidationError as e:
        raise InputValidationError(f"{source}: {_validation_message(e)}") from e


def _bundled(kind: str, name: str) -> str:
    path = resources.files(_DATA).joinpath(kind, f"{name}.json")
    if not path.is_file():
        raise InputValidationError(f"No bundled {kind[:-1]} named {name!r}; available: {list_bundled(kind)}")
    return path.read_text(encoding="utf-8")


def list_bundled(kind: str = "codes") -> List[str]:
    folder = resources.files(_DATA).joinpath(kind)
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_code_document(name: str) -> CodeDocument:
    return parse_code_document(_bundled("codes", name), f"bundled code {name}")


def load_code(name: str) -> Tuple[StabilizerGroup, Optional[LogicalFrame]]:
    return group_from_document(load_code_document(name))


def load_network_document(name: str) -> NetworkDocument:
    return parse_network_document(_bundled("networks", name), f"bundled network {name}")


def read_code_file(path: Union[str, Path]) -> CodeDocument:
    """A code document from disk, or a bundled one when `path` is a library name."""
    path = Path(path)
    if not path.exists() and path.suffix == "" and str(path) in list_bundled("codes"):
        return load_code_document(str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputValidationError(f"Cannot read code file {path}: {e}") from e
    return parse_code_document(text, str(path))


def read_network_file(path: Union[str, Path]) -> NetworkDocument:
    path = Path(path)
    if not path.exists() and path.suffix == "" and str(path) in list_bundled("networks"):
        return load_network_document(str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputValidationError(f"Cannot read network file {path}: {e}") from e
    return parse_network_document(text, str(path))


def document_from_group(
    group: StabilizerGroup, frame: Optional[LogicalFrame] = None, name: Optional[str] = None
) -> CodeDocument:
    """Inverse of group_from_document, used by the lattice builders."""
    stabilizers = []
    for g in group.generators:
        phase, paulis = format_pauli(g).split(" ", 1)
        stabilizers.append({"phase": phase, "paulis": paulis})
    logical = None
    if frame is not None and frame.k:
        logical = [{"x": format_pauli(x), "z": format_pauli(z)} for x, z in zip(frame.x, frame.z)]
    return CodeDocument(name=name, q=group.q, n=group.n, stabilizers=stabilizers, logical=logical)
