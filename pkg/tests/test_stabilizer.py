import pytest

from qwe.algebra import PhasedPauli, hadamard, omega, parse_pauli
from qwe.codes import (
    LogicalFrame,
    StabilizerGroup,
    apply_clifford,
    cap_sites,
    document_from_group,
    encoding_state,
    enumerate_group,
    group_from_document,
    list_bundled,
    load_code,
    logical_operators,
    normalizer_basis,
    parse_code_document,
    planar_surface_code,
    read_code_file,
    validate_frame,
)
from qwe.errors import ConsistencyError, InputValidationError, ResourceCapError


def test_generator_checks():
    with pytest.raises(InputValidationError):
        StabilizerGroup.from_strings(["XI", "ZI"])
    with pytest.raises(InputValidationError):
        StabilizerGroup.from_strings(["XX", "XX"])
    # (-i XX)^2 = -I
    with pytest.raises(InputValidationError):
        StabilizerGroup.from_strings(["-i XX"])
    with pytest.raises(InputValidationError):
        StabilizerGroup.from_strings([])


def test_group_elements(five_qubit):
    group, _ = five_qubit
    assert (group.n, group.k, group.order) == (5, 1, 16)
    elements = list(enumerate_group(group))
    assert elements[0] == PhasedPauli.identity(2, 5)
    assert len({e.pauli for e in elements}) == 16
    with pytest.raises(ResourceCapError):
        list(enumerate_group(group, cap=8))


def test_normalizer_and_logicals(five_qubit):
    group, frame = five_qubit
    assert len(normalizer_basis(group)) == group.n + group.k
    found = logical_operators(group)
    validate_frame(group, found)
    assert omega(found.x[0].pauli, found.z[0].pauli) == 1
    assert frame.x[0] == parse_pauli("XXXXX")


def test_frame_validation(five_qubit):
    group, _ = five_qubit
    bad = LogicalFrame((parse_pauli("XXXXX"),), (parse_pauli("XXXXX"),))
    with pytest.raises(InputValidationError):
        validate_frame(group, bad)
    with pytest.raises(InputValidationError):
        validate_frame(group, LogicalFrame((parse_pauli("XIIII"),), (parse_pauli("ZZZZZ"),)))


def test_encoding_state_shape(four_two_two):
    group, frame = four_two_two
    state = encoding_state(group, frame)
    assert (state.n, state.k) == (6, 0)
    assert encoding_state(state) is state


def test_apply_clifford_swaps_bell_generators():
    bell = StabilizerGroup.from_strings(["XX", "ZZ"])
    rotated = apply_clifford(apply_clifford(bell, 0, hadamard()), 1, hadamard())
    assert [str(g) for g in rotated.generators] == ["+1 ZZ", "+1 XX"]


def test_qutrit_code():
    group, frame = load_code("qutrit_bell")
    assert (group.q, group.n, group.k) == (3, 2, 0)
    assert frame is None


def test_planar_surface_code():
    group, frame = planar_surface_code(3, 3)
    assert (group.n, group.k) == (13, 1)
    validate_frame(group, frame)
    assert [str(p) for p in frame.x] == ["+1 " + "".join("X" if v in (0, 5, 10) else "I" for v in range(13))]
    assert (planar_surface_code(4, 4)[0].n, planar_surface_code(3, 30)[0].n) == (25, 148)
    with pytest.raises(InputValidationError):
        planar_surface_code(1, 3)


def test_smallest_planar_code_is_the_five_qubit_lego():
    group, frame = planar_surface_code(2, 2)
    lego, lego_frame = load_code("surface_512")
    assert group.generators == lego.generators
    assert frame == lego_frame


def test_document_round_trip(four_two_two):
    group, frame = four_two_two
    again, again_frame = group_from_document(document_from_group(group, frame, name="copy"))
    assert again.generators == group.generators
    assert again_frame == frame


def test_code_document_errors(tmp_path):
    with pytest.raises(InputValidationError, match="line 1"):
        parse_code_document('{"n": 2,')
    with pytest.raises(InputValidationError, match="n"):
        parse_code_document({"n": 0, "stabilizers": ["XX"]})
    with pytest.raises(InputValidationError):
        parse_code_document({"n": 2, "stabilizers": ["XX"], "unexpected": 1})
    document = parse_code_document({"n": 3, "stabilizers": ["XXI"]})
    with pytest.raises(InputValidationError, match="acts on 3 sites"):
        group_from_document(document.model_copy(update={"n": 2}))

    path = tmp_path / "code.json"
    path.write_text('{"name": "rep", "n": 3, "stabilizers": ["ZZI", "IZZ"]}')
    assert read_code_file(path).name == "rep"
    assert read_code_file("five_qubit").n == 5
    with pytest.raises(InputValidationError):
        read_code_file(tmp_path / "missing.json")


def test_bundled_library():
    names = list_bundled("codes")
    assert {"five_qubit", "four_two_two", "perfect_six", "bell"} <= set(names)
    with pytest.raises(InputValidationError):
        load_code("no_such_code")


def test_cap_sites():
    bell, _ = load_code("bell")
    assert [str(g) for g in cap_sites(bell, {1: "zero"}).generators] == ["+1 Z"]
    assert [str(g) for g in cap_sites(bell, {1: "plus"}).generators] == ["+1 X"]
    assert cap_sites(bell, {0: "zero", 1: "zero"}).n == 0
    one = StabilizerGroup.from_strings(["-Z"])
    with pytest.raises(ConsistencyError):
        cap_sites(one, {0: "zero"})
    with pytest.raises(InputValidationError):
        cap_sites(bell, {2: "zero"})
    with pytest.raises(InputValidationError):
        cap_sites(bell, {0: "minus"})
