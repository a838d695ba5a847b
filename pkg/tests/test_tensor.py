import pytest

from qwe.algebra import hadamard, phase_gate
from qwe.codes import (
    StabilizerGroup,
    apply_clifford,
    encoding_state,
    list_bundled,
    load_code,
    random_code,
    random_stabilizer_state,
)
from qwe.enumerators import (
    LegoBlock,
    TensorEnumerator,
    contract,
    enumerators_by_counting,
    factoring_legs,
    from_lego,
    lambda_clifford,
    tensor_product,
    trace_legs,
    weighted_trace,
)
from qwe.errors import InputValidationError
from qwe.polynomials import EnumPoly, WeightScheme


def _lego(group, name="t"):
    return LegoBlock(name, group, tuple(f"{name}.{i}" for i in range(group.n)))


def test_y_gauge_lego_is_diagonal(sl):
    group, _ = load_code("y_gauge_412")
    lego = _lego(group)
    tensor = from_lego(lego, ["t.2", "t.3"], sl)
    assert tensor.rank == 2
    assert tensor.is_diagonal()
    w, z = EnumPoly.variable(sl, "w"), EnumPoly.variable(sl, "z")
    # packed site codes: I, Z, X, Y
    i, zz, x, y = 0, 1, 2, 3
    expected = {(i, i): w**2, (zz, y): w * z, (y, zz): w * z}
    expected.update({key: z**2 for key in [(i, x), (x, i), (x, x), (zz, zz), (y, y)]})
    assert {e: poly for (e, _), poly in tensor.entries.items()} == expected


def test_full_reduction_gives_scalar_enumerator(five_qubit, sl):
    group, frame = five_qubit
    state = encoding_state(group, frame)
    lego = _lego(state)
    scalar = from_lego(lego, [], sl).to_scalar()
    assert scalar == enumerators_by_counting(state, sl).a
    partial = from_lego(lego, ["t.0", "t.5"], sl)
    assert weighted_trace(partial).to_scalar() == scalar


def test_lego_tensor_is_hermitian(rng, sl):
    for _ in range(5):
        lego = _lego(random_stabilizer_state(4, rng))
        assert from_lego(lego, ["t.1", "t.3"], sl).is_hermitian()


@pytest.mark.parametrize("gate", [hadamard(), phase_gate()])
def test_clifford_covariance(five_qubit, sl, gate):
    group, frame = five_qubit
    state = encoding_state(group, frame)
    legs = ["t.0", "t.5"]
    before = from_lego(_lego(state), legs, sl)
    after = from_lego(_lego(apply_clifford(state, 5, gate)), legs, sl)
    assert lambda_clifford(before, "t.5", gate) == after
    assert lambda_clifford(after, "t.5", gate, adjoint=True) == before


@pytest.mark.parametrize("gate", [hadamard(), phase_gate()])
def test_clifford_covariance_on_random_codes(rng, sl, gate):
    for _ in range(10):
        n = int(rng.integers(2, 5))
        state = encoding_state(random_code(n, 1, rng))
        logical = f"t.{n}"
        legs = ["t.0", logical]
        before = from_lego(_lego(state), legs, sl)
        after = from_lego(_lego(apply_clifford(state, n, gate)), legs, sl)
        assert lambda_clifford(before, logical, gate) == after


def test_logical_legs_of_encoding_tensors_are_diagonal():
    checked = 0
    for name in list_bundled("codes"):
        group, frame = load_code(name)
        if not group.k:
            continue
        scheme = WeightScheme("shor-laflamme", group.q)
        state = encoding_state(group, frame)
        tensor = from_lego(_lego(state), [f"t.{i}" for i in range(group.n, state.n)], scheme)
        assert tensor.is_diagonal(), name
        assert len(tensor.entries) == group.q ** (2 * group.k)
        checked += 1
    assert checked >= 5


def test_contract_equals_product_then_traces(rng, sl):
    for _ in range(5):
        left = from_lego(_lego(random_stabilizer_state(3, rng), "a"), ["a.0", "a.1", "a.2"], sl)
        right = from_lego(_lego(random_stabilizer_state(3, rng), "b"), ["b.0", "b.1"], sl)
        joined = contract(left, right, [("a.0", "b.0"), ("a.2", "b.1")])
        step = trace_legs(tensor_product(left, right), "a.0", "b.0")
        assert joined == trace_legs(step, "a.2", "b.1")
        assert contract(left, right, [("a.0", "b.0")], threads=3) == trace_legs(
            tensor_product(left, right), "a.0", "b.0"
        )


def test_bell_trace_teleports_a_state(sl):
    # |0> traced into one half of a Bell pair leaves |0> on the other half
    bell = from_lego(_lego(load_code("bell")[0], "b"), ["b.0"], sl)
    zero = from_lego(_lego(load_code("zero")[0], "z"), ["z.0"], sl)
    result = contract(bell, zero, [("b.0", "z.0")]).normalized()
    assert result.to_scalar() == EnumPoly.from_coefficients(sl, [1, 1], 1)


def test_normalize_and_reorder(sl):
    tensor = TensorEnumerator(sl, ("a", "b"), {((0, 1), (0, 1)): EnumPoly.constant(sl, 4)})
    with pytest.raises(InputValidationError):
        tensor.normalized()
    flipped = tensor.reordered(["b", "a"])
    assert flipped.entry((1, 0)) == EnumPoly.constant(sl, 4)
    assert flipped.diagonal_sum() == EnumPoly.constant(sl, 4)
    with pytest.raises(InputValidationError):
        tensor.reordered(["a", "c"])


def test_tensor_errors(sl):
    lego = _lego(load_code("bell")[0])
    with pytest.raises(InputValidationError):
        from_lego(lego, ["t.7"], sl)
    with pytest.raises(InputValidationError):
        from_lego(lego, ["t.0"], WeightScheme("shor-laflamme", 3))
    tensor = from_lego(lego, ["t.0", "t.1"], sl)
    with pytest.raises(InputValidationError):
        trace_legs(tensor, "t.0", "t.0")
    with pytest.raises(InputValidationError):
        tensor_product(tensor, tensor)
    with pytest.raises(InputValidationError):
        tensor.to_scalar()
    with pytest.raises(InputValidationError):
        LegoBlock("t", lego.group, ("x",))


def test_factoring_legs():
    group = StabilizerGroup.from_strings(["ZII", "IXX", "IZZ"])
    assert factoring_legs(_lego(group)) == ["t.0"]
    assert factoring_legs(_lego(load_code("perfect_six")[0])) == []
