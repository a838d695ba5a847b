import pytest

from qwe.codes import (
    bell_chain,
    load_code,
    load_network_document,
    planar_surface_code,
    planar_surface_network,
    random_two_lego_network,
    strip_network,
)
from qwe.enumerators import enumerators_by_counting, transform_for
from qwe.errors import ConsistencyError, InputValidationError, ResourceCapError
from qwe.models import ExpectedValues
from qwe.network import (
    PlanStrategy,
    StepKind,
    code_report,
    contract_network,
    network_oracle,
    parse_network,
    plan_contraction,
)
from qwe.polynomials import EnumPoly, WeightScheme, weight_list


def _sl(coefficients, n):
    return EnumPoly.from_coefficients(WeightScheme("shor-laflamme"), coefficients, n)


def _report(network, **kwargs):
    return code_report(network, contract_network(network, **kwargs))


def _bell_document(**overrides):
    document = {
        "name": "bells",
        "legos": [
            {"id": "b1", "code": "bell", "legs": ["a", "b"]},
            {"id": "b2", "code": "bell", "legs": ["a", "b"]},
        ],
        "contract": [["b1.b", "b2.a"]],
        "dangling": {"physical": ["b1.a", "b2.b"]},
    }
    document.update(overrides)
    return document


def test_bundled_bell_chain():
    network = parse_network(load_network_document("bell_chain"))
    outcome = contract_network(network)
    assert outcome.plan.strategy is PlanStrategy.MANUAL
    assert outcome.plan.tokens() == ["b1", "b2", "b1.b~b2.a"]
    assert outcome.plan.widths == [1, 0]
    assert outcome.observed_width == 1
    assert [s.status for s in outcome.steps] == ["completed", "completed"]
    report = code_report(network, outcome)
    assert report.pair.a == _sl([1, 0, 3], 2)
    assert report.distance == 2


@pytest.mark.parametrize("length", [2, 3, 6, 11])
def test_bell_chains_keep_width_one(length):
    network = parse_network(bell_chain(length))
    plan = plan_contraction(network)
    assert plan.width == 1
    report = _report(network, plan=plan)
    assert report.pair.a == _sl([1, 0, 3], 2)


def test_one_lego_five_qubit_code():
    network = parse_network(load_network_document("one_lego_513"))
    assert (network.n, network.k) == (5, 1)
    report = _report(network)
    assert report.pair.a == _sl([1, 0, 0, 0, 15, 0], 5)
    assert report.pair.b == _sl([1, 0, 0, 30, 15, 18], 5)
    assert report.distance == 3
    assert not report.pure
    assert report.mw_cross_check


def test_declared_distance_mismatch():
    document = load_network_document("one_lego_513")
    network = parse_network(document.model_copy(update={"expected": ExpectedValues(distance=4)}))
    with pytest.raises(ConsistencyError, match="distance 4"):
        _report(network)
    network = parse_network(document.model_copy(update={"expected": ExpectedValues(n=6)}))
    with pytest.raises(ConsistencyError):
        _report(network)


def test_stopper_on_a_bell_pair():
    document = {
        "legos": [
            {"id": "b", "code": "bell", "legs": ["a", "b"]},
            {"id": "s", "code": "zero", "legs": ["s"]},
        ],
        "contract": [["b.b", "s.s"]],
        "dangling": {"physical": ["b.a"]},
    }
    report = _report(parse_network(document))
    assert report.pair.a == _sl([1, 1], 1)
    assert report.factoring == {"s": ["s.s"]}


def test_default_plan_is_greedy():
    network = parse_network(bell_chain(3))
    assert plan_contraction(network).strategy is PlanStrategy.GREEDY
    outcome = contract_network(network)
    assert outcome.plan.strategy is PlanStrategy.GREEDY
    assert code_report(network, outcome).pair.a == _sl([1, 0, 3], 2)


def test_smallest_planar_network_is_one_lego():
    network = parse_network(planar_surface_network(2, 2))
    assert (network.n, network.k) == (5, 1)
    group, frame = load_code("surface_512")
    counted = enumerators_by_counting(group, WeightScheme("shor-laflamme"), frame)
    report = _report(network)
    assert report.pair.a == counted.a
    assert report.pair.b == counted.b
    assert report.distance == 2


def test_surface_code_network_matches_counting():
    group, frame = planar_surface_code(3, 3)
    counted = enumerators_by_counting(group, WeightScheme("shor-laflamme"), frame)
    network = parse_network(planar_surface_network(3, 3, expected_distance=3))
    assert (network.n, network.k) == (13, 1)
    greedy_plan = plan_contraction(network, "greedy")
    in_order_plan = plan_contraction(network, "input_order")
    assert max(greedy_plan.width, in_order_plan.width) <= 6
    greedy = _report(network, plan=greedy_plan)
    in_order = _report(network, plan=in_order_plan)
    assert greedy.pair.a == counted.a
    assert greedy.pair.b == counted.b
    assert greedy.distance == 3
    assert in_order.pair == greedy.pair


def test_surface_network_threads_and_double_scheme():
    network = parse_network(planar_surface_network(3, 3, scheme="double"))
    report = _report(network, threads=4)
    group, frame = planar_surface_code(3, 3)
    counted = enumerators_by_counting(group, WeightScheme("double"), frame)
    assert report.pair.a == counted.a
    assert report.distance is None


def test_surface_4x4_distance():
    network = parse_network(load_network_document("surface_4x4"))
    assert (network.n, network.k) == (25, 1)
    report = _report(network)
    assert report.distance == 4
    assert weight_list(report.pair.a, 25)[:3] == [1, 0, 0]


def test_surface_with_a_row_missing_breaks_its_declared_distance():
    network = parse_network(load_network_document("surface_4x4_row_dropped"))
    assert network.n == 18
    with pytest.raises(ConsistencyError, match="distance 4"):
        _report(network)


def test_strip_network_shape():
    network = parse_network(strip_network(4))
    assert (network.n, network.k) == (18, 1)
    assert network.scheme.kind.value == "double"
    report = _report(network)
    assert report.pair.b == transform_for(network.scheme).apply(report.pair.a).scale(2)


def test_strip_width_does_not_grow_with_length():
    widths = {length: plan_contraction(parse_network(strip_network(length))).width for length in (4, 8, 16, 30)}
    assert widths[8] == widths[16] == widths[30]
    assert widths[4] <= widths[30]


def test_long_strip_double_enumerator():
    network = parse_network(strip_network(30))
    assert (network.n, network.k) == (148, 1)
    report = _report(network)
    assert report.mw_cross_check
    matrix = report.pair.a.coefficient_matrix(network.n)
    assert matrix[0][0] == 1
    assert all(c >= 0 and c == int(c) for row in matrix for c in row)
    assert sum(sum(row) for row in matrix) == 2 ** (network.n - network.k)


def test_holographic_star_keeps_four_bonds_open():
    network = parse_network(load_network_document("holographic_20_5"))
    assert (network.n, network.k) == (20, 5)
    greedy = plan_contraction(network)
    # the five logical legs stay open to the end on top of the bonds
    assert greedy.cut_width <= 4
    assert greedy.widths[-1] == 5 and greedy.cut_widths[-1] == 0
    report = _report(network, plan=greedy)
    assert _report(network, plan=plan_contraction(network, "input_order")).pair == report.pair
    a, b = weight_list(report.pair.a, 20), weight_list(report.pair.b, 20)
    assert a[0] == b[0] == 1
    assert sum(a) == 2**15
    assert sum(b) == 2**25
    assert all(x >= 0 for x in a + b)


def test_stoppers_fold_into_their_lego():
    document = {
        "legos": [{"id": "b", "code": "bell", "legs": ["a", "b"], "stoppers": {"b": "zero"}}],
        "dangling": {"physical": ["b.a"]},
    }
    network = parse_network(document)
    assert network.legos["b"].legs == ("b.a",)
    assert [str(g) for g in network.legos["b"].group.generators] == ["+1 Z"]
    assert _report(network).pair.a == _sl([1, 1], 1)
    document["legos"][0]["stoppers"] = {"c": "plus"}
    with pytest.raises(InputValidationError, match="no legs"):
        parse_network(document)


def test_two_five_qubit_surface_legos_match_dense_contraction():
    legs = ["nw", "ne", "c", "sw", "se", "l"]
    document = {
        "legos": [
            {"id": "a", "code": "surface_512", "legs": legs, "stoppers": {"l": "plus"}},
            {"id": "b", "code": "surface_512", "legs": legs, "stoppers": {"l": "zero"}},
        ],
        "contract": [["a.se", "b.nw"], ["a.ne", "b.sw"]],
        "dangling": {"physical": ["a.nw", "a.c", "a.sw", "b.ne", "b.c", "b.se"]},
    }
    network = parse_network(document)
    expected = network_oracle(network).pair
    for strategy in ("greedy", "input_order"):
        report = _report(network, plan=plan_contraction(network, strategy))
        assert report.pair.a == expected.a
        assert report.pair.b == expected.b


def test_random_two_lego_networks_match_dense_contraction(rng):
    checked = 0
    for _ in range(25):
        network = parse_network(random_two_lego_network(rng))
        try:
            expected = network_oracle(network).pair
        except InputValidationError:
            # the two legos contract to zero
            with pytest.raises(InputValidationError):
                _report(network)
            continue
        report = _report(network)
        assert report.pair.a == expected.a
        assert report.pair.b == expected.b
        checked += 1
    assert checked


def test_memory_cap_reports_step():
    network = parse_network(load_network_document("bell_chain"))
    with pytest.raises(ResourceCapError) as info:
        contract_network(network, mem_cap=1)
    assert info.value.step_index == 0


@pytest.mark.parametrize(
    "overrides",
    [
        {"contract": [["b1.x", "b2.a"]]},
        {"contract": [["b1.a", "b1.a"]]},
        {"dangling": {"physical": ["b1.a"]}},
        {"dangling": {"physical": ["b1.a", "b2.b", "b1.b"]}},
        {"contract": [["b1.b", "b2.a"]], "legos": [{"id": "b1", "code": "bell", "legs": ["a", "b"]}] * 2},
        {"legos": [{"id": "b.1", "code": "bell", "legs": ["a", "b"]}]},
        {"builder": {"kind": "bell_chain"}},
        {"q": 3},
    ],
)
def test_network_validation(overrides):
    with pytest.raises(InputValidationError):
        parse_network(_bell_document(**overrides))


def test_code_lego_needs_logical_legs():
    document = {
        "legos": [{"id": "t", "code": "five_qubit", "legs": ["1", "2", "3", "4", "5"]}],
        "dangling": {"physical": ["t.1", "t.2", "t.3", "t.4", "t.5"]},
    }
    with pytest.raises(InputValidationError, match="needs 6 legs"):
        parse_network(document)


def test_manual_plans():
    network = parse_network(_bell_document())
    plan = plan_contraction(network, tokens=["b2", "b1", "b2.a~b1.b"])
    assert [s.kind for s in plan.steps] == [StepKind.INTRODUCE, StepKind.INTRODUCE]
    assert plan.steps[1].edges == (("b2.a", "b1.b"),)
    assert _report(network, plan=plan).pair.a == _sl([1, 0, 3], 2)
    for tokens in (["b1", "b2"], ["b1", "b3"], ["b1", "b1", "b2"], ["b1", "b1.b~b2.a", "b2"]):
        with pytest.raises(InputValidationError):
            plan_contraction(network, tokens=tokens)
    with pytest.raises(InputValidationError):
        plan_contraction(network, "cheapest")


def test_self_trace_plan_step():
    # one spider with two of its legs joined to each other
    document = {
        "legos": [{"id": "g", "code": {"n": 3, "stabilizers": ["ZZI", "IZZ", "XXX"]}, "legs": ["a", "b", "c"]}],
        "contract": [["g.a", "g.b"]],
        "dangling": {"physical": ["g.c"]},
    }
    network = parse_network(document)
    plan = plan_contraction(network)
    assert [s.kind for s in plan.steps] == [StepKind.INTRODUCE, StepKind.TRACE]
    assert plan.widths == [2, 0]
    # Σ_u |uuu> traced on two legs leaves |+>
    assert _report(network, plan=plan).pair.a == _sl([1, 1], 1)
