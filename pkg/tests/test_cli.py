import json

import pytest

from qwe.main import EXIT_CAP, EXIT_CONSISTENCY, EXIT_INPUT, EXIT_OK, main, write_atomic


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_enumerate_bundled_code(capsys):
    code, out = _run(capsys, "enumerate", "five_qubit")
    assert code == EXIT_OK
    result = json.loads(out)
    assert (result["n"], result["k"], result["distance"]) == (5, 1, 3)
    assert result["a_weights"] == ["1", "0", "0", "0", "15", "0"]
    assert result["b_weights"] == ["1", "0", "0", "30", "15", "18"]
    assert result["convention"] == "count"
    assert result["pure"] is False


def test_enumerate_raw_convention_to_file(tmp_path, capsys):
    target = tmp_path / "out" / "513.json"
    code, out = _run(capsys, "enumerate", "five_qubit", "--convention", "raw", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    result = json.loads(target.read_text())
    assert result["a_weights"] == ["4", "0", "0", "0", "60", "0"]
    assert result["b_weights"] == ["2", "0", "0", "60", "30", "36"]


def test_enumerate_encoding_state(capsys):
    code, out = _run(capsys, "enumerate", "five_qubit", "--encoding-state")
    assert code == EXIT_OK
    assert json.loads(out)["a_weights"] == ["1", "0", "0", "0", "45", "0", "18"]


def test_input_errors(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 2, "stabilizers": ["XX",]}')
    assert main(["enumerate", str(broken)]) == EXIT_INPUT
    assert main(["enumerate", "five_qubit", "--scheme", "hamming"]) == EXIT_INPUT
    assert main(["enumerate", str(tmp_path / "absent.json")]) == EXIT_INPUT
    assert main(["contract", "bell_chain", "--plan", str(tmp_path / "absent-plan.json")]) == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["enumerate"])


def test_contract_with_csv(tmp_path, capsys):
    csv_path = tmp_path / "a.csv"
    code, out = _run(capsys, "contract", "bell_chain", "--csv", str(csv_path))
    assert code == EXIT_OK
    assert csv_path.read_text() == "1,0,3\n"
    result = json.loads(out)
    assert result["plan_strategy"] == "manual"
    assert result["observed_width"] == 1
    assert [step["status"] for step in result["steps"]] == ["completed", "completed"]


def test_contract_plan_choices(tmp_path, capsys):
    code, out = _run(capsys, "contract", "bell_chain", "--plan", "input_order")
    assert code == EXIT_OK
    assert json.loads(out)["plan_strategy"] == "input_order"

    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps(["b2", "b1", "b1.b~b2.a"]))
    code, out = _run(capsys, "contract", "bell_chain", "--plan", str(plan))
    assert code == EXIT_OK
    assert json.loads(out)["plan_width"] == 1


def test_contract_double_scheme_csv(tmp_path, capsys):
    csv_path = tmp_path / "c.csv"
    code, _ = _run(capsys, "contract", "bell_chain", "--scheme", "double", "--csv", str(csv_path))
    assert code == EXIT_OK
    assert csv_path.read_text().splitlines() == ["1,0,1", "0,0,0", "1,0,1"]


def test_contract_memory_cap(capsys):
    assert main(["contract", "bell_chain", "--mem-cap", "1"]) == EXIT_CAP


def test_contract_declared_distance_mismatch(tmp_path, capsys):
    network = tmp_path / "net.json"
    network.write_text(
        json.dumps(
            {
                "legos": [{"id": "t", "code": "five_qubit", "legs": ["1", "2", "3", "4", "5", "l"]}],
                "dangling": {"physical": ["t.1", "t.2", "t.3", "t.4", "t.5"], "logical": ["t.l"]},
                "expected": {"distance": 4},
            }
        )
    )
    assert main(["contract", str(network)]) == EXIT_CONSISTENCY
    assert "exit code 4" in capsys.readouterr().err


def test_macwilliams_and_distance_from_documents(tmp_path, capsys):
    result_path = tmp_path / "result.json"
    assert main(["enumerate", "five_qubit", "--out", str(result_path)]) == EXIT_OK
    enumerated = json.loads(result_path.read_text())

    code, out = _run(capsys, "macwilliams", str(result_path), "--k", "1")
    assert code == EXIT_OK
    assert json.loads(out)["b"] == enumerated["b"]

    code, out = _run(capsys, "distance", str(result_path))
    assert code == EXIT_OK
    assert json.loads(out) == {"n": 5, "k": 1, "distance": 3}

    code, out = _run(capsys, "distance", "four_two_two")
    assert json.loads(out)["distance"] == 2


def test_macwilliams_homogenizes_weight_lists(tmp_path, capsys):
    polynomial = tmp_path / "a.json"
    polynomial.write_text(
        json.dumps({"scheme": "shor-laflamme", "q": 2, "terms": [{"exp": [0, 0], "coeff": "1"}, {"exp": [0, 2], "coeff": "3"}]})
    )
    code, out = _run(capsys, "macwilliams", str(polynomial), "--n", "2")
    assert code == EXIT_OK
    b = json.loads(out)["b"]
    assert {"exp": [2, 0], "coeff": "1"} in b["terms"]
    assert {"exp": [0, 2], "coeff": "3"} in b["terms"]


def test_oracle_command(capsys):
    code, out = _run(capsys, "oracle", "bell")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["convention"] == "raw"
    assert {"exp": [0, 2], "coeff": "3"} in result["a"]["terms"]

    code, out = _run(capsys, "oracle", "bell_chain")
    assert code == EXIT_OK
    assert {"exp": [0, 2], "coeff": "3"} in json.loads(out)["a"]["terms"]


def test_write_atomic_replaces_target(tmp_path):
    target = tmp_path / "file.txt"
    target.write_text("old")
    write_atomic(str(target), "new")
    assert target.read_text() == "new"
    assert [p.name for p in tmp_path.iterdir()] == ["file.txt"]
