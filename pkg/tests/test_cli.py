import json

import pytest

from pcurvature import cli, diffop, fields
from pcurvature.errors import OperatorSyntaxError, ZeroOperator

F3 = fields.PrimeField(3)
F5 = fields.PrimeField(5)
F7 = fields.PrimeField(7)


def test_parse_operator_pins():
    L = cli.parse_operator("Dx - x", F3)
    assert [list(c) for c in L.coeffs] == [[F3.zero, F3.from_int(2)],
                                           [F3.one]]
    assert L.bidegree == (1, 1)

    L2 = cli.parse_operator("x*Dx^2 + Dx + 1", F5)
    assert L2.bidegree == (1, 2)

    L3 = cli.parse_operator("(x^2+1)*Dx - (3*x)", F7)
    assert [list(c) for c in L3.coeffs] == [[F7.zero, F7.from_int(4)],
                                            [F7.one, F7.zero, F7.one]]


def test_parse_operator_accepts_spacing_and_signs():
    L = cli.parse_operator("-Dx + + x - -1", F5)
    # -(Dx) + x + 1, normalized so the leading coefficient is -1
    assert [list(c) for c in L.coeffs] == [[F5.one, F5.one],
                                           [F5.from_int(4)]]


def test_parse_operator_coefficient_arithmetic():
    L = cli.parse_operator("(x+1)^2*Dx + 2*3", F7)
    assert [list(c) for c in L.coeffs] == [[F7.from_int(6)],
                                           [F7.one, F7.from_int(2), F7.one]]


def test_parse_operator_syntax_errors_carry_position():
    with pytest.raises(OperatorSyntaxError) as e:
        cli.parse_operator("Dx + @", F5)
    assert e.value.position == 5
    with pytest.raises(OperatorSyntaxError):
        cli.parse_operator("Dx * x", F5)
    with pytest.raises(OperatorSyntaxError):
        cli.parse_operator("(Dx + 1)^2", F5)
    with pytest.raises(OperatorSyntaxError):
        cli.parse_operator("x * (Dx + 1) * x", F5)
    with pytest.raises(OperatorSyntaxError):
        cli.parse_operator("Dx ^ x", F5)
    with pytest.raises(OperatorSyntaxError):
        cli.parse_operator("(x + 1", F5)


def test_parse_operator_zero_rejections():
    with pytest.raises(ZeroOperator):
        cli.parse_operator("3*Dx", F3)
    with pytest.raises(ZeroOperator):
        cli.parse_operator("Dx - Dx", F5)
    with pytest.raises(ZeroOperator):
        cli.parse_operator("x + 1", F5)  # no differential part


def test_parse_polynomial_rejects_dx():
    assert cli.parse_polynomial("x^2 + 1", F5) == [F5.one, F5.zero, F5.one]
    with pytest.raises(OperatorSyntaxError):
        cli.parse_polynomial("Dx", F5)


def test_dx_commutes_with_itself():
    L = cli.parse_operator("Dx*Dx + Dx^2*Dx", F5)
    assert L.order == 3
    assert [list(c) for c in L.coeffs] == [[], [], [F5.one], [F5.one]]


def _run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_main_det_pin(capsys):
    code, out, _ = _run(["--p", "3", "--op", "Dx - x", "--algo", "det"],
                        capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["factors"] == ["T + X"]
    assert doc["params"]["D"] == 1


def test_main_mc_seeded(capsys):
    argv = ["--p", "5", "--op", "Dx", "--algo", "mc",
            "--epsilon", "0.25", "--seed", "42"]
    code, out, _ = _run(argv, capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["factors"] == ["T"]
    code2, out2, _ = _run(argv, capsys)
    doc2 = json.loads(out2)
    doc.pop("timings"), doc2.pop("timings")
    assert doc2 == doc


def test_main_check_and_profile(capsys):
    code, out, _ = _run(["--p", "7", "--op", "Dx - 1", "--algo", "det",
                         "--check", "--profile"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["check"] == {"match": True}
    assert doc["profile"] == [0]


def test_main_naive_algo(capsys):
    code, out, _ = _run(["--p", "5", "--op", "x*Dx^2 + Dx + 1",
                         "--algo", "naive"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["algorithm"] == "naive"
    assert len(doc["factors"]) == 2


def test_main_exit_codes(capsys):
    assert _run(["--p", "5", "--op", "Dx + @"], capsys)[0] == 2
    assert _run(["--p", "3", "--op", "3*Dx"], capsys)[0] == 2
    assert _run(["--p", "4", "--op", "Dx"], capsys)[0] == 3
    assert _run(["--p", "3", "--op", "Dx^3 + x"], capsys)[0] == 3
    assert _run(["--p", "5", "--op", "Dx", "--epsilon", "2.0",
                 "--algo", "mc"], capsys)[0] == 3


def test_main_error_reports_are_machine_readable(capsys):
    code, _, err = _run(["--p", "5", "--op", "Dx + @"], capsys)
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "syntax"
    assert doc["position"] == 5


def test_result_document_round_trips(capsys):
    code, out, _ = _run(["--p", "7", "--op", "(x^2+1)*Dx - (3*x)",
                         "--check", "--profile"], capsys)
    assert code == 0
    doc = cli.ResultDocument.from_json(out)
    assert doc.to_json() == out.strip()


def test_system_file_flow(tmp_path, capsys):
    path = tmp_path / "sys.json"
    path.write_text(json.dumps({
        "p": 5, "ext": 1, "f_A": "x^2 + 1",
        "A_tilde": [["x", "1"], ["0", "x^2"]],
    }))
    code, out, _ = _run(["--system", str(path), "--check"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["check"] == {"match": True}
    assert doc["input"]["kind"] == "system"

    code2, _, err = _run(["--p", "7", "--system", str(path)], capsys)
    assert code2 == 2
    assert "contradicts" in json.loads(err)["message"]


def test_system_file_missing_keys(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 5}))
    assert _run(["--system", str(path)], capsys)[0] == 2


def test_load_system_values():
    import tempfile, os
    doc = {"p": 5, "f_A": "x", "A_tilde": [["2*x + 1"]]}
    with tempfile.NamedTemporaryFile("w", suffix=".json",
                                     delete=False) as fh:
        json.dump(doc, fh)
        name = fh.name
    try:
        sysv, p, ext = cli.load_system(name)
        assert (p, ext) == (5, 1)
        assert list(sysv.f_A) == [F5.zero, F5.one]
        assert [list(e) for e in sysv.A_tilde[0]] == [[F5.one,
                                                       F5.from_int(2)]]
    finally:
        os.unlink(name)


def test_bench_csv(capsys):
    code, out, err = _run(["--p", "5", "--op", "x*Dx^2 + Dx + 1",
                           "--bench", "101,211", "--bench-runs", "2"],
                          capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,median_s,best_s,runs"
    assert lines[1].startswith("101,")
    assert lines[2].startswith("211,")
    assert "time ratio" in err


def test_bench_rejects_composite(capsys):
    code, _, err = _run(["--p", "5", "--op", "Dx", "--bench", "4"], capsys)
    assert code == 3
    assert json.loads(err)["error"] == "precondition"


def test_bench_empty_list(capsys):
    code, out, _ = _run(["--p", "5", "--op", "Dx", "--bench", ""], capsys)
    assert code == 0
    assert out.strip().splitlines() == ["p,median_s,best_s,runs"]


def test_selection_failure_maps_to_exit_4(monkeypatch, capsys):
    from pcurvature.errors import SelectionFailed

    def boom(*args, **kwargs):
        raise SelectionFailed("forced for the exit-code contract")

    monkeypatch.setattr(cli.reconstruct, "reconstruct_montecarlo", boom)
    code, _, err = _run(["--p", "5", "--op", "Dx", "--algo", "mc"], capsys)
    assert code == 4
    assert json.loads(err)["error"] == "selection-failed"


def test_check_mismatch_maps_to_exit_5(monkeypatch, capsys):
    wrong = [[[F7.one], [F7.one]]]  # pretends the factor is T + 1

    monkeypatch.setattr(cli.diffop, "naive_invariant_factors",
                        lambda sysv, p: wrong)
    code, out, err = _run(["--p", "7", "--op", "Dx", "--check"], capsys)
    assert code == 5
    assert json.loads(out)["check"] == {"match": False}
    assert json.loads(err)["error"] == "check-mismatch"
