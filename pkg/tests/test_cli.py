"""Command line interface: exit codes, JSON report shapes, determinism."""

import json

import numpy as np
import pytest

from chernforms import CurvatureTensor, Form, random_tensor
from chernforms.cli import run
from chernforms.forms import VerdictReport
from chernforms.schur import SchurCheck, SchurReport


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 0, err or out
    return json.loads(out)


@pytest.fixture
def tensor_file(tmp_path):
    t = random_tensor(2, 2, 2, seed=17)
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(t.to_json()))
    return str(path), t


class TestFormsEval:
    def test_frozen_pairing(self, capsys, tmp_path):
        # psi ^ conj(psi) with psi = dz1 ^ dz2 on X1=(1,2i), X2=(3,4): 52
        psi = Form.dz(2, 1).wedge(Form.dz(2, 2))
        phi = psi.wedge(psi.conjugate())
        form_path = tmp_path / "form.json"
        form_path.write_text(json.dumps(phi.to_literal()))
        vec_path = tmp_path / "vectors.json"
        vec_path.write_text(json.dumps([
            [{"re": 1}, {"im": 2}],
            [{"re": 3}, {"re": 4}],
        ]))
        payload = invoke_json(capsys, "forms", "eval",
                              "--form", str(form_path), "--vectors", str(vec_path))
        assert payload["kind"] == "forms-eval"
        assert payload["value"]["re"] == pytest.approx(52.0)
        assert payload["value"]["im"] == pytest.approx(0.0)

    def test_exact_mode_reports_exact_parts(self, capsys, tmp_path):
        form_path = tmp_path / "form.json"
        form_path.write_text(json.dumps(
            {"n": 1, "terms": [{"dz": [1], "dzbar": [1], "re": 0, "im": 0.5}]}))
        vec_path = tmp_path / "vectors.json"
        vec_path.write_text(json.dumps([[{"re": 2}]]))
        payload = invoke_json(capsys, "forms", "eval", "--mode", "exact",
                              "--form", str(form_path), "--vectors", str(vec_path))
        # (-i)(i/2)|2|^2 = 2
        assert payload["value"]["re_exact"] == "2"
        assert payload["value"]["re"] == pytest.approx(2.0)

    def test_malformed_vectors(self, capsys, tmp_path):
        form_path = tmp_path / "form.json"
        form_path.write_text(json.dumps(Form.dz(1, 1).wedge(Form.dzbar(1, 1)).to_literal()))
        vec_path = tmp_path / "vectors.json"
        vec_path.write_text(json.dumps([[{"re": "x"}]]))
        code, _, err = invoke(capsys, "forms", "eval",
                              "--form", str(form_path), "--vectors", str(vec_path))
        assert code == 2
        assert "vectors[0]" in err


class TestCurvatureBuild:
    def test_tensor_instance(self, capsys, tensor_file):
        path, t = tensor_file
        payload = invoke_json(capsys, "curvature", "build", "--instance", path)
        assert payload["kind"] == "curvature"
        assert payload["witnessed"] is True
        assert payload["n"] == 2 and payload["r"] == 2
        assert len(payload["chern"]) == 3
        assert payload["chern"][0]["residual_prefactor_power"] == 0
        assert {tuple(row["partition"]) for row in payload["top"]} == {(2, 0), (1, 1)}
        assert payload["instance"] == t.to_json()
        # the chain holds on the frozen top coefficients
        tops = {tuple(row["partition"]): row["top"] for row in payload["top"]}
        assert 0 <= tops[(2, 0)] <= tops[(1, 1)] + 1e-12

    def test_explicit_omega_is_unwitnessed(self, capsys, tmp_path):
        omega_entry = Form.monomial(1, [1], [1], -3.0).to_literal()
        path = tmp_path / "omega.json"
        path.write_text(json.dumps({"omega": [[omega_entry]]}))
        payload = invoke_json(capsys, "curvature", "build", "--instance", str(path))
        assert payload["witnessed"] is False
        assert "instance" not in payload

    def test_exact_mode_rejects_tensor(self, capsys, tensor_file):
        path, _ = tensor_file
        code, _, err = invoke(capsys, "curvature", "build", "--instance", path,
                              "--mode", "exact")
        assert code == 2 and "exact" in err

    def test_non_square_omega(self, capsys, tmp_path):
        entry = Form.monomial(1, [1], [1], 1.0).to_literal()
        path = tmp_path / "omega.json"
        path.write_text(json.dumps({"omega": [[entry, entry]]}))
        code, _, err = invoke(capsys, "curvature", "build", "--instance", str(path))
        assert code == 2


class TestSchurCommands:
    def test_table(self, capsys):
        payload = invoke_json(capsys, "schur", "table", "--i", "2", "--r", "2")
        assert payload["entries"] == [
            {"partition": [2, 0], "schur": "c2"},
            {"partition": [1, 1], "schur": "c1^2 - c2"},
        ]

    def test_table_text_output(self, capsys):
        code, out, _ = invoke(capsys, "schur", "table", "--i", "2", "--r", "2",
                              "--output", "text")
        assert code == 0
        assert "S_(1,1) = c1^2 - c2" in out

    def test_verify_random(self, capsys):
        payload = invoke_json(capsys, "schur", "verify", "--random",
                              "--n", "2", "--r", "2", "--m", "2",
                              "--seed", "5", "--trials", "20")
        assert payload["verdict"] == "PASS"
        assert payload["source"]["kind"] == "random"
        assert payload["source"]["distribution"] == "standard-complex-normal"
        assert payload["instance_hash"]

    def test_verify_from_file(self, capsys, tensor_file):
        path, t = tensor_file
        payload = invoke_json(capsys, "schur", "verify", "--instance", path,
                              "--trials", "15")
        assert payload["verdict"] == "PASS"
        assert payload["instance"] == t.to_json()
        assert payload["source"] == {"kind": "file", "path": path}

    def test_byte_determinism(self, capsys):
        args = ("schur", "verify", "--random", "--n", "3", "--r", "2",
                "--seed", "9", "--trials", "25")
        code1, out1, _ = invoke(capsys, *args)
        code2, out2, _ = invoke(capsys, *args)
        assert (code1, code2) == (0, 0)
        assert out1 == out2

    def test_failing_report_exits_one(self, capsys, monkeypatch, tensor_file):
        path, t = tensor_file
        bad = VerdictReport(passed=False, min_value=-1.0, trials=1, seed=0,
                            tol=1e-9, scale=1.0, degree=1, witness=[[{"re": 1.0, "im": 0.0}]],
                            max_imag=0.0)
        failing = SchurReport(
            instance=t.to_json(), instance_hash="0" * 64, seed=0, trials=1,
            tol=1e-9, checks=(SchurCheck(degree=1, partition=(1,), report=bad),),
            passed=False)
        import chernforms.cli as cli_mod

        monkeypatch.setattr(cli_mod, "verify_schur_nonnegativity",
                            lambda *a, **k: failing)
        code, out, _ = invoke(capsys, "schur", "verify", "--instance", path)
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] == "FAIL"
        # a failing report still carries the witness sample
        assert payload["checks"][0]["report"]["witness"] is not None

    def test_random_needs_dimensions(self, capsys):
        code, _, err = invoke(capsys, "schur", "verify", "--random")
        assert code == 2 and "--n" in err

    def test_no_instance_given(self, capsys):
        code, _, err = invoke(capsys, "schur", "verify")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, "schur", "verify", "--instance", "/nope.json")
        assert code == 2 and "cannot read" in err

    def test_invalid_trials_and_tol(self, capsys, tensor_file):
        path, _ = tensor_file
        code, _, err = invoke(capsys, "schur", "verify", "--instance", path,
                              "--trials", "0")
        assert code == 2
        code, _, err = invoke(capsys, "schur", "verify", "--instance", path,
                              "--tol", "-1e-9")
        assert code == 2


class TestBoundsChain:
    def test_random_instance(self, capsys):
        payload = invoke_json(capsys, "bounds", "chain", "--random",
                              "--n", "2", "--r", "2", "--seed", "3", "--trials", "15")
        assert payload["kind"] == "bounds-chains"
        assert payload["verdict"] == "PASS"
        assert payload["degree"] == 2
        partitions_seen = [tuple(c["partition"]) for c in payload["chains"]]
        assert partitions_seen == [(2, 0), (1, 1)]
        for chain in payload["chains"]:
            assert chain["top"] is not None

    def test_explicit_degree_below_top(self, capsys, tensor_file):
        path, _ = tensor_file
        payload = invoke_json(capsys, "bounds", "chain", "--instance", path,
                              "--degree", "1", "--trials", "10")
        assert payload["degree"] == 1
        assert payload["chains"][0]["top"] is None

    def test_degree_out_of_range(self, capsys, tensor_file):
        path, _ = tensor_file
        code, _, err = invoke(capsys, "bounds", "chain", "--instance", path,
                              "--degree", "9")
        assert code == 2 and "--degree" in err


class TestModelCommands:
    def test_chern_numbers_cp3(self, capsys):
        payload = invoke_json(capsys, "model", "chern-numbers", "--model", "CP3")
        values = {tuple(e["partition"]): e["value"] for e in payload["numbers"]}
        assert values == {(3, 0, 0): 4, (2, 1, 0): 24, (1, 1, 1): 64}
        assert payload["globally_generated_tangent"] is True
        assert payload["globally_generated_cotangent"] is False

    def test_bounds_pass_and_all_zero(self, capsys):
        payload = invoke_json(capsys, "model", "bounds", "--model", "T1xCP1")
        assert payload["verdict"] == "PASS"
        assert payload["all_zero"] is True

    def test_signed_bounds_need_torus(self, capsys):
        code, _, err = invoke(capsys, "model", "bounds", "--model", "CP2", "--signed")
        assert code == 2 and "cotangent" in err
        payload = invoke_json(capsys, "model", "bounds", "--model", "T2", "--signed")
        assert payload["verdict"] == "PASS" and payload["signed"] is True

    def test_rr_frozen_case(self, capsys):
        payload = invoke_json(capsys, "model", "rr", "--model", "CP1",
                              "--line", "K", "--m", "3")
        assert payload["chi"] == [{"m": 3, "chi": -5}]
        assert payload["kodaira_leading"] == "-2"
        assert payload["polynomial"] == ["1", "-2"]

    def test_rr_range(self, capsys):
        # a range starting with a minus needs the --m=... spelling
        payload = invoke_json(capsys, "model", "rr", "--model", "CP2",
                              "--line", "O(1)", "--m=-2..2")
        chis = {row["m"]: row["chi"] for row in payload["chi"]}
        assert chis == {-2: 0, -1: 0, 0: 1, 1: 3, 2: 6}

    def test_rr_bad_range(self, capsys):
        code, _, err = invoke(capsys, "model", "rr", "--model", "CP1",
                              "--line", "K", "--m", "5..1")
        assert code == 2
        code, _, err = invoke(capsys, "model", "rr", "--model", "CP1",
                              "--line", "K", "--m", "x..y")
        assert code == 2

    def test_bad_model_and_line(self, capsys):
        code, _, err = invoke(capsys, "model", "chern-numbers", "--model", "Q5")
        assert code == 2
        code, _, err = invoke(capsys, "model", "rr", "--model", "CP1",
                              "--line", "L(1)", "--m", "0")
        assert code == 2

    def test_text_output(self, capsys):
        code, out, _ = invoke(capsys, "model", "rr", "--model", "CP1",
                              "--line", "K", "--m", "3", "--output", "text")
        assert code == 0
        assert "m=3: chi=-5" in out


class TestHarness:
    def test_unknown_subcommand(self, capsys):
        assert invoke(capsys, "nonsense")[0] == 2

    def test_console_main_raises_systemexit(self, capsys):
        from chernforms.cli import console_main
        import sys

        old = sys.argv
        sys.argv = ["chernforms", "schur", "table", "--i", "1", "--r", "1"]
        try:
            with pytest.raises(SystemExit) as exc:
                console_main()
            assert exc.value.code == 0
        finally:
            sys.argv = old

    def test_json_is_sorted_and_indented(self, capsys):
        _, out, _ = invoke(capsys, "schur", "table", "--i", "1", "--r", "1")
        assert out == json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n"
