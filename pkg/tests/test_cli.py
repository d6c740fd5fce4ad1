import json
import subprocess
import sys

import pytest

from behavnet import modelfile
from behavnet.cli import main
from behavnet.network import incidence


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_csv(path, header, rows):
    path.write_text(",".join(header) + "\n" + "".join(",".join(str(x) for x in r) + "\n" for r in rows))
    return path


class TestAnalyze:
    def test_circuit_json(self, capsys, data_dir):
        code, out, _ = run(capsys, "analyze", data_dir / "circuit.json", "--json")
        rep = json.loads(out)
        assert code == 0
        assert rep["interconnection"] == {"p": 3, "n": 2}
        assert rep["regular"] is True and rep["regular_feedback"] is False

    def test_circuit_text(self, capsys, data_dir):
        code, out, _ = run(capsys, "analyze", data_dir / "circuit.json")
        assert code == 0
        assert "interconnection: p=3 n=2" in out
        assert "regular_feedback: false" in out

    def test_four_component_incidence(self, capsys, data_dir):
        _, out, _ = run(capsys, "analyze", data_dir / "four_component.json", "--json")
        assert json.loads(out)["incidence"]["S"] == [[1, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 1, 1]]

    def test_autonomous(self, capsys, data_dir):
        _, out, _ = run(capsys, "analyze", data_dir / "autonomous.json", "--json")
        rep = json.loads(out)
        # x(t+1) = ... with det [[s, -1], [1, s]] = s^2 + 1
        assert rep["interconnection"] == {"p": 2, "n": 2}
        assert rep["regular"] is True

    def test_syntax_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"kind": "network",\n "signals": [}\n')
        code, _, err = run(capsys, "analyze", bad)
        assert code == 2
        assert err.startswith("error[schema]") and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", tmp_path / "nope.json")
        assert code == 2 and "error[io]" in err


class TestGraph:
    def test_signal_dot(self, capsys, data_dir):
        code, out, _ = run(capsys, "graph", data_dir / "four_component.json", "--kind", "signal")
        assert code == 0
        assert out.count("[label=\"w") == 4
        assert out.count("Sigma") == 4

    def test_svar_dot(self, capsys, data_dir):
        _, out, _ = run(capsys, "graph", data_dir / "svar3.json", "--kind", "svar")
        assert out.count("->") == 4

    def test_kind_mismatch(self, capsys, data_dir):
        code, _, err = run(capsys, "graph", data_dir / "circuit.json", "--kind", "svar")
        assert code == 2 and "kind_mismatch" in err

    def test_vertices_only(self, capsys, data_dir):
        _, out, _ = run(capsys, "graph", data_dir / "free.json")
        assert "--" not in out and out.count("label=") == 2

    def test_json_to_file(self, capsys, data_dir, tmp_path):
        target = tmp_path / "g.json"
        run(capsys, "graph", data_dir / "four_component.json", "--kind", "system", "--format", "json", "-o", target)
        doc = json.loads(target.read_text())
        assert [e["members"] for e in doc["edges"]][2] == ["Sigma1", "Sigma3", "Sigma4"]

    def test_deterministic(self, capsys, data_dir):
        first = run(capsys, "graph", data_dir / "four_component.json")[1]
        assert run(capsys, "graph", data_dir / "four_component.json")[1] == first


class TestSvar:
    def test_to(self, capsys, data_dir, tmp_path):
        target = tmp_path / "net.json"
        code, _, _ = run(capsys, "svar", data_dir / "svar3.json", "--direction", "to", "-o", target)
        assert code == 0
        mf = modelfile.load(str(target))
        assert incidence(mf.network).to_lists() == [[1, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]]
        assert mf.extra["permutation"] == ["y1", "y2", "y3", "u"]

    def test_round_trip(self, capsys, data_dir, tmp_path, svar3):
        net_file = tmp_path / "net.json"
        back = tmp_path / "back.json"
        run(capsys, "svar", data_dir / "svar3.json", "--direction", "to", "-o", net_file)
        code, _, _ = run(capsys, "svar", net_file, "--direction", "from", "-o", back)
        assert code == 0
        model = modelfile.load(str(back)).svar
        assert model.sparsity() == svar3.sparsity()

    def test_circuit_from_is_rejected(self, capsys, data_dir):
        code, _, err = run(capsys, "svar", data_dir / "circuit.json", "--direction", "from")
        assert code == 1
        assert "not a regular feedback interconnection" in err

    def test_svar_assumption_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"kind": "svar", "X": [[[0, 2]]], "Q": [[1]]}))
        code, _, err = run(capsys, "svar", bad, "--direction", "to")
        assert code == 1 and "svar_assumption" in err


class TestMerge:
    def test_circuit(self, capsys, data_dir):
        code, out, _ = run(capsys, "merge", data_dir / "circuit.json", "--json")
        rep = json.loads(out)
        assert code == 0
        assert rep["partition"] == [[1], [2, 3]] and rep["k"] == 2
        assert rep["regular_feedback"] is True

    def test_already_regular_feedback(self, capsys, data_dir):
        _, out, _ = run(capsys, "merge", data_dir / "circuit_merged.json")
        assert "partition: {1},{2}" in out

    def test_duplicates_regular_mode(self, capsys, tmp_path):
        doc = {
            "kind": "network",
            "signals": [{"name": "a"}, {"name": "b"}],
            "components": [{"rows": [[[0, 1], 1]]}, {"rows": [[[0, 1], 1]]}],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(doc))
        _, out, _ = run(capsys, "merge", path, "--mode", "regular", "--json")
        assert json.loads(out)["partition"] == [[1, 2]]


class TestSimulateAndCheck:
    def test_zero_input_zero_trajectory(self, capsys, data_dir, tmp_path):
        u = write_csv(tmp_path / "u.csv", ["V"], [[0]] * 6)
        code, out, _ = run(capsys, "simulate", data_dir / "circuit_merged.json", "--input", u, "--horizon", 6)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "V,VC,I1,I2"
        assert all(line == "0,0,0,0" for line in lines[1:]) and len(lines) == 7

    def test_pipe_into_check(self, capsys, data_dir, tmp_path):
        u = write_csv(tmp_path / "u.csv", ["V"], [[t * t - 3] for t in range(10)])
        traj = tmp_path / "traj.csv"
        run(capsys, "simulate", data_dir / "circuit_merged.json", "--input", u, "--horizon", 10, "-o", traj)
        code, out, _ = run(capsys, "check", data_dir / "circuit.json", "--trajectory", traj)
        assert code == 0 and out.startswith("member")

    def test_check_reports_violation(self, capsys, data_dir, tmp_path):
        traj = write_csv(tmp_path / "t.csv", ["V", "VC", "I1", "I2"], [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]])
        code, out, _ = run(capsys, "check", data_dir / "circuit.json", "--trajectory", traj)
        assert code == 1
        assert "first violation at t=1, equation 1 (Sigma1)" in out

    def test_static_copy(self, capsys, data_dir, tmp_path):
        u = write_csv(tmp_path / "u.csv", ["u"], [[1], ["1/2"], [-4]])
        _, out, _ = run(capsys, "simulate", data_dir / "static.json", "--input", u, "--horizon", 3)
        assert out.splitlines()[1:] == ["1,1", "1/2,1/2", "-4,-4"]

    def test_inconsistent_init(self, capsys, tmp_path):
        doc = {
            "kind": "network",
            "signals": [{"name": "y1"}, {"name": "y2"}, {"name": "u"}],
            "components": [{"rows": [[[0, 1], 0, -1]]}, {"rows": [[1, -1, 0]]}],
        }
        model = tmp_path / "m.json"
        model.write_text(json.dumps(doc))
        u = write_csv(tmp_path / "u.csv", ["u"], [[0]] * 4)
        init = write_csv(tmp_path / "i.csv", ["y1", "y2"], [[1, 2]])
        code, _, err = run(capsys, "simulate", model, "--input", u, "--init", init, "--horizon", 4)
        assert code == 1 and "inconsistent_initial" in err and "t=0" in err

    def test_horizon_shortfall(self, capsys, data_dir, tmp_path):
        u = write_csv(tmp_path / "u.csv", ["V"], [[0]] * 3)
        code, _, err = run(capsys, "simulate", data_dir / "circuit_merged.json", "--input", u, "--horizon", 8)
        assert code == 2 and "horizon" in err

    def test_missing_input(self, capsys, data_dir):
        code, _, _ = run(capsys, "simulate", data_dir / "circuit_merged.json", "--horizon", 4)
        assert code == 2

    def test_no_outputs(self, capsys, data_dir):
        code, _, err = run(capsys, "simulate", data_dir / "free.json", "--horizon", 3)
        assert code == 1 and "no_outputs" in err

    def test_bad_csv(self, capsys, data_dir, tmp_path):
        u = tmp_path / "u.csv"
        u.write_text("V\n0.5\n")
        code, _, err = run(capsys, "simulate", data_dir / "circuit_merged.json", "--input", u, "--horizon", 1)
        assert code == 2 and "csv" in err


def test_console_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "behavnet.cli", "merge", str(data_dir / "circuit.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "partition: {1},{2,3}" in proc.stdout


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 2
