import pytest

from mcgate import config
from mcgate.cli import main, parse_verify_mode
from mcgate.errors import PreconditionError


def run(argv):
    """main(argv); the exit code, 0 when main returns normally."""
    try:
        main(argv)
    except SystemExit as e:
        return e.code
    return 0


def test_verify_modes():
    assert parse_verify_mode("full") == ("full", 0, 0)
    assert parse_verify_mode("sampled") == ("sampled", 64, 0)
    assert parse_verify_mode("sampled:16:3") == ("sampled", 16, 3)
    for bad in ("exact", "sampled:x", "full:2"):
        with pytest.raises(PreconditionError):
            parse_verify_mode(bad)


def test_decompose_exact_to_stdout(capsys):
    assert run(["decompose", "--gate", "x", "--controls", "3", "--strategy", "exact", "--verify", "full"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("OPENQASM 2.0;")
    assert "strategy=exact n=4 cnots=26 bound=26 error=" in out


def test_decompose_json_to_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    code = run(["decompose", "--gate", "rx(pi/4)", "--controls", "4", "--format", "json", "-o", str(path)])
    assert code == 0
    assert path.read_text().startswith("{")
    assert "✅ Wrote" in capsys.readouterr().err


def test_decompose_approximate_with_patterns(capsys):
    code = run(["decompose", "--controls", "9", "--epsilon", "0.3", "--strategy", "approx-thm3",
                "--verify", "patterns"])
    assert code == 0
    assert "strategy=approx-thm3" in capsys.readouterr().out


def test_decompose_auto(capsys):
    assert run(["decompose", "--controls", "13", "--epsilon", "1e-3"]) == 0
    assert "strategy=exact n=14 cnots=626" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--controls", "8", "--strategy", "approx-thm1"],
        ["decompose", "--controls", "0"],
        ["decompose", "--controls", "3", "--epsilon", "3.0"],
        ["decompose", "--controls", "3", "--gate", "cx"],
        ["decompose", "--controls", "3", "--gate", "rx(nan)"],
        ["decompose", "--controls", "3", "--gate", "[[[NaN,0],[0,0]],[[0,0],[1,0]]]"],
        ["decompose", "--controls", "3", "--verify", "bogus"],
        ["basecontrols", "--epsilon", "0.1"],
        ["basecontrols", "--theta", "pi", "--gate", "x", "--epsilon", "0.1"],
    ],
)
def test_bad_input_exits_with_2(argv, capsys):
    assert run(argv) == 2
    assert "❌ Error:" in capsys.readouterr().err


def test_basecontrols(capsys):
    assert run(["basecontrols", "--theta", "pi", "--epsilon", "1e-3"]) == 0
    assert capsys.readouterr().out.startswith("nb=13 N=4096 predicted_error=")
    assert run(["basecontrols", "--gate", "x", "--epsilon", "0.3"]) == 0
    assert capsys.readouterr().out.startswith("nb=5 N=16 ")


@pytest.fixture
def toffoli_file(tmp_path):
    path = tmp_path / "c3x.qasm"
    assert run(["decompose", "--controls", "3", "--strategy", "exact", "-o", str(path)]) == 0
    return path


def test_verify_full(toffoli_file, capsys):
    capsys.readouterr()
    assert run(["verify", str(toffoli_file), "--against", "x", "--controls", "3"]) == 0
    out = capsys.readouterr().out
    assert "mode=full width=4 cnots=26 distance=" in out


def test_verify_patterns(toffoli_file, capsys):
    capsys.readouterr()
    assert run(["verify", str(toffoli_file), "--against", "x", "--controls", "3", "--mode", "patterns"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("pattern=all-active error=")
    assert sum(1 for line in lines if line.startswith("pattern=")) == 5


def test_verify_mismatch_exits_with_4(toffoli_file, capsys):
    assert run(["verify", str(toffoli_file), "--against", "z", "--controls", "3"]) == 4
    assert "❌ Error:" in capsys.readouterr().err


def test_verify_guard_exits_with_3(toffoli_file):
    config.override_settings(max_unitary_qubits=3)
    assert run(["verify", str(toffoli_file), "--against", "x", "--controls", "3"]) == 3


def test_verify_malformed_file_exits_with_2(tmp_path):
    path = tmp_path / "broken.qasm"
    path.write_text("OPENQASM 2.0;\nh q[0];\n")
    assert run(["verify", str(path), "--against", "x", "--controls", "1"]) == 2


def test_compare(capsys):
    assert run(["compare", "--epsilon", "1e-3", "--n-from", "29", "--n-to", "30"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,exact,thm1,thm3,barenco_iten,su2_single,su2_multi"
    assert lines[-1] == "30,3250,6528,1424,7400,440,440"


def test_compare_measured(capsys):
    assert run(["compare", "--epsilon", "0.3", "--n-from", "5", "--n-to", "6", "--measured"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith(",measured")
    assert lines[1].startswith("5,50,") and lines[1].endswith(",50")


def test_compare_rejects_reversed_range():
    assert run(["compare", "--epsilon", "1e-3", "--n-from", "30", "--n-to", "20"]) == 2


def test_strategies(capsys):
    assert run(["strategies"]) == 0
    out = capsys.readouterr().out
    assert "📦 Strategies (4):" in out
    assert "🧩 approx-thm3" in out


def test_env_template(tmp_path, capsys):
    path = tmp_path / ".env.template"
    assert run(["env", "template", "-o", str(path)]) == 0
    assert "MCGATE_MAX_ORACLE_QUBITS" in path.read_text()


def test_env_validate(monkeypatch, capsys):
    assert run(["env", "validate"]) == 0
    monkeypatch.setenv("MCGATE_MAX_UNITARY_QUBITS", "40")
    config.reset_settings()
    assert run(["env", "validate"]) == 2
    assert "MCGATE_MAX_UNITARY_QUBITS" in capsys.readouterr().out


def test_no_command_prints_help(capsys):
    assert run([]) == 0
    assert "usage: mcgate" in capsys.readouterr().out
