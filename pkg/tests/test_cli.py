import json

import pytest

from jackfactor import basis, characters, cli, free, jack


def run(argv):
    lines = []
    code = cli.main(argv, out=lines.append)
    return code, "\n".join(lines)


def clear_memory():
    for mod in (jack, characters, basis, free):
        mod.clear_memory()


def test_jack_formats():
    assert run(["jack", "[2]"]) == (0, "p[1,1] + a*p[2]")
    assert run(["jack", "[]"]) == (0, "1")
    code, text = run(["jack", "[2]", "--format", "json"])
    assert code == 0 and json.loads(text)["terms"]["[2]"] == ["0", "1"]
    code, text = run(["jack", "[1,1]", "--format", "csv"])
    assert text.splitlines() == ['pi,theta', '"[1,1]",1', '[2],-1']


def test_char():
    assert run(["char", "[2]", "[2]"]) == (0, "2*A^1")
    code, text = run(["char", "[2]", "[1,1]", "--format", "json"])
    assert json.loads(text)["coefficients"] == {"-1": "-2"}


def test_structure_and_cumulant():
    assert run(["structure", "[3]", "[2]"]) == (0, "Ch[3,2] + 6*Ch[4] + 6*Ch[2,1] + 6*δ*Ch[3]")
    assert run(["cumulant", "[2]", "[2]"]) == (0, "-4*Ch[3] - 2*Ch[1,1] - 2*δ*Ch[2]")
    assert run(["cumulant", "[2]", "[2]", "--reverse"]) == (0, "4*Ch[3] + 2*Ch[1,1] + 2*δ*Ch[2]")
    code, text = run(["structure", "[3]", "[2]", "--format", "csv"])
    assert text.splitlines()[0] == "mu,delta_polynomial" and "[3],6*δ" in text
    code, text = run(["structure", "[3]", "[2]", "--format", "json"])
    data = json.loads(text)
    assert {"mu": [3], "delta": ["0", "6"]} in data["coefficients"]
    assert basis.ChExpansion.from_json(data["expansion"]) == basis.product_of_characters((3,), (2,))


def test_kl():
    assert run(["kl", "[2]"]) == (0, "R₃ + R₂*γ")
    code, text = run(["kl", "[2]", "[2]", "--format", "json"])
    assert code == 0 and json.loads(text)["text"].startswith("-4*R₄")


def test_operational_errors_exit_2(capsys):
    assert run(["char", "[x]", "[1]"])[0] == 2
    assert "error:" in capsys.readouterr().err
    assert run(["jack", "[11]"])[0] == 2
    assert run(["jack", "[4]", "--budget-size", "3"])[0] == 2
    assert run(["verify", "z3", "--jobs", "0"])[0] == 2
    assert run(["verify", "delta-zero", "--rank", "9"])[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "no-such-suite"])
    assert info.value.code == 2


def test_cache_errors_exit_2(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    clear_memory()
    assert run(["jack", "[3]", "--cache-dir", str(blocker / "sub")])[0] == 2
    assert str(blocker) in capsys.readouterr().err


def test_verify_json_lines():
    code, text = run(["verify", "main-theorem", "--max-size", "3", "--format", "json"])
    lines = [json.loads(line) for line in text.splitlines()]
    assert code == 0
    assert lines[-1]["summary"] == {"suite": "main-theorem", "reports": len(lines) - 1, "probes": len(lines) - 1, "violations": 0}
    assert set(lines[0]) == {"check", "parameters", "probes", "violations", "details", "passed"}


def test_verify_pretty_and_csv():
    code, text = run(["verify", "kl-positivity", "--max", "2"])
    assert code == 0 and text.splitlines()[-1].startswith("kl-positivity: 1 reports")
    code, text = run(["verify", "steroids", "--max-size", "3", "--format", "csv"])
    assert code == 0 and text.splitlines()[0] == "check,parameters,probes,violations"


def test_violations_exit_1(monkeypatch):
    def failing(item):
        return {"check": "fake", "parameters": {}, "probes": 1, "violations": [{"x": 1}], "details": {}, "passed": False}

    monkeypatch.setattr(cli, "_run_item", failing)
    code, text = run(["verify", "steroids", "--max-size", "2"])
    assert code == 1 and "FAIL fake" in text


def test_parallel_run_matches_serial():
    serial = run(["verify", "vanishing", "--max-size", "3", "--format", "json"])
    parallel = run(["verify", "vanishing", "--max-size", "3", "--format", "json", "--jobs", "2"])
    assert serial == parallel and serial[0] == 0


def test_cold_and_warm_cache_give_identical_reports(tmp_path):
    argv = ["verify", "brillinger", "--max-size", "3", "--format", "json", "--cache-dir", str(tmp_path)]
    clear_memory()
    cold = run(argv)
    assert any(tmp_path.iterdir())
    clear_memory()
    warm = run(argv)
    assert cold == warm and cold[0] == 0


def test_warm_command(tmp_path):
    clear_memory()
    code, text = run(["warm", "--max-size", "4", "--cache-dir", str(tmp_path)])
    assert code == 0 and len(list(tmp_path.iterdir())) == 5
