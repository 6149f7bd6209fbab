from __future__ import annotations

import json

from dgtor.cli import main


def test_list_fixtures(capsys):
    assert main(["list-fixtures"]) == 0
    assert "su4_u1" in capsys.readouterr().out


def test_fixture_with_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["fixture", "cyclic_group:3", "--max-degree", "6", "--oracle", "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "Z/3" in text and "Koszul oracle: agree" in text
    data = json.loads(out.read_text())
    assert [r["group"] for r in data["totals"]] == ["Z", "0", "Z/3", "0", "Z/3", "0", "Z/3"]


def test_compute_and_errors(tmp_path, capsys):
    good = tmp_path / "good.toml"
    good.write_text('coefficients = "F2"\n[base]\ngenerators = { x = 2 }\n')
    assert main(["compute", str(good), "--max-degree", "3"]) == 0
    bad = tmp_path / "bad.toml"
    bad.write_text('coefficients = "Z"\n[base]\ngenerators = { x = 1 }\n')
    assert main(["compute", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["compute", str(tmp_path / "missing.toml")]) == 2
    assert main(["fixture", "nonexistent"]) == 2


def test_resource_guard_exit_code(monkeypatch):
    monkeypatch.setenv("DGTOR_MAX_CELLS", "100")
    assert main(["fixture", "free_loop_cp_infty"]) == 3


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    assert capsys.readouterr().out.count("PASS") == 3
