import json

import pytest

from brauerspan.cli import main


def run(argv):
    return main(argv)


def test_gen_writes_export(tmp_path, capsys):
    out = tmp_path / "o2.json"
    assert run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2",
                "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["elements"]) == 3
    assert data["group"] == "O" and data["format_version"] == 1
    assert "3 element(s)" in capsys.readouterr().out


def test_gen_empty_set_warns(tmp_path, capsys):
    out = tmp_path / "odd.json"
    assert run(["gen", "--group", "O", "--n", "3", "--k", "1", "--l", "2",
                "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err
    assert json.loads(out.read_text())["elements"] == []


def test_gen_so_nine_elements(tmp_path):
    out = tmp_path / "so.json"
    assert run(["gen", "--group", "SO", "--n", "2", "--k", "3", "--l", "1",
                "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["elements"]) == 9


def test_gen_rejects_sp_odd_n(tmp_path, capsys):
    assert run(["gen", "--group", "Sp", "--n", "3", "--k", "1", "--l", "1",
                "--out", str(tmp_path / "x.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_gen_features(tmp_path):
    out = tmp_path / "feat.json"
    assert run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2",
                "--dk", "2", "--dl", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["elements"]) == 12
    assert data["elements"][1]["feature"] == [1, 2]


def test_gen_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["gen", "--group", "SO", "--n", "2", "--k", "3", "--l", "1",
                    "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_default_outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("BRAUERSPAN_OUTDIR", str(tmp_path))
    assert run(["gen", "--group", "O", "--n", "2", "--k", "1", "--l", "1"]) == 0
    assert (tmp_path / "O_n2_k1_l1.json").exists()


def test_gen_io_failure(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("plain file, not a directory")
    assert run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2",
                "--out", str(blocker / "x.json")]) == 1
    assert "error" in capsys.readouterr().err


def test_gen_text_format(tmp_path):
    out = tmp_path / "o2.txt"
    assert run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2",
                "--out", str(out), "--format", "text"]) == 0
    assert "B 2 2 : (1,2)(3,4)" in out.read_text()


def test_verify_roundtrip(tmp_path, capsys):
    out = tmp_path / "o2.json"
    run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2", "--out", str(out)])
    assert run(["verify", str(out), "--trials", "5"]) == 0
    assert "passed=True" in capsys.readouterr().out


def test_verify_detects_flipped_entry(tmp_path, capsys):
    out = tmp_path / "o2.json"
    run(["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2", "--out", str(out)])
    data = json.loads(out.read_text())
    data["elements"][0]["entries"][0][2] *= -1
    out.write_text(json.dumps(data))
    assert run(["verify", str(out), "--trials", "5"]) == 3
    assert "passed=False" in capsys.readouterr().out


def test_verify_empty_set_vacuous(tmp_path, capsys):
    out = tmp_path / "odd.json"
    run(["gen", "--group", "O", "--n", "3", "--k", "1", "--l", "2", "--out", str(out)])
    assert run(["verify", str(out)]) == 0
    captured = capsys.readouterr()
    assert "vacuous" in captured.out
    assert "warning" in captured.err


def test_verify_unparsable_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ this is not json")
    assert run(["verify", str(bad)]) == 1
    assert run(["verify", str(tmp_path / "missing.json")]) == 1


def test_verify_local_export(tmp_path, capsys):
    out = tmp_path / "local.json"
    assert run(["local", "--factor", "O,2,2,2", "--factor", "SO,2,1,1",
                "--out", str(out)]) == 0
    assert run(["verify", str(out), "--trials", "5", "--tol", "1e-8"]) == 0


def test_local_counts_and_usage(tmp_path, capsys):
    out = tmp_path / "local.json"
    assert run(["local", "--factor", "SO,3,3,3", "--factor", "SO,3,1,2",
                "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["elements"]) == 15

    assert run(["local", "--factor", "SO,3,3,3", "--out", str(out)]) == 2
    assert "error" in capsys.readouterr().err

    # an empty factor yields an empty export, with a warning
    assert run(["local", "--factor", "O,2,2,2", "--factor", "O,2,1,2",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text())["elements"] == []
    assert "warning" in capsys.readouterr().err


def test_local_bad_factor_syntax(tmp_path, capsys):
    assert run(["local", "--factor", "O,2,2", "--factor", "O,2,1,1",
                "--out", str(tmp_path / "x.json")]) == 2


def test_bias_command(tmp_path):
    out = tmp_path / "bias.json"
    assert run(["bias", "--group", "O", "--n", "3", "--l", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["elements"]) == 1
    assert data["k"] == 0 and data["l"] == 2


def test_dims_o333(capsys):
    assert run(["dims", "--group", "O", "--n", "3", "--k", "3", "--l", "3"]) == 0
    out = capsys.readouterr().out
    assert "count=15 rank=15 oracle=15" in out


def test_dims_o122(capsys):
    assert run(["dims", "--group", "O", "--n", "1", "--k", "2", "--l", "2"]) == 0
    assert "count=3 rank=1 oracle=1" in capsys.readouterr().out


def test_dims_sp411(capsys):
    assert run(["dims", "--group", "Sp", "--n", "4", "--k", "1", "--l", "1"]) == 0
    assert "count=1 rank=1 oracle=1" in capsys.readouterr().out


def test_dims_json_out(tmp_path):
    out = tmp_path / "dims.json"
    assert run(["dims", "--group", "O", "--n", "2", "--k", "2", "--l", "2",
                "--json-out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data[0]["consistent"] is True


def test_dims_guard(capsys):
    assert run(["dims", "--group", "O", "--n", "4", "--k", "4", "--l", "3"]) == 2


def test_oracle_command(capsys):
    assert run(["oracle", "--group", "SO", "--n", "2", "--k", "1", "--l", "1"]) == 0
    assert "oracle=2" in capsys.readouterr().out


def test_usage_error_exit_code(capsys):
    assert run(["gen", "--group", "O"]) == 2  # missing required flags
    assert run([]) == 2
