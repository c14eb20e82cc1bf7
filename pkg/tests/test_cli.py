import json

from dlchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_group_command(capsys):
    code, out = run(capsys, "group", "--family", "SL", "--n", "2", "--q", "3")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 24
    assert data["num_classes"] == 7


def test_table_command(capsys):
    code, out = run(capsys, "table", "--family", "GL", "--n", "2", "--q", "2")
    assert code == 0
    data = json.loads(out)
    assert sorted(r["degree"] for r in data["irreducibles"]) == [1, 1, 2]


def test_invalid_input_exit_2(capsys):
    code, _ = run(capsys, "group", "--family", "GL", "--n", "5", "--q", "7")
    assert code == 2


def test_verify_rel_bruhat_a2(capsys):
    code, out = run(capsys, "verify", "rel-bruhat", "--type", "A2")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert all(c["status"] == "pass" for c in data["cases"])


def test_verify_howlett_lehrer(capsys):
    code, out = run(capsys, "verify", "howlett-lehrer", "--family", "SL",
                    "--n", "2", "--q", "3")
    assert code == 0
    data = json.loads(out)
    assert data["cases"][0]["payload"]["determinant"][0] != 0


def test_verify_springer_convolution(capsys):
    code, out = run(capsys, "verify", "springer-convolution", "--family",
                    "SL", "--n", "2", "--q", "3")
    assert code == 0


def test_verify_double_trace_gl2(capsys):
    code, out = run(capsys, "verify", "double-trace", "--family", "GL",
                    "--n", "2", "--q", "3")
    assert code == 0


def test_hc_ind_output(capsys):
    code, out = run(capsys, "hc-ind", "--family", "GL", "--n", "2", "--q", "3",
                    "--composition", "1,1")
    assert code == 0
    data = json.loads(out)
    assert len(data["hc_induce_delta_basis"]) == 4


def test_report_determinism(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for path in (out1, out2):
        code = main(["verify", "rel-bruhat", "--type", "A1",
                     "--out", str(path)])
        capsys.readouterr()
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_out_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    code = main(["group", "--family", "GL", "--n", "3", "--q", "2",
                 "--out", str(path)])
    capsys.readouterr()
    assert code == 0
    data = json.loads(path.read_text())
    assert data["order"] == 168
