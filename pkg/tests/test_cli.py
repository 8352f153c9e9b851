import json

import pytest

from ajsf.cli import main
from ajsf.automata import transducer_from_json, run
from ajsf.expansion import expansion_from_json, value


def test_constants_example(capsys):
    assert main(["constants", "--l", "-2", "--u", "3", "--d", "2"]) == 0
    out = capsys.readouterr().out
    assert "e = 32/89" in out
    assert "v = 63200/2114907" in out


def test_weight_example(capsys):
    assert main(["weight", "--l", "-2", "--u", "3", "--", "7", "11"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_expand_zero(capsys):
    assert main(["expand", "--l", "0", "--u", "1", "--", "0"]) == 0
    out = capsys.readouterr().out
    assert "(empty)" in out and "weight 0" in out


def test_expand_json_artifact(tmp_path, capsys):
    path = tmp_path / "e.json"
    assert main(["expand", "--l", "-2", "--u", "3", "--json", str(path),
                 "--", "7", "11"]) == 0
    e = expansion_from_json(path.read_text())
    assert value(e) == (7, 11)
    manifest = json.loads((tmp_path / "e.json.manifest.json").read_text())
    assert manifest["subcommand"] == "expand"
    assert manifest["outputs"] == [str(path)]


def test_validate_rows(capsys):
    assert main(["validate", "--l", "-2", "--u", "3",
                 "--rows", "1 0 0 -1;1 0 0 3"]) == 0
    assert capsys.readouterr().out.strip() == "valid"
    assert main(["validate", "--l", "-1", "--u", "1", "--rows", "1 1"]) == 1
    assert capsys.readouterr().out.strip() == "invalid"


def test_minweight_sweep(capsys):
    assert main(["minweight", "--l", "-2", "--u", "3", "--nmax", "256"]) == 0
    assert "no mismatches" in capsys.readouterr().out


def test_transducer_artifacts(tmp_path, capsys):
    dot = tmp_path / "t.dot"
    js = tmp_path / "t.json"
    assert main(["transducer", "--l", "-2", "--u", "3", "--d", "2",
                 "--dot", str(dot), "--json", str(js)]) == 0
    out = capsys.readouterr().out
    assert "states 21" in out and "reset_check pass" in out
    assert dot.read_text().startswith("digraph")
    tr = transducer_from_json(js.read_text())
    assert run(tr, (7, 11)) == 2
    assert (tmp_path / "t.dot.manifest.json").exists()
    assert (tmp_path / "t.json.manifest.json").exists()


def test_moments_empirical(capsys):
    assert main(["moments", "--l", "-1", "--u", "1", "--n", "200",
                 "--empirical"]) == 0
    out = capsys.readouterr().out
    assert "agreement exact" in out
    assert "mean = " in out and "/" in out


def test_fluctuation_csv(tmp_path, capsys):
    path = tmp_path / "f.csv"
    assert main(["fluctuation", "--l", "-1", "--u", "1", "--csv", str(path),
                 "--", "256", "512", "1024"]) == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "N,log2N_frac,psi1_residual"
    assert len(lines) == 4
    assert (tmp_path / "f.csv.manifest.json").exists()


def test_normality(capsys):
    assert main(["normality", "--l", "-1", "--u", "1", "--n", "4096"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("ks_distance = ")
    assert 0.0 < float(out.split("=")[1]) < 1.0


def test_wnaf_roots_csv(tmp_path, capsys):
    path = tmp_path / "r.csv"
    assert main(["wnaf-roots", "--w", "12", "--csv", str(path)]) == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "k,re_z,im_z,abs_z,abs_x"
    assert len(lines) == 13


def test_domain_error_exit_code(capsys):
    assert main(["weight", "--l", "1", "--u", "3", "--", "5"]) == 1
    assert "error:" in capsys.readouterr().err
    assert main(["weight", "--l", "0", "--u", "3", "--", "-5"]) == 1
    capsys.readouterr()


def test_budget_error_exit_code(capsys):
    assert main(["moments", "--l", "-1", "--u", "1", "--d", "2", "--n", "9000",
                 "--empirical", "--budget", "1000000"]) == 1
    assert "error:" in capsys.readouterr().err
