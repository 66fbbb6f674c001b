import json
import math

import pytest

import xlab.cli as cli_mod
from xlab.cli import EQUILIBRIUM_CSV_HEADER, main
from xlab.errors import NumericError
from xlab.measures import (circle_jump_measure, save_measure_file,
                           uniform_circle_measure)
from xlab.sweep import SWEEP_CSV_HEADER


@pytest.fixture
def circle_file(tmp_path):
    path = tmp_path / "circle_jump.measure"
    save_measure_file(circle_jump_measure(), path)
    return str(path)


@pytest.fixture
def uniform_file(tmp_path):
    path = tmp_path / "circle_uniform.measure"
    save_measure_file(uniform_circle_measure(z0=1.0), path)
    return str(path)


def test_lambda_subcommand_exact(uniform_file, capsys):
    code = main(["lambda", "--measure", uniform_file, "--z", "1,0",
                 "--n", "9"])
    assert code == 0
    out = capsys.readouterr().out
    fields = dict(line.split(" = ", 1) for line in out.strip().splitlines())
    assert fields["n"] == "9"
    assert float(fields["lambda_n"]) == pytest.approx(2 * math.pi / 10,
                                                      rel=1e-12)
    assert float(fields["n_lambda_n"]) == pytest.approx(9 * 2 * math.pi / 10,
                                                        rel=1e-12)


def test_lambda_auto_jump_point(circle_file, capsys):
    code = main(["lambda", "--measure", circle_file, "--z", "auto-jump",
                 "--n", "6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "z = " in out
    direct = main(["lambda", "--measure", circle_file, "--z", "auto-jump",
                   "--n", "6", "--method", "direct"])
    assert direct == 0
    out2 = capsys.readouterr().out
    lam1 = float(out.split("lambda_n = ")[1].splitlines()[0])
    lam2 = float(out2.split("lambda_n = ")[1].splitlines()[0])
    assert abs(lam1 - lam2) <= 1e-10 * lam1


def test_sweep_subcommand_csv(circle_file, tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    code = main(["sweep", "--measure", circle_file, "--n-min", "8",
                 "--n-max", "32", "--extrapolate",
                 "--out", str(out_csv)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "extrapolated" in printed
    text = out_csv.read_text()
    assert text.splitlines()[0] == SWEEP_CSV_HEADER
    # deterministic: a second run writes byte-identical output
    out2 = tmp_path / "sweep2.csv"
    main(["sweep", "--measure", circle_file, "--n-min", "8",
          "--n-max", "32", "--extrapolate", "--out", str(out2)])
    capsys.readouterr()
    assert out2.read_text() == text


def test_equilibrium_subcommand_csv(circle_file, tmp_path, capsys):
    out_csv = tmp_path / "density.csv"
    code = main(["equilibrium", "--measure", circle_file,
                 "--samples", "16", "--out", str(out_csv)])
    assert code == 0
    capsys.readouterr()
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == EQUILIBRIUM_CSV_HEADER
    assert EQUILIBRIUM_CSV_HEADER == "t_param,re(z),im(z),density,normal_derivative"
    assert len(lines) == 17
    for line in lines[1:]:
        t, re_z, im_z, dens, dgdn = map(float, line.split(","))
        assert dens == pytest.approx(1.0 / (2 * math.pi), rel=1e-12)
        assert dgdn == pytest.approx(2 * math.pi * dens, rel=1e-12)
        assert math.hypot(re_z, im_z) == pytest.approx(1.0, rel=1e-12)


def test_verify_subcommand_json(capsys):
    code = main(["verify", "--suite", "circle-exact", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["suite"] == "circle-exact"
    assert payload["passed"] is True


def test_verify_subcommand_failure_exit_code(capsys):
    code = main(["verify", "--suite", "circle-exact", "--tol", "1e-20"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_missing_measure_file_is_input_error(capsys):
    code = main(["lambda", "--measure", "/no/such/file.measure",
                 "--z", "1,0", "--n", "3"])
    assert code == 2
    assert capsys.readouterr().err.strip()


def test_malformed_measure_file_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.measure"
    bad.write_text("kind = dodecahedron\n")
    code = main(["lambda", "--measure", str(bad), "--z", "1,0", "--n", "3"])
    assert code == 2
    assert capsys.readouterr().err.strip()


def test_bad_point_argument_is_input_error(uniform_file, capsys):
    code = main(["lambda", "--measure", uniform_file, "--z", "one,two",
                 "--n", "3"])
    assert code == 2
    capsys.readouterr()


def test_numeric_error_exit_code(uniform_file, capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise NumericError("synthetic numeric failure")

    monkeypatch.setattr(cli_mod, "christoffel_lambda", boom)
    code = main(["lambda", "--measure", uniform_file, "--z", "1,0",
                 "--n", "3"])
    assert code == 3
    assert "numeric" in capsys.readouterr().err.lower()


def test_no_arguments_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    capsys.readouterr()
