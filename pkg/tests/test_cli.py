"""Command-line interface: config parsing, commands, exit codes, output."""

import pytest

from epiplan.cli import (ConfigError, RunConfig, load_config, main,
                         parse_config)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def as_dict(report_text):
    out = {}
    for line in report_text.strip().splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


def test_parse_config_defaults_and_overrides():
    cfg = parse_config("""
        # reference scenario with a tweak
        lambda = 0.25
        c = 0.2   # inline comment
        precision = 9
    """)
    assert cfg.lam == 0.25
    assert cfg.c == 0.2
    assert cfg.precision == 9
    assert cfg.x0 == 0.01 and cfg.T == 15.0  # defaults kept


@pytest.mark.parametrize("text", [
    "mystery = 1",
    "lambda = 0.2\nlambda = 0.3",
    "lambda = not-a-number",
    "precision = 2.5",
    "lambda =",
    "just some words",
])
def test_parse_config_rejects_bad_input(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_load_config_without_path_is_reference_scenario():
    assert load_config(None) == RunConfig()


def test_missing_config_file_exits_2(capsys):
    code, _, err = run(capsys, "optimize", "--config", "/no/such/file.cfg")
    assert code == 2
    assert "cannot read config" in err


def test_eval_reports_reference_numbers(capsys):
    code, out, _ = run(capsys, "eval", "--b", "6.14")
    assert code == 0
    report = as_dict(out)
    assert report["b"] == "6.140000"
    assert report["a"] == "0.748391"
    assert report["W_closed"] == report["W_quadrature"] == "14.272599"
    assert report["b_star"] == "7.658533"
    assert report["overload"] == "[4.860441, 7.419559]"
    assert report["exceeded"] == "true"
    assert report["feasibility_margin"] == "0.452004"


def test_eval_outside_range_exits_2(capsys):
    code, out, err = run(capsys, "eval", "--b", "16.0")
    assert code == 2
    assert out == ""
    assert "outside [b_lb, T]" in err


def test_optimize_default_scenario(capsys):
    code, out, _ = run(capsys, "optimize")
    assert code == 0
    report = as_dict(out)
    assert report["b_opt"] == "6.139850"
    assert report["exceeded"] == "true"
    assert report["plateau"] == "false"
    assert report["overload"].startswith("[4.86")


def test_optimize_health_only_plateau(capsys, tmp_path):
    cfg = tmp_path / "health.cfg"
    cfg.write_text("lambda = 0\n")
    code, out, _ = run(capsys, "optimize", "--config", str(cfg))
    assert code == 0
    report = as_dict(out)
    assert report["b_opt"] == "7.658533"
    assert report["plateau"] == "true"
    assert report["plateau_hi"] == "15.000000"
    assert report["exceeded"] == "false"


def test_optimize_infeasible_exits_3(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("g_kind = constant\ng0 = 5\nb_lb = 3.8292665\n")
    code, out, err = run(capsys, "optimize", "--config", str(cfg))
    assert code == 3
    assert out == ""
    assert "infeasible" in err


def test_curves_structure_and_two_sample_grid(capsys, tmp_path):
    cfg = tmp_path / "coarse.cfg"
    cfg.write_text("dt = 15\n")
    code, out, _ = run(capsys, "curves", "--config", str(cfg),
                       "--b", "7.66,3.06")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "b,t,x,xdot,y,h,w"
    assert len(lines) == 1 + 2 * 2  # two samples per peak time
    # input order preserved
    assert lines[1].startswith("7.660000,0.000000,")
    assert lines[3].startswith("3.060000,0.000000,")
    assert lines[2].split(",")[1] == "15.000000"


def test_curves_h_is_one_at_critical_peak(capsys):
    code, out, _ = run(capsys, "curves", "--b", "7.658533083557650")
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 1501
    assert all(line.split(",")[5] == "1.000000" for line in lines)


def test_curves_rejects_bad_peaks(capsys):
    code, _, err = run(capsys, "curves", "--b", "2.0")
    assert code == 2 and "outside" in err
    code, _, err = run(capsys, "curves", "--b", "abc")
    assert code == 2
    code, _, err = run(capsys, "curves", "--b", ",")
    assert code == 2


def test_curves_writes_file(capsys, tmp_path):
    out_path = tmp_path / "curves.csv"
    code, out, _ = run(capsys, "curves", "--b", "6.14", "--out", str(out_path))
    assert code == 0
    assert out == ""
    text = out_path.read_text()
    assert text.startswith("b,t,x,xdot,y,h,w\n")
    assert text.endswith("\n")


def test_curves_io_error_exits_4(capsys, tmp_path):
    code, _, err = run(capsys, "curves", "--b", "6.14",
                       "--out", str(tmp_path / "missing-dir" / "x.csv"))
    assert code == 4
    assert err != ""


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--param", "lambda",
                       "--from", "0.05", "--to", "0.95", "--steps", "19")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param_value,b_opt,a_opt,w_opt,exceeded,plateau"
    assert len(lines) == 20
    first = lines[1].split(",")
    assert first[0] == "0.050000"
    assert first[1] == "7.658533"
    assert first[4] == "0"
    mid = lines[10].split(",")
    assert mid[0] == "0.500000" and mid[1] == "6.139850" and mid[4] == "1"
    b_col = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(x >= y - 1e-6 for x, y in zip(b_col, b_col[1:]))


def test_sweep_two_steps(capsys):
    code, out, _ = run(capsys, "sweep", "--param", "c",
                       "--from", "0.12", "--to", "0.2", "--steps", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_sweep_bad_range_exits_2(capsys):
    code, _, err = run(capsys, "sweep", "--param", "c",
                       "--from", "0.3", "--to", "0.1", "--steps", "5")
    assert code == 2


def test_verify_small_run(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "5", "--seed", "9")
    assert code == 0
    assert "P1a: PASS (5/5)" in out
    assert "P3: PASS (5/5)" in out
    assert out.strip().endswith("verification: PASS")


def test_reproduce_example(capsys):
    code, out, _ = run(capsys, "reproduce-example")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert all(line.endswith("PASS") for line in lines[:4])
    assert lines[-1] == "reproduction: PASS"


@pytest.mark.parametrize("argv", [
    ("eval", "--b", "6.14"),
    ("optimize",),
    ("curves", "--b", "3.06,6.14"),
    ("sweep", "--param", "lambda", "--from", "0.2", "--to", "0.8", "--steps", "4"),
    ("verify", "--trials", "3", "--seed", "1"),
    ("reproduce-example",),
])
def test_output_is_reproducible(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
