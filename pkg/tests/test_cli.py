import csv
import io
import math

import pytest

from qslnoise.cli import main
from qslnoise.sweep import (CHANNEL_COLUMNS, LINDBLAD_COLUMNS, ConfigError, SweepConfig,
                            format_value, read_config_file, render_csv)

EMPTY_ENV = {}


def run(capsys, *argv, env=EMPTY_ENV):
    code = main(list(argv), env=env)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- sweep-channel ------------------------------------------------------------

def test_default_channel_sweep_shape(capsys):
    code, out, _ = run(capsys, "sweep-channel")
    assert code == 0
    assert out.splitlines()[0] == ",".join(CHANNEL_COLUMNS)
    table = rows(out)
    assert len(table) == 25
    assert float(table[0]["tau"]) == 0.01 and float(table[-1]["tau"]) == 0.25
    assert all(float(r["t_eval"]) == 0.1 for r in table)


def test_phase_damping_rows_match_closed_form(capsys):
    _, out, _ = run(capsys, "sweep-channel", "--family", "phase-damping")
    for r in rows(out):
        p = float(r["p"])
        assert float(r["ratio_R"]) == pytest.approx(1 + abs(1 - 2 * p), rel=1e-10)


def test_paper_literal_ratio_is_one(capsys):
    code, out, err = run(capsys, "sweep-channel", "--family", "amplitude-damping",
                         "--variant", "paper-literal")
    assert code == 0
    assert {r["ratio_R"] for r in rows(out)} == {"1"}
    assert "identity" in err


@pytest.mark.parametrize("family", ["rtn-product", "amplitude-damping"])
def test_other_families_sweep(capsys, family):
    code, out, _ = run(capsys, "sweep-channel", "--family", family, "--tau-steps", "5")
    assert code == 0
    assert len(rows(out)) == 5


@pytest.mark.parametrize("argv,field", [
    (["--tau-min", "0.1", "--tau-max", "0.1", "--tau-steps", "2"], "tau_max"),
    (["--tau-steps", "1"], "tau_steps"),
    (["--family", "bogus"], "family"),
    (["--variant", "bogus"], "variant"),
    (["--time", "0"], "time"),
    (["--theta", "2"], "theta"),
    (["--mu", "1.5"], "mu"),
    (["--tau-min", "-0.1"], "tau_min"),
])
def test_channel_config_errors(capsys, argv, field):
    code, out, err = run(capsys, "sweep-channel", *argv)
    assert code == 2
    assert out == ""
    assert field in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "sweep-channel", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes().count(b"\r") == 0
    assert target.read_text().startswith("tau,")


# -- sweep-lindblad -----------------------------------------------------------

def test_lindblad_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep-lindblad")
    assert code == 0
    assert out.splitlines()[0] == ",".join(LINDBLAD_COLUMNS)
    table = rows(out)
    assert len(table) == 21
    first, last = table[0], table[-1]
    assert [float(first[k]) for k in ("x", "ratio", "lower_bound", "upper_bound")] == [0, 1, 1, 1]
    assert float(last["x"]) == pytest.approx(1.5 * math.sqrt(2) / math.sqrt(14), abs=1e-9)
    assert float(last["lower_bound"]) == pytest.approx(0.638184, abs=1e-5)
    assert float(last["upper_bound"]) == pytest.approx(2.309185, abs=1e-5)
    for r in table:
        lo, ratio, hi = (float(r[k]) for k in ("lower_bound", "ratio", "upper_bound"))
        assert lo - 1e-9 <= ratio <= hi + 1e-9


def test_lindblad_bath_flags(capsys):
    code, out, _ = run(capsys, "sweep-lindblad", "--omega", str(math.log(2)), "--temperature", "1")
    assert code == 0
    assert float(rows(out)[0]["n_bar"]) == pytest.approx(1.0)


@pytest.mark.parametrize("argv,field", [
    (["--nbar", "1", "--omega", "1", "--temperature", "1"], "nbar"),
    (["--omega", "1"], "temperature"),
    (["--a-max", "1.5"], "a_max"),
    (["--gamma", "0"], "gamma"),
    (["--nbar", "-1"], "nbar"),
])
def test_lindblad_config_errors(capsys, argv, field):
    code, _, err = run(capsys, "sweep-lindblad", *argv)
    assert code == 2
    assert field in err


def test_upper_bound_prints_inf():
    assert format_value(math.inf) == "inf"
    assert format_value(-0.0) == "0"
    with pytest.raises(ValueError):
        format_value(math.nan)
    assert render_csv(("a", "b"), [(1.0, math.inf)]) == "a,b\n1,inf\n"


def test_every_cell_parses_back(capsys):
    for cmd in ("sweep-channel", "sweep-lindblad"):
        _, out, _ = run(capsys, cmd)
        for r in rows(out):
            for cell in r.values():
                v = float(cell)
                assert cell == "inf" or math.isfinite(v)


@pytest.mark.parametrize("argv", [
    ["sweep-channel"],
    ["sweep-channel", "--family", "amplitude-damping"],
    ["sweep-channel", "--family", "rtn-product"],
    ["sweep-lindblad"],
])
def test_sweeps_are_byte_identical(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# -- validate -----------------------------------------------------------------

def test_validate_rtn_passes(capsys):
    code, out, _ = run(capsys, "validate", "--family", "rtn-product", "--tau", "0.2", "--time", "0.3")
    assert code == 0
    assert "completeness_defect" in out and "choi_min_eigenvalue" in out and "trace_residual" in out


def test_validate_detects_corrupted_operator(capsys):
    code, out, _ = run(capsys, "validate", "--family", "rtn-product", "--tau", "0.2", "--time", "0.3",
                       "--corrupt-k1", "1.01")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("family", ["phase-damping", "amplitude-damping"])
def test_validate_other_families(capsys, family):
    assert run(capsys, "validate", "--family", family)[0] == 0


def test_validate_paper_literal_note(capsys):
    code, out, _ = run(capsys, "validate", "--family", "amplitude-damping", "--variant", "paper-literal")
    assert code == 0
    assert "identity" in out


def test_validate_lindblad(capsys):
    code, out, _ = run(capsys, "validate", "--family", "lindblad", "--nbar", "0.5")
    assert code == 0
    assert "trace_residual" in out
    # both values of the correlated coherence are emitted
    assert "fixture=0.625" in out and "derived=1 " in out


def test_validate_lindblad_bad_a(capsys):
    assert run(capsys, "validate", "--family", "lindblad", "--a", "2")[0] == 2


# -- configuration ------------------------------------------------------------

def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nfamily = rtn-product\ntau-steps = 4\ntime = 0.5\n")
    _, out, _ = run(capsys, "sweep-channel", "--config", str(cfg))
    table = rows(out)
    assert len(table) == 4 and float(table[0]["t_eval"]) == 0.5
    # flag beats file, file beats default, per field
    _, out, _ = run(capsys, "sweep-channel", "--config", str(cfg), "--tau-steps", "3")
    table = rows(out)
    assert len(table) == 3 and float(table[0]["t_eval"]) == 0.5
    _, out, _ = run(capsys, "sweep-channel", "--config", str(cfg), "--time", "0.2")
    assert {r["t_eval"] for r in rows(out)} == {"0.2"}


def test_config_from_environment(tmp_path, capsys):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("a_steps = 3\nnbar = 2\n")
    _, out, _ = run(capsys, "sweep-lindblad", env={"QSLNOISE_CONFIG": str(cfg)})
    table = rows(out)
    assert len(table) == 3 and float(table[0]["n_bar"]) == 2.0
    # --config wins over the environment
    other = tmp_path / "other.cfg"
    other.write_text("a_steps = 5\n")
    _, out, _ = run(capsys, "sweep-lindblad", "--config", str(other), env={"QSLNOISE_CONFIG": str(cfg)})
    assert len(rows(out)) == 5


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    code, _, err = run(capsys, "sweep-channel", "--config", str(bad))
    assert code == 2 and "colour" in err
    garbled = tmp_path / "garbled.cfg"
    garbled.write_text("just words\n")
    assert run(capsys, "sweep-channel", "--config", str(garbled))[0] == 2
    assert run(capsys, "sweep-channel", "--config", str(tmp_path / "missing.cfg"))[0] == 2
    typed = tmp_path / "typed.cfg"
    typed.write_text("tau_steps = many\n")
    assert run(capsys, "sweep-channel", "--config", str(typed))[0] == 2


def test_sweep_config_overrides():
    cfg = SweepConfig().with_overrides({"tau-min": "0.05", "nbar": 3, "t": "0.4"})
    assert cfg.tau_min == 0.05 and cfg.n_bar == 3 and cfg.t_eval == 0.4
    with pytest.raises(ConfigError) as info:
        SweepConfig().with_overrides({"nope": 1})
    assert info.value.field == "nope"


def test_read_config_strips_comments(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("gamma = 2  # decay\n\n# nothing\n")
    assert read_config_file(path) == {"gamma": "2"}


@pytest.mark.parametrize("cmd,columns", [("sweep-channel", CHANNEL_COLUMNS),
                                         ("sweep-lindblad", LINDBLAD_COLUMNS)])
def test_help_documents_columns(capsys, cmd, columns):
    with pytest.raises(SystemExit) as info:
        main([cmd, "--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert all(c in out for c in columns)
