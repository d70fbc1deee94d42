import os

import pytest

from masim.cli import main

WL = 0.06

GOOD_CONFIG = """\
scenario: single_user
users: 1
antennas: 2
wavelength_m: 0.06
min_spacing_wl: 0.5
points: 12
region_length_wl: 6.0
paths: 4
distances_m: [100.0]
realizations: 2
methods: [proposed, fpa]
seed: 5
algorithm:
  rounds: 1
output: OUTPUT
"""


def write_config(tmp_path, text=GOOD_CONFIG, out=None):
    out = out or (tmp_path / "results" / "exp")
    target = tmp_path / "experiment.yaml"
    target.write_text(text.replace("OUTPUT", str(out)))
    return target, out


def test_validate_good_config(tmp_path, capsys):
    config, _ = write_config(tmp_path)
    assert main(["validate", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "config OK" in out
    assert "points" in out


def test_validate_bad_config_exit_2(tmp_path, capsys):
    config, _ = write_config(tmp_path, GOOD_CONFIG.replace("points: 12",
                                                           "points: 10"))
    assert main(["validate", "--config", str(config)]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_key_exit_2(tmp_path, capsys):
    config, _ = write_config(tmp_path, GOOD_CONFIG + "bogus_key: 1\n")
    assert main(["validate", "--config", str(config)]) == 2
    assert "bogus_key" in capsys.readouterr().err


def test_run_writes_outputs(tmp_path, capsys):
    config, out = write_config(tmp_path)
    assert main(["run", "--config", str(config)]) == 0
    assert (tmp_path / "results" / "exp.runs.csv").exists()
    assert (tmp_path / "results" / "exp.summary.csv").exists()
    assert (tmp_path / "results" / "exp.trace.csv").exists()
    assert (tmp_path / "results" / "exp.summary.png").exists()
    assert "wrote" in capsys.readouterr().out


def test_no_plot_skips_figure(tmp_path):
    config, out = write_config(tmp_path)
    assert main(["run", "--config", str(config), "--no-plot"]) == 0
    assert not (tmp_path / "results" / "exp.summary.png").exists()
    assert (tmp_path / "results" / "exp.runs.csv").exists()


def test_out_and_seed_overrides(tmp_path):
    config, _ = write_config(tmp_path)
    other = tmp_path / "elsewhere" / "run"
    assert main(["run", "--config", str(config), "--seed", "9",
                 "--out", str(other), "--no-plot"]) == 0
    text = (tmp_path / "elsewhere" / "run.runs.csv").read_text()
    assert text.count("\n") == 5  # header + 2 realizations x 2 methods


def test_output_dir_environment_override(tmp_path, monkeypatch):
    config, _ = write_config(tmp_path)
    env_dir = tmp_path / "env_results"
    monkeypatch.setenv("MASIM_OUTPUT_DIR", str(env_dir))
    assert main(["run", "--config", str(config), "--no-plot"]) == 0
    assert (env_dir / "exp.runs.csv").exists()


def test_brute_forces_oracle_method(tmp_path):
    config, _ = write_config(tmp_path)
    assert main(["brute", "--config", str(config), "--no-plot"]) == 0
    text = (tmp_path / "results" / "exp.runs.csv").read_text()
    assert "brute_force" in text


def test_brute_guard_exit_3(tmp_path, capsys):
    # the exhaustive oracle at full scale trips the enumeration guard
    big = GOOD_CONFIG.replace("antennas: 2", "antennas: 8") \
                     .replace("points: 12", "points: 48") \
                     .replace("realizations: 2", "realizations: 1")
    config, _ = write_config(tmp_path, big)
    assert main(["brute", "--config", str(config), "--no-plot"]) == 3
    assert "runtime failure" in capsys.readouterr().err


def test_preset_runs_small(tmp_path, capsys):
    out = tmp_path / "fig2"
    assert main(["preset", "--name", "fig2", "--realizations", "1",
                 "--out", str(out), "--no-plot"]) == 0
    assert (tmp_path / "fig2.runs.csv").exists()
    printed = capsys.readouterr().out
    assert "points=12" in printed


def test_preset_rejects_unknown_name(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["preset", "--name", "fig9"])
    assert exc.value.code == 2


def test_timing_flag_populates_wall_ms(tmp_path):
    config, _ = write_config(tmp_path)
    assert main(["run", "--config", str(config), "--timing", "--no-plot"]) == 0
    lines = (tmp_path / "results" / "exp.runs.csv").read_text().splitlines()
    header = lines[0].split(",")
    wall_col = header.index("wall_ms")
    assert all(line.split(",")[wall_col] != "" for line in lines[1:])
