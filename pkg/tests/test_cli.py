import json
import math
import os
import subprocess
import sys

import pytest

from npkorovkin import cli
from npkorovkin import tables as tb
from npkorovkin.errors import ArgumentError


def test_config_file_parsing(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# settings\ngrid_step = 1e-3\nphase-mode = alternating  # trailing\nsvg = yes\n")
    assert cli.read_config(p) == {"grid-step": "1e-3", "phase-mode": "alternating", "svg": "yes"}
    p.write_text("colour = red\n")
    with pytest.raises(ArgumentError):
        cli.read_config(p)
    p.write_text("grid_step\n")
    with pytest.raises(ArgumentError):
        cli.read_config(p)


def test_precedence(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("grid_step = 0.1\nquad_tol = 1e-6\nforward_scale = 3\n")
    args = cli.build_parser().parse_args(["xi-table", "--config", str(p), "--grid-step", "0.01"])
    env = {"NPKOROVKIN_QUAD_TOL": "1e-7", "NPKOROVKIN_GRID_STEP": "0.05", "NPKOROVKIN_L_TRUNC": "auto"}
    cfg = cli.build_config(cli.resolve_settings(args, env))
    assert cfg.grid_step == 0.01  # flag beats env and file
    assert cfg.quad_tol == 1e-7  # env beats file
    assert cfg.convention.forward_scale == 3.0  # file beats default
    assert cfg.l_truncation == "auto"


def test_run_config_validation():
    with pytest.raises(ArgumentError):
        tb.RunConfig(grid_step=0.0)
    with pytest.raises(ArgumentError):
        tb.RunConfig(l_truncation=-2)
    assert tb.RunConfig(l_truncation=7).l_truncation == 7


def test_bad_setting_exit_code(capsys):
    assert cli.main(["xi-table", "--phase-mode", "exact", "--quad-tol", "-1"]) == 2


def test_xi_table_command(tmp_path, capsys):
    rc = cli.main(["xi-table", "--n", "100,200", "--grid-step", "1e-3", "--out-dir", str(tmp_path), "--svg"])
    assert rc == 0
    text = (tmp_path / "xi.csv").read_text()
    assert text.splitlines()[0] == "n [1],xi_n [rad]"
    assert (tmp_path / "xi.svg").exists()
    assert "xi_n rel. error" in capsys.readouterr().out


def test_kn_table_best_convention(tmp_path):
    cfg = tb.RunConfig(out_dir=tmp_path)
    t = tb.cmd_kn_table((1.0, math.pi / 4, 1.5), ((50, 50), (100, 100)), cfg)
    assert t.notes["best_convention"].startswith("ordinary/alternating-sign/fwd=1/")
    best = [r for r in t.rows if r[-1] == 1]
    assert len(best) == 6
    assert all(r[7] < 1e-7 for r in best)
    assert tb.golden_passed(t)


def test_kn_table_explicit_truncation():
    cfg = tb.RunConfig(l_truncation=3)
    t = tb.cmd_kn_table((1.0,), ((50, 50),), cfg)
    assert set(t.column("m")) == {3}


def test_nu_table_unknown_example():
    with pytest.raises(ArgumentError):
        tb.cmd_nu_table("sawtooth", (10,), tb.RunConfig(grid_step=1e-2))


def test_nu_table_coarse_grid_is_flagged():
    t = tb.cmd_nu_table("tent", (22, 101), tb.RunConfig(grid_step=1e-2))
    assert not tb.golden_passed(t)


def test_csv_determinism(tmp_path):
    cfg = tb.RunConfig(grid_step=1e-3, out_dir=tmp_path)
    a = tb.cmd_xi_table((100, 300), cfg).to_csv()
    gr_cache_clear()
    b = tb.cmd_xi_table((100, 300), cfg).to_csv()
    assert a == b


def gr_cache_clear():
    from npkorovkin import grunwald

    grunwald._sup.cache_clear()


@pytest.mark.slow
def test_reproduce_all_coarse_grid_fails(tmp_path):
    env = dict(os.environ, NPKOROVKIN_GRID_STEP="1e-2")
    out = subprocess.run([sys.executable, "-m", "npkorovkin", "reproduce-all", "--out-dir", str(tmp_path), "--svg"],
                         env=env, capture_output=True, text=True)
    assert out.returncode == 1
    assert "FAIL nu_tent" in out.stderr + out.stdout
    names = {"nu_tent", "nu_cubic", "xi", "kn", "grunwald_suite", "kantorovich_suite", "extension_suite"}
    assert {p.stem for p in tmp_path.glob("*.csv")} == names
    assert {p.stem for p in tmp_path.glob("*.svg")} == names
    recs = [json.loads(line) for line in (tmp_path / "manifest.jsonl").read_text().splitlines()]
    summary = recs[-1]
    assert summary["summary"] and not summary["passed"]
    assert summary["kn_convention"].startswith("ordinary/alternating-sign")
    assert 1.0 < summary["c1_estimate"] < 5.0
    assert all("checks" in r for r in recs[:-1])
